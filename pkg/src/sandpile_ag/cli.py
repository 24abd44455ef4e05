"""Command-line front end.

Exit codes: 0 success, 1 a verification reported failure, 2 invalid input,
3 a size cap was exceeded, 64 unknown subcommand.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import divisors, dynamics, group, ideal, resolution, structure, tutte
from .errors import CapExceeded, SandpileError
from .graph import Graph, read_graph
from .intlinalg import parse_matrix

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_CAP, EXIT_UNKNOWN = 0, 1, 2, 3, 64


class Report:
    """Collects a JSON-able payload and a human rendering of it."""

    def __init__(self, payload: dict, text: str, ok: bool = True):
        self.payload, self.text, self.ok = payload, text, ok


def _csv(s: str) -> List[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip() != ""]
    except ValueError:
        raise SandpileError(f"expected comma-separated integers, got {s!r}") from None


def _fmt(v: Sequence[int]) -> str:
    return ",".join(str(x) for x in v)


def _binomial_json(f: ideal.Binomial) -> str:
    return f"x^({_fmt(f.plus)}) - x^({_fmt(f.minus)})"


def cmd_stabilize(g: Graph, a) -> Report:
    c, s = dynamics.stabilize(g, _csv(a.config))
    return Report({"config": list(c), "script": list(s)},
                  f"{_fmt(c)}\nscript: {_fmt(s)}")


def cmd_group(g: Graph, a) -> Report:
    facs = group.invariant_factors(g)
    eta = dynamics.identity(g)
    out = {"order": group.group_order(g), "invariant_factors": facs, "identity": list(eta)}
    lines = [f"order: {out['order']}", f"invariant factors: {_fmt(facs)}",
             f"identity: {_fmt(eta)}"]
    if a.elements:
        rec = group.enumerate_recurrents(g, a.max_order)
        sup = group.enumerate_superstables(g, a.max_order)
        out["recurrents"] = [list(c) for c in rec]
        out["superstables"] = [list(c) for c in sup]
        lines.append("recurrents: " + " ".join(f"({_fmt(c)})" for c in rec))
        lines.append("superstables: " + " ".join(f"({_fmt(c)})" for c in sup))
    return Report(out, "\n".join(lines))


def cmd_burning(g: Graph, a) -> Report:
    b, s = dynamics.min_burning_config(g)
    return Report({"config": list(b), "script": list(s)},
                  f"burning config: {_fmt(b)}\nscript: {_fmt(s)}")


def cmd_gb(g: Graph, a) -> Report:
    if a.homogeneous:
        basis = ideal.homogeneous_basis(g, a.minimal, a.max_box)
        names = list(g.names)
    else:
        basis = ideal.groebner_basis(g, a.minimal, a.max_box)
        names = list(g.names[: g.n])
    return Report({"variables": names, "binomials": [_binomial_json(f) for f in basis]},
                  "\n".join(f.format(names) for f in basis))


def cmd_hilbert(g: Graph, a) -> Report:
    h, post = ideal.h_vector(g, a.max_order)
    affine = [ideal.affine_hilbert(g, d, a.max_order) for d in range(post + 1)]
    hh = divisors.homogeneous_h_vector(g, a.max_degree)
    return Report({"h_vector": h, "postulation": post, "affine_hilbert": affine,
                   "homogeneous_h_vector": hh},
                  f"h-vector: {_fmt(h)}\npostulation: {post}\n"
                  f"affine Hilbert function: {_fmt(affine)}\nhomogeneous h-vector: {_fmt(hh)}")


def cmd_tutte(g: Graph, a) -> Report:
    t = tutte.tutte(g)
    ok = tutte.merino_check(g)
    return Report({"terms": [list(x) for x in t.terms()], "T(1,y)": t.at_x1(),
                   "T(1,1)": t(1, 1), "merino": ok},
                  f"T(x,y) = {t}\nT(1,y) coefficients: {_fmt(t.at_x1())}\nMerino identity: {ok}",
                  ok)


def cmd_divisor(g: Graph, a) -> Report:
    d = _csv(a.divisor)
    if a.action == "equiv":
        if a.other is None:
            raise SandpileError("equiv needs --other")
        e = divisors.is_equivalent(g, d, _csv(a.other))
        return Report({"equivalent": e}, str(e).lower())
    if a.action == "linsys":
        ls = divisors.linear_system(g, d, a.max_degree)
        return Report({"linear_system": [list(x) for x in ls]},
                      "\n".join(divisors.render(x) for x in ls) or "(empty)")
    if a.action == "rank":
        r = divisors.rank_r(g, d, a.max_degree)
        return Report({"rank": r}, str(r))
    res = divisors.riemann_roch_residual(g, d, a.max_degree)
    return Report({"residual": res}, f"residual: {res}", res == 0)


def cmd_betti(g: Graph, a) -> Report:
    t = resolution.graded_betti(g, threads=a.threads, max_order=a.max_order,
                                max_degree=a.max_degree)
    ok = resolution.euler_check(g, t, a.max_degree)
    payload = t.to_json()
    payload["euler_check"] = ok
    return Report(payload, t.format() + f"\neuler check: {ok}", ok)


def cmd_conjecture(g: Graph, a) -> Report:
    rows = resolution.conjecture_check(g, threads=a.threads)
    text = "\n".join(f"k={r.k}: beta={r.beta} sum={'+'.join(map(str, r.contributions)) or '0'}"
                     f"={r.total} {'holds' if r.holds else 'FAILS'}" for r in rows)
    return Report({"rows": [r.to_json() for r in rows]}, text)


def cmd_classify(g: Graph, a) -> Report:
    c = structure.classify(g, threads=a.threads)
    return Report(c, "\n".join(f"{k}: {v}" for k, v in c.items()))


def cmd_lattice2graph(a) -> Report:
    with open(a.matrix, encoding="utf-8") as fh:
        m = parse_matrix(fh.read())
    lap = structure.lattice_to_laplacian_matrix(m)
    g = structure.lattice_to_laplacian(m)
    return Report({"laplacian": lap.tolist(), "graph": g.to_text()},
                  "reduced Laplacian:\n" + lap.format() + "\n\n" + g.to_text().rstrip())


def cmd_zeros(g: Graph, a) -> Report:
    pts = group.orbit_points(g, min(a.max_order, 10 ** 4))
    res = group.verify_vanishing(g, min(a.max_order, 10 ** 4), a.max_box)
    ok = res < a.tol
    return Report({"points": len(pts), "max_residual": res, "tol": a.tol, "ok": ok},
                  f"points: {len(pts)}\nmax residual: {res:.3e}\nbelow tolerance: {ok}", ok)


GRAPH_COMMANDS: Dict[str, Callable] = {
    "stabilize": cmd_stabilize, "group": cmd_group, "burning": cmd_burning, "gb": cmd_gb,
    "hilbert": cmd_hilbert, "tutte": cmd_tutte, "divisor": cmd_divisor, "betti": cmd_betti,
    "conjecture": cmd_conjecture, "classify": cmd_classify, "zeros": cmd_zeros,
}
COMMANDS = sorted(list(GRAPH_COMMANDS) + ["lattice2graph"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--max-order", type=int, default=group.DEFAULT_MAX_ORDER,
                        help="largest group order to enumerate")
    common.add_argument("--max-degree", type=int, default=divisors.DEFAULT_MAX_DEGREE,
                        help="largest divisor degree to enumerate")
    common.add_argument("--max-box", type=int, default=ideal.DEFAULT_MAX_BOX,
                        help="largest script box for Groebner bases")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    gopt = argparse.ArgumentParser(add_help=False, parents=[common])
    gopt.add_argument("-g", "--graph", required=True, help="graph file")

    p = argparse.ArgumentParser(prog="sandpile-ag",
                                description="Sandpile groups, toppling ideals and divisors.")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("stabilize", parents=[gopt], help="stabilize a configuration")
    sp.add_argument("-c", "--config", required=True)
    sp = sub.add_parser("group", parents=[gopt], help="sandpile group data")
    sp.add_argument("--elements", action="store_true")
    sub.add_parser("burning", parents=[gopt], help="minimal burning configuration")
    sp = sub.add_parser("gb", parents=[gopt], help="Groebner basis of the toppling ideal")
    sp.add_argument("--minimal", action="store_true")
    sp.add_argument("--homogeneous", action="store_true")
    sub.add_parser("hilbert", parents=[gopt], help="h-vector and Hilbert functions")
    sub.add_parser("tutte", parents=[gopt], help="Tutte polynomial")
    sp = sub.add_parser("divisor", parents=[gopt], help="divisor queries")
    sp.add_argument("-d", "--divisor", required=True)
    sp.add_argument("action", choices=["equiv", "linsys", "rank", "rr"])
    sp.add_argument("--other")
    sub.add_parser("betti", parents=[gopt], help="graded Betti numbers")
    sub.add_parser("conjecture", parents=[gopt], help="Betti numbers versus partitions")
    sub.add_parser("classify", parents=[gopt], help="complete intersection / Gorenstein")
    sp = sub.add_parser("lattice2graph", parents=[common], help="lattice to sandpile graph")
    sp.add_argument("-m", "--matrix", required=True)
    sp = sub.add_parser("zeros", parents=[gopt], help="numerical check of the zero set")
    sp.add_argument("--tol", type=float, default=1e-9)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    first = argv[0] if argv and not argv[0].startswith("-") else None
    if first is not None and first not in COMMANDS:
        print(f"unknown subcommand {first!r}; expected one of {', '.join(COMMANDS)}", file=err)
        return EXIT_UNKNOWN
    try:
        a = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        if a.command == "lattice2graph":
            rep = cmd_lattice2graph(a)
        else:
            rep = GRAPH_COMMANDS[a.command](read_graph(a.graph), a)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=err)
        return EXIT_CAP
    except (SandpileError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    if a.json:
        print(json.dumps(rep.payload, sort_keys=True), file=out)
    else:
        print(rep.text, file=out)
    return EXIT_OK if rep.ok else EXIT_FAILED


def main() -> None:
    sys.exit(run())
