"""Exact sandpile dynamics, toppling ideals, divisors and Betti numbers."""
from .errors import (CapExceeded, GraphFormatError, HomogenizationError, PreconditionError,
                     SandpileError)
from .graph import Graph, laplacian, parse_graph, read_graph, reduced_laplacian
from .intlinalg import IntMatrix

__version__ = "0.1.0"
