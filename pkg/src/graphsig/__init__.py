"""Graph signal processing: transforms, filters, filter banks, sampling and vertex-frequency analysis."""

from .eigen import ConvergenceError, SpectralBasis, eig_sym
from .graph import Graph, OperatorKind, OperatorMatrix, from_edge_list, from_weight_matrix, operator_matrix
from .spectral import basis_of, gdft, igdft

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "SpectralBasis", "eig_sym", "Graph", "OperatorKind", "OperatorMatrix",
    "from_edge_list", "from_weight_matrix", "operator_matrix", "basis_of", "gdft", "igdft",
]
