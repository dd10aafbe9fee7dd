"""Exact correlation kernels for symmetrized partition measures."""

from .exact import ParameterSet, USeries, e_sequence, rational

__all__ = ["ParameterSet", "USeries", "e_sequence", "rational"]
__version__ = "0.1.0"
