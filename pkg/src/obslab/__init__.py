"""obslab: a desk-scale laboratory for treewidth obstructions, forbidden
induced subgraph detection, and the constructive procedures around
even-hole-free graph classes."""

from .errors import InvalidInput, ScaleLimit
from .graph_core import Digraph, Graph, Path

__all__ = ["Graph", "Digraph", "Path", "InvalidInput", "ScaleLimit"]
__version__ = "0.1.0"
