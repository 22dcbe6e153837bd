"""Kneser-graph covers: the family G_i(n,k), their symmetries, colorings and complexes."""

from .cover import Bigraph, Involution, Quotient, kronecker_cover, quotient
from .family import bipartite_kneser, g_graph, sigma
from .graph import Graph, GraphMap, kneser_graph
from .perm import Perm, PermGroup

__version__ = "0.1.0"

__all__ = [
    "Bigraph",
    "Graph",
    "GraphMap",
    "Involution",
    "Perm",
    "PermGroup",
    "Quotient",
    "bipartite_kneser",
    "g_graph",
    "kneser_graph",
    "kronecker_cover",
    "quotient",
    "sigma",
]
