"""Exact Kauffman bracket and colored Jones polynomials from PD codes,
A-/B-graph statistics, and checks on the head and tail of ``J'_K(n)``."""

from .algebra import LaurentPoly, chebyshev, div_exact, quantum_integer, to_q
from .diagram import PDCode, cable, load_knots, mirror, parse_pd, writhe
from .stability import head_tail, predict, verify_stabilization, volume_bounds
from .stategraphs import GraphStats, build_state_graph, graph_stats, predict_cable_stats
from .statesum import bracket, bracket_frontier, bracket_naive, colored_jones

__version__ = "0.1.0"

__all__ = [
    "GraphStats",
    "LaurentPoly",
    "PDCode",
    "bracket",
    "bracket_frontier",
    "bracket_naive",
    "build_state_graph",
    "cable",
    "chebyshev",
    "colored_jones",
    "div_exact",
    "graph_stats",
    "head_tail",
    "load_knots",
    "mirror",
    "parse_pd",
    "predict",
    "predict_cable_stats",
    "quantum_integer",
    "to_q",
    "verify_stabilization",
    "volume_bounds",
    "writhe",
]
