"""Brute-Force-Orakel für kleine Graphen"""

from .cycles import CycleQuery, find_cycle, girth, validate_cycle
from .paths import compute_X0

__all__ = ["CycleQuery", "find_cycle", "girth", "validate_cycle", "compute_X0"]
