"""Konstruktive Zyklenzeugen aus der Ausdünnung von E(S, W₀)"""

from .sparsification import LevelSets, EdgeSubset, build_sparsification, bound_W0v, degeneracy_path_grow
from .extraction import CycleWitness, extract_cycle, density_pipeline

__all__ = [
    "LevelSets",
    "EdgeSubset",
    "build_sparsification",
    "bound_W0v",
    "degeneracy_path_grow",
    "CycleWitness",
    "extract_cycle",
    "density_pipeline",
]
