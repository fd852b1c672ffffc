"""Erkennung von Zyklen fester Länge im CONGEST-Modell"""

from .params import DetectionParams, RoleSets, build_role_sets
from .color_bfs import color_bfs, randomized_color_bfs
from .detectors import detect, detect_even, detect_even_low_prob, detect_odd, detect_bounded

__all__ = [
    "DetectionParams",
    "RoleSets",
    "build_role_sets",
    "color_bfs",
    "randomized_color_bfs",
    "detect",
    "detect_even",
    "detect_even_low_prob",
    "detect_odd",
    "detect_bounded",
]
