"""Hilfsfunktionen und Validatoren"""

from .validators import (
    check_dependencies,
    validate_seed,
    validate_graph_file,
    validate_experiment_config,
    validate_cost_params,
)

__all__ = [
    "check_dependencies",
    "validate_seed",
    "validate_graph_file",
    "validate_experiment_config",
    "validate_cost_params",
]
