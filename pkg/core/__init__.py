"""Kern-Funktionalitäten: Graphen, Simulator, Dateien und Versuchs-Worker"""

from .exceptions import (
    CycleSimException,
    GraphError,
    GraphFileError,
    SimulationFault,
    ParameterError,
    OracleSizeError,
    WitnessError,
    ConfigError,
)
from .file_manager import FileManager
from .graph import Graph, NodeSet, Coloring
from .workers import TrialWorker, TrialResult

__all__ = [
    "CycleSimException",
    "GraphError",
    "GraphFileError",
    "SimulationFault",
    "ParameterError",
    "OracleSizeError",
    "WitnessError",
    "ConfigError",
    "FileManager",
    "Graph",
    "NodeSet",
    "Coloring",
    "TrialWorker",
    "TrialResult",
]
