"""Abstrakte Basisklassen für Zyklus-Detektoren"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional

from core.graph import Graph
from core.simulator import RoundLedger, Verdict


@dataclass
class DetectionResult:
    """Globales Urteil, Rundenbuchhaltung und Statistik eines Laufs"""

    verdict: Verdict
    ledger: RoundLedger
    stats: Dict[str, Any] = field(default_factory=dict)

    def __iter__(self) -> Iterator[Any]:
        # erlaubt verdict, ledger, stats = detect_even(...)
        yield self.verdict
        yield self.ledger
        yield self.stats

    @property
    def rejected(self) -> bool:
        return self.verdict is Verdict.REJECT


class CycleDetector(ABC):
    """Abstrakte Basis-Klasse für Detektoren"""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def detect(self, g: Graph, seed: int, **options: Any) -> DetectionResult:
        """Führt den Detektor auf g aus"""
        pass

    @abstractmethod
    def min_nodes(self) -> int:
        """Kleinste zulässige Knotenzahl"""
        pass

    def is_applicable(self, g: Graph) -> bool:
        return g.n >= self.min_nodes()

    def describe(self) -> Optional[str]:
        return self.__doc__
