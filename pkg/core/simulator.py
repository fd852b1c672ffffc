"""Synchroner CONGEST-Simulator mit Bandbreite von einer Kennung pro Kante und Runde.

Ein Programm ist in Phasen gegliedert. In jeder Phase wird jeder Knoten
einmal mit seinem Posteingang aufgerufen; die erzeugten Nachrichten werden
über gerichtete Kantenwarteschlangen Runde für Runde zugestellt (eine
Nachricht pro Kante, Richtung und Runde) und landen im Posteingang der
nächsten Phase. Die Phase kostet genau so viele Runden wie die längste
Warteschlange.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from collections import OrderedDict, deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Deque, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import SimulationFault
from core.graph import Graph
from utils.config import STREAM_NODE
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('simulator')


class Verdict(str, Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class Message:
    """Eine Bandbreiteneinheit: eine Knotenkennung plus kleines Tag"""

    ident: int
    tag: str = ""


@dataclass
class StepResult:
    state: Any
    outbox: List[Tuple[int, Message]] = field(default_factory=list)
    verdict: Optional[Verdict] = None
    discarded: int = 0


class NodeContext:
    """Lokale Sicht eines Knotens: Kennung, Nachbarn, aktuelle Phase, Zufallsstrom pro Phase"""

    __slots__ = ('node', 'neighbors', 'phase', '_seed', '_rngs')

    def __init__(self, node: int, neighbors: Tuple[int, ...], seed: int, phase: int = 0):
        self.node = node
        self.neighbors = neighbors
        self.phase = phase
        self._seed = seed
        self._rngs: Dict[int, np.random.Generator] = {}

    @property
    def rng(self) -> np.random.Generator:
        # Strom (seed, Knoten, Phase) wird erst bei Bedarf angelegt
        generator = self._rngs.get(self.phase)
        if generator is None:
            generator = np.random.default_rng([self._seed, self.node, STREAM_NODE, self.phase])
            self._rngs[self.phase] = generator
        return generator


class NodeProgram(ABC):
    """Abstrakte Basis für Knotenprogramme"""

    reactive: bool = False

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def phases(self) -> List[str]:
        """Namen der Phasen in Ausführungsreihenfolge"""
        pass

    @abstractmethod
    def init_state(self, ctx: NodeContext) -> Any:
        pass

    @abstractmethod
    def step(self, ctx: NodeContext, state: Any, inbox: List[Tuple[int, Message]], phase: int) -> StepResult:
        """Reine Schrittfunktion: (Zustand, Posteingang, Phase) → StepResult"""
        pass


@dataclass
class PhaseRecord:
    rounds: int = 0
    max_congestion: int = 0
    messages: int = 0
    dropped: int = 0
    discarded: int = 0
    count: int = 0


@dataclass
class RoundLedger:
    """Rundenbuchhaltung: Runden pro Phase, maximale Kantenlast, Verwürfe"""

    phases: "OrderedDict[str, PhaseRecord]" = field(default_factory=OrderedDict)
    notes: List[str] = field(default_factory=list)
    faults: List[str] = field(default_factory=list)
    verdict_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def rounds_elapsed(self) -> int:
        return sum(rec.rounds for rec in self.phases.values())

    @property
    def max_congestion(self) -> int:
        return max((rec.max_congestion for rec in self.phases.values()), default=0)

    @property
    def messages(self) -> int:
        return sum(rec.messages for rec in self.phases.values())

    @property
    def dropped(self) -> int:
        return sum(rec.dropped for rec in self.phases.values())

    @property
    def discarded(self) -> int:
        return sum(rec.discarded for rec in self.phases.values())

    def record_phase(self, name: str, rounds: int, max_congestion: int = 0, messages: int = 0,
                     dropped: int = 0, discarded: int = 0) -> None:
        rec = self.phases.setdefault(name, PhaseRecord())
        rec.rounds += rounds
        rec.max_congestion = max(rec.max_congestion, max_congestion)
        rec.messages += messages
        rec.dropped += dropped
        rec.discarded += discarded
        rec.count += 1

    def merge(self, other: "RoundLedger", prefix: str = "") -> None:
        """Addiert eine andere Buchhaltung phasenweise (Phasennamen mit Präfix)"""
        for name, rec in other.phases.items():
            key = f"{prefix}/{name}" if prefix else name
            mine = self.phases.setdefault(key, PhaseRecord())
            mine.rounds += rec.rounds
            mine.max_congestion = max(mine.max_congestion, rec.max_congestion)
            mine.messages += rec.messages
            mine.dropped += rec.dropped
            mine.discarded += rec.discarded
            mine.count += rec.count
        self.notes.extend(other.notes)
        self.faults.extend(other.faults)
        for key, value in other.verdict_counts.items():
            self.verdict_counts[key] = self.verdict_counts.get(key, 0) + value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rounds_elapsed": self.rounds_elapsed,
            "max_congestion": self.max_congestion,
            "messages": self.messages,
            "dropped": self.dropped,
            "discarded": self.discarded,
            "phases": {
                name: {
                    "rounds": rec.rounds,
                    "max_congestion": rec.max_congestion,
                    "messages": rec.messages,
                    "dropped": rec.dropped,
                    "discarded": rec.discarded,
                    "count": rec.count,
                }
                for name, rec in self.phases.items()
            },
            "verdict_counts": dict(sorted(self.verdict_counts.items())),
            "notes": list(self.notes),
            "faults": list(self.faults),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass
class SimulationResult:
    verdicts: Dict[int, Verdict]
    ledger: RoundLedger
    states: Dict[int, Any]

    @property
    def rejecting_nodes(self) -> List[int]:
        return [v for v, verdict in self.verdicts.items() if verdict is Verdict.REJECT]

    @property
    def rejected(self) -> bool:
        return any(verdict is Verdict.REJECT for verdict in self.verdicts.values())


def run(g: Graph, program: NodeProgram, seed: int = 0) -> SimulationResult:
    """Führt ein Programm ohne Rundenbudget aus"""
    return _execute(g, program, seed, None)


def run_phased(g: Graph, program: NodeProgram, phase_budgets: Sequence[Optional[int]], seed: int = 0) -> SimulationResult:
    """Führt ein Programm mit Rundenobergrenze pro Phase aus.

    Nachrichten, die nach Ablauf des Budgets noch in einer Warteschlange
    stehen, werden verworfen und in der Buchhaltung vermerkt.
    """
    phases = program.phases()
    if len(phase_budgets) != len(phases):
        raise SimulationFault(
            f"{program.name}: {len(phase_budgets)} Budgets für {len(phases)} Phasen")
    return _execute(g, program, seed, list(phase_budgets))


def _execute(g: Graph, program: NodeProgram, seed: int, budgets: Optional[List[Optional[int]]]) -> SimulationResult:
    herkunft = 'simulator.py'
    ledger = RoundLedger()
    phase_names = program.phases()
    contexts = [NodeContext(v, g.adjacency[v], seed) for v in range(g.n)]
    states: Dict[int, Any] = {v: program.init_state(contexts[v]) for v in range(g.n)}
    verdicts: Dict[int, Verdict] = {v: Verdict.UNDECIDED for v in range(g.n)}
    inboxes: Dict[int, List[Tuple[int, Message]]] = {}

    for phase, name in enumerate(phase_names):
        if program.reactive and phase > 0:
            active = sorted(inboxes)
        else:
            active = range(g.n)

        queues: Dict[Tuple[int, int], Deque[Message]] = {}
        discarded = 0
        for v in active:
            contexts[v].phase = phase
            inbox = inboxes.get(v, [])
            result = program.step(contexts[v], states[v], inbox, phase)
            states[v] = result.state
            discarded += result.discarded
            if result.verdict is Verdict.REJECT:
                verdicts[v] = Verdict.REJECT
            for target, message in result.outbox:
                if not g.has_edge(v, target):
                    diagnostic = (f"{program.name}: Knoten {v} sendet in Phase '{name}' "
                                  f"an Nicht-Nachbarn {target}")
                    ledger.faults.append(diagnostic)
                    log_with_prefix(logger, 'error', 'SIMULATOR', herkunft, '❌ %s', diagnostic)
                    raise SimulationFault(diagnostic, ledger)
                queues.setdefault((v, target), deque()).append(message)

        inboxes = _deliver(queues, name, ledger, None if budgets is None else budgets[phase], discarded)

    for v in range(g.n):
        if verdicts[v] is Verdict.UNDECIDED:
            verdicts[v] = Verdict.ACCEPT
    for verdict in verdicts.values():
        ledger.verdict_counts[verdict.value] = ledger.verdict_counts.get(verdict.value, 0) + 1
    return SimulationResult(verdicts, ledger, states)


def _deliver(queues: Dict[Tuple[int, int], Deque[Message]], name: str, ledger: RoundLedger,
             budget: Optional[int], discarded: int) -> Dict[int, List[Tuple[int, Message]]]:
    """Stellt Warteschlangen rundenweise zu und verbucht die Phase"""
    congestion = max((len(q) for q in queues.values()), default=0)
    total = sum(len(q) for q in queues.values())
    rounds = congestion if budget is None else min(congestion, max(budget, 0))

    # Runde r liefert das r-te Element jeder Kantenwarteschlange
    inboxes: Dict[int, List[Tuple[int, Message]]] = {}
    delivered = 0
    for (sender, target) in sorted(queues):
        queue = queues[(sender, target)]
        batch = [queue.popleft() for _ in range(min(rounds, len(queue)))]
        delivered += len(batch)
        if batch:
            inboxes.setdefault(target, []).extend((sender, message) for message in batch)

    dropped = total - delivered
    if dropped:
        ledger.notes.append(f"Phase '{name}': {dropped} Nachrichten nach Budget {budget} verworfen")
    ledger.record_phase(name, rounds, congestion, delivered, dropped, discarded)
    return inboxes


def derive_seed(*parts: int) -> int:
    """Leitet einen reproduzierbaren Teil-Seed aus (seed, ...) ab"""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])
