"""color-BFS mit Schwelle als Knotenprogramm, deterministisch und randomisiert.

Jeder Quellknoten (in X, Farbe 0) schickt seine ID an Nachbarn mit Farbe 1
(aufsteigende Kette) und mit Farbe L−1 (absteigende Kette). Ein Knoten der
Farbe i sammelt die IDs seiner Vorgänger in I_v und leitet sie nur weiter,
wenn |I_v| ≤ Schwelle. Der Knoten mit der Treffpunktfarbe lehnt ab, sobald
dieselbe ID aus beiden Richtungen eintrifft.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from core.exceptions import ParameterError
from core.graph import Coloring, Graph, NodeSet
from core.simulator import (
    Message, NodeContext, NodeProgram, SimulationResult, StepResult, Verdict, run, run_phased,
)
from oracle.paths import chain_colors
from utils.config import RANDOMIZED_THRESHOLD

SRC = "src"
ASC = "asc"
DESC = "desc"
ODD = "odd"

KIND_EVEN = "even"
KIND_ODD = "odd"


@dataclass
class BfsState:
    color: int
    source: bool
    active: Optional[bool] = None
    received: Dict[str, Dict[int, int]] = field(default_factory=lambda: {ASC: {}, DESC: {}, ODD: {}})
    forwarded: bool = False
    overflow: bool = False
    rejected: bool = False
    match: Optional[int] = None
    match_kind: Optional[str] = None

    def ids(self, side: str) -> FrozenSet[int]:
        return frozenset(self.received[side])


class ColorBfsProgram(NodeProgram):
    """Knotenprogramm für eine color-BFS über L Farben mit Treffpunktfarbe ``meet``"""

    reactive = True

    def __init__(self, coloring: Coloring, sources: NodeSet, threshold: float, meet: int, length: int,
                 activation: float = 1.0, odd_check: bool = False, name: str = "color-bfs"):
        super().__init__(name)
        if threshold < 1:
            raise ParameterError(f"Schwelle muss ≥ 1 sein: {threshold}")
        if not 0.0 < activation <= 1.0:
            raise ParameterError(f"Aktivierungswahrscheinlichkeit außerhalb (0,1]: {activation}")
        if odd_check and meet < 2:
            raise ParameterError("Ungerade Zusatzprüfung braucht Treffpunktfarbe ≥ 2")
        self.coloring = coloring
        self.sources = sources
        self.threshold = threshold
        self.meet = meet
        self.length = length
        self.activation = activation
        self.odd_check = odd_check
        _, _, ascending, descending = chain_colors(meet, length)
        self.ascending = frozenset(ascending)
        self.descending = frozenset(descending)
        self.last_phase = max(meet, length - meet)

    def phases(self) -> List[str]:
        return ["init"] + [f"level-{i}" for i in range(1, self.last_phase)] + ["check"]

    def budgets(self) -> List[Optional[int]]:
        """Rundenbudget pro Phase: 1 für die Initialisierung, Schwelle pro Ebene, 0 zum Prüfen"""
        level_budget = None if math.isinf(self.threshold) else int(self.threshold)
        return [1] + [level_budget] * (self.last_phase - 1) + [0]

    def init_state(self, ctx: NodeContext) -> BfsState:
        color = self.coloring[ctx.node]
        return BfsState(color=color, source=(color == 0 and ctx.node in self.sources))

    def _targets(self, ctx: NodeContext, color: int) -> List[int]:
        colors = self.coloring.colors
        return [u for u in ctx.neighbors if colors[u] == color]

    def _send(self, ctx: NodeContext, ids: List[int], color: int, tag: str, outbox: List[Tuple[int, Message]]) -> None:
        for u in self._targets(ctx, color):
            for ident in ids:
                outbox.append((u, Message(ident, tag)))

    def step(self, ctx: NodeContext, state: BfsState, inbox: List[Tuple[int, Message]], phase: int) -> StepResult:
        outbox: List[Tuple[int, Message]] = []
        if phase == 0:
            if state.source:
                state.active = self.activation >= 1.0 or bool(ctx.rng.random() < self.activation)
                if state.active:
                    self._send(ctx, [ctx.node], 1, SRC, outbox)
                    self._send(ctx, [ctx.node], self.length - 1, SRC, outbox)
            return StepResult(state, outbox)

        my = state.color
        colors = self.coloring.colors
        for sender, message in inbox:
            sender_color = int(colors[sender])
            if message.tag in (SRC, ASC) and sender_color == my - 1:
                side = ASC
            elif message.tag in (SRC, DESC) and sender_color == (my + 1) % self.length:
                side = DESC
            elif message.tag == ODD and self.odd_check and my == self.meet - 1 and sender_color == self.meet + 1:
                side = ODD
            else:
                continue
            # niedrigster Absender zuerst, da der Posteingang nach Absender sortiert ist
            state.received[side].setdefault(message.ident, sender)

        discarded = 0
        if my in self.ascending and phase == my:
            discarded = self._forward(ctx, state, ASC, my + 1, outbox)
        elif my in self.descending and phase == self.length - my:
            discarded = self._forward(ctx, state, DESC, my - 1, outbox)

        verdict = None
        if not state.rejected:
            if my == self.meet:
                common = state.received[ASC].keys() & state.received[DESC].keys()
                if common:
                    state.rejected, state.match, state.match_kind = True, min(common), KIND_EVEN
            elif self.odd_check and my == self.meet - 1 and state.received[ODD]:
                common = state.received[ASC].keys() & state.received[ODD].keys()
                if common:
                    state.rejected, state.match, state.match_kind = True, min(common), KIND_ODD
            if state.rejected:
                verdict = Verdict.REJECT
        return StepResult(state, outbox, verdict, discarded)

    def _forward(self, ctx: NodeContext, state: BfsState, side: str, next_color: int,
                 outbox: List[Tuple[int, Message]]) -> int:
        ids = sorted(state.received[side])
        if not ids:
            return 0
        if len(ids) > self.threshold:
            state.overflow = True
            return len(ids)
        state.forwarded = True
        self._send(ctx, ids, next_color, side, outbox)
        if self.odd_check and side == DESC and state.color == self.meet + 1:
            self._send(ctx, ids, self.meet - 1, ODD, outbox)
        return 0


@dataclass
class BfsOutcome:
    """Ergebnis eines color-BFS-Aufrufs samt Zertifikatsrekonstruktion"""

    result: SimulationResult
    program: ColorBfsProgram

    @property
    def verdicts(self) -> Dict[int, Verdict]:
        return self.result.verdicts

    @property
    def ledger(self):
        return self.result.ledger

    @property
    def rejected(self) -> bool:
        return self.result.rejected

    @property
    def rejecting_nodes(self) -> List[int]:
        return self.result.rejecting_nodes

    def state(self, v: int) -> BfsState:
        return self.result.states[v]

    def I(self, v: int) -> FrozenSet[int]:
        """Empfangene Quell-IDs eines Weiterleiters in seiner Kettenrichtung"""
        state = self.result.states[v]
        if state.color in self.program.ascending:
            return state.ids(ASC)
        if state.color in self.program.descending:
            return state.ids(DESC)
        return frozenset()

    def _trace(self, start: int, side: str, source: int) -> List[int]:
        chain = [start]
        current = start
        while current != source:
            current = self.result.states[current].received[side][source]
            chain.append(current)
        return chain

    def certificate(self, v: Optional[int] = None) -> Optional[Tuple[int, ...]]:
        """Zyklus aus den beiden ID-Pfaden des (kleinsten) ablehnenden Knotens"""
        rejecting = self.rejecting_nodes
        if not rejecting:
            return None
        v = rejecting[0] if v is None else v
        state = self.result.states[v]
        if not state.rejected:
            return None
        x = state.match
        ascending = self._trace(v, ASC, x)
        if state.match_kind == KIND_EVEN:
            descending = self._trace(v, DESC, x)
        else:
            middle = state.received[ODD][x]
            descending = [v] + self._trace(middle, DESC, x)
        return tuple(list(reversed(ascending)) + descending[1:-1])


def _execute(h: Graph, program: ColorBfsProgram, seed: int) -> BfsOutcome:
    if math.isinf(program.threshold):
        return BfsOutcome(run(h, program, seed), program)
    return BfsOutcome(run_phased(h, program, program.budgets(), seed), program)


def _check_coloring(h: Graph, c: Coloring, x: NodeSet, palette: int) -> None:
    if len(c) != h.n or x.n != h.n:
        raise ParameterError("Färbung oder Quellmenge passt nicht zur Knotenzahl")
    if c.palette > palette:
        raise ParameterError(f"Palette {c.palette} größer als Zykluslänge {palette}")


def color_bfs(k: int, h: Graph, c: Coloring, x: NodeSet, tau: float, seed: int = 0,
              length: Optional[int] = None, meet: Optional[int] = None, odd_check: bool = False) -> BfsOutcome:
    """color-BFS(k, H, c, X, τ): deterministische Variante mit Schwelle τ"""
    if tau < 1:
        raise ParameterError(f"τ muss ≥ 1 sein: {tau}")
    cycle_length = 2 * k if length is None else length
    _check_coloring(h, c, x, cycle_length)
    program = ColorBfsProgram(c, x, tau, k if meet is None else meet, cycle_length,
                              odd_check=odd_check, name="color-bfs")
    return _execute(h, program, seed)


def randomized_color_bfs(k: int, h: Graph, c: Coloring, x: NodeSet, tau: float, seed: int = 0,
                         length: Optional[int] = None, meet: Optional[int] = None,
                         activation: Optional[float] = None) -> BfsOutcome:
    """Randomisierte Variante: Quellen aktivieren sich mit Wahrscheinlichkeit 1/τ, Schwelle 4"""
    if tau < 1:
        raise ParameterError(f"τ muss ≥ 1 sein: {tau}")
    cycle_length = 2 * k if length is None else length
    _check_coloring(h, c, x, cycle_length)
    probability = (1.0 / tau) if activation is None else activation
    program = ColorBfsProgram(c, x, RANDOMIZED_THRESHOLD, k if meet is None else meet, cycle_length,
                              activation=probability, name="randomized-color-bfs")
    return _execute(h, program, seed)
