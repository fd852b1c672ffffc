"""Erkennungsalgorithmen: gerade Zyklen, Variante mit kleiner Erfolgswahrscheinlichkeit,
ungerade Zyklen und Zyklen beschränkter Länge"""

from __future__ import annotations

from collections import Counter
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import ParameterError, SimulationFault
from core.graph import Coloring, Graph, NodeSet, induced_subgraph
from core.simulator import RoundLedger, Verdict, derive_seed
from detection.base import CycleDetector, DetectionResult
from detection.color_bfs import BfsOutcome, color_bfs, randomized_color_bfs
from detection.params import DetectionParams, RoleSets, build_role_sets
from oracle.cycles import validate_cycle
from utils.config import COLOR_ANNOUNCE_ROUNDS, RANDOMIZED_THRESHOLD, STREAM_COLORING
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('detectors')

CALL_LIGHT = "light"
CALL_SELECTED = "selected"
CALL_WITNESS = "witness"
CALL_MERGED = "merged"
CALL_ALL = "all"

# (Name, Teilgraph, Quellmenge)
SearchCall = Tuple[str, Graph, NodeSet]


def draw_coloring(n: int, palette: int, seed: int, iteration: int) -> Coloring:
    """Frische uniforme Färbung pro Iteration; Eintrag v ist die Farbe von Knoten v"""
    rng = np.random.default_rng([seed, STREAM_COLORING, iteration])
    return Coloring(rng.integers(0, palette, size=n), palette)


class _IterationLoop:
    """Gemeinsame Schleife über K Iterationen mit Buchhaltung und Zertifikaten"""

    def __init__(self, g: Graph, variant: str, params: DetectionParams, seed: int):
        self.g = g
        self.variant = variant
        self.params = params
        self.seed = seed
        self.ledger = RoundLedger()
        self.rejecting: set = set()
        self.call_rejections: Counter = Counter()
        self.first_reject: Optional[int] = None
        self.certificate: Optional[Tuple[int, ...]] = None
        self.certificate_call: Optional[str] = None
        self.iterations_run = 0

    def run(self, calls: Sequence[SearchCall], search: Callable[[Graph, Coloring, NodeSet, int], BfsOutcome],
            valid_lengths: Sequence[int], forced_coloring: Optional[Coloring] = None,
            iteration_offset: int = 0, stream: int = 0) -> bool:
        herkunft = 'detectors.py'
        params = self.params
        active_calls = [(name, h, x) for name, h, x in calls if len(x) > 0]
        rejected_here = False
        for r in range(params.K):
            iteration = iteration_offset + r
            c = forced_coloring if forced_coloring is not None else draw_coloring(
                self.g.n, params.colors, derive_seed(self.seed, stream), r)
            if self.g.num_edges:
                self.ledger.record_phase("announce-colors", COLOR_ANNOUNCE_ROUNDS, 1, 2 * self.g.num_edges)
            for index, (name, h, x) in enumerate(active_calls):
                outcome = search(h, c, x, derive_seed(self.seed, stream, r, index))
                self.ledger.merge(outcome.ledger, prefix=name)
                if not outcome.rejected:
                    continue
                rejected_here = True
                self.call_rejections[name] += 1
                self.rejecting.update(outcome.rejecting_nodes)
                if self.first_reject is None:
                    self.first_reject = iteration
                    self.certificate = self._validated_certificate(outcome, valid_lengths, name)
                    self.certificate_call = name
                    log_with_prefix(logger, 'debug', 'DETECT', herkunft,
                                    '🎯 %s: Ablehnung in Iteration %d (Aufruf %s), Zyklus %s',
                                    self.variant, iteration, name, list(self.certificate))
            self.iterations_run += 1
            if params.early_stop and self.first_reject is not None:
                break
        return rejected_here

    def _validated_certificate(self, outcome: BfsOutcome, valid_lengths: Sequence[int], call: str) -> Tuple[int, ...]:
        cycle = outcome.certificate()
        if cycle is None or not any(validate_cycle(self.g, cycle, length=L) for L in valid_lengths):
            diagnostic = f"{self.variant}/{call}: ungültiges Ablehnungszertifikat {cycle}"
            log_with_prefix(logger, 'error', 'DETECT', 'detectors.py', '❌ %s', diagnostic)
            raise SimulationFault(diagnostic, outcome.ledger)
        return cycle

    def result(self, extra: Optional[Dict[str, Any]] = None) -> DetectionResult:
        verdict = Verdict.REJECT if self.rejecting else Verdict.ACCEPT
        stats: Dict[str, Any] = {
            "variant": self.variant,
            "k": self.params.k,
            "n": self.g.n,
            "params": self.params.to_dict(),
            "overrides": self.params.overrides,
            "verdict": verdict.value,
            "rejecting_nodes": sorted(self.rejecting),
            "certificate_cycle": list(self.certificate) if self.certificate else None,
            "certificate_call": self.certificate_call,
            "rounds": self.ledger.rounds_elapsed,
            "max_congestion": self.ledger.max_congestion,
            "iteration_of_first_reject": self.first_reject,
            "iterations_run": self.iterations_run,
            "call_rejections": dict(sorted(self.call_rejections.items())),
        }
        if extra:
            stats.update(extra)
        log_with_prefix(logger, 'debug', 'DETECT', 'detectors.py', '📊 %s: Urteil=%s, Runden=%d, Iterationen=%d',
                        self.variant, verdict.value, stats["rounds"], self.iterations_run)
        return DetectionResult(verdict, self.ledger, stats)


def _require_nodes(g: Graph, minimum: int, variant: str) -> None:
    if g.n < minimum:
        raise ParameterError(f"{variant}: n={g.n} kleiner als benötigte {minimum} Knoten")


def _even_calls(g: Graph, roles: RoleSets) -> List[SearchCall]:
    return [
        (CALL_LIGHT, induced_subgraph(g, roles.U), roles.U),
        (CALL_SELECTED, g, roles.S),
        (CALL_WITNESS, induced_subgraph(g, roles.S.complement()), roles.W),
    ]


def _role_stats(roles: RoleSets) -> Dict[str, Any]:
    return {"role_sizes": {"U": len(roles.U), "S": len(roles.S), "W": len(roles.W)}}


def _check_params(g: Graph, params: DetectionParams, variant: str) -> None:
    if params.n != g.n:
        raise ParameterError(f"{variant}: Parameter für n={params.n}, Graph hat n={g.n}")


def detect_even(g: Graph, params: DetectionParams, seed: int,
                forced_coloring: Optional[Coloring] = None,
                forced_selection: Optional[NodeSet] = None) -> DetectionResult:
    """Entscheidet C_{2k}-Freiheit mit einseitigem Fehler ε (drei color-BFS-Aufrufe pro Iteration)"""
    herkunft = 'detectors.py'
    variant = "even"
    _check_params(g, params, variant)
    _require_nodes(g, 2 * params.k, variant)
    k, tau = params.k, params.tau
    roles = build_role_sets(g, params, seed, forced_selection)
    log_with_prefix(logger, 'debug', 'DETECT', herkunft, '🔍 even: k=%d, n=%d, p=%.4f, K=%d, τ=%d, |U|=%d, |S|=%d, |W|=%d',
                    k, g.n, params.p, params.K, tau, len(roles.U), len(roles.S), len(roles.W))

    def search(h: Graph, c: Coloring, x: NodeSet, call_seed: int) -> BfsOutcome:
        return color_bfs(k, h, c, x, tau, seed=call_seed)

    loop = _IterationLoop(g, variant, params, seed)
    loop.run(_even_calls(g, roles), search, [2 * k], forced_coloring)
    return loop.result(_role_stats(roles))


def detect_even_low_prob(g: Graph, params: DetectionParams, seed: int,
                         forced_coloring: Optional[Coloring] = None,
                         forced_selection: Optional[NodeSet] = None) -> DetectionResult:
    """Wie detect_even, jede color-BFS durch die randomisierte Variante ersetzt"""
    variant = "even_low_prob"
    _check_params(g, params, variant)
    _require_nodes(g, 2 * params.k, variant)
    k, tau = params.k, params.tau
    roles = build_role_sets(g, params, seed, forced_selection)

    def search(h: Graph, c: Coloring, x: NodeSet, call_seed: int) -> BfsOutcome:
        return randomized_color_bfs(k, h, c, x, tau, seed=call_seed)

    loop = _IterationLoop(g, variant, params, seed)
    loop.run(_even_calls(g, roles), search, [2 * k], forced_coloring)
    extra = _role_stats(roles)
    extra["success_lower_bound"] = 1.0 / (3.0 * tau)
    extra["threshold"] = RANDOMIZED_THRESHOLD
    return loop.result(extra)


def detect_odd(g: Graph, k: int, seed: int, params: Optional[DetectionParams] = None,
               forced_coloring: Optional[Coloring] = None) -> DetectionResult:
    """C_{2k+1}: randomisierte color-BFS über 2k+1 Farben, X = V, Aktivierung 1/n, Schwelle 4"""
    variant = "odd"
    if params is None:
        params = DetectionParams.for_variant(variant, g.n, k)
    _check_params(g, params, variant)
    if params.k != k or params.colors != 2 * k + 1:
        raise ParameterError(f"odd: Parameter passen nicht zu k={k}")
    _require_nodes(g, 2 * k + 1, variant)
    everyone = NodeSet.full(g.n)
    activation = 1.0 / g.n

    def search(h: Graph, c: Coloring, x: NodeSet, call_seed: int) -> BfsOutcome:
        return randomized_color_bfs(k, h, c, x, params.tau, seed=call_seed,
                                    length=2 * k + 1, meet=k, activation=activation)

    loop = _IterationLoop(g, variant, params, seed)
    loop.run([(CALL_ALL, g, everyone)], search, [2 * k + 1], forced_coloring)
    return loop.result({"activation": activation, "threshold": RANDOMIZED_THRESHOLD})


def detect_bounded(g: Graph, k: int, seed: int, params: Optional[DetectionParams] = None,
                   forced_coloring: Optional[Coloring] = None) -> DetectionResult:
    """F_{2k}: Durchläufe ℓ = 2..k prüfen C_{2ℓ−1} und C_{2ℓ} gemeinsam.

    Eine vorgegebene Färbung gilt für den Durchlauf, dessen Palette 2ℓ sie hat;
    die übrigen Durchläufe ziehen ihre Färbungen zufällig.
    """
    herkunft = 'detectors.py'
    variant = "bounded"
    if params is None:
        params = DetectionParams.for_variant(variant, g.n, k)
    _check_params(g, params, variant)
    if params.k != k:
        raise ParameterError(f"bounded: Parameter passen nicht zu k={k}")
    _require_nodes(g, 2 * k, variant)
    if forced_coloring is not None and forced_coloring.palette not in range(4, 2 * k + 1, 2):
        raise ParameterError(f"bounded: Palette {forced_coloring.palette} passt zu keinem Durchlauf ℓ = 2..{k}")

    loop = _IterationLoop(g, variant, params, seed)
    passes: List[Dict[str, Any]] = []
    reject_pass: Optional[int] = None
    offset = 0
    for ell in range(2, k + 1):
        pass_params = params.for_pass(ell)
        roles = build_role_sets(g, pass_params, seed, stream=ell)
        tau = pass_params.tau
        calls = [
            (CALL_LIGHT, induced_subgraph(g, roles.U), roles.U),
            (CALL_MERGED, g, roles.W),
        ]

        def search(h: Graph, c: Coloring, x: NodeSet, call_seed: int, ell=ell, tau=tau) -> BfsOutcome:
            return color_bfs(ell, h, c, x, tau, seed=call_seed, odd_check=True)

        loop.params = pass_params
        pass_coloring = forced_coloring if forced_coloring is not None and forced_coloring.palette == 2 * ell else None
        rejected = loop.run(calls, search, [2 * ell - 1, 2 * ell], pass_coloring, iteration_offset=offset, stream=ell)
        offset = loop.iterations_run
        passes.append({"ell": ell, "params": pass_params.to_dict(), "rejected": rejected,
                       "role_sizes": {"U": len(roles.U), "S": len(roles.S), "W": len(roles.W)}})
        log_with_prefix(logger, 'debug', 'DETECT', herkunft, 'bounded: Durchlauf ℓ=%d beendet (abgelehnt=%s)', ell, rejected)
        if rejected:
            reject_pass = ell
            break

    loop.params = params
    return loop.result({"passes": passes, "pass_of_first_reject": reject_pass})


class _VariantDetector(CycleDetector):
    """Adapter einer Erkennungsfunktion an die Detektor-Schnittstelle"""

    def __init__(self, variant: str, minimum: Callable[[int], int]):
        super().__init__(variant)
        self._minimum = minimum
        self.k: Optional[int] = None

    def min_nodes(self) -> int:
        return self._minimum(self.k or 2)

    def detect(self, g: Graph, seed: int, k: int = 2, params: Optional[DetectionParams] = None,
               **options: Any) -> DetectionResult:
        self.k = k
        if params is None:
            params = DetectionParams.for_variant(self.name, g.n, k)
        if self.name == "even":
            return detect_even(g, params, seed, **options)
        if self.name == "even_low_prob":
            return detect_even_low_prob(g, params, seed, **options)
        if self.name == "odd":
            return detect_odd(g, k, seed, params, **options)
        return detect_bounded(g, k, seed, params, **options)


class DetectorRegistry:
    """Lädt Detektoren nach Variantenname und hält sie im Cache"""

    _MINIMUM = {
        "even": lambda k: 2 * k,
        "even_low_prob": lambda k: 2 * k,
        "odd": lambda k: 2 * k + 1,
        "bounded": lambda k: 2 * k,
    }

    def __init__(self):
        self._cache: Dict[str, CycleDetector] = {}

    def get(self, variant: str) -> CycleDetector:
        herkunft = 'detectors.py'
        if variant not in self._MINIMUM:
            raise ParameterError(f"Unbekannte Variante: {variant}")
        if variant not in self._cache:
            log_with_prefix(logger, 'debug', 'DETECT', herkunft, 'Lade Detektor: %s', variant)
            self._cache[variant] = _VariantDetector(variant, self._MINIMUM[variant])
        return self._cache[variant]


_REGISTRY = DetectorRegistry()


def detect(variant: str, g: Graph, params: DetectionParams, seed: int) -> DetectionResult:
    """Führt die angegebene Variante mit fertigen Parametern aus"""
    return _REGISTRY.get(variant).detect(g, seed, k=params.k, params=params)
