"""Experiment-Runner: Instanzen bauen, Versuche ausführen, Statistik aggregieren, Reports schreiben"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.exceptions import ConfigError, ParameterError
from core.file_manager import FileManager
from core.graph import Graph, generate, plant_cycle
from core.simulator import derive_seed
from core.workers import TrialJob, TrialWorker
from detection.detectors import detect
from detection.params import DetectionParams
from oracle.cycles import CycleQuery, find_cycle, girth, validate_cycle
from quantum.cost import (
    crossover_threshold, expected_exponent, fit_exponent, quantum_c2k_rounds, sweep,
)
from utils.config import (
    Config, COST_SWEEP_EXPONENTS, DEFAULT_EPSILON, STREAM_TRIAL, WILSON_CONFIDENCE,
)
from utils.logger import log_with_prefix, get_normalized_logger
from utils.statistics import round_percentiles, wilson_interval
from utils.validators import REPORT_FORMATS, validate_cost_params, validate_experiment_config
from witness.extraction import density_pipeline
from witness.instances import k45_instance, random_level_instance
from witness.sparsification import bound_W0v

logger = get_normalized_logger('runner')


@dataclass
class ExperimentConfig:
    """Effektive Konfiguration eines detect-Laufs"""

    variant: str = "even"
    k: int = 2
    n: int = 32
    epsilon: float = DEFAULT_EPSILON
    trials: int = 1
    seed: int = 0
    generator: str = "erdos_renyi"
    generator_params: Dict[str, Any] = field(default_factory=dict)
    plant: Optional[int] = None
    heavy_hub: bool = False
    p_override: Optional[float] = None
    K_override: Optional[int] = None
    tau_override: Optional[int] = None
    early_stop: bool = False
    graph_file: Optional[str] = None
    output: Optional[str] = None
    format: str = "json"
    max_workers: int = 1

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unbekannte Konfigurationsschlüssel: {', '.join(unknown)}")
        return cls(**data)

    def merged(self, overrides: Dict[str, Any]) -> "ExperimentConfig":
        """Neue Konfiguration, gesetzte Werte aus ``overrides`` gewinnen"""
        data = self.to_dict()
        data.update({key: value for key, value in overrides.items() if value is not None})
        return ExperimentConfig.from_dict(data)

    def validate(self) -> None:
        ok, message = validate_experiment_config(self.to_dict())
        if not ok:
            raise ConfigError(message)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class ExperimentReport:
    """Zeilen pro Versuch plus Aggregate; die Aggregate sind aus den Zeilen rekonstruierbar"""

    command: str
    config: Dict[str, Any]
    records: List[Dict[str, Any]] = field(default_factory=list)
    aggregates: Dict[str, Any] = field(default_factory=dict)
    extra: Dict[str, Any] = field(default_factory=dict)
    generated_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "app": Config.get_app_info(),
            "config": self.config,
            "records": self.records,
            "aggregates": self.aggregates,
            **self.extra,
            "generated_at": self.generated_at,
        }


def aggregate_trials(records: Sequence[Dict[str, Any]]) -> Dict[str, Any]:
    """Ablehnungsfrequenz mit Wilson-Intervall und Runden-Perzentile"""
    trials = len(records)
    rejections = sum(1 for r in records if r["verdict"] == "reject")
    low, high = wilson_interval(rejections, trials)
    rounds = [r["rounds"] for r in records]
    return {
        "trials": trials,
        "rejections": rejections,
        "rejection_frequency": rejections / trials if trials else 0.0,
        "wilson_confidence": WILSON_CONFIDENCE,
        "wilson_low": low,
        "wilson_high": high,
        "round_percentiles": round_percentiles(rounds),
        "max_rounds": max(rounds, default=0),
        "max_congestion": max((r["max_congestion"] for r in records), default=0),
    }


def write_report(report: ExperimentReport, output: Optional[str], fmt: str = "json",
                 rows: Optional[List[Dict[str, Any]]] = None) -> Optional[str]:
    if not output:
        return None
    if fmt not in REPORT_FORMATS:
        raise ConfigError(f"Unbekanntes Ausgabeformat: {fmt}")
    manager = FileManager()
    if fmt == "csv":
        return manager.write_csv(report.records if rows is None else rows, output)
    return manager.write_json(report.to_dict(), output)


def build_instance(config: ExperimentConfig) -> Tuple[Graph, Dict[str, Any]]:
    """Graph aus Datei oder Generator, optional mit eingepflanztem Zyklus"""
    if config.graph_file:
        g = FileManager().read_graph(config.graph_file)
        info: Dict[str, Any] = {"source": config.graph_file}
    else:
        g = generate(config.generator, config.n, seed=config.seed, **config.generator_params)
        info = {"source": config.generator}
    if config.plant:
        planted = plant_cycle(g, config.plant, heavy_hub=config.heavy_hub, seed=config.seed, k=config.k)
        g = planted.graph
        info["planted_cycle"] = list(planted.cycle)
        info["hub"] = planted.hub
    info.update({"n": g.n, "m": g.num_edges})
    return g, info


def _trial_record(index: int, seed: int, stats: Dict[str, Any]) -> Dict[str, Any]:
    certificate = stats.get("certificate_cycle")
    return {
        "trial": index,
        "seed": seed,
        "verdict": stats["verdict"],
        "rounds": stats["rounds"],
        "max_congestion": stats["max_congestion"],
        "iteration_of_first_reject": stats["iteration_of_first_reject"],
        "iterations_run": stats["iterations_run"],
        "rejecting_nodes": len(stats["rejecting_nodes"]),
        "certificate": "-".join(str(v) for v in certificate) if certificate else "",
        "certificate_call": stats.get("certificate_call") or "",
    }


def cmd_detect(config: ExperimentConfig, worker: Optional[TrialWorker] = None) -> ExperimentReport:
    """Führt ``trials`` unabhängige Läufe mit abgeleiteten Seeds aus"""
    herkunft = 'runner.py'
    config.validate()
    g, graph_info = build_instance(config)
    if config.graph_file:
        config = config.merged({"n": g.n})
    try:
        params = DetectionParams.for_variant(
            config.variant, g.n, config.k, config.epsilon,
            p_override=config.p_override, K_override=config.K_override,
            tau_override=config.tau_override, early_stop=config.early_stop)
    except ParameterError as e:
        raise ConfigError(str(e)) from e

    log_with_prefix(logger, 'info', 'RUNNER', herkunft, '🚀 detect %s: k=%d, n=%d, Versuche=%d, K=%d, τ=%d',
                    config.variant, config.k, g.n, config.trials, params.K, params.tau)

    def run_trial(seed: int) -> Dict[str, Any]:
        return detect(config.variant, g, params, seed).stats

    jobs = [TrialJob(i, derive_seed(config.seed, STREAM_TRIAL, i), run_trial) for i in range(config.trials)]
    worker = worker or TrialWorker(config.max_workers)
    results = worker.run_all(jobs)
    for result in results:
        if result.status == "error":
            raise result.error
    records = [_trial_record(r.index, jobs[r.index].seed, r.value) for r in results if r.status == "done"]

    aggregates = aggregate_trials(records)
    report = ExperimentReport(
        command="detect",
        config=config.to_dict(),
        records=records,
        aggregates=aggregates,
        extra={"params": params.to_dict(), "graph": graph_info, "worker": worker.get_statistics()},
    )
    log_with_prefix(logger, 'info', 'RUNNER', herkunft, '📊 Ablehnungsfrequenz %.4f (%d/%d), Wilson %.0f%%: [%.4f, %.4f]',
                    aggregates["rejection_frequency"], aggregates["rejections"], aggregates["trials"],
                    100 * WILSON_CONFIDENCE, aggregates["wilson_low"], aggregates["wilson_high"])
    write_report(report, config.output, config.format)
    return report


def cmd_graph_gen(kind: str, n: int, seed: int = 0, params: Optional[Dict[str, Any]] = None,
                  plant: Optional[int] = None, heavy_hub: bool = False, k: int = 2,
                  output: Optional[str] = None) -> Graph:
    g = generate(kind, n, seed=seed, **(params or {}))
    if plant:
        g = plant_cycle(g, plant, heavy_hub=heavy_hub, seed=seed, k=k).graph
    if output:
        FileManager().write_graph(g, output)
    return g


def cmd_oracle(action: str, g: Graph, length: Optional[int] = None, cycle: Optional[Sequence[int]] = None,
               output: Optional[str] = None) -> ExperimentReport:
    """find / girth / validate auf einem Graphen"""
    herkunft = 'runner.py'
    extra: Dict[str, Any] = {"action": action, "n": g.n, "m": g.num_edges}
    if action == "find":
        if length is None:
            raise ConfigError("oracle find braucht --length")
        found = find_cycle(g, CycleQuery(length))
        extra.update({"length": length, "cycle": list(found) if found else None})
    elif action == "girth":
        value = girth(g)
        extra.update({"girth": None if math.isinf(value) else int(value), "acyclic": math.isinf(value)})
    elif action == "validate":
        if not cycle:
            raise ConfigError("oracle validate braucht --cycle")
        extra.update({"cycle": list(cycle), "length": length, "valid": validate_cycle(g, cycle, length=length)})
    else:
        raise ConfigError(f"Unbekannte Orakel-Aktion: {action}")
    log_with_prefix(logger, 'info', 'RUNNER', herkunft, '🔍 oracle %s: %s', action,
                    {key: value for key, value in extra.items() if key not in ("n", "m")})
    report = ExperimentReport(command="oracle", config={"action": action, "length": length}, extra=extra)
    write_report(report, output, "json")
    return report


def cmd_extract(source: str = "k45", n: int = 24, k: int = 2, seed: int = 0, density: float = 0.5,
                output: Optional[str] = None) -> ExperimentReport:
    """Ausdünnung und Zeugenkonstruktion auf der K_{4,5}-Instanz oder einer Zufallsinstanz"""
    herkunft = 'runner.py'
    if source == "k45":
        g, ls, _ = k45_instance()
    elif source == "random":
        try:
            g, ls = random_level_instance(n, k, seed, density)
        except ParameterError as e:
            raise ConfigError(str(e)) from e
    else:
        raise ConfigError(f"Unbekannte Instanzquelle: {source}")

    fam, witness = density_pipeline(g, ls)
    bounds = []
    for i in range(1, ls.k):
        for v in ls.levels[i]:
            size, bound, holds = bound_W0v(g, ls, v)
            bounds.append({"v": v, "level": i, "W0_size": size, "bound": bound, "holds": holds})
    extra = {
        "instance": {"source": source, "n": g.n, "m": g.num_edges, "k": ls.k, "S": list(ls.S.ids()),
                     "levels": [list(level.ids()) for level in ls.levels]},
        "nonempty_core": fam.nonempty_core(),
        "witness": witness.to_dict() if witness else None,
    }
    log_with_prefix(logger, 'info', 'RUNNER', herkunft, '%s extract %s: Zeuge %s',
                    '✅' if witness else '⚠️', source, list(witness.cycle) if witness else None)
    config = {"source": source, "n": n, "k": k, "seed": seed, "density": density}
    report = ExperimentReport(command="extract", config=config, records=bounds, extra=extra)
    write_report(report, output, "json")
    return report


def cmd_cost(k: int = 2, exponents: Sequence[int] = COST_SWEEP_EXPONENTS, delta: float = 1.0 / 3.0,
             constants: Optional[Dict[str, Any]] = None, measured_T: Optional[float] = None,
             measured_tau: Optional[float] = None, measured_n: Optional[int] = None,
             output: Optional[str] = None, fmt: str = "csv") -> ExperimentReport:
    """Sweep des Kostenmodells mit angepasstem Exponenten und Übergangsschwelle"""
    herkunft = 'runner.py'
    ok, message = validate_cost_params(constants or {})
    if not ok:
        raise ConfigError(message)
    try:
        rows = sweep(k, tuple(exponents), delta, constants)
        fitted = fit_exponent(rows)
        threshold = crossover_threshold(k, delta, constants=constants)
        measured = None
        if measured_T is not None or measured_tau is not None:
            measured = quantum_c2k_rounds(measured_n or rows[0]["n"], k, delta, measured_T, measured_tau, constants).to_dict()
    except ParameterError as e:
        raise ConfigError(str(e)) from e

    merged = Config.get_cost_defaults()
    merged.update(constants or {})
    extra = {
        "fitted_exponent": fitted,
        "expected_exponent": expected_exponent(k),
        "crossover_threshold": threshold,
        "polylog_exponents": {"amplification": merged['amp_log_exponent'],
                              "decomposition": merged['dec_log_exponent']},
        "constants": merged,
        "measured": measured,
    }
    config = {"k": k, "exponents": list(exponents), "delta": delta}
    report = ExperimentReport(command="cost", config=config, records=rows, extra=extra)
    log_with_prefix(logger, 'info', 'RUNNER', herkunft, '🧮 cost k=%d: Exponent %.4f (erwartet %.4f), Übergang %s',
                    k, fitted, expected_exponent(k), threshold)
    write_report(report, output, fmt)
    return report
