"""
CONGEST-Zyklensimulator v1.0.0 - Kommandozeile
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from core.exceptions import (
    ConfigError, CycleSimException, GraphError, GraphFileError, OracleSizeError, ParameterError,
)
from core.file_manager import FileManager
from experiments.runner import (
    ExperimentConfig, cmd_cost, cmd_detect, cmd_extract, cmd_graph_gen, cmd_oracle,
)
from utils.config import (
    Config, APP_NAME, APP_VERSION, COST_SWEEP_EXPONENTS, EXIT_CONFIG_ERROR, EXIT_FAILURE,
    EXIT_INPUT_ERROR, EXIT_OK, EXIT_SIZE_GATE, GENERATOR_KINDS, VARIANTS,
)
from utils.logger import log_exception, log_with_prefix, set_debug_mode, setup_logger
from utils.validators import check_dependencies, validate_graph_file, validate_seed


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.replace(',', ' ').split()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Keine Ganzzahlliste: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclesim", description=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument("--debug", action="store_true", help="Debug-Logging aktivieren")
    parser.add_argument("--log-dir", default=None, help="Verzeichnis für die Log-Datei")
    parser.add_argument("--seed", type=int, default=None, help="Seed (Standard aus CYCLESIM_SEED oder 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="Graphinstanzen")
    graph_sub = graph.add_subparsers(dest="graph_command", required=True)
    gen = graph_sub.add_parser("gen", help="Kantenliste erzeugen")
    gen.add_argument("kind", choices=GENERATOR_KINDS)
    gen.add_argument("--n", type=int, default=16)
    gen.add_argument("--p", type=float, default=None, help="Kantenwahrscheinlichkeit (erdos_renyi)")
    gen.add_argument("--a", type=int, default=None, help="Seitengröße a (bipartite)")
    gen.add_argument("--b", type=int, default=None, help="Seitengröße b (bipartite)")
    gen.add_argument("--plant", type=int, default=None, help="Länge eines eingepflanzten Zyklus")
    gen.add_argument("--heavy-hub", action="store_true")
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--output", required=True)

    det = sub.add_parser("detect", help="Erkennungsvariante über mehrere Versuche ausführen")
    det.add_argument("--config", default=None, help="JSON-Konfigurationsdatei (Flags gewinnen)")
    det.add_argument("--variant", choices=VARIANTS, default=None)
    det.add_argument("--k", type=int, default=None)
    det.add_argument("--n", type=int, default=None)
    det.add_argument("--epsilon", type=float, default=None)
    det.add_argument("--trials", type=int, default=None)
    det.add_argument("--generator", choices=GENERATOR_KINDS, default=None)
    det.add_argument("--p", type=float, default=None, help="Kantenwahrscheinlichkeit (erdos_renyi)")
    det.add_argument("--graph-file", default=None)
    det.add_argument("--plant", type=int, default=None)
    det.add_argument("--heavy-hub", action="store_true", default=None)
    det.add_argument("--p-override", type=float, default=None)
    det.add_argument("--K-override", type=int, default=None)
    det.add_argument("--tau-override", type=int, default=None)
    det.add_argument("--early-stop", action="store_true", default=None)
    det.add_argument("--max-workers", type=int, default=None)
    det.add_argument("--output", default=None)
    det.add_argument("--format", choices=("json", "csv"), default=None)

    ora = sub.add_parser("oracle", help="Brute-Force-Orakel")
    ora.add_argument("action", choices=("find", "girth", "validate"))
    ora.add_argument("graph_file")
    ora.add_argument("--length", type=int, default=None)
    ora.add_argument("--cycle", type=_int_list, default=None)
    ora.add_argument("--output", default=None)

    ext = sub.add_parser("extract", help="Zyklenzeuge aus der Ausdünnung konstruieren")
    ext.add_argument("--source", choices=("k45", "random"), default="k45")
    ext.add_argument("--n", type=int, default=24)
    ext.add_argument("--k", type=int, default=2)
    ext.add_argument("--density", type=float, default=0.5)
    ext.add_argument("--output", default=None)

    cost = sub.add_parser("cost", help="Kostenmodell der Quanten-Pipeline")
    cost.add_argument("--k", type=int, default=2)
    cost.add_argument("--exponents", type=_int_list, default=list(COST_SWEEP_EXPONENTS),
                      help="Bereich e_min e_max für n = 2^e")
    cost.add_argument("--delta", type=float, default=1.0 / 3.0)
    cost.add_argument("--constants", default=None, help="JSON-Objekt mit c_amp, c_dec, c_D, Exponenten")
    cost.add_argument("--measured-T", type=float, default=None)
    cost.add_argument("--measured-tau", type=float, default=None)
    cost.add_argument("--measured-n", type=int, default=None)
    cost.add_argument("--output", default=None)
    cost.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def _load_config_file(path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return {}
    ok, message = validate_graph_file(path)
    if not ok:
        raise ConfigError(f"Konfigurationsdatei: {message}")
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Konfigurationsdatei nicht lesbar: {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("Konfigurationsdatei muss ein JSON-Objekt enthalten")
    return data


def _detect_config(args: argparse.Namespace, seed: int) -> ExperimentConfig:
    base = ExperimentConfig.from_dict(_load_config_file(args.config))
    overrides = {
        "variant": args.variant, "k": args.k, "n": args.n, "epsilon": args.epsilon, "trials": args.trials,
        "generator": args.generator, "graph_file": args.graph_file, "plant": args.plant,
        "heavy_hub": args.heavy_hub, "p_override": args.p_override, "K_override": args.K_override,
        "tau_override": args.tau_override, "early_stop": args.early_stop, "max_workers": args.max_workers,
        "output": args.output, "format": args.format, "seed": seed,
    }
    config = base.merged(overrides)
    if args.p is not None:
        config = config.merged({"generator_params": {**config.generator_params, "p": args.p}})
    return config


def _print_json(payload: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def dispatch(args: argparse.Namespace, seed: int) -> int:
    if args.command == "graph":
        params = {key: getattr(args, key) for key in ("p", "a", "b") if getattr(args, key) is not None}
        g = cmd_graph_gen(args.kind, args.n, seed, params, args.plant, args.heavy_hub, args.k, args.output)
        _print_json({"n": g.n, "m": g.num_edges, "output": args.output})
    elif args.command == "detect":
        report = cmd_detect(_detect_config(args, seed))
        _print_json(report.aggregates)
    elif args.command == "oracle":
        g = FileManager().read_graph(args.graph_file)
        report = cmd_oracle(args.action, g, args.length, args.cycle, args.output)
        _print_json({key: value for key, value in report.extra.items()})
    elif args.command == "extract":
        report = cmd_extract(args.source, args.n, args.k, seed, args.density, args.output)
        _print_json({"witness": report.extra["witness"], "nonempty_core": report.extra["nonempty_core"]})
    elif args.command == "cost":
        if len(args.exponents) != 2:
            raise ConfigError("--exponents erwartet genau zwei Werte")
        constants = json.loads(args.constants) if args.constants else None
        report = cmd_cost(args.k, args.exponents, args.delta, constants, args.measured_T, args.measured_tau,
                          args.measured_n, args.output, args.format)
        _print_json({key: report.extra[key] for key in ("fitted_exponent", "expected_exponent",
                                                        "crossover_threshold", "polylog_exponents")})
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Haupteinstiegspunkt der Anwendung"""
    herkunft = 'main.py'
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG_ERROR

    if args.debug:
        Config.set_debug_mode(True)
    logger = setup_logger(APP_NAME, args.log_dir)
    if args.debug:
        set_debug_mode(True)

    try:
        log_with_prefix(logger, 'debug', 'MAIN', herkunft, '%s v%s: Befehl %s', APP_NAME, APP_VERSION, args.command)
        if not check_dependencies():
            return EXIT_FAILURE
        seed = Config.get_default_seed() if args.seed is None else args.seed
        ok, message = validate_seed(seed)
        if not ok:
            raise ConfigError(message)
        return dispatch(args, seed)
    except (ConfigError, ParameterError, json.JSONDecodeError) as e:
        log_with_prefix(logger, 'error', 'MAIN', herkunft, '❌ Konfigurationsfehler: %s', e)
        return EXIT_CONFIG_ERROR
    except GraphFileError as e:
        log_with_prefix(logger, 'error', 'MAIN', herkunft, '❌ Eingabedatei: %s', e)
        return EXIT_INPUT_ERROR
    except OracleSizeError as e:
        log_with_prefix(logger, 'error', 'MAIN', herkunft, '❌ Größengrenze des Orakels: %s', e)
        return EXIT_SIZE_GATE
    except GraphError as e:
        log_with_prefix(logger, 'error', 'MAIN', herkunft, '❌ Ungültiger Graph: %s', e)
        return EXIT_CONFIG_ERROR
    except CycleSimException as e:
        log_exception(logger, e, "main()")
        return EXIT_FAILURE
    except Exception as e:
        log_exception(logger, e, "main()")
        log_with_prefix(logger, 'error', 'MAIN', herkunft, f"Kritischer Fehler: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
