"""Validierung von Experiment-Konfigurationen, Eingabedateien und Modellkonstanten"""

import os
from typing import Any, Dict, Optional

from utils.logger import log_with_prefix, get_normalized_logger
from .config import Config, GENERATOR_KINDS, VARIANTS

logger = get_normalized_logger('validators')

REPORT_FORMATS = ("json", "csv")


def check_dependencies() -> bool:
    """
    Prüft alle notwendigen Abhängigkeiten

    Returns:
        True wenn alle Abhängigkeiten verfügbar sind
    """
    missing_deps = []
    required_packages = {
        'numpy': 'numpy',
        'scipy': 'scipy',
        'networkx': 'networkx',
    }
    for package_name, import_name in required_packages.items():
        try:
            __import__(import_name)
            log_with_prefix(logger, 'debug', 'VALIDATORS', 'check_dependencies', f"✅ {package_name} verfügbar")
        except ImportError:
            missing_deps.append(package_name)
            log_with_prefix(logger, 'error', 'VALIDATORS', 'check_dependencies', f"❌ {package_name} nicht verfügbar")

    if missing_deps:
        log_with_prefix(logger, 'error', 'VALIDATORS', 'check_dependencies',
                        f"❌ Fehlende Abhängigkeiten: {', '.join(missing_deps)}")
        log_with_prefix(logger, 'info', 'VALIDATORS', 'check_dependencies',
                        "Bitte installieren Sie diese mit: pip install -r requirements.txt")
        return False
    return True


def validate_seed(seed: Any) -> tuple[bool, str]:
    if isinstance(seed, bool) or not isinstance(seed, int):
        return False, "Seed muss eine ganze Zahl sein"
    if seed < 0:
        return False, f"Seed darf nicht negativ sein: {seed}"
    return True, ""


def validate_graph_file(file_path: Optional[str]) -> tuple[bool, str]:
    """
    Validiert den Pfad einer Kantenliste

    Returns:
        Tuple[is_valid, error_message]
    """
    if not file_path:
        return False, "Dateipfad ist leer"
    if not os.path.exists(file_path):
        return False, f"Datei existiert nicht: {file_path}"
    if not os.path.isfile(file_path):
        return False, f"Pfad ist keine Datei: {file_path}"
    return True, ""


def validate_experiment_config(config: Dict[str, Any]) -> tuple[bool, str]:
    """
    Validiert die effektive Konfiguration eines detect-Laufs

    Returns:
        Tuple[is_valid, error_message]
    """
    variant = config.get('variant')
    if variant not in VARIANTS:
        return False, f"Unbekannte Variante: {variant}"

    k = config.get('k')
    if not isinstance(k, int) or isinstance(k, bool):
        return False, "k muss eine ganze Zahl sein"
    minimum_k = 1 if variant == "odd" else 2
    if k < minimum_k:
        return False, f"k muss für {variant} ≥ {minimum_k} sein"

    trials = config.get('trials')
    if not isinstance(trials, int) or trials < 1:
        return False, "trials muss ≥ 1 sein"

    epsilon = config.get('epsilon')
    if not isinstance(epsilon, (int, float)) or not 0.0 < epsilon < 1.0:
        return False, "ε muss in (0,1) liegen"

    ok, message = validate_seed(config.get('seed'))
    if not ok:
        return False, message

    if config.get('graph_file'):
        ok, message = validate_graph_file(config['graph_file'])
        if not ok:
            return False, message
    else:
        if config.get('generator') not in GENERATOR_KINDS:
            return False, f"Unbekannter Generator: {config.get('generator')}"
        n = config.get('n')
        if not isinstance(n, int) or n < 1:
            return False, "n muss ≥ 1 sein"

    plant = config.get('plant')
    if plant is not None and (not isinstance(plant, int) or plant < 3):
        return False, "Eingepflanzte Zykluslänge muss ≥ 3 sein"

    for key in ('p_override', 'K_override', 'tau_override'):
        value = config.get(key)
        if value is None:
            continue
        if key == 'p_override':
            if not isinstance(value, (int, float)) or not 0.0 < value <= 1.0:
                return False, "p-Override muss in (0,1] liegen"
        elif not isinstance(value, int) or value < 1:
            return False, f"{key} muss eine ganze Zahl ≥ 1 sein"

    if config.get('format', 'json') not in REPORT_FORMATS:
        return False, f"Unbekanntes Ausgabeformat: {config.get('format')}"

    max_workers = config.get('max_workers', 1)
    if not isinstance(max_workers, int) or max_workers < 1:
        return False, "max_workers muss ≥ 1 sein"
    return True, ""


def validate_cost_params(constants: Dict[str, Any]) -> tuple[bool, str]:
    """
    Validiert Konstanten des Kostenmodells gegen die zulässigen Bereiche

    Returns:
        Tuple[is_valid, error_message]
    """
    ranges = Config.get_cost_ranges()
    for name, value in constants.items():
        if name not in ranges:
            return False, f"Unbekannte Konstante: {name}"
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            return False, f"{name} muss eine Zahl sein"
        low, high = ranges[name]
        if not low <= value <= high:
            return False, f"{name} muss zwischen {low} und {high} liegen"
    return True, ""
