"""Globale Konfigurationsvariablen für den CONGEST-Zyklensimulator"""

import os
from typing import Dict, Any, Optional

# Debug-Einstellungen
DEBUG_MODE = False

# Versions-Info
APP_VERSION = "1.0.0"
APP_NAME = "CycleSim"

# Logging-Einstellungen
LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(funcName)s:%(lineno)d | %(message)s"
LOG_FILE_FORMAT = "%(asctime)s\t%(levelname)s\t%(herkunft)s\t%(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Seeds
SEED_ENV_VAR = "CYCLESIM_SEED"
DEFAULT_SEED = 0

# Erkennungs-Einstellungen
DEFAULT_EPSILON = 1.0 / 3.0
RANDOMIZED_THRESHOLD = 4        # Schwelle der randomisierten color-BFS
COLOR_ANNOUNCE_ROUNDS = 1       # Runde zum Austausch der Farben pro Iteration

# RNG-Stream-Kennungen (seed, stream, ...)
STREAM_COLORING = 1
STREAM_SELECTION = 2
STREAM_NODE = 3
STREAM_TRIAL = 4

# Orakel-Größengrenzen
ORACLE_MAX_NODES = 64
GIRTH_MAX_NODES = 200

# Statistik
WILSON_CONFIDENCE = 0.99
BINOMIAL_SIGMAS = 3.0

# Quanten-Kostenmodell
COST_DEFAULT_PARAMS = {
    'c_amp': 1.0,               # Faktor der Amplifikation
    'c_dec': 1.0,               # Faktor der Durchmesser-Reduktion
    'c_D': 1.0,                 # Cluster-Durchmesser c_D·k·⌈log n⌉
    'amp_log_exponent': 2,      # polylog(1/δ) = ⌈ln(1/δ)⌉^2
    'dec_log_exponent': 2,      # polylog(n) = ⌈log2 n⌉^2
}

COST_PARAM_RANGES = {
    'c_amp': (1e-6, 1e6),
    'c_dec': (1e-6, 1e6),
    'c_D': (1e-6, 1e6),
    'amp_log_exponent': (0, 8),
    'dec_log_exponent': (0, 8),
}

COST_SWEEP_EXPONENTS = (10, 30)     # n = 2^10 .. 2^30
CROSSOVER_SCAN_EXPONENTS = (4, 100)

# Generator-Standardwerte
GENERATOR_DEFAULTS = {
    'p': 0.2,           # Kantenwahrscheinlichkeit Erdős–Rényi
    'a': None,          # Seitengröße K_{a,b}
    'b': None,
}

GENERATOR_KINDS = (
    "cycle", "path", "star", "erdos_renyi", "bipartite", "tree",
    "complete", "petersen", "heawood", "empty",
)

VARIANTS = ("even", "even_low_prob", "odd", "bounded")

# Exit-Codes der Kommandozeile
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_INPUT_ERROR = 3
EXIT_SIZE_GATE = 4


class Config:
    """Zentrale Konfigurationsklasse"""

    @staticmethod
    def set_debug_mode(enabled: bool) -> None:
        """Setzt den Debug-Modus"""
        global DEBUG_MODE
        DEBUG_MODE = enabled

    @staticmethod
    def get_debug_mode() -> bool:
        """Gibt den aktuellen Debug-Modus zurück"""
        return DEBUG_MODE

    @staticmethod
    def get_app_info() -> Dict[str, str]:
        """Gibt Basis-Informationen über die Anwendung zurück"""
        return {
            "name": APP_NAME,
            "version": APP_VERSION
        }

    @staticmethod
    def get_default_seed() -> int:
        """Standard-Seed, überschreibbar über die Umgebungsvariable"""
        raw: Optional[str] = os.environ.get(SEED_ENV_VAR)
        if raw is None or raw.strip() == "":
            return DEFAULT_SEED
        try:
            return int(raw)
        except ValueError:
            return DEFAULT_SEED

    @staticmethod
    def get_cost_defaults() -> Dict[str, Any]:
        """Gibt Standard-Konstanten des Kostenmodells zurück"""
        return COST_DEFAULT_PARAMS.copy()

    @staticmethod
    def get_cost_ranges() -> Dict[str, tuple]:
        """Gibt zulässige Bereiche der Kostenmodell-Konstanten zurück"""
        return COST_PARAM_RANGES.copy()

    @staticmethod
    def get_generator_defaults() -> Dict[str, Any]:
        return GENERATOR_DEFAULTS.copy()
