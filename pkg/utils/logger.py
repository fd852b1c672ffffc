"""Logging-System für den CONGEST-Zyklensimulator"""

import logging
import os
import sys
import traceback
from datetime import datetime
from typing import Optional

from .config import Config, APP_NAME, LOG_FORMAT, LOG_FILE_FORMAT, LOG_DATE_FORMAT

# Globale Session-ID für einmalige Log-Datei pro Programmstart
_SESSION_ID = None
_LOGGER_INITIALIZED = False

ROOT_LOGGER_NAME = APP_NAME

# Module mit eigenem Child-Logger
_KNOWN_MODULES = [
    'graph', 'simulator', 'workers', 'file_manager', 'color_bfs', 'detectors',
    'params', 'facts', 'sparsification', 'extraction', 'instances', 'cycles',
    'paths', 'cost', 'runner', 'validators', 'statistics', 'main',
]


class AsciiSafeConsoleFormatter(logging.Formatter):
    """Formatter der Emojis ersetzt, wenn die Konsole sie nicht kodieren kann"""

    # Emoji-Mapping für sichere Konsolen-Ausgabe
    EMOJI_MAP = {
        '✅': '[OK]', '❌': '[ERROR]', '⚠️': '[WARNING]', '🔄': '[PROCESSING]',
        '🚀': '[START]', '⏹️': '[STOP]', '🔍': '[DEBUG]', '📁': '[FOLDER]',
        '🏁': '[FINISH]', '📊': '[STATS]', '🎯': '[TARGET]', '🔧': '[DEBUG]',
        '🧮': '[MODEL]', '🔗': '[GRAPH]',
    }

    def __init__(self, fmt=None, datefmt=None, stream=None):
        super().__init__(fmt, datefmt)
        self._encoding = getattr(stream, 'encoding', None) or 'ascii'

    def _needs_ascii(self) -> bool:
        return not self._encoding.lower().replace('-', '').startswith('utf')

    def format(self, record):
        formatted_message = super().format(record)
        if self._needs_ascii():
            safe_message = formatted_message
            for emoji, replacement in self.EMOJI_MAP.items():
                safe_message = safe_message.replace(emoji, replacement)
            return safe_message.encode('ascii', errors='replace').decode('ascii')
        return formatted_message


class SafeFileFormatter(logging.Formatter):
    """Custom-Formatter für File-Handler, der fehlende Felder handhabt"""

    def format(self, record):
        # Fehlende Attribute mit Defaults füllen
        if not hasattr(record, 'herkunft'):
            record.herkunft = 'Unbekannt'
        try:
            return super().format(record)
        except (KeyError, AttributeError):
            timestamp = datetime.now().strftime(LOG_DATE_FORMAT)
            return f"{timestamp}\t{record.levelname}\t{getattr(record, 'herkunft', 'Unbekannt')}\t{record.getMessage()}"


def set_debug_mode(enabled: bool) -> None:
    """Aktiviert oder deaktiviert den Debug-Modus für die ganze Logger-Hierarchie"""
    Config.set_debug_mode(enabled)
    level = logging.DEBUG if enabled else logging.INFO

    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(level)
    for handler in root_logger.handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(level)

    for name in list(logging.Logger.manager.loggerDict):
        if name.startswith(ROOT_LOGGER_NAME + "."):
            logging.getLogger(name).setLevel(level)

    root_logger.debug(f"🔧 Debug-Modus {'aktiviert' if enabled else 'deaktiviert'}")


def get_session_id() -> str:
    """Gibt einmalige Session-ID für diese Programmsitzung zurück"""
    global _SESSION_ID
    if _SESSION_ID is None:
        _SESSION_ID = datetime.now().strftime("%Y%m%d_%H%M%S")
    return _SESSION_ID


def setup_logger(app_name: str = ROOT_LOGGER_NAME, log_dir: Optional[str] = None) -> logging.Logger:
    """Setup Logger - nur einmal pro Session.

    Ohne ``log_dir`` wird nur auf die Konsole (stderr) geloggt.
    """
    global _LOGGER_INITIALIZED

    logger = logging.getLogger(app_name)
    if _LOGGER_INITIALIZED and logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG if Config.get_debug_mode() else logging.INFO)
    logger.propagate = False
    if logger.handlers:
        logger.handlers.clear()

    log_file = None
    if log_dir:
        try:
            os.makedirs(log_dir, exist_ok=True)
            log_file = os.path.join(log_dir, f"{app_name}_{get_session_id()}.log")
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(SafeFileFormatter(LOG_FILE_FORMAT, datefmt=LOG_DATE_FORMAT))
            logger.addHandler(file_handler)
        except OSError as e:
            sys.stderr.write(f"[LOG] Warnung: Log-Datei konnte nicht erstellt werden: {e}\n")
            log_file = None

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if Config.get_debug_mode() else logging.INFO)
    console_handler.setFormatter(AsciiSafeConsoleFormatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT, stream=sys.stderr))
    logger.addHandler(console_handler)

    _LOGGER_INITIALIZED = True

    logger.debug("=" * 60)
    logger.debug(f"🚀 {app_name} Session {get_session_id()} gestartet")
    if log_file:
        logger.debug(f"📁 Log-Datei: {log_file}")
    logger.debug("=" * 60)
    return logger


def log_with_prefix(logger, level, prefix, herkunft, message, *args):
    """Logs mit Präfix und Herkunft"""
    log_func = getattr(logger, level.lower(), logger.info)
    if not logger.isEnabledFor(logging.getLevelName(level.upper())):
        return

    if args:
        try:
            formatted_message = message % args
        except (TypeError, ValueError):
            formatted_message = f"{message} {args}"
    else:
        formatted_message = message

    final_message = f"[{prefix.upper()}] {formatted_message}"
    try:
        log_func(final_message, extra={'herkunft': herkunft})
    except (TypeError, AttributeError):
        log_func(final_message)


def get_normalized_logger(name: str = None) -> logging.Logger:
    """Gibt normalisierten Logger zurück - alle verwenden die 'CycleSim' Hierarchie"""
    if name is None or name == __name__:
        return logging.getLogger(ROOT_LOGGER_NAME)
    if name in _KNOWN_MODULES:
        return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")
    return logging.getLogger(ROOT_LOGGER_NAME)


def log_exception(logger: logging.Logger, exception: Exception, context: str = ""):
    """Detailliertes Exception-Logging"""
    logger.error(f"❌ EXCEPTION in {context}:")
    logger.error(f"Exception Type: {type(exception).__name__}")
    logger.error(f"Exception Message: {str(exception)}")
    if Config.get_debug_mode():
        logger.error("Traceback:")
        for line in traceback.format_exc().splitlines():
            logger.error(f"  {line}")
    logger.error("-" * 40)
