"""Thread-Pool für unabhängige Versuche mit Abbruch und Statistik"""

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional

from core.exceptions import TrialCancelledException
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('workers')


class TrialJob:
    """Einzelner Versuch: Index, abgeleiteter Seed und auszuführende Funktion"""

    def __init__(self, index: int, seed: int, run: Callable[[int], Any]):
        self.index = index
        self.seed = seed
        self.run = run

    def __repr__(self) -> str:
        return f"TrialJob(index={self.index}, seed={self.seed})"


class TrialResult:
    """Ergebnis eines Versuchs"""

    def __init__(self, index: int, status: str, value: Any = None, message: str = "",
                 error: Optional[BaseException] = None):
        self.index = index
        self.status = status  # "done", "cancelled", "error"
        self.value = value
        self.message = message
        self.error = error

    def __repr__(self) -> str:
        return f"TrialResult(index={self.index}, status={self.status}, message={self.message})"


class TrialWorker:
    """Führt Versuche parallel aus; die Ergebnisse sind nach Index sortiert"""

    def __init__(self, max_workers: int = 1, progress_callback: Optional[Callable[[int, int], None]] = None):
        herkunft = 'workers.py'
        self.max_workers = max(1, int(max_workers))
        self.progress_callback = progress_callback
        self.stop_event = threading.Event()
        self._lock = threading.Lock()
        self._reset_statistics()
        log_with_prefix(logger, 'debug', 'WORKERS', herkunft, 'TrialWorker initialisiert (max_workers=%d)', self.max_workers)

    def cancel(self) -> None:
        herkunft = 'workers.py'
        log_with_prefix(logger, 'info', 'WORKERS', herkunft, '⏹️ Versuche werden abgebrochen')
        self.stop_event.set()

    def run_all(self, jobs: List[TrialJob]) -> List[TrialResult]:
        herkunft = 'workers.py'
        self._reset_statistics()
        self.stop_event.clear()
        total = len(jobs)
        log_with_prefix(logger, 'debug', 'WORKERS', herkunft, '🚀 Starte %d Versuche', total)

        if self.max_workers == 1:
            results = [self._process_job(job, total) for job in jobs]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                results = list(pool.map(lambda job: self._process_job(job, total), jobs))

        results.sort(key=lambda r: r.index)
        log_with_prefix(logger, 'debug', 'WORKERS', herkunft, '🏁 Versuche beendet: %s', self.get_statistics())
        return results

    def _process_job(self, job: TrialJob, total: int) -> TrialResult:
        herkunft = 'workers.py'
        if self.stop_event.is_set():
            result = TrialResult(job.index, "cancelled", message="Vor Start abgebrochen")
        else:
            try:
                result = TrialResult(job.index, "done", value=job.run(job.seed))
            except TrialCancelledException:
                result = TrialResult(job.index, "cancelled", message="Abgebrochen")
            except Exception as e:
                log_with_prefix(logger, 'error', 'WORKERS', herkunft, '❌ Versuch %d fehlgeschlagen: %s', job.index, str(e))
                result = TrialResult(job.index, "error", message=str(e), error=e)
        self._update_statistics(result, total)
        return result

    def get_statistics(self) -> Dict[str, int]:
        return {
            'processed_trials': self.processed_trials,
            'successful_trials': self.successful_trials,
            'cancelled_trials': self.cancelled_trials,
            'error_trials': len(self.errors),
        }

    def _reset_statistics(self) -> None:
        self.processed_trials = 0
        self.successful_trials = 0
        self.cancelled_trials = 0
        self.errors: List[str] = []

    def _update_statistics(self, result: TrialResult, total: int) -> None:
        with self._lock:
            self.processed_trials += 1
            if result.status == "done":
                self.successful_trials += 1
            elif result.status == "cancelled":
                self.cancelled_trials += 1
            elif result.status == "error":
                self.errors.append(f"Versuch {result.index}: {result.message}")
            processed = self.processed_trials
        if self.progress_callback is not None:
            self.progress_callback(processed, total)
