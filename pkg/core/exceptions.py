"""Custom Exception-Klassen für den CONGEST-Zyklensimulator"""


class CycleSimException(Exception):
    """Basis-Exception für den Zyklensimulator"""
    pass


class GraphError(CycleSimException):
    """Ungültiger Graph oder ungültige Generator-Parameter"""
    pass


class GraphFileError(CycleSimException):
    """Fehler beim Lesen oder Schreiben von Kantenlisten und Reports"""
    pass


class SimulationFault(CycleSimException):
    """Protokollfehler im Simulator (z.B. Nachricht an einen Nicht-Nachbarn)"""

    def __init__(self, diagnostic: str, ledger=None):
        super().__init__(diagnostic)
        self.diagnostic = diagnostic
        self.ledger = ledger


class ParameterError(CycleSimException):
    """Parameter außerhalb des gültigen Bereichs"""
    pass


class OracleSizeError(CycleSimException):
    """Instanz überschreitet die Größengrenze des Orakels"""
    pass


class WitnessError(CycleSimException):
    """Verletzte Invarianten der Level-Mengen"""
    pass


class DegeneracyError(WitnessError):
    """Leerer Kern nach dem Schälen der Knoten mit Grad < k"""
    pass


class ConfigError(CycleSimException):
    """Inkonsistente Experiment-Konfiguration"""
    pass


class TrialCancelledException(CycleSimException):
    """Versuchsreihe wurde abgebrochen"""
    pass
