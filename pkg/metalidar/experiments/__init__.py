from .stages import AcceptanceError
from .simulate import SimulationResult
from .simulate import run_simulate
from .calibrate import CalibrationResult
from .calibrate import run_calibrate
from .analyze import TASKS
from .analyze import AnalysisResult
from .analyze import run_analyze
from .verify import SUITES
from .verify import run_verify

__all__ = ['AcceptanceError', 'SimulationResult', 'run_simulate',
           'CalibrationResult', 'run_calibrate', 'TASKS', 'AnalysisResult',
           'run_analyze', 'SUITES', 'run_verify']
