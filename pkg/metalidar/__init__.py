from importlib.metadata import PackageNotFoundError
from importlib.metadata import version

from .optics import AodSpec
from .optics import MetasurfaceSpec
from .optics import OpticsChain
from .calibration import CalibrationCurve
from .calibration import CalibrationMaps
from .calibration import build_maps
from .calibration import fit_curve
from .calibration import ideal_curve
from .scanpattern import ScanLimits
from .scanpattern import ScanPattern
from .scanpattern import lissajous
from .scanpattern import random_access
from .scanpattern import raster
from .scene import Scene
from .signal import DetectorSpec
from .signal import LaserSpec
from .signal import WaveformRecord
from .signal import synthesize
from .frame import RangingFrame
from .frame import TimeSeries
from .pipeline import assemble
from .pipeline import extract_tof
from .pipeline import fold
from .reader import ConfigError
from .reader import Reader
from .config import RunConfig
from .builtin_scenarios import get_output_dir
from . import analysis
from . import accuracy
from . import dump
from . import experiments

__all__ = ['AodSpec', 'MetasurfaceSpec', 'OpticsChain', 'CalibrationCurve',
           'CalibrationMaps', 'build_maps', 'fit_curve', 'ideal_curve',
           'ScanLimits', 'ScanPattern', 'lissajous', 'random_access',
           'raster', 'Scene', 'DetectorSpec', 'LaserSpec', 'WaveformRecord',
           'synthesize', 'RangingFrame', 'TimeSeries', 'assemble',
           'extract_tof', 'fold', 'ConfigError', 'Reader', 'RunConfig',
           'get_output_dir', 'analysis', 'accuracy', 'dump', 'experiments']

try:
    __version__ = version('metalidar')
except PackageNotFoundError:  # not installed, e.g. running from a checkout
    __version__ = '0.1.0'
