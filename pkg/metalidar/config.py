"""
The :mod:`config <metalidar.config>` module defines the :class:`RunConfig`
class, which gathers everything a run needs: the laser, the optics, the
detectors, the scene, the scan pattern and the processing options.

Run configurations are read from files in the :class:`Reader
<metalidar.reader.Reader>` dialect. A bundled example: ::

    [run]
    name = 'fig5'
    seed = 7
    n_frames = 87

    [laser]
    f_rep = 5e6

    [aod]
    fov_half_angle_deg = 1.0

    [detector.A]
    na_mode = 'blocked'
    half_angle = 1.5

    [scene]
    file = 'fig5_chopper.ini'

    [pattern]
    kind = 'raster'
    grid = (70, 70)
    fov = (13, 13)

    [calibration]
    max_angle = 10
    span = 10
    grid_step = 0.1

Each section holds the keyword arguments of the corresponding class:
``[laser]`` of :class:`LaserSpec <metalidar.signal.LaserSpec>`, ``[aod]`` of
:class:`AodSpec <metalidar.optics.AodSpec>`, ``[metasurface]`` of
:class:`MetasurfaceSpec <metalidar.optics.MetasurfaceSpec>`, ``[optics]`` of
:class:`OpticsChain <metalidar.optics.OpticsChain>`, ``[detector.<id>]`` of
:class:`DetectorSpec <metalidar.signal.DetectorSpec>` and ``[limits]`` of
:class:`ScanLimits <metalidar.scanpattern.ScanLimits>`.

Summary:

.. autosummary::
    :nosignatures:

    RunConfig.load_builtin
    RunConfig.load_from_file
    RunConfig.from_sections
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import os

import numpy as np

from .builtin_scenarios import get_builtin_config_path
from .builtin_scenarios import get_output_dir
from .calibration import build_maps
from .calibration import fit_curve
from .calibration import ideal_curve
from .calibration import minimax_fit
from .optics import AodSpec
from .optics import MetasurfaceSpec
from .optics import OpticsChain
from .reader import ConfigError
from .reader import Reader
from .scanpattern import ScanLimits
from .scanpattern import check_rate
from .scanpattern import lissajous
from .scanpattern import random_access
from .scanpattern import raster
from .scene import Scene
from .signal import DetectorSpec
from .signal import LaserSpec


SECTIONS = ('run', 'laser', 'aod', 'metasurface', 'optics', 'scene',
            'pattern', 'limits', 'calibration', 'pipeline', 'signal',
            'analysis')

RUN_DEFAULTS = {
    'name': 'run',
    'seed': None,
    'n_frames': 1,
    'n_jobs': 1,
    'write_waveforms': False,
    'out': None,
}

CALIBRATION_DEFAULTS = {
    'max_angle': 60.,
    'n_samples': 41,
    'minimax': False,
    'grid_step': 0.5,
    'span': 75.,
    'samples': None,
    'center': None,
}

PIPELINE_DEFAULTS = {
    'threshold_k': 5.,
    'interpolate': True,
    'intensity_window': None,
    'orders': {},
}

SIGNAL_DEFAULTS = {
    'range_exponent': 2.,
    'retro_boost': 10.,
}


def _build(section, factory, options):
    """Call ``factory(**options)``, reporting bad options as a
    :class:`ConfigError <metalidar.reader.ConfigError>`."""

    try:
        return factory(**options)
    except (TypeError, ValueError) as e:
        raise ConfigError('[{}] {}'.format(section, e))


def _with_defaults(section, options, defaults):

    unknown = set(options) - set(defaults)
    if unknown:
        raise ConfigError('[{}] unknown options: {}. Accepted options are '
                          '{}.'.format(section, ', '.join(sorted(unknown)),
                                       ', '.join(sorted(defaults))))
    merged = dict(defaults)
    merged.update(options)
    return merged


class RunConfig:
    """A complete run configuration.

    Instances are usually built with :meth:`load_builtin` or
    :meth:`load_from_file`.

    Attributes:
        path(str): The config file, or ``None``.
        name(str): Name of the run, used for the default output folder.
        seed(int): Seed of the noise generators, ``None`` if unset.
        n_frames(int): Number of frames to simulate.
        n_jobs(int): Number of frames synthesized in parallel.
        write_waveforms(bool): Whether waveform binaries are exported.
        laser(:obj:`LaserSpec <metalidar.signal.LaserSpec>`): The laser.
        chain(:obj:`OpticsChain <metalidar.optics.OpticsChain>`): The optics.
        detectors(list of :obj:`DetectorSpec
            <metalidar.signal.DetectorSpec>`): The detectors.
        limits(:obj:`ScanLimits <metalidar.scanpattern.ScanLimits>`): The
            deflector bandwidth.
        scene_options(dict): The ``[scene]`` section.
        pattern_options(dict): The ``[pattern]`` section.
        calibration_options(dict): The ``[calibration]`` section.
        pipeline_options(dict): The ``[pipeline]`` section.
        signal_options(dict): The ``[signal]`` section.
        analysis_options(dict): The ``[analysis]`` section.
    """

    def __init__(self, path=None, run=None, laser=None, chain=None,
                 detectors=None, limits=None, scene=None, pattern=None,
                 calibration=None, pipeline=None, signal=None,
                 analysis=None):

        self.path = path
        run = _with_defaults('run', run or {}, RUN_DEFAULTS)
        self.name = str(run['name'])
        self.seed = run['seed']
        self.n_frames = int(run['n_frames'])
        self.n_jobs = int(run['n_jobs'])
        self.write_waveforms = bool(run['write_waveforms'])
        self._out = run['out']
        if self.n_frames < 1:
            raise ConfigError('[run] n_frames must be at least 1.')

        self.laser = laser if laser is not None else LaserSpec()
        self.chain = chain if chain is not None else OpticsChain()
        self.detectors = list(detectors) if detectors else [DetectorSpec()]
        ids = [d.id for d in self.detectors]
        if len(set(ids)) != len(ids):
            raise ConfigError('Detector ids must be unique, got '
                              '{}.'.format(ids))
        self.limits = limits if limits is not None else ScanLimits()
        self.scene_options = dict(scene or {})
        self.pattern_options = dict(pattern or {'kind': 'raster'})
        self.calibration_options = _with_defaults(
            'calibration', calibration or {}, CALIBRATION_DEFAULTS)
        self.pipeline_options = _with_defaults('pipeline', pipeline or {},
                                               PIPELINE_DEFAULTS)
        self.signal_options = _with_defaults('signal', signal or {},
                                             SIGNAL_DEFAULTS)
        self.analysis_options = dict(analysis or {})

    @classmethod
    def load_builtin(cls, name):
        """Load the config of a bundled scenario.

        Args:
            name(str): One of the keys of :data:`BUILTIN_SCENARIOS
                <metalidar.builtin_scenarios.BUILTIN_SCENARIOS>`, e.g.
                ``'fig5'``.

        Raises:
            ConfigError: If ``name`` is unknown.
        """

        return cls.load_from_file(get_builtin_config_path(name))

    @classmethod
    def load_from_file(cls, file_path, reader=None):
        """Load a config file.

        Args:
            file_path(str): Path of the file.
            reader(:obj:`Reader <metalidar.reader.Reader>`): Reader to use.
                Default is a default Reader.

        Raises:
            ConfigError: If the file cannot be read or holds invalid values.
        """

        reader = reader if reader is not None else Reader()
        sections = reader.read(file_path)
        try:
            return cls.from_sections(sections, path=file_path)
        except ConfigError as e:
            raise ConfigError('{}: {}'.format(file_path, e))

    @classmethod
    def from_sections(cls, sections, path=None):
        """Build a config from parsed sections (see :meth:`Reader.read
        <metalidar.reader.Reader.read>`)."""

        sections = dict(sections)
        detectors = []
        for name in list(sections):
            if name.startswith('detector.'):
                options = dict(sections.pop(name))
                options.setdefault('id', name[len('detector.'):])
                detectors.append(_build(name, DetectorSpec, options))
        unknown = set(sections) - set(SECTIONS)
        if unknown:
            raise ConfigError('Unknown sections: {}.'.format(
                ', '.join(sorted(unknown))))

        aod = _build('aod', AodSpec, sections.get('aod', {}))
        ms = _build('metasurface', MetasurfaceSpec,
                    sections.get('metasurface', {}))
        chain = _build('optics', OpticsChain,
                       dict(sections.get('optics', {}), aod=aod, ms=ms))

        return cls(path=path,
                   run=sections.get('run'),
                   laser=_build('laser', LaserSpec, sections.get('laser',
                                                                 {})),
                   chain=chain,
                   detectors=detectors,
                   limits=_build('limits', ScanLimits,
                                 sections.get('limits', {})),
                   scene=sections.get('scene'),
                   pattern=sections.get('pattern'),
                   calibration=sections.get('calibration'),
                   pipeline=sections.get('pipeline'),
                   signal=sections.get('signal'),
                   analysis=sections.get('analysis'))

    def override(self, seed=None, out=None):
        """Replace the seed and the output folder when given (command line
        flags). Returns the config itself."""

        if seed is not None:
            self.seed = int(seed)
        if out is not None:
            self._out = out
        return self

    @property
    def out(self):
        """Output folder: ``[run] out`` or a folder named after the run in
        :func:`get_output_dir
        <metalidar.builtin_scenarios.get_output_dir>`."""

        if self._out is not None:
            return self._resolve(self._out)
        return os.path.join(get_output_dir(), self.name)

    def _resolve(self, file_name):
        """Paths in config files are relative to the file."""

        if os.path.isabs(file_name) or self.path is None:
            return file_name
        return os.path.join(os.path.dirname(os.path.abspath(self.path)),
                            file_name)

    def detector(self, detector_id):
        for detector in self.detectors:
            if detector.id == detector_id:
                return detector
        raise ConfigError('Unknown detector ' + str(detector_id) +
                          '. Accepted values are ' +
                          ', '.join(d.id for d in self.detectors) + '.')

    def order(self, detector_id):
        """Diffraction order the frames of a detector are assembled for."""
        return int(self.pipeline_options['orders'].get(detector_id, 1))

    def scene(self):
        """Load the scene named in ``[scene]``: either ``file`` (relative to
        the config) or ``builtin``."""

        options = self.scene_options
        if 'file' in options:
            return Scene.load_from_file(self._resolve(options['file']))
        if 'builtin' in options:
            return Scene.load_builtin(options['builtin'])
        raise ConfigError('[scene] needs a file or a builtin option.')

    def curve(self):
        """The calibration curve: fitted on ``samples`` (a two column
        ``voltage angle_deg`` file) when given, else on the ideal chain.
        ``minimax = True`` selects the minimax cubic instead of the least
        squares one."""

        options = self.calibration_options
        aod = self.chain.aod
        center = (options['center'] if options['center'] is not None
                  else aod.v_center)
        if options['samples'] is not None:
            try:
                samples = np.loadtxt(self._resolve(options['samples']),
                                     comments='#', ndmin=2)
            except (IOError, OSError, ValueError) as e:
                raise ConfigError('[calibration] cannot read samples: '
                                  '{}'.format(e))
            fit = minimax_fit if options['minimax'] else fit_curve
            return _build('calibration', fit,
                          {'samples': samples, 'center': center})
        return _build('calibration', ideal_curve,
                      {'aod': aod, 'max_angle': options['max_angle'],
                       'n_samples': options['n_samples'],
                       'minimax': options['minimax']})

    def maps(self, curve=None):
        curve = curve if curve is not None else self.curve()
        options = self.calibration_options
        return _build('calibration', build_maps,
                      {'curve': curve, 'grid_step': options['grid_step'],
                       'span': options['span']})

    def pattern(self, maps):
        """The scan pattern described in ``[pattern]``.

        ``kind`` is ``'raster'`` (or ``'line'``) with options ``grid``,
        ``fov``, ``center``, ``skip_unreachable`` and ``scan_rate`` (default
        the laser rate), ``'lissajous'`` with the arguments of
        :func:`lissajous <metalidar.scanpattern.lissajous>`, or
        ``'random_access'`` with ``points``.
        """

        options = dict(self.pattern_options)
        kind = options.pop('kind', 'raster')
        if kind in ('raster', 'line'):
            options.setdefault('scan_rate', self.laser.f_rep)
            return _build('pattern', raster, dict(options, maps=maps))
        if kind == 'lissajous':
            options.setdefault('sample_rate', self.laser.f_rep)
            return _build('pattern', lissajous, dict(options, maps=maps))
        if kind == 'random_access':
            return _build('pattern', random_access, dict(options, maps=maps))
        raise ConfigError('[pattern] unknown kind ' + str(kind) +
                          '. Accepted values are raster, line, lissajous, '
                          'random_access.')

    def rate_report(self, pattern):
        return check_rate(pattern, self.limits)

    def __str__(self):
        return 'RunConfig {!r} ({}), {} detector(s), seed {}'.format(
            self.name, self.path, len(self.detectors), self.seed)
