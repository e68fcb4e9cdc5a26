"""
The :mod:`analyze <metalidar.experiments.analyze>` module runs the analysis
tasks of a scenario on the series written by :func:`run_simulate
<metalidar.experiments.simulate.run_simulate>`.

Tasks:

- ``rotation``: track the brightest feature and fit its rotation speed.
- ``size``: length of the largest bright feature of one frame.
- ``divergence``: divergence of the first order from beam profiles at
  several distances.
- ``detectability``: events recorded for a fast target crossing the field
  of view.
- ``linescan``: space-time image of line frames and passage period.
- ``clusters``: centroid of the hits of each depth window.

Options are read from the ``[analysis]`` section of the config.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple
import os

import numpy as np

from ..analysis import depth_clusters
from ..analysis import detectability
from ..analysis import divergence_regression
from ..analysis import feature_size
from ..analysis import fit_beam_waist
from ..analysis import passage_period
from ..analysis import rotation_speed
from ..analysis import space_time_image
from ..analysis import track_rotation
from ..analysis import wobble_residuals
from ..dump import dump_table
from ..dump import load
from ..dump import write_manifest
from ..optics import divergence_after_ms
from ..optics import divergence_sweep
from ..reader import ConfigError
from ..utils import get_rng
from .stages import print_summary
from .stages import stage
from .stages import versions


TASKS = ('rotation', 'size', 'divergence', 'detectability', 'linescan',
         'clusters')

# Tasks working on a simulated series rather than on the config alone.
SERIES_TASKS = ('rotation', 'size', 'linescan', 'clusters')

DIVERGENCE_DISTANCES = (0.055, 0.08, 0.13, 0.155)
SWEEP_DIAMETERS = (0.5e-3, 1e-3, 2e-3, 4e-3)


class AnalysisResult(namedtuple('AnalysisResult', ['results', 'outputs'])):
    """Result of :func:`run_analyze`.

    Args:
        results(dict): The result of each task, keyed by task name.
        outputs(list of str): The files written.
    """

    __slots__ = ()


def _series_for(series, options):

    det_id = options.get('detector', sorted(series)[0])
    try:
        return series[det_id]
    except KeyError:
        raise ConfigError('Unknown detector ' + str(det_id) + '. Accepted '
                          'values are ' + ', '.join(sorted(series)) + '.')


def _rotation(config, series, folder, options):

    if 'center' not in options:
        raise ConfigError('[analysis] rotation needs a center.')
    track = track_rotation(series, options['center'],
                           options.get('radius_range'),
                           options.get('depth_window'))
    estimate = rotation_speed(track, options.get('expected_hz'))
    angles, residuals = wobble_residuals(track, estimate)

    track_file = os.path.join(folder, 'track.csv')
    wobble_file = os.path.join(folder, 'wobble.csv')
    text_file = os.path.join(folder, 'rotation.txt')
    dump_table(track_file, [track.t, track.angle_center, track.angle_sigma,
                            track.fit_quality, track.valid],
               ['t', 'angle', 'sigma', 'quality', 'valid'])
    dump_table(wobble_file, [angles, residuals], ['angle', 'residual'])
    with open(text_file, 'w') as f:
        f.write('hz = {!r}\nuncertainty = {!r}\nn_frames = {}\naliased = '
                '{}\n'.format(estimate.hz, estimate.uncertainty,
                              estimate.n_frames, estimate.aliased))

    rows = [('rotation', str(estimate), 'ALIASED' if estimate.aliased
             else '')]
    expected = options.get('expected_hz')
    if expected is not None:
        error = abs(abs(estimate.hz) - expected)
        rows.append(('rotation error', '{:.3f} Hz'.format(error), ''))
    return estimate, rows, [track_file, wobble_file, text_file]


def _size(config, series, folder, options):

    k = int(options.get('feature_frame', 0))
    if not 0 <= k < len(series):
        raise ConfigError('[analysis] feature_frame {} is out of range, the '
                          'series holds {} frames.'.format(k, len(series)))
    size = feature_size(series[k], options.get('depth_window'))
    value = 'none' if size is None else '{:.1f} mm'.format(size * 1e3)
    return size, [('feature size', value, '')], []


def _divergence(config, series, folder, options):
    """Beam profiles are Gaussian spots whose diameter grows with the
    divergence of the chain, with 1% intensity noise."""

    chain = config.chain
    ms = chain.ms
    impact_r = float(options.get('impact_r', ms.r_max / 2))
    distances = options.get('distances', DIVERGENCE_DISTANCES)
    model = float(divergence_after_ms(chain.spot_diameter, impact_r, ms,
                                      chain.divergence_floor))
    rng = get_rng(config.seed if config.seed is not None else 0)

    profiles = []
    for z in distances:
        diameter = chain.spot_diameter + 2 * z * np.tan(model / 2)
        radii = np.linspace(0, 2 * diameter, 60)
        intensity = np.exp(-4 * np.log(2) * radii ** 2 / diameter ** 2)
        intensity = intensity + rng.normal(0, 0.01, len(radii))
        profiles.append((z, fit_beam_waist(radii, intensity)))
    fit = divergence_regression(profiles)

    file_name = os.path.join(folder, 'divergence.csv')
    dump_table(file_name, list(zip(*profiles)), ['z', 'diameter'])
    sizes = np.asarray(options.get('ms_diameters', SWEEP_DIAMETERS))
    sweep = divergence_sweep(chain.spot_diameter, sizes, ms=ms,
                             floor_factor=chain.divergence_floor)
    sweep_file = os.path.join(folder, 'divergence_sweep.csv')
    dump_table(sweep_file, [sizes, np.degrees(sweep)],
               ['ms_diameter', 'divergence_deg'])
    error = abs(fit.divergence_deg - np.degrees(model)) / np.degrees(model)
    rows = [('divergence', '{:.3f} deg (model {:.3f} deg, r2 {:.4f})'.format(
        fit.divergence_deg, np.degrees(model), fit.r_squared),
        'OK' if error < 0.02 else 'OFF')]
    return fit, rows, [file_name, sweep_file]


def _detectability(config, series, folder, options):

    speed_kmh = float(options.get('target_speed_kmh', 1234.))
    result = detectability(speed_kmh / 3.6,
                           float(options.get('target_range', 15.)),
                           float(options.get('fov', 120.)),
                           float(options.get('frame_period', 980e-6)),
                           int(options.get('min_events', 4)))
    rows = [('crossing time', '{:.1f} ms'.format(result.crossing_time * 1e3),
             ''),
            ('events', str(result.n_events), ''),
            ('max speed', '{:.1f} Mm/h'.format(result.max_speed * 3.6e-3),
             ''),
            # the 47 Mm/h figure quoted for this setup needs only 2 events
            ('max speed 2 ev.', '{:.1f} Mm/h'.format(
                speed_kmh * 1e-3 * result.n_events / 2), '')]
    return result, rows, []


def _linescan(config, series, folder, options):

    image = space_time_image(series, options.get('depth_window'))
    period = passage_period(image, series.frame_period)
    file_name = os.path.join(folder, 'space_time.csv')
    dump_table(file_name, list(image.T), ['px{}'.format(i)
                                          for i in range(image.shape[1])])
    if period is None:
        return None, [('passage period', 'none', 'FAIL')], [file_name]
    rows = [('passage period', '{:.3f} ms ({:.2f} Hz)'.format(
        period * 1e3, 1 / period), '')]
    return period, rows, [file_name]


def _clusters(config, series, folder, options):

    windows = options.get('clusters')
    if not windows:
        raise ConfigError('[analysis] clusters needs depth windows.')
    clusters = depth_clusters(series[0], windows)
    rows = []
    for (low, high), (centroid, n_hits) in zip(windows, clusters):
        value = ('no hit' if centroid is None else
                 '({:.3f}, {:.3f}, {:.3f}) m, {} hits'.format(
                     centroid[0], centroid[1], centroid[2], n_hits))
        rows.append(('{:g}-{:g} m'.format(low, high), value,
                     '' if centroid is not None else 'EMPTY'))
    return clusters, rows, []


TASK_FUNCTIONS = {
    'rotation': _rotation,
    'size': _size,
    'divergence': _divergence,
    'detectability': _detectability,
    'linescan': _linescan,
    'clusters': _clusters,
}


def run_analyze(config, series_file=None, tasks=None, verbose=True):
    """Run analysis tasks.

    Args:
        config(:obj:`RunConfig <metalidar.config.RunConfig>`): The run.
        series_file(str): The series written by :func:`run_simulate
            <metalidar.experiments.simulate.run_simulate>`. Default is
            ``series.pkl`` in ``config.out``.
        tasks(list of str): Tasks to run. Default is ``[analysis] tasks``.
        verbose(bool): Whether to print a summary. Default is ``True``.

    Returns:
        An :obj:`AnalysisResult`.

    Raises:
        ConfigError: If a task is unknown, no task is given, or the series
            cannot be read.
    """

    options = config.analysis_options
    tasks = list(tasks) if tasks else list(options.get('tasks', ()))
    if not tasks:
        raise ConfigError('No analysis task given. Accepted values are ' +
                          ', '.join(TASKS) + '.')
    for task in tasks:
        if task not in TASKS:
            raise ConfigError('Unknown task ' + str(task) + '. Accepted '
                              'values are ' + ', '.join(TASKS) + '.')

    series = None
    if any(task in SERIES_TASKS for task in tasks):
        series_file = series_file or os.path.join(config.out, 'series.pkl')
        try:
            all_series, _ = load(series_file)
        except (IOError, OSError) as e:
            raise ConfigError('Cannot read {}: {}. Run simulate '
                              'first.'.format(series_file, e))
        series = _series_for(all_series, options)

    folder = os.path.join(config.out, 'analysis')
    if not os.path.isdir(folder):
        os.makedirs(folder)

    results, rows, outputs = {}, [], []
    for task in tasks:
        with stage(task, config):
            results[task], task_rows, files = TASK_FUNCTIONS[task](
                config, series, folder, options)
        rows.extend(task_rows)
        outputs.extend(files)

    write_manifest(os.path.join(folder, 'manifest.json'), outputs,
                   command='analyze', config=config.path, tasks=tasks,
                   versions=versions())
    if verbose:
        print_summary('Analysis of {}'.format(config.name), rows)

    return AnalysisResult(results, outputs)
