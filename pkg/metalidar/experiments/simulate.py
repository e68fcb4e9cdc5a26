"""
The :mod:`simulate <metalidar.experiments.simulate>` module runs a scenario
end to end: scene, scan pattern, detector records, time of flight extraction
and frame export.

Every frame gets its own noise seed drawn from the run seed, so the output
does not depend on ``n_jobs``.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple
import os
import time
import warnings

from joblib import Parallel
from joblib import delayed

from ..dump import dump
from ..dump import dump_curve
from ..dump import dump_frame_csv
from ..dump import dump_pattern
from ..dump import dump_point_cloud
from ..dump import dump_waveform
from ..dump import write_manifest
from ..frame import TimeSeries
from ..pipeline import assemble
from ..pipeline import extract_tof
from ..pipeline import fold
from ..reader import ConfigError
from ..signal import shot_indices
from ..signal import synthesize
from ..utils import frame_seeds
from .stages import stage
from .stages import versions


class SimulationResult(namedtuple('SimulationResult',
                                  ['out', 'series', 'outputs', 'manifest',
                                   'timings'])):
    """Result of :func:`run_simulate`.

    Args:
        out(str): The output folder.
        series(dict): A :obj:`TimeSeries <metalidar.frame.TimeSeries>` per
            detector id.
        outputs(list of str): The files written.
        manifest(dict): Content of ``manifest.json``.
        timings(dict): Duration of each stage, in seconds.
    """

    __slots__ = ()


def _makedirs(folder):
    if not os.path.isdir(folder):
        os.makedirs(folder)


def _simulate_frame(k, seed, t0, config, scene, pattern, maps, rate_report,
                    waveform_dir):
    """Synthesize and process frame ``k``. Returns a dict of frames keyed
    by detector id and the list of waveform files written."""

    options = config.pipeline_options
    records = synthesize(pattern, scene, config.chain, config.laser,
                         config.detectors, rate_report=rate_report,
                         random_state=seed, t0=t0, **config.signal_options)

    frames, written = {}, []
    for record in records:
        if waveform_dir is not None:
            name = os.path.join(waveform_dir, '{}_{:04d}.mlwf'.format(
                record.detector_id, k))
            dump_waveform(name, record)
            written.append(name)
        tofs = extract_tof(fold(record), options['threshold_k'],
                           options['interpolate'],
                           options['intensity_window'])
        frames[record.detector_id] = assemble(
            tofs, pattern, maps, config.chain, timestamp=t0,
            order=config.order(record.detector_id))

    return frames, written


def run_simulate(config, export_frames=True, verbose=True):
    """Simulate the time series of a run configuration.

    Outputs are written under ``config.out``: one CSV frame and one point
    cloud per detector and frame, the scan pattern, the calibration curve,
    the pickled series (see :func:`dump <metalidar.dump.dump>`), the
    waveforms when ``[run] write_waveforms`` is set, and ``manifest.json``.

    Args:
        config(:obj:`RunConfig <metalidar.config.RunConfig>`): The run.
        export_frames(bool): Whether to write frames and point clouds.
            Default is ``True``.
        verbose(bool): Whether to print progress. Default is ``True``.

    Returns:
        A :obj:`SimulationResult`.

    Raises:
        ConfigError: If the config has no seed, or on any invalid value.
    """

    if config.seed is None:
        raise ConfigError('simulate ({}): a seed is required, set [run] seed '
                          'or pass --seed.'.format(config.path))

    timings = {}
    start = time.time()

    with stage('calibration', config, timings):
        curve = config.curve()
        maps = config.maps(curve)

    with stage('pattern', config, timings):
        pattern = config.pattern(maps)
        rate_report = config.rate_report(pattern)
        if rate_report.above_cutoff:
            warnings.warn('Scanning above the deflector bandwidth: '
                          '{}'.format(rate_report), UserWarning)
        frame_shots = len(shot_indices(pattern, config.laser.f_rep))
        frame_period = frame_shots / config.laser.f_rep
    if verbose:
        print(pattern)
        print(rate_report)

    with stage('scene', config, timings):
        scene = config.scene()

    out = config.out
    _makedirs(out)
    waveform_dir = None
    if config.write_waveforms:
        waveform_dir = os.path.join(out, 'waveforms')
        _makedirs(waveform_dir)

    seeds = frame_seeds(config.seed, config.n_frames)
    n_jobs = config.n_jobs
    with stage('synthesis', config, timings):
        delayed_list = (delayed(_simulate_frame)(k, seeds[k],
                                                 k * frame_period, config,
                                                 scene, pattern, maps,
                                                 rate_report, waveform_dir)
                        for k in range(config.n_frames))
        out_list = Parallel(n_jobs=n_jobs, pre_dispatch='2*n_jobs')(
            delayed_list)

    series = {}
    outputs = []
    for detector in config.detectors:
        series[detector.id] = TimeSeries(
            [frames[detector.id] for frames, _ in out_list], frame_period)
        if verbose:
            print('Detector {}: {}'.format(detector.id,
                                           series[detector.id]))
    for _, written in out_list:
        outputs.extend(written)

    with stage('export', config, timings):
        if export_frames:
            frame_dir = os.path.join(out, 'frames')
            point_dir = os.path.join(out, 'points')
            _makedirs(frame_dir)
            _makedirs(point_dir)
            for det_id, det_series in sorted(series.items()):
                for k, frame in enumerate(det_series):
                    name = '{}_{:04d}'.format(det_id, k)
                    csv = os.path.join(frame_dir, name + '.csv')
                    xyz = os.path.join(point_dir, name + '.xyz')
                    dump_frame_csv(csv, frame)
                    dump_point_cloud(xyz, frame)
                    outputs.extend((csv, xyz))

        pattern_file = os.path.join(out, 'pattern.txt')
        curve_file = os.path.join(out, 'curve.txt')
        series_file = os.path.join(out, 'series.pkl')
        dump_pattern(pattern_file, pattern)
        dump_curve(curve_file, curve)
        dump(series_file, series, config)
        outputs.extend((pattern_file, curve_file, series_file))

    timings['total'] = time.time() - start
    manifest = write_manifest(
        os.path.join(out, 'manifest.json'), outputs,
        command='simulate', config=config.path, name=config.name,
        seed=int(config.seed), n_frames=config.n_frames,
        frame_rate=1 / frame_period, versions=versions(), timings=timings)

    if verbose:
        print('Wrote {} files to {} in {:.2f} s'.format(
            len(outputs) + 1, out, timings['total']))

    return SimulationResult(out, series, outputs, manifest, timings)
