"""Module for testing the simulate, calibrate, analyze and verify runs."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import json
import os

import numpy as np
import pytest

from metalidar import ConfigError
from metalidar import RunConfig
from metalidar.dump import load
from metalidar.dump import load_frame_csv
from metalidar.dump import load_waveform
from metalidar.experiments import SUITES
from metalidar.experiments import AcceptanceError
from metalidar.experiments import run_analyze
from metalidar.experiments import run_calibrate
from metalidar.experiments import run_simulate
from metalidar.experiments import run_verify
from metalidar.experiments.verify import check_depth
from metalidar.experiments.verify import check_direction
from metalidar.utils import get_rng


RUN = """
[run]
name = 'small'
seed = 1
n_frames = 3
write_waveforms = True

[laser]
f_rep = 5e6
pulse_energy_scale = 50

[detector.A]
noise_sigma = 0

[scene]
file = 'wall.ini'

[pattern]
kind = 'raster'
grid = (7, 3)
fov = (12, 4)

[calibration]
max_angle = 30
grid_step = 0.1
span = 20

[analysis]
tasks = ('clusters',)
clusters = ((1.4, 1.7), (3, 4))
"""

WALL = """
[wall]
geometry = 'plane'
position = (0, 0, 1.5)
reflectivity = 0.5
"""


@pytest.fixture
def small_config(tmpdir):
    """A 7 x 3 raster of a wall at 1.5 m, noiseless, writing to a temporary
    folder."""

    for name, text in (('wall.ini', WALL), ('run.ini', RUN)):
        with open(str(tmpdir.join(name)), 'w') as f:
            f.write(text)
    config = RunConfig.load_from_file(str(tmpdir.join('run.ini')))
    return config.override(out=str(tmpdir.join('out')))


def test_simulate(small_config):

    result = run_simulate(small_config, verbose=False)
    out = small_config.out
    assert result.out == out

    series = result.series['A']
    assert len(series) == 3
    assert np.isclose(series.frame_period, 21 / 5e6)
    assert np.allclose(series.timestamps, np.arange(3) * 21 / 5e6)
    for frame in series:
        assert frame.grid == (7, 3)
        assert frame.n_hits >= 10
        depth = frame.depth[frame.hit]
        assert np.all((depth > 1.45) & (depth < 1.6))

    for name in ('frames/A_0002.csv', 'points/A_0000.xyz',
                 'waveforms/A_0001.mlwf', 'pattern.txt', 'curve.txt',
                 'series.pkl', 'manifest.json'):
        assert os.path.isfile(os.path.join(out, name))

    record = load_waveform(os.path.join(out, 'waveforms', 'A_0001.mlwf'))
    assert len(record) == 21 * 600
    assert np.isclose(record.t0, series[1].timestamp)

    frame = load_frame_csv(os.path.join(out, 'frames', 'A_0000.csv'))
    assert np.allclose(frame.depth, series[0].depth, equal_nan=True)

    loaded, config = load(os.path.join(out, 'series.pkl'))
    assert config.name == 'small'
    assert np.allclose(loaded['A'][2].depth, series[2].depth, equal_nan=True)

    with open(os.path.join(out, 'manifest.json')) as f:
        manifest = json.load(f)
    assert manifest == result.manifest
    assert manifest['seed'] == 1
    assert manifest['n_frames'] == 3
    assert manifest['command'] == 'simulate'
    assert len(manifest['outputs']) == 3 + 3 + 3 + 3
    assert 'numpy' in manifest['versions']
    assert 'synthesis' in result.timings


def test_simulate_is_reproducible(small_config):
    """Noisy frames only depend on the seed, not on the number of jobs."""

    small_config.detectors = [small_config.detector('A')._replace(
        noise_sigma=8e-4)]
    small_config.write_waveforms = False

    first = run_simulate(small_config, export_frames=False, verbose=False)
    small_config.n_jobs = 2
    second = run_simulate(small_config, export_frames=False, verbose=False)
    for a, b in zip(first.series['A'], second.series['A']):
        assert np.array_equal(a.depth, b.depth, equal_nan=True)
        assert np.array_equal(a.intensity, b.intensity, equal_nan=True)
    assert not os.path.isdir(os.path.join(small_config.out, 'frames'))


def test_simulate_needs_a_seed(small_config):

    small_config.seed = None
    with pytest.raises(ConfigError, match='seed is required'):
        run_simulate(small_config, verbose=False)


def test_simulate_stage_errors(small_config):

    small_config.pattern_options['fov'] = (80, 4)
    with pytest.raises(ConfigError, match=r'^pattern \(.*run.ini\)'):
        run_simulate(small_config, verbose=False)


def test_calibrate(small_config):

    result = run_calibrate(small_config, verbose=False)
    assert result.curve.is_monotonic()
    assert result.maps.is_antisymmetric()
    fraction, max_theta, max_phi = result.coverage
    assert fraction == 1
    assert max_theta == max_phi == 20

    folder = os.path.join(small_config.out, 'calibration')
    names = sorted(os.listdir(folder))
    assert names == ['coverage.txt', 'curve.txt', 'manifest.json',
                     'maps_vx.csv', 'maps_vy.csv']
    assert len(result.outputs) == 4


def test_calibrate_partial_coverage(small_config):

    small_config.calibration_options['max_angle'] = 20.
    with pytest.warns(UserWarning, match='unreachable'):
        result = run_calibrate(small_config, verbose=False)
    assert result.coverage[0] < 1


def test_calibrate_non_monotonic(small_config, tmpdir):

    v = np.linspace(-5, 5, 11)
    np.savetxt(str(tmpdir.join('samples.txt')),
               np.column_stack((v, 0.2 * v ** 3 - v)))
    small_config.calibration_options['samples'] = 'samples.txt'
    with pytest.raises(AcceptanceError, match='not monotonic'):
        run_calibrate(small_config, verbose=False)


def test_analyze(small_config):

    run_simulate(small_config, export_frames=False, verbose=False)
    result = run_analyze(small_config, verbose=False)

    (centroid, n_hits), (empty, n_empty) = result.results['clusters']
    assert n_hits >= 10
    assert np.isclose(centroid[2], 1.5, atol=0.05)
    assert empty is None and n_empty == 0
    assert os.path.isfile(os.path.join(small_config.out, 'analysis',
                                       'manifest.json'))


def test_analyze_without_series(small_config):

    result = run_analyze(small_config, tasks=['divergence', 'detectability'],
                         verbose=False)

    events = result.results['detectability']
    assert events.n_events == 77

    fit = result.results['divergence']
    assert fit.r_squared > 0.99
    assert not fit.negative
    assert len(result.outputs) == 2

    # series tasks need a simulated series
    with pytest.raises(ConfigError, match='Run simulate first'):
        run_analyze(small_config, verbose=False)


def test_analyze_errors(small_config):

    with pytest.raises(ConfigError, match='Unknown task'):
        run_analyze(small_config, tasks=['velocity'], verbose=False)

    small_config.analysis_options = {}
    with pytest.raises(ConfigError, match='No analysis task'):
        run_analyze(small_config, verbose=False)

    run_simulate(small_config, export_frames=False, verbose=False)
    with pytest.raises(ConfigError, match='needs a center'):
        run_analyze(small_config, tasks=['rotation'], verbose=False)

    small_config.analysis_options = {'detector': 'B'}
    with pytest.raises(ConfigError, match='Unknown detector B'):
        run_analyze(small_config, tasks=['clusters'], verbose=False)


def test_verify():

    rows = run_verify(n_cases=2000, verbose=False)
    assert set(row[0] for row in rows) == set(SUITES)
    assert all(ok for _, _, _, ok in rows)


def test_verify_with_config(small_config):

    rows = run_verify(small_config, ['antisymmetry', 'transit', 'loss'],
                      n_cases=10, verbose=False)
    assert [row[0] for row in rows] == (['antisymmetry'] + ['transit'] * 3 +
                                        ['loss'] * 3)


def test_verify_failures(monkeypatch):

    with pytest.raises(ConfigError, match='Accepted values are antisymmetry'):
        run_verify(suites=['speed'], verbose=False)

    monkeypatch.setitem(SUITES, 'broken',
                        lambda config, rng, n_cases: [('check', '0', False)])
    with pytest.raises(AcceptanceError, match='1 check'):
        run_verify(suites=['range', 'broken'], verbose=False)


def test_direction_suite():
    """The whole cone up to 60 degrees is reached within half a degree; the
    box corners beyond it are only counted."""

    (name, value, ok), (_, beyond, _) = check_direction(None, get_rng(0),
                                                        20000)
    assert ok, value
    assert value.endswith(', 0 unreachable')
    worst = float(value.split()[0])
    assert 0.3 < worst < 0.5
    n_beyond = int(beyond.split()[0])
    assert 0 < n_beyond < 20000

    _, value, ok = check_direction(None, get_rng(0), 2000, tol=0.3)[0]
    assert not ok


def test_depth_suite():

    rows = check_depth(None, get_rng(3), 0, n_scenes=20)
    assert [name for name, _, _ in rows] == ['depth error', 'depth misses']
    assert all(ok for _, _, ok in rows), rows
    assert 'in 20 scenes' in rows[0][1]
