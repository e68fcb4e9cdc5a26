"""Module for testing the command line interface."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import os

import pytest

from metalidar import __version__
from metalidar.__main__ import main
from metalidar.experiments import SUITES


RUN = """
[run]
name = 'cli'
n_frames = 2

[laser]
pulse_energy_scale = 50

[scene]
file = 'wall.ini'

[pattern]
kind = 'line'
grid = (9, 1)
fov = (16, 0)

[calibration]
max_angle = 25
grid_step = 0.1
span = 20

[analysis]
tasks = ('clusters',)
clusters = ((1.4, 1.7),)
"""


@pytest.fixture
def config_file(tmpdir):

    with open(str(tmpdir.join('wall.ini')), 'w') as f:
        f.write("[wall]\ngeometry = 'plane'\nposition = (0, 0, 1.5)\n")
    file_name = str(tmpdir.join('run.ini'))
    with open(file_name, 'w') as f:
        f.write(RUN)
    return file_name


def test_version(capsys):

    with pytest.raises(SystemExit) as excinfo:
        main(['--version'])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_usage_errors(capsys):

    for argv in ([], ['fly'], ['simulate'], ['verify', '--suite', 'speed'],
                 ['simulate', '--config', 'a.ini', '--scenario', 'fig2']):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2
    assert 'error:' in capsys.readouterr().err


def test_simulate_and_analyze(config_file, tmpdir, capsys):

    out = str(tmpdir.join('out'))
    assert main(['simulate', '--config', config_file, '--seed', '3',
                 '--out', out, '--no-frames']) == 0
    assert 'Wrote' in capsys.readouterr().out
    assert os.path.isfile(os.path.join(out, 'series.pkl'))
    assert not os.path.isdir(os.path.join(out, 'frames'))

    assert main(['analyze', '--config', config_file, '--out', out,
                 '-q']) == 0
    assert capsys.readouterr().out == ''
    assert os.path.isfile(os.path.join(out, 'analysis', 'manifest.json'))


def test_config_errors(config_file, tmpdir, capsys):

    # no seed in the file nor on the command line
    assert main(['simulate', '--config', config_file, '-q']) == 2
    assert 'seed is required' in capsys.readouterr().err

    assert main(['calibrate', '--config',
                 str(tmpdir.join('missing.ini'))]) == 2
    assert main(['analyze', '--config', config_file, '--out',
                 str(tmpdir.join('empty')), '-q']) == 2
    assert 'Run simulate first' in capsys.readouterr().err


def test_calibrate(config_file, tmpdir, capsys):

    out = str(tmpdir.join('out'))
    assert main(['calibrate', '--config', config_file, '--out', out]) == 0
    assert 'antisymmetric' in capsys.readouterr().out
    assert os.path.isfile(os.path.join(out, 'calibration', 'maps_vx.csv'))


def test_verify(monkeypatch, capsys):

    assert main(['verify', '--suite', 'range', '--suite', 'kinematics']) == 0
    assert 'd_max 5 MHz' in capsys.readouterr().out

    monkeypatch.setitem(SUITES, 'broken',
                        lambda config, rng, n_cases: [('check', '0', False)])
    assert main(['verify', '--suite', 'broken', '-q']) == 3
    assert 'check failed' in capsys.readouterr().err


def test_scenario_option(capsys):

    assert main(['verify', '--scenario', 'fig2', '--suite', 'antisymmetry',
                 '--suite', 'loss']) == 0
    assert 'antisymmetry' in capsys.readouterr().out
