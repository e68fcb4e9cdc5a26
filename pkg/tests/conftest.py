"""
This module contains the pytest fixtures.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import pytest

from metalidar import DetectorSpec
from metalidar import LaserSpec
from metalidar import OpticsChain
from metalidar import build_maps
from metalidar import ideal_curve
from metalidar.scene import Plane
from metalidar.scene import Scene


@pytest.fixture(autouse=True)
def output_dir(tmpdir, monkeypatch):
    """Runs write to a temporary folder instead of the home directory."""

    folder = str(tmpdir.mkdir('runs'))
    monkeypatch.setenv('METALIDAR_OUTPUT_FOLDER', folder)
    return folder


@pytest.fixture
def chain():
    return OpticsChain()


@pytest.fixture(scope='session')
def narrow_maps():
    """Maps of the default chain over +/- 20 degrees, 0.1 degree step."""
    return build_maps(ideal_curve(max_angle=25.), grid_step=0.1, span=20.)


@pytest.fixture(scope='session')
def wide_maps():
    """Maps of the default chain over +/- 60 degrees, 0.5 degree step."""
    return build_maps(ideal_curve(max_angle=60.), grid_step=0.5, span=60.)


@pytest.fixture
def laser():
    return LaserSpec(f_rep=5e6, pulse_energy_scale=50.)


@pytest.fixture
def quiet_detector():
    """A noiseless detector blind to the zeroth order."""
    return DetectorSpec(id='A', noise_sigma=0., na_mode='blocked',
                        half_angle=2.)


@pytest.fixture
def wall():
    """A single wall facing the sensor at 1.5 m."""
    return Scene([Plane('wall', position=(0., 0., 1.5), reflectivity=0.5)])
