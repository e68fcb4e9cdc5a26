"""Module for testing the scan pattern generators and the rate check."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np
import pytest

from metalidar.scanpattern import NO_LIMIT
from metalidar.scanpattern import ScanLimits
from metalidar.scanpattern import ScanPattern
from metalidar.scanpattern import UnreachableAngleError
from metalidar.scanpattern import check_rate
from metalidar.scanpattern import lissajous
from metalidar.scanpattern import random_access
from metalidar.scanpattern import raster
from metalidar.scanpattern import rate_sweep


def test_raster(narrow_maps):

    pattern = raster((3, 2), (10., 4.), 1e6, narrow_maps)
    assert pattern.kind == 'raster'
    assert pattern.grid == (3, 2)
    assert pattern.n_samples == pattern.frame_size == 6
    # azimuth is the fast axis
    assert np.allclose(pattern.theta, [-5, 0, 5, -5, 0, 5])
    assert np.allclose(pattern.phi, [-2, -2, -2, 2, 2, 2])
    assert np.allclose(pattern.t, np.arange(6) * 1e-6)
    assert np.isclose(pattern.duration, 6e-6)
    assert np.isclose(pattern.frame_rate, 1e6 / 6)
    assert pattern.axes == 2
    assert not pattern.masked.any()

    v_x, v_y = narrow_maps.lookup(pattern.theta, pattern.phi)
    assert np.allclose(pattern.v_x, v_x) and np.allclose(pattern.v_y, v_y)
    assert len(pattern.samples) == 6


def test_line_and_single_pixel(narrow_maps):

    line = raster((5, 1), (20., 0.), 5e6, narrow_maps)
    assert line.kind == 'line'
    assert line.axes == 1
    assert np.allclose(line.phi, 0)

    single = raster((1, 1), (0., 0.), 5e6, narrow_maps, center=(10., 0.))
    assert single.kind == 'raster'
    assert np.allclose(single.theta, [10])

    with pytest.raises(ValueError):
        raster((0, 3), (1., 1.), 5e6, narrow_maps)


def test_raster_unreachable(narrow_maps):

    with pytest.raises(UnreachableAngleError) as excinfo:
        raster((5, 1), (50., 0.), 5e6, narrow_maps)
    assert excinfo.value.cells == [(0, 0), (4, 0)]

    pattern = raster((5, 1), (50., 0.), 5e6, narrow_maps,
                     skip_unreachable=True)
    assert list(pattern.masked) == [True, False, False, False, True]
    assert pattern.v_x[0] == narrow_maps.center
    assert pattern.v_y[4] == narrow_maps.center

    with pytest.raises(UnreachableAngleError, match='No pixel'):
        raster((1, 1), (0., 0.), 5e6, narrow_maps, center=(30., 0.),
               skip_unreachable=True)


def test_lissajous(narrow_maps):

    pattern = lissajous(10., 5., 2 * np.pi * 3e3, 2 * np.pi * 2e3, 0.3,
                        1e-4, 1e6, narrow_maps)
    assert pattern.kind == 'lissajous'
    assert pattern.n_samples == 100
    t = np.arange(100) / 1e6
    assert np.allclose(pattern.theta, 10 * np.sin(2 * np.pi * 3e3 * t + 0.3))
    assert np.allclose(pattern.phi, 5 * np.sin(2 * np.pi * 2e3 * t))
    assert pattern.grid is None

    with pytest.raises(UnreachableAngleError):
        lissajous(30., 5., 1., 1., 0., 1e-4, 1e6, narrow_maps)
    with pytest.raises(ValueError):
        lissajous(10., 5., 1., 1., 0., 1e-9, 1e6, narrow_maps)


def test_random_access(narrow_maps):

    pattern = random_access([(5., 0., 1e-6), (-5., 2., 3e-6)], narrow_maps)
    assert pattern.kind == 'random_access'
    assert np.allclose(pattern.t, [0, 1e-6])
    assert np.isclose(pattern.scan_rate, 1e6)
    assert np.isclose(pattern.duration, 4e-6)

    with pytest.raises(ValueError):
        random_access([(5., 0., 0.)], narrow_maps)
    with pytest.raises(UnreachableAngleError) as excinfo:
        random_access([(5., 0., 1e-6), (40., 0., 1e-6)], narrow_maps)
    assert excinfo.value.cells == [1]


def test_pattern_validation():

    t = [0., 1., 2.]
    v = [0., 0.5, 1.]
    with pytest.raises(ValueError, match='Accepted values are raster'):
        ScanPattern(t, v, v, 1., 'spiral')
    with pytest.raises(ValueError):
        ScanPattern(t, v[:2], v, 1., 'line')
    with pytest.raises(ValueError):
        ScanPattern([0., 2., 1.], v, v, 1., 'line')
    with pytest.raises(ValueError):
        ScanPattern(t, v, v, 1., 'raster', grid=(2, 2))
    with pytest.raises(ValueError):
        ScanPattern(t, v, v, 0., 'line')


def test_check_rate(narrow_maps):

    limits = ScanLimits()

    # two axes at the 2D cutoff: -3 dB
    pattern = raster((2, 2), (4., 4.), 6e6, narrow_maps)
    report = check_rate(pattern, limits)
    assert report.cutoff == 6e6
    assert np.isclose(report.attenuation, 1 / np.sqrt(2))
    assert np.isclose(report.attenuation_db, -3.0103, atol=1e-4)
    assert report.above_transit
    assert not report.above_cutoff
    assert np.isclose(report.blur_width, 1)

    # a line only drives one axis
    line = raster((4, 1), (10., 0.), 5e6, narrow_maps)
    report = check_rate(line, limits)
    assert report.cutoff == 10e6
    assert np.isclose(report.attenuation, 1 / np.sqrt(1.25))
    assert check_rate(line, limits, axes=2).cutoff == 6e6

    # far above the cutoff
    report = check_rate(raster((2, 2), (4., 4.), 30e6, narrow_maps), limits)
    assert report.above_cutoff

    slow = check_rate(raster((2, 2), (4., 4.), 100e3, narrow_maps), limits)
    assert not slow.above_transit


def test_rate_sweep():

    limits = ScanLimits()
    f = np.logspace(3, 8, 50)
    response = rate_sweep(f, limits, 2)
    assert np.all(np.diff(response) < 0)
    assert np.isclose(rate_sweep(0., limits, 1), 1)
    assert np.all(rate_sweep(f, limits, 1) > response)


def test_limits():

    with pytest.raises(ValueError):
        ScanLimits(cutoff_1d=0)
    with pytest.raises(ValueError):
        ScanLimits().cutoff(3)
    assert NO_LIMIT.attenuation == 1
    assert NO_LIMIT.blur_width == 0
