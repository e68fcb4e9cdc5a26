"""Module for testing the synthesis of detector records."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np
import pytest

from metalidar import ConfigError
from metalidar.optics import power_budget
from metalidar.scanpattern import random_access
from metalidar.scanpattern import raster
from metalidar.scene import Disk
from metalidar.scene import Scene
from metalidar.signal import DetectorSpec
from metalidar.signal import LaserSpec
from metalidar.signal import WaveformRecord
from metalidar.signal import drive_lowpass
from metalidar.signal import ground_truth
from metalidar.signal import pulse_shape
from metalidar.signal import samples_per_period
from metalidar.signal import shot_indices
from metalidar.signal import split_orders
from metalidar.signal import synthesize
from metalidar.utils import SPEED_OF_LIGHT


def test_laser_spec():

    laser = LaserSpec()
    assert 29.97 < laser.d_max < 29.98
    with pytest.raises(ValueError):
        LaserSpec(f_rep=300e6)
    with pytest.raises(ValueError):
        LaserSpec(pulse_rise_time=0)


def test_detector_accepts():

    gamma = np.radians([0.5, 1.9, 2.1, 30.])
    blocked = DetectorSpec(na_mode='blocked', half_angle=2.)
    narrow = DetectorSpec(na_mode='narrow', half_angle=2.)
    wide = DetectorSpec(na_mode='open')
    assert list(blocked.accepts(gamma)) == [False, False, True, True]
    assert list(narrow.accepts(gamma)) == [True, True, False, False]
    assert wide.accepts(gamma).all()
    assert not wide.accepts(np.nan)


def test_detector_validation():

    with pytest.raises(ValueError, match='Accepted values are blocked'):
        DetectorSpec(na_mode='closed')
    with pytest.raises(ValueError):
        DetectorSpec(noise_sigma=-1.)
    with pytest.raises(ValueError):
        DetectorSpec(half_angle=90.)


def test_samples_per_period():

    assert samples_per_period(3e9, 5e6) == 600
    assert samples_per_period(3e9, 3e9 / 180) == 180
    with pytest.raises(ConfigError):
        samples_per_period(1e9, 3e6)
    with pytest.raises(ConfigError):
        samples_per_period(1e6, 5e6)


def test_waveform_record():

    record = WaveformRecord(np.zeros(1200), 3e9, 5e6, 2, detector_id='B')
    assert len(record) == 1200
    assert record.samples.dtype == np.float32
    assert record.samples_per_period == 600
    with pytest.raises(ValueError):
        WaveformRecord(np.zeros(1000), 3e9, 5e6, 2)


def test_pulse_shape():

    rise, decay = 330e-12, 10e-9
    assert np.isclose(pulse_shape(0., rise, decay), 0.5)
    assert pulse_shape(-2e-9, rise, decay) < 1e-12
    assert np.isclose(pulse_shape(decay, rise, decay), np.exp(-1), rtol=1e-6)

    t = np.linspace(-1e-9, 0, 50)
    assert np.all(np.diff(pulse_shape(t, rise, decay)) > 0)


def test_drive_lowpass():

    v = np.array([0., 1., 1., 1., 1., 1.])
    assert np.array_equal(drive_lowpass(v, 0.), v)

    smooth = drive_lowpass(v, 2.)
    assert smooth[0] == 0
    assert np.all(np.diff(smooth) > 0)
    assert np.all(smooth < 1)

    # a constant drive is left alone
    assert np.allclose(drive_lowpass(np.full(10, 3.), 4.), 3)


def test_split_orders(chain):

    v_x, v_y = np.array([0., 2.5, -1.]), np.array([0., 0., 2.])
    order0, order1 = split_orders(v_x, v_y, chain)

    theta0, phi0 = chain.aod_angles(v_x, v_y)
    assert np.allclose(order0.direction_theta, theta0)
    assert np.allclose(order0.direction_phi, phi0)
    assert order0.order == 0 and order1.order == 1

    # the first order leaves the center undeflected and bends away from the
    # impact point elsewhere
    assert np.isclose(order1.direction_theta[0], 0)
    assert np.isclose(np.degrees(order1.direction_theta[1]), -30)
    assert order1.direction_phi[2] < 0

    expected = power_budget(1, order1.impact_r, chain.aod, chain.ms, axes=2)
    assert np.allclose(order1.power, expected)
    assert np.all(order1.divergence > 0)


def test_split_orders_outside(chain):

    with pytest.raises(ValueError):
        split_orders(6., 0., chain)

    order0, order1 = split_orders(np.array([6., 1.]), np.array([0., 0.]),
                                  chain, strict=False)
    assert np.isnan(order1.direction_theta[0])
    assert order1.power[0] == 0
    assert order1.power[1] > 0
    assert order0.power[0] > 0


def test_shot_indices(narrow_maps):

    pattern = random_access([(5., 0., 1e-6), (-5., 2., 3e-6)], narrow_maps)
    index = shot_indices(pattern, 5e6)
    assert list(index) == [0] * 5 + [1] * 15

    grid = raster((3, 1), (10., 0.), 5e6, narrow_maps)
    assert list(shot_indices(grid, 5e6)) == [0, 1, 2]
    with pytest.raises(ConfigError, match='scan rate'):
        shot_indices(grid, 6e6)


def single_shot(narrow_maps, theta=10.):
    return raster((1, 1), (0., 0.), 5e6, narrow_maps, center=(theta, 0.))


def test_single_echo(narrow_maps, chain, laser, quiet_detector, wall):
    """One shot at 10 degrees on the wall: one echo, at the round trip time of
    the first order."""

    pattern = single_shot(narrow_maps)
    record, = synthesize(pattern, wall, chain, laser, [quiet_detector])
    assert len(record) == 600
    assert record.n_pixels == 1
    assert record.detector_id == 'A'

    truth = ground_truth(pattern, wall, chain, laser, quiet_detector)
    assert np.isclose(truth[0], 1.5 / np.cos(np.radians(10)), atol=2e-3)

    expected = 2 * truth[0] / SPEED_OF_LIGHT * 3e9
    edge = np.argmax(np.diff(record.samples)) + 0.5
    assert abs(edge - expected) <= 1
    assert record.samples.max() > 0
    assert np.all(record.samples[:int(expected) - 5] == 0)


def test_amplitude_law(narrow_maps, chain, laser):
    """Echo amplitudes follow reflectivity / d ** exponent."""

    pattern = single_shot(narrow_maps, theta=0.5)
    near = Scene([Disk('d', position=(0., 0., 1.), radius=0.5)])
    far = Scene([Disk('d', position=(0., 0., 2.), radius=0.5)])

    # open detector: the first order is close to the axis
    detector = DetectorSpec(noise_sigma=0., na_mode='open')
    a_near = synthesize(pattern, near, chain, laser, [detector])[0].samples
    a_far = synthesize(pattern, far, chain, laser, [detector])[0].samples
    # the zeroth order hits the disk too: compare total energies
    assert np.isclose(a_near.sum() / a_far.sum(), 4, rtol=0.05)

    cubic = synthesize(pattern, far, chain, laser, [detector],
                       range_exponent=3.)[0].samples
    assert np.isclose(a_far.sum() / cubic.sum(), 2, rtol=0.05)


def test_blocked_zero_order(narrow_maps, chain, laser, quiet_detector, wall):

    pattern = single_shot(narrow_maps, theta=0.)
    # on axis, both orders fall within the central cone
    record, = synthesize(pattern, wall, chain, laser, [quiet_detector])
    assert np.all(record.samples == 0)
    assert np.isnan(ground_truth(pattern, wall, chain, laser,
                                 quiet_detector)[0])


def test_noise_is_reproducible(narrow_maps, chain, laser, wall):

    detector = DetectorSpec(noise_sigma=1e-3)
    pattern = raster((4, 1), (10., 0.), 5e6, narrow_maps)
    a, = synthesize(pattern, wall, chain, laser, [detector], random_state=3)
    b, = synthesize(pattern, wall, chain, laser, [detector], random_state=3)
    c, = synthesize(pattern, wall, chain, laser, [detector], random_state=4)
    assert np.array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)
    assert np.isclose(np.std(a.samples[:20]), 1e-3, rtol=0.5)


def test_several_detectors(narrow_maps, chain, laser, quiet_detector, wall):

    other = DetectorSpec(id='B', sample_rate=1.5e9, noise_sigma=0.)
    pattern = raster((3, 1), (10., 0.), 5e6, narrow_maps)
    a, b = synthesize(pattern, wall, chain, laser, [quiet_detector, other],
                      t0=1e-3)
    assert (a.detector_id, b.detector_id) == ('A', 'B')
    assert len(a) == 1800 and len(b) == 900
    assert a.t0 == b.t0 == 1e-3

    with pytest.raises(ConfigError):
        synthesize(pattern, wall, chain, laser,
                   [DetectorSpec(sample_rate=1.234e9)])


def test_rate_report_attenuates(narrow_maps, chain, laser, quiet_detector,
                                wall):

    from metalidar.scanpattern import RateReport

    pattern = single_shot(narrow_maps)
    full, = synthesize(pattern, wall, chain, laser, [quiet_detector])
    half_report = RateReport(5e6, 5e6, 0.5, True, False, 0.)
    half, = synthesize(pattern, wall, chain, laser, [quiet_detector],
                       rate_report=half_report)
    assert np.allclose(half.samples, full.samples / 2, rtol=1e-5, atol=1e-9)
