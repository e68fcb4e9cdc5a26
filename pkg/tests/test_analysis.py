"""Module for testing the measurements made on reconstructed frames."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np
import pytest

from metalidar.analysis import depth_clusters
from metalidar.analysis import detectability
from metalidar.analysis import divergence_regression
from metalidar.analysis import feature_size
from metalidar.analysis import fit_beam_waist
from metalidar.analysis import passage_period
from metalidar.analysis import rotation_speed
from metalidar.analysis import space_time_image
from metalidar.analysis import track_rotation
from metalidar.analysis import wobble_residuals
from metalidar.frame import RangingFrame
from metalidar.frame import TimeSeries


def spinning_series(hz, n_frames=20, period=0.01, n=61, sigma=0.3,
                    gain=1.):
    """Raster frames of a bright spoke turning at ``hz`` about the center
    pixel. ``gain`` scales every intensity."""

    index = np.arange(n * n)
    c = (n - 1) / 2
    col, row = index % n, index // n
    radius = np.hypot(col - c, row - c)
    psi = np.arctan2(row - c, col - c)
    theta, phi = (col - c) * 0.5, (row - c) * 0.5
    annulus = (radius >= 5) & (radius <= 28)

    frames = []
    for k in range(n_frames):
        t = k * period
        gap = np.angle(np.exp(1j * (psi - 2 * np.pi * hz * t)))
        spoke = np.where(annulus, np.exp(-0.5 * (gap / sigma) ** 2), 0.)
        intensity = gain * (spoke + 0.01)
        frames.append(RangingFrame(theta, phi, np.ones(n * n), intensity, t,
                                   grid=(n, n)))
    return TimeSeries(frames, period)


def test_rotation_speed():

    series = spinning_series(7.)
    track = track_rotation(series, (30, 30), radius_range=(5, 28),
                           depth_window=(0.5, 1.5), n_bins=36)
    assert len(track) == 20
    assert track.valid.all()
    assert np.isclose(track.frame_rate, 100)
    assert np.all(track.fit_quality > 0.5)

    estimate = rotation_speed(track, expected_hz=7.)
    assert abs(estimate.hz - 7) < 0.05
    assert not estimate.aliased
    assert estimate.n_frames == 20
    assert estimate.uncertainty < 0.05
    assert 'Hz' in str(estimate)

    angles, residuals = wobble_residuals(track, estimate)
    assert np.all(np.diff(angles) >= 0)
    assert np.all((angles >= 0) & (angles < 2 * np.pi))
    assert len(residuals) == 20


def test_rotation_direction():

    track = track_rotation(spinning_series(-5.), (30, 30),
                           radius_range=(5, 28), n_bins=36)
    assert abs(rotation_speed(track).hz + 5) < 0.05


def test_rotation_aliasing():

    track = track_rotation(spinning_series(7.), (30, 30),
                           radius_range=(5, 28), n_bins=36)
    with pytest.warns(UserWarning, match='aliased'):
        estimate = rotation_speed(track, expected_hz=60.)
    assert estimate.aliased

    # 55 Hz at 100 fps: the wheel seems to go back 0.9 pi per frame
    track = track_rotation(spinning_series(55.), (30, 30),
                           radius_range=(5, 28), n_bins=36)
    with pytest.warns(UserWarning, match='Largest step'):
        estimate = rotation_speed(track)
    assert estimate.aliased
    assert estimate.hz < 0


def test_rotation_gain():
    """Scaling the intensities does not change the estimate."""

    tracks = [track_rotation(spinning_series(7., gain=gain), (30, 30),
                             radius_range=(5, 28), n_bins=36)
              for gain in (1., 37.)]
    hz = [rotation_speed(track).hz for track in tracks]
    assert np.isclose(hz[0], hz[1], rtol=1e-9, atol=0)
    assert np.allclose(tracks[0].angle_center, tracks[1].angle_center,
                       rtol=0, atol=1e-9)


def test_rotation_errors():

    empty = [RangingFrame(np.zeros(9), np.zeros(9), np.full(9, np.nan),
                          np.full(9, np.nan), t, grid=(3, 3))
             for t in (0., 0.01, 0.02)]
    track = track_rotation(TimeSeries(empty, 0.01), (1, 1))
    assert not track.valid.any()
    with pytest.raises(ValueError, match='valid frames'):
        rotation_speed(track)

    short = spinning_series(7., n_frames=2)
    track = track_rotation(short, (30, 30), radius_range=(5, 28), n_bins=36)
    with pytest.raises(ValueError, match='covers'):
        rotation_speed(track)

    lines = TimeSeries([RangingFrame([0.], [0.], [1.], [1.])], 0.01)
    with pytest.raises(ValueError):
        track_rotation(lines, (0, 0))


def bar_frame():
    """11 x 11 raster at 1 degree pitch, depth 1 m, with a bright horizontal
    bar of 5 pixels in the middle row."""

    n = 11
    index = np.arange(n * n)
    col, row = index % n, index // n
    intensity = np.ones(n * n)
    intensity[(row == 5) & (col >= 3) & (col <= 7)] = 10.
    return RangingFrame(col - 5., row - 5., np.ones(n * n), intensity,
                        grid=(n, n))


def test_feature_size():

    frame = bar_frame()
    # 4 degrees between the end pixels, plus one pitch
    assert np.isclose(feature_size(frame), np.radians(5), rtol=1e-6)
    assert np.isclose(feature_size(frame, depth_window=(0.5, 1.5)),
                      np.radians(5), rtol=1e-6)
    assert feature_size(frame, depth_window=(2., 3.)) is None

    with pytest.raises(ValueError):
        feature_size(RangingFrame([0.], [0.], [1.], [1.]))


def test_depth_clusters():

    frame = RangingFrame([0., 0., 30.], [0., 0., 0.], [1., 1.2, 3.],
                         [1., 1., 1.])
    (near, n_near), (far, n_far), (none, n_none) = depth_clusters(
        frame, [(0.5, 1.5), (2.5, 3.5), (10., 20.)])
    assert n_near == 2 and np.allclose(near, (0, 0, 1.1))
    assert n_far == 1 and np.allclose(far, (1.5, 0, 3 * np.cos(np.pi / 6)))
    assert none is None and n_none == 0


def test_fit_beam_waist():

    r = np.linspace(0, 3e-3, 40)
    intensity = 2. * np.exp(-2 * r ** 2 / 1e-3 ** 2) + 0.1
    fwhm = fit_beam_waist(r, intensity)
    assert np.isclose(fwhm, 1e-3 * np.sqrt(2 * np.log(2)), rtol=1e-3)

    with pytest.raises(ValueError):
        fit_beam_waist([0., 1.], [1., 0.5])


def test_divergence_regression():

    z = np.array([1., 2., 3., 4.])
    fit = divergence_regression(np.column_stack((z, 1e-3 + 2e-3 * z)))
    assert np.isclose(fit.slope, 2e-3)
    assert np.isclose(fit.intercept, 1e-3)
    assert np.isclose(fit.r_squared, 1)
    assert np.isclose(fit.divergence_deg, np.degrees(2 * np.arctan(1e-3)))
    assert not fit.negative

    with pytest.warns(UserWarning, match='Negative'):
        fit = divergence_regression([(1., 3e-3), (2., 2e-3), (3., 1e-3)])
    assert fit.negative

    with pytest.raises(ValueError):
        divergence_regression([(1., 1.), (2., 2.)])
    with pytest.raises(ValueError):
        divergence_regression([(1., 1.), (1., 2.), (1., 3.)])


def test_detectability():
    """A 1234 km/h target at 15 m across a 120 degree field of view, seen at
    a 980 us frame period."""

    result = detectability(1234 / 3.6, 15., 120., 980e-6)
    assert np.isclose(result.chord, 30 * np.sin(np.pi / 3))
    assert np.isclose(result.crossing_time, 75.8e-3, atol=1e-4)
    assert result.n_events == 77
    assert np.isclose(result.max_speed * 3600 / 1e6, 23.7, atol=0.1)

    two = detectability(1234 / 3.6, 15., 120., 980e-6, min_events=2)
    assert np.isclose(two.max_speed, 2 * result.max_speed)

    with pytest.raises(ValueError):
        detectability(0., 15., 120., 980e-6)


def test_space_time_image():

    frames = [RangingFrame([0., 1., 2.], [0., 0., 0.],
                           [1., 5., np.nan], [k, 2., 3.], 0.1 * k)
              for k in range(4)]
    image = space_time_image(TimeSeries(frames, 0.1), depth_window=(0., 2.))
    assert image.shape == (4, 3)
    assert np.array_equal(image[:, 0], [0, 1, 2, 3])
    assert not image[:, 1:].any()


def test_passage_period():

    image = np.zeros((100, 4))
    image[::5, 1] = 1.
    assert np.isclose(passage_period(image, 1e-3), 5e-3, rtol=0.02)

    assert passage_period(np.ones((20, 3)), 1e-3) is None
