"""Module for testing the utils module."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from metalidar.utils import angles_from_direction
from metalidar.utils import direction_from_angles
from metalidar.utils import frame_seeds
from metalidar.utils import get_rng
from metalidar.utils import normalize
from metalidar.utils import off_axis_angle
from metalidar.utils import rotate


def test_get_rng():

    # assert two RNG with same int are the same
    rng_a = get_rng(12)
    rng_b = get_rng(12)
    a = [rng_a.rand() for _ in range(10)]
    b = [rng_b.rand() for _ in range(10)]
    assert a == b

    # assert passing an int returns the corresponding numpy rng instance
    rng_a = get_rng(12)
    rng_b = np.random.RandomState(12)
    a = [rng_a.rand() for _ in range(10)]
    b = [rng_b.rand() for _ in range(10)]
    assert a == b

    # Make sure this is ok
    get_rng(None)
    get_rng(np.int64(3))

    with pytest.raises(ValueError):
        get_rng(23.2)
    with pytest.raises(ValueError):
        get_rng('bad')


def test_frame_seeds():

    a = frame_seeds(7, 5)
    b = frame_seeds(7, 5)
    assert len(a) == 5
    assert list(a) == list(b)
    assert list(frame_seeds(8, 5)) != list(a)


def test_direction_convention():
    """z is the optical axis, theta turns towards x and phi towards y."""

    assert np.allclose(direction_from_angles(0, 0), [0, 0, 1])
    assert np.allclose(direction_from_angles(np.pi / 2, 0), [1, 0, 0])
    assert np.allclose(direction_from_angles(0, np.pi / 2), [0, 1, 0])

    d = direction_from_angles([0.1, -0.3], [0.2, 0.4])
    assert d.shape == (2, 3)
    assert np.allclose(np.linalg.norm(d, axis=-1), 1)


@given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_angles_round_trip(theta, phi):

    back_theta, back_phi = angles_from_direction(
        direction_from_angles(theta, phi))
    assert np.isclose(back_theta, theta, atol=1e-9)
    assert np.isclose(back_phi, phi, atol=1e-9)


def test_angles_from_unnormalized_direction():

    theta, phi = angles_from_direction([0., 3., 3.])
    assert np.isclose(theta, 0)
    assert np.isclose(phi, np.pi / 4)


def test_off_axis_angle():

    assert np.isclose(off_axis_angle(0., 0.), 0)
    assert np.isclose(off_axis_angle(0.3, 0.), 0.3)
    assert np.isclose(off_axis_angle(0., -0.3), 0.3)


def test_rotate():

    v = np.array([[1., 0., 0.]])
    out = rotate(v, (0., 0., 1.), np.pi / 2)
    assert np.allclose(out, [[0, 1, 0]])

    # one angle per vector
    v = np.array([[1., 0., 0.], [1., 0., 0.]])
    out = rotate(v, (0., 0., 1.), np.array([0., np.pi]))
    assert np.allclose(out, [[1, 0, 0], [-1, 0, 0]])


def test_normalize():

    assert np.allclose(normalize((0, 0, 2)), (0, 0, 1))
    with pytest.raises(ValueError):
        normalize((0, 0, 0))
