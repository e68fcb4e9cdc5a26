"""The utils module contains the get_rng function and a few numerical helpers
shared by the optics, calibration and scene modules."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import numbers

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT  # noqa


def get_rng(random_state):
    """Return a 'validated' RNG.

    If random_state is None, use RandomState singleton from numpy.  Else if
    it's an integer, consider it's a seed and initialized an rng with that
    seed. If it's already an rng, return it.
    """
    if random_state is None:
        return np.random.mtrand._rand
    elif isinstance(random_state, (numbers.Integral, np.integer)):
        return np.random.RandomState(random_state)
    if isinstance(random_state, np.random.RandomState):
        return random_state
    raise ValueError('Wrong random state. Expecting None, an int or a numpy '
                     'RandomState instance, got a '
                     '{}'.format(type(random_state)))


def frame_seeds(random_state, n):
    """Draw ``n`` independent integer seeds from ``random_state``.

    Used to give every frame of a time series its own noise generator, so that
    the output does not depend on the order in which frames are computed.
    """
    rng = get_rng(random_state)
    return rng.randint(0, np.iinfo(np.int32).max, size=n)


def direction_from_angles(theta, phi):
    """Unit direction vectors for azimuth ``theta`` and elevation ``phi``
    (radians).

    The convention is d = (cos(phi) sin(theta), sin(phi), cos(phi) cos(theta)),
    i.e. z is the optical axis, theta is measured in the x-z plane and phi
    towards y.

    Returns:
        numpy array of shape ``(..., 3)``.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    cos_phi = np.cos(phi)
    return np.stack((cos_phi * np.sin(theta), np.sin(phi),
                     cos_phi * np.cos(theta)), axis=-1)


def angles_from_direction(d):
    """Inverse of :func:`direction_from_angles`. ``d`` need not be
    normalized.

    Returns:
        A tuple ``(theta, phi)`` in radians.
    """
    d = np.asarray(d, dtype=float)
    norm = np.linalg.norm(d, axis=-1)
    theta = np.arctan2(d[..., 0], d[..., 2])
    phi = np.arcsin(np.clip(d[..., 1] / norm, -1, 1))
    return theta, phi


def off_axis_angle(theta, phi):
    """Angle between the direction (theta, phi) and the optical axis."""
    d = direction_from_angles(theta, phi)
    return np.arctan2(np.hypot(d[..., 0], d[..., 1]), d[..., 2])


def rotate(v, axis, angle):
    """Rotate vectors ``v`` about the unit ``axis`` by ``angle`` radians
    (Rodrigues formula). ``angle`` may be an array broadcasting against the
    leading dimensions of ``v``."""
    v = np.asarray(v, dtype=float)
    k = np.asarray(axis, dtype=float)
    angle = np.asarray(angle, dtype=float)[..., np.newaxis]
    cos, sin = np.cos(angle), np.sin(angle)
    k_dot_v = np.sum(v * k, axis=-1, keepdims=True)
    return v * cos + np.cross(k, v) * sin + k * k_dot_v * (1 - cos)


def normalize(v):
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError('Cannot normalize a null vector.')
    return v / norm
