"""
The :mod:`metalidar.scene.hits` module defines the :class:`Hit` and
:class:`RayHits` named tuples, and the :class:`Motion` of scene objects.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple

import numpy as np


class Hit(namedtuple('Hit', ['distance', 'reflectivity', 'incidence_cosine',
                             'object_id', 'retro'])):
    """Intersection of a single ray with the scene.

    Args:
        distance(float): Distance to the surface, in meters.
        reflectivity(float): Reflectivity of the surface at the hit point.
        incidence_cosine(float): Cosine of the angle between the ray and the
            surface normal.
        object_id(str): Id of the object hit.
        retro(bool): Whether the surface is retro-reflective.
    """

    __slots__ = ()

    def __str__(self):
        return '{} at {:.4f} m (reflectivity {:.2f}, cos {:.3f})'.format(
            self.object_id, self.distance, self.reflectivity,
            self.incidence_cosine)


class RayHits(namedtuple('RayHits', ['distance', 'reflectivity',
                                     'incidence_cosine', 'retro',
                                     'object_index'])):
    """Intersections of a bundle of rays, one entry per ray. Missed rays
    have an infinite distance and an ``object_index`` of -1.
    """

    __slots__ = ()

    @classmethod
    def misses(cls, n):
        return cls(np.full(n, np.inf), np.zeros(n), np.zeros(n),
                   np.zeros(n, dtype=bool), np.full(n, -1, dtype=int))

    @property
    def hit(self):
        return np.isfinite(self.distance)


class Motion(namedtuple('Motion', ['axis', 'frequency', 'phase'])):
    """Rotation of an object about an axis going through its position.

    Args:
        axis(tuple): Rotation axis. Normalized on construction.
        frequency(float): Rotation frequency in Hz (turns per second).
        phase(float): Angle at ``t = 0``, in radians.
    """

    __slots__ = ()

    def __new__(cls, axis=(0., 0., 1.), frequency=0., phase=0.):
        axis = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(axis)
        if norm == 0:
            raise ValueError('Rotation axis cannot be null.')
        if frequency < 0:
            raise ValueError('Rotation frequency must be non-negative, got '
                             '{}.'.format(frequency))
        return super(Motion, cls).__new__(cls, tuple(axis / norm),
                                          float(frequency), float(phase))

    def angle(self, t):
        """Rotation angle at time(s) ``t`` (not wrapped)."""
        return self.phase + 2 * np.pi * self.frequency * np.asarray(t, float)

    def advance(self, t):
        if t < 0:
            raise ValueError('t must be non-negative, got {}.'.format(t))
        phase = np.mod(self.angle(t), 2 * np.pi)
        return Motion(self.axis, self.frequency, float(phase))
