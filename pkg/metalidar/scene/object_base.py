"""
The :mod:`metalidar.scene.object_base` module defines the base class
:class:`SceneObject` from which every geometry inherits.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import copy

import numpy as np

from ..utils import normalize
from ..utils import rotate
from .hits import Motion


MATERIALS = ('diffuse', 'retro')

# Intersections closer than this are ignored.
EPSILON = 1e-9


class SceneObject(object):
    """Abstract class where is defined the basic behavior of a scene object.

    Derived classes only implement :meth:`intersect`, in the object's own
    frame (i.e. at zero rotation angle). Motion is handled here by bringing
    the rays into that frame.

    Args:
        id(str): Identifier of the object.
        position(tuple): Reference point (center) of the object, in meters.
            Rotations happen about an axis going through it.
        reflectivity(float): Reflectivity in ``[0, 1]``. Default is ``0.5``.
        material(str): ``'diffuse'`` or ``'retro'``. Default is
            ``'diffuse'``.
        motion(:obj:`Motion <metalidar.scene.hits.Motion>`): Rotation of the
            object, or ``None`` for a static object.
    """

    def __init__(self, id, position=(0., 0., 0.), reflectivity=0.5,
                 material='diffuse', motion=None):

        self.id = str(id)
        self.position = np.asarray(position, dtype=float)
        if self.position.shape != (3,):
            raise ValueError('position must have 3 coordinates.')
        check_reflectivity(reflectivity)
        self.reflectivity = float(reflectivity)
        if material not in MATERIALS:
            raise ValueError('Unknown material ' + str(material) +
                             '. Accepted values are ' +
                             ', '.join(MATERIALS) + '.')
        self.material = material
        self.motion = motion

    @property
    def is_moving(self):
        return self.motion is not None and self.motion.frequency > 0

    def advance(self, t):
        """Return a copy of the object as seen at time ``t``, whose motion
        phase now starts from there."""

        obj = copy.copy(self)
        if self.motion is not None:
            obj.motion = self.motion.advance(t)
        return obj

    def cast_rays(self, origins, directions, t=0.):
        """Intersect rays with the object at time(s) ``t``.

        Args:
            origins(numpy array): Ray origins, shape ``(n, 3)``.
            directions(numpy array): Unit ray directions, shape ``(n, 3)``.
            t(float or numpy array): Time of each ray, in seconds.

        Returns:
            A tuple of arrays ``(distance, incidence_cosine, reflectivity,
            retro)``. Missed rays have an infinite distance.
        """

        origins = np.asarray(origins, dtype=float)
        directions = np.asarray(directions, dtype=float)

        if self.motion is not None:
            angle = np.broadcast_to(-self.motion.angle(t), (len(origins),))
            axis = self.motion.axis
            origins = self.position + rotate(origins - self.position, axis,
                                             angle)
            directions = rotate(directions, axis, angle)

        return self.intersect(origins, directions)

    def intersect(self, origins, directions):
        """Intersect rays with the object in its own frame. See
        :meth:`cast_rays`."""

        raise NotImplementedError

    def _uniform(self, hit):
        """Reflectivity and retro flags for an object made of a single
        material."""

        reflectivity = np.where(hit, self.reflectivity, 0.)
        retro = hit & (self.material == 'retro')
        return reflectivity, retro

    def __str__(self):
        return '{} {!r} at {}'.format(type(self).__name__, self.id,
                                      tuple(self.position))


def check_reflectivity(reflectivity):

    if not 0 <= reflectivity <= 1:
        raise ValueError('reflectivity must lie in [0, 1], got '
                         '{}.'.format(reflectivity))


def make_motion(rotation_frequency=None, rotation_axis=(0., 0., 1.),
                rotation_phase=0.):
    """Build a :obj:`Motion` from flat options, or ``None`` if no rotation
    frequency is given."""

    if rotation_frequency is None:
        return None
    return Motion(rotation_axis, rotation_frequency, rotation_phase)


def local_axes(normal, up=(0., 1., 0.)):
    """Orthonormal ``(u, v)`` axes spanning the plane of normal ``normal``,
    with ``(u, v, normal)`` right handed and ``v`` as close as possible to
    ``up``."""

    n = normalize(normal)
    up = np.asarray(up, dtype=float)
    if abs(np.dot(n, normalize(up))) > 1 - 1e-9:
        up = np.array([1., 0., 0.])
    u = normalize(np.cross(up, n))
    v = np.cross(n, u)
    return u, v


def plane_intersection(origins, directions, point, normal):
    """Distances along the rays to the plane through ``point`` with normal
    ``normal`` (infinite where parallel or behind), hit points and incidence
    cosines."""

    denom = directions.dot(normal)
    with np.errstate(divide='ignore', invalid='ignore'):
        dist = (point - origins).dot(normal) / denom
    ok = (np.abs(denom) > 1e-12) & (dist > EPSILON)
    dist = np.where(ok, dist, np.inf)
    points = origins + directions * np.where(ok, dist, 0.)[:, np.newaxis]
    return dist, points, np.abs(denom)
