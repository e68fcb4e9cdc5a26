"""
Static geometric primitives: planes (optionally finite and checkered),
disks, axis-aligned boxes and spheres.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np

from ..utils import normalize
from .object_base import EPSILON
from .object_base import SceneObject
from .object_base import check_reflectivity
from .object_base import local_axes
from .object_base import plane_intersection


class Plane(SceneObject):
    """A plane, infinite or limited to a rectangle.

    Args:
        normal(tuple): Normal of the plane. Default is facing the sensor.
        size(tuple): ``(width, height)`` of the rectangle along the local
            ``(u, v)`` axes (see :func:`local_axes
            <metalidar.scene.object_base.local_axes>`). Default is ``None``:
            infinite plane.
        checker(float): Side of the squares of a checkerboard pattern, in
            meters. Requires ``size``. Default is ``None``: uniform plane.
        reflectivity_alt(float): Reflectivity of the odd squares. Default is
            ``0.05``.

    Other arguments are those of :class:`SceneObject
    <metalidar.scene.object_base.SceneObject>`.
    """

    def __init__(self, id, position=(0., 0., 1.), normal=(0., 0., -1.),
                 size=None, checker=None, reflectivity_alt=0.05, **kwargs):

        SceneObject.__init__(self, id, position, **kwargs)
        self.normal = normalize(normal)
        self.u, self.v = local_axes(self.normal)
        self.size = None if size is None else tuple(float(s) for s in size)
        if checker is not None and size is None:
            raise ValueError('A checkerboard plane needs a size.')
        self.checker = None if checker is None else float(checker)
        check_reflectivity(reflectivity_alt)
        self.reflectivity_alt = float(reflectivity_alt)

    def intersect(self, origins, directions):

        dist, points, cos = plane_intersection(origins, directions,
                                               self.position, self.normal)
        hit = np.isfinite(dist)
        reflectivity, retro = self._uniform(hit)

        if self.size is not None:
            rel = points - self.position
            u, v = rel.dot(self.u), rel.dot(self.v)
            width, height = self.size
            hit &= (np.abs(u) <= width / 2) & (np.abs(v) <= height / 2)
            if self.checker is not None:
                i = np.floor((u + width / 2) / self.checker)
                j = np.floor((v + height / 2) / self.checker)
                odd = (i + j) % 2 == 1
                reflectivity = np.where(odd, self.reflectivity_alt,
                                        self.reflectivity)
            dist = np.where(hit, dist, np.inf)
            reflectivity = np.where(hit, reflectivity, 0.)
            retro = retro & hit

        return dist, np.where(hit, cos, 0.), reflectivity, retro


class Disk(SceneObject):
    """A flat disk.

    Args:
        normal(tuple): Normal of the disk. Default is facing the sensor.
        radius(float): Radius in meters.
    """

    def __init__(self, id, position=(0., 0., 1.), normal=(0., 0., -1.),
                 radius=0.05, **kwargs):

        SceneObject.__init__(self, id, position, **kwargs)
        if radius <= 0:
            raise ValueError('radius must be positive, got '
                             '{}.'.format(radius))
        self.normal = normalize(normal)
        self.radius = float(radius)

    def intersect(self, origins, directions):

        dist, points, cos = plane_intersection(origins, directions,
                                               self.position, self.normal)
        inside = np.linalg.norm(points - self.position, axis=1) <= self.radius
        hit = np.isfinite(dist) & inside
        reflectivity, retro = self._uniform(hit)
        return (np.where(hit, dist, np.inf), np.where(hit, cos, 0.),
                reflectivity, retro)


class Box(SceneObject):
    """An axis-aligned box.

    Args:
        size(tuple): ``(sx, sy, sz)`` edge lengths in meters; ``position`` is
            the center.
    """

    def __init__(self, id, position=(0., 0., 1.), size=(0.1, 0.1, 0.1),
                 **kwargs):

        SceneObject.__init__(self, id, position, **kwargs)
        self.size = np.asarray(size, dtype=float)
        if self.size.shape != (3,) or np.any(self.size <= 0):
            raise ValueError('size must hold 3 positive lengths.')

    def intersect(self, origins, directions):

        low = self.position - self.size / 2
        high = self.position + self.size / 2
        with np.errstate(divide='ignore', invalid='ignore'):
            inv = 1 / directions
            t1 = (low - origins) * inv
            t2 = (high - origins) * inv
        # Rays parallel to a slab: inside it they never leave it.
        parallel = directions == 0
        inside_slab = (origins >= low) & (origins <= high)
        t_min = np.where(parallel, np.where(inside_slab, -np.inf, np.inf),
                         np.minimum(t1, t2))
        t_max = np.where(parallel, np.where(inside_slab, np.inf, -np.inf),
                         np.maximum(t1, t2))

        entry_axis = np.argmax(t_min, axis=1)
        near = np.max(t_min, axis=1)
        far = np.min(t_max, axis=1)
        hit = (near <= far) & (far > EPSILON)
        dist = np.where(near > EPSILON, near, far)
        rows = np.arange(len(origins))
        exit_axis = np.argmin(t_max, axis=1)
        axis = np.where(near > EPSILON, entry_axis, exit_axis)
        cos = np.abs(directions[rows, axis])

        hit &= np.isfinite(dist)
        reflectivity, retro = self._uniform(hit)
        return (np.where(hit, dist, np.inf), np.where(hit, cos, 0.),
                reflectivity, retro)


class Sphere(SceneObject):
    """A sphere.

    Args:
        radius(float): Radius in meters; ``position`` is the center.
    """

    def __init__(self, id, position=(0., 0., 1.), radius=0.1, **kwargs):

        SceneObject.__init__(self, id, position, **kwargs)
        if radius <= 0:
            raise ValueError('radius must be positive, got '
                             '{}.'.format(radius))
        self.radius = float(radius)

    def intersect(self, origins, directions):

        oc = origins - self.position
        b = np.sum(oc * directions, axis=1)
        c = np.sum(oc * oc, axis=1) - self.radius ** 2
        disc = b ** 2 - c
        root = np.sqrt(np.maximum(disc, 0))
        near, far = -b - root, -b + root
        dist = np.where(near > EPSILON, near, far)
        hit = (disc >= 0) & (dist > EPSILON)
        dist = np.where(hit, dist, np.inf)

        points = origins + directions * np.where(hit, dist, 0.)[:, None]
        normals = (points - self.position) / self.radius
        cos = np.abs(np.sum(normals * directions, axis=1))
        reflectivity, retro = self._uniform(hit)
        return (dist, np.where(hit, np.minimum(cos, 1.), 0.), reflectivity,
                retro)
