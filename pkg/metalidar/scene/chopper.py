"""
The :mod:`metalidar.scene.chopper` module defines the :class:`Chopper`, an
optical chopper wheel carrying a strip of reflective tape on one blade.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np

from ..utils import normalize
from .object_base import MATERIALS
from .object_base import SceneObject
from .object_base import check_reflectivity
from .object_base import local_axes
from .object_base import plane_intersection


class Chopper(SceneObject):
    """A chopper wheel: a solid hub surrounded by ``n_blades`` blades.

    In the wheel frame, with ``psi`` the azimuth about the normal measured
    from the local ``u`` axis, blade ``k`` covers ``psi`` in ``[k s, k s +
    s/2)`` where ``s = 2 pi / n_blades``; the other half of each sector is
    open. The tape lies on blade 0, centered on ``psi = s/4``.

    Args:
        normal(tuple): Normal of the wheel. Default is ``(0, 0, 1)``: the
            wheel faces the sensor and a positive rotation goes from x to y.
        inner_radius(float): Radius of the hub, in meters.
        outer_radius(float): Radius of the wheel, in meters.
        n_blades(int): Number of blades. Default is ``10``.
        hub(bool): Whether the hub is solid. Default is ``True``.
        tape_width(float): Angular width of the tape, in radians. Cannot
            exceed the blade width.
        tape_inner(float): Inner radius of the tape, in meters.
        tape_outer(float): Outer radius of the tape, in meters.
        tape_reflectivity(float): Reflectivity of the tape. Default is
            ``0.9``.
        tape_material(str): Material of the tape. Default is ``'retro'``.

    Other arguments are those of :class:`SceneObject
    <metalidar.scene.object_base.SceneObject>`.
    """

    def __init__(self, id, position=(0., 0., 0.7), normal=(0., 0., 1.),
                 inner_radius=0.02, outer_radius=0.075, n_blades=10,
                 hub=True, tape_width=np.radians(10.), tape_inner=0.022,
                 tape_outer=0.072, tape_reflectivity=0.9,
                 tape_material='retro', **kwargs):

        SceneObject.__init__(self, id, position, **kwargs)

        if not outer_radius > inner_radius > 0:
            raise ValueError('Chopper radii must satisfy outer > inner > 0, '
                             'got {} and {}.'.format(outer_radius,
                                                     inner_radius))
        if int(n_blades) < 1:
            raise ValueError('n_blades must be at least 1.')
        self.normal = normalize(normal)
        self.u, self.v = local_axes(self.normal)
        self.inner_radius = float(inner_radius)
        self.outer_radius = float(outer_radius)
        self.n_blades = int(n_blades)
        self.hub = bool(hub)

        if not 0 <= tape_width <= self.sector / 2:
            raise ValueError('tape_width must lie in [0, {:.4f}] '
                             'rad.'.format(self.sector / 2))
        if not inner_radius <= tape_inner < tape_outer <= outer_radius:
            raise ValueError('The tape must lie on a blade.')
        check_reflectivity(tape_reflectivity)
        if tape_material not in MATERIALS:
            raise ValueError('Unknown material ' + str(tape_material) + '.')
        self.tape_width = float(tape_width)
        self.tape_inner = float(tape_inner)
        self.tape_outer = float(tape_outer)
        self.tape_reflectivity = float(tape_reflectivity)
        self.tape_material = tape_material

    @property
    def sector(self):
        return 2 * np.pi / self.n_blades

    @property
    def tape_angle(self):
        """Azimuth of the tape center in the wheel frame."""
        return self.sector / 4

    @property
    def tape_length(self):
        return self.tape_outer - self.tape_inner

    def intersect(self, origins, directions):

        dist, points, cos = plane_intersection(origins, directions,
                                               self.position, self.normal)
        rel = points - self.position
        x, y = rel.dot(self.u), rel.dot(self.v)
        radius = np.hypot(x, y)
        psi = np.mod(np.arctan2(y, x), 2 * np.pi)

        on_blade = np.mod(psi, self.sector) < self.sector / 2
        solid = np.where(radius < self.inner_radius, self.hub,
                         on_blade & (radius <= self.outer_radius))
        hit = np.isfinite(dist) & solid

        offset = np.angle(np.exp(1j * (psi - self.tape_angle)))
        on_tape = (hit & (np.abs(offset) <= self.tape_width / 2) &
                   (radius >= self.tape_inner) & (radius <= self.tape_outer))

        reflectivity = np.where(on_tape, self.tape_reflectivity,
                                np.where(hit, self.reflectivity, 0.))
        retro = np.where(on_tape, self.tape_material == 'retro',
                         hit & (self.material == 'retro'))

        return (np.where(hit, dist, np.inf), np.where(hit, cos, 0.),
                reflectivity, retro.astype(bool))
