"""
The :mod:`metalidar.scene.scene` module defines the :class:`Scene`
container, and the :func:`cast` and :func:`advance` functions.

Scene files use the configuration dialect of :class:`Reader
<metalidar.reader.Reader>`, one section per object: ::

    [wall]
    geometry = 'plane'
    position = (0, 0, 5)
    reflectivity = 0.3

    [chopper]
    geometry = 'chopper'
    position = (0, 0, 0.7)
    rotation_frequency = 92.71

The section name is the object id, ``geometry`` is one of ``'plane'``,
``'box'``, ``'disk'``, ``'sphere'`` and ``'chopper'``, and the other keys are
the arguments of the corresponding class. ``rotation_frequency``,
``rotation_axis`` and ``rotation_phase`` define a :class:`Motion
<metalidar.scene.hits.Motion>`.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np

from ..reader import ConfigError
from ..reader import Reader
from ..utils import direction_from_angles
from .chopper import Chopper
from .hits import Hit
from .hits import RayHits
from .object_base import make_motion
from .primitives import Box
from .primitives import Disk
from .primitives import Plane
from .primitives import Sphere


GEOMETRIES = {
    'plane': Plane,
    'box': Box,
    'disk': Disk,
    'sphere': Sphere,
    'chopper': Chopper,
}


class Scene:
    """An immutable collection of scene objects.

    Args:
        objects(list): The :class:`SceneObject
            <metalidar.scene.object_base.SceneObject>` instances.
    """

    def __init__(self, objects=()):

        self.objects = tuple(objects)
        ids = [obj.id for obj in self.objects]
        if len(set(ids)) != len(ids):
            raise ValueError('Object ids must be unique.')

    @classmethod
    def load_from_file(cls, file_path, reader=None):
        """Load a scene file.

        Args:
            file_path(str): Path of the scene file.
            reader(:obj:`Reader <metalidar.reader.Reader>`): Reader to use.
                Default is a default Reader.

        Raises:
            ConfigError: If the file is invalid.
        """

        reader = reader if reader is not None else Reader()
        sections = reader.read(file_path)
        try:
            objects = [build_object(name, options)
                       for name, options in sections.items()]
            return cls(objects)
        except (TypeError, ValueError) as e:
            raise ConfigError('Invalid scene file {}: {}'.format(file_path,
                                                                 e))

    @classmethod
    def load_builtin(cls, name):
        """Load one of the bundled scenes, e.g. ``'fig5_chopper'``."""

        from ..builtin_scenarios import get_builtin_scene_path
        return cls.load_from_file(get_builtin_scene_path(name))

    def __len__(self):
        return len(self.objects)

    def __getitem__(self, object_id):
        for obj in self.objects:
            if obj.id == object_id:
                return obj
        raise KeyError(object_id)

    @property
    def is_static(self):
        return not any(obj.is_moving for obj in self.objects)

    def advance(self, t):
        """The scene at time ``t``. See :func:`advance`."""
        return Scene(obj.advance(t) for obj in self.objects)

    def cast_rays(self, origins, directions, t=0.):
        """Nearest intersection of every ray with the scene.

        Args:
            origins(numpy array): Ray origins, shape ``(n, 3)`` or ``(3,)``.
            directions(numpy array): Unit directions, shape ``(n, 3)``.
            t(float or numpy array): Time of each ray, in seconds.

        Returns:
            A :obj:`RayHits <metalidar.scene.hits.RayHits>` object.
        """

        directions = np.atleast_2d(np.asarray(directions, dtype=float))
        n = len(directions)
        origins = np.broadcast_to(np.asarray(origins, dtype=float), (n, 3))
        hits = RayHits.misses(n)
        distance, reflectivity, cosine, retro, index = (a.copy()
                                                        for a in hits)

        for i, obj in enumerate(self.objects):
            d, c, r, rt = obj.cast_rays(origins, directions, t)
            closer = d < distance
            distance = np.where(closer, d, distance)
            cosine = np.where(closer, c, cosine)
            reflectivity = np.where(closer, r, reflectivity)
            retro = np.where(closer, rt, retro)
            index = np.where(closer, i, index)

        return RayHits(distance, reflectivity, cosine, retro, index)

    def cast(self, origin, theta, phi, t=0.):
        """Cast a single ray. See :func:`cast`."""

        d = direction_from_angles(theta, phi)
        hits = self.cast_rays(np.asarray(origin, dtype=float)[np.newaxis],
                              d[np.newaxis], t)
        if not np.isfinite(hits.distance[0]):
            return None
        return Hit(float(hits.distance[0]), float(hits.reflectivity[0]),
                   float(hits.incidence_cosine[0]),
                   self.objects[hits.object_index[0]].id,
                   bool(hits.retro[0]))


def build_object(object_id, options):
    """Instantiate a scene object from the options of a scene file
    section."""

    options = dict(options)
    try:
        geometry = options.pop('geometry')
    except KeyError:
        raise ConfigError('Object {} has no geometry.'.format(object_id))
    try:
        klass = GEOMETRIES[geometry]
    except KeyError:
        raise ConfigError('Unknown geometry ' + str(geometry) +
                          '. Accepted values are ' +
                          ', '.join(GEOMETRIES.keys()) + '.')

    motion_options = {key: options.pop(key) for key in
                      ('rotation_frequency', 'rotation_axis',
                       'rotation_phase') if key in options}
    if klass is Chopper and 'rotation_axis' not in motion_options:
        motion_options['rotation_axis'] = options.get('normal', (0., 0., 1.))
    options['motion'] = make_motion(**motion_options)

    return klass(object_id, **options)


def cast(origin, direction_theta, direction_phi, t, scene):
    """Cast a ray into a scene.

    Args:
        origin(tuple): Origin of the ray, in meters.
        direction_theta(float): Azimuth of the ray, in radians.
        direction_phi(float): Elevation of the ray, in radians.
        t(float): Time in seconds. Moving objects are taken at their pose at
            that time.
        scene(:obj:`Scene`): The scene.

    Returns:
        A :obj:`Hit <metalidar.scene.hits.Hit>`, or ``None`` on a miss.
    """

    return scene.cast(origin, direction_theta, direction_phi, t)


def advance(scene, t):
    """Advance the motion of every object of a scene by ``t`` seconds.

    Returns:
        A new :obj:`Scene`: rotating objects have their phase advanced by ``2
        pi f t`` (modulo ``2 pi``); static objects are unchanged.
    """

    if t < 0:
        raise ValueError('t must be non-negative, got {}.'.format(t))
    return scene.advance(t)
