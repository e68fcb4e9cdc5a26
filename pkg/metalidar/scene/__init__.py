"""
The :mod:`scene` package holds the synthetic 3D world queried by ray
casting.

The available object geometries are:

.. autosummary::
    :nosignatures:

    primitives.Plane
    primitives.Disk
    primitives.Box
    primitives.Sphere
    chopper.Chopper
"""

from .object_base import SceneObject
from .primitives import Plane
from .primitives import Disk
from .primitives import Box
from .primitives import Sphere
from .chopper import Chopper
from .hits import Hit
from .hits import Motion
from .hits import RayHits
from .scene import Scene
from .scene import cast
from .scene import advance

__all__ = ['SceneObject', 'Plane', 'Disk', 'Box', 'Sphere', 'Chopper', 'Hit',
           'Motion', 'RayHits', 'Scene', 'cast', 'advance']
