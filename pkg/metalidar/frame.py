"""
The :mod:`frame <metalidar.frame>` module defines the :class:`RangingFrame`
and :class:`TimeSeries` containers produced by the pipeline.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np

from .utils import direction_from_angles


IMAGE_FIELDS = ('depth', 'intensity', 'theta', 'phi', 't_pixels')


class RangingFrame:
    """A reconstructed frame: one direction, depth and intensity per pixel.

    Pixels are stored in acquisition order. For raster frames, pixel ``i``
    is at column ``i % n_x`` and row ``i // n_x``.

    Attributes:
        theta(numpy array): Azimuth of each pixel, in degrees.
        phi(numpy array): Elevation of each pixel, in degrees.
        depth(numpy array): Depth in meters, ``nan`` for misses.
        intensity(numpy array): Echo amplitude, ``nan`` for misses.
        timestamp(float): Time of the first shot, in seconds.
        grid(tuple or ``None``): ``(n_x, n_y)`` for raster frames.
        t_pixels(numpy array): Time of each shot, in seconds.
        scan_rate(float): Pixel rate in Hz.
    """

    def __init__(self, theta, phi, depth, intensity, timestamp=0., grid=None,
                 t_pixels=None, scan_rate=None):

        self.theta = np.asarray(theta, dtype=float)
        self.phi = np.asarray(phi, dtype=float)
        self.depth = np.asarray(depth, dtype=float)
        self.intensity = np.asarray(intensity, dtype=float)
        self.timestamp = float(timestamp)
        self.grid = None if grid is None else tuple(int(n) for n in grid)
        n = len(self.theta)
        if not (len(self.phi) == len(self.depth) == len(self.intensity) ==
                n):
            raise ValueError('All pixel fields must have the same length.')
        if self.grid is not None and self.grid[0] * self.grid[1] != n:
            raise ValueError('Grid {} does not match {} pixels.'.format(
                self.grid, n))
        if t_pixels is None:
            t_pixels = np.full(n, self.timestamp)
        self.t_pixels = np.asarray(t_pixels, dtype=float)
        self.scan_rate = None if scan_rate is None else float(scan_rate)

    @property
    def n_pixels(self):
        return len(self.depth)

    @property
    def hit(self):
        """Boolean mask of the pixels with an echo."""
        return np.isfinite(self.depth)

    @property
    def n_hits(self):
        return int(np.sum(self.hit))

    def image(self, field='depth'):
        """A pixel field as a 2D array indexed ``[row, column]``, i.e.
        ``[phi, theta]``.

        Raises:
            ValueError: If the frame has no grid or the field is unknown.
        """

        if field not in IMAGE_FIELDS:
            raise ValueError('Unknown field ' + str(field) + '. Accepted '
                             'values are ' + ', '.join(IMAGE_FIELDS) + '.')
        if self.grid is None:
            raise ValueError('Only raster frames can be shown as images.')
        n_x, n_y = self.grid
        return getattr(self, field).reshape(n_y, n_x)

    def to_cartesian(self):
        """Point cloud of the hits.

        Returns:
            A tuple ``(xyz, intensity)`` where ``xyz`` has shape ``(n_hits,
            3)``, in meters.
        """

        hit = self.hit
        d = direction_from_angles(np.radians(self.theta[hit]),
                                  np.radians(self.phi[hit]))
        return d * self.depth[hit, np.newaxis], self.intensity[hit]

    def __str__(self):
        s = 'Frame at t = {:.6f} s: {} pixels, {} hits'.format(
            self.timestamp, self.n_pixels, self.n_hits)
        if self.n_hits:
            s += ', depth {:.3f} - {:.3f} m'.format(
                np.nanmin(self.depth), np.nanmax(self.depth))
        return s


class TimeSeries:
    """An ordered sequence of frames taken at a constant frame period.

    Args:
        frames(list of :obj:`RangingFrame`): The frames.
        frame_period(float): Time between two frames, in seconds.
    """

    def __init__(self, frames, frame_period):

        self.frames = list(frames)
        self.frame_period = float(frame_period)
        if self.frame_period <= 0:
            raise ValueError('frame_period must be positive.')
        stamps = self.timestamps
        if len(stamps) > 1 and not np.allclose(
                np.diff(stamps), self.frame_period, rtol=1e-6, atol=0):
            raise ValueError('Frames are not evenly spaced at {} '
                             's.'.format(self.frame_period))

    @property
    def frame_rate(self):
        return 1 / self.frame_period

    @property
    def timestamps(self):
        return np.array([f.timestamp for f in self.frames])

    def __len__(self):
        return len(self.frames)

    def __iter__(self):
        return iter(self.frames)

    def __getitem__(self, i):
        return self.frames[i]

    def __str__(self):
        return '{} frames at {:.2f} fps'.format(len(self), self.frame_rate)
