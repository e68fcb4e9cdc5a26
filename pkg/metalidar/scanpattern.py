"""
The :mod:`scanpattern <metalidar.scanpattern>` module generates timed drive
voltage sequences and checks them against the bandwidth of the deflector.

Summary:

.. autosummary::
    :nosignatures:

    raster
    lissajous
    random_access
    check_rate
    rate_sweep
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple

import numpy as np


PATTERN_KINDS = ('raster', 'line', 'lissajous', 'random_access')


class UnreachableAngleError(ValueError):
    """Raised when a requested direction is outside the calibrated field of
    view.

    Attributes:
        cells(list): Indices of the offending samples (or grid cells as
            ``(column, row)`` pairs for rasters).
    """

    def __init__(self, message, cells):
        super(UnreachableAngleError, self).__init__(message)
        self.cells = cells


class ScanLimits(namedtuple('ScanLimits',
                            ['cutoff_1d', 'cutoff_2d', 'transit_time'])):
    """Bandwidth limits of the deflector.

    Args:
        cutoff_1d(float): -3 dB repointing frequency with one axis, in Hz.
            Default is 10 MHz.
        cutoff_2d(float): -3 dB repointing frequency with two axes, in Hz.
            Default is 6 MHz.
        transit_time(float): Acoustic transit time, in seconds. Default is
            3 mm / 650 m/s.
    """

    __slots__ = ()

    def __new__(cls, cutoff_1d=10e6, cutoff_2d=6e6, transit_time=3e-3 / 650):
        if min(cutoff_1d, cutoff_2d, transit_time) <= 0:
            raise ValueError('Scan limits must be positive.')
        return super(ScanLimits, cls).__new__(cls, float(cutoff_1d),
                                              float(cutoff_2d),
                                              float(transit_time))

    def cutoff(self, axes):
        if axes not in (1, 2):
            raise ValueError('axes must be 1 or 2, got {}.'.format(axes))
        return self.cutoff_1d if axes == 1 else self.cutoff_2d


class RateReport(namedtuple('RateReport',
                            ['frequency', 'cutoff', 'attenuation',
                             'above_transit', 'above_cutoff',
                             'blur_width'])):
    """Result of :func:`check_rate`.

    Args:
        frequency(float): Repointing frequency of the pattern, in Hz.
        cutoff(float): -3 dB frequency used, in Hz.
        attenuation(float): Amplitude response at ``frequency``.
        above_transit(bool): Whether ``frequency`` exceeds the inverse of the
            transit time.
        above_cutoff(bool): Whether the amplitude response is below one
            half.
        blur_width(float): Drive smoothing width in samples, ``frequency /
            cutoff``.
    """

    __slots__ = ()

    @property
    def attenuation_db(self):
        return 20 * np.log10(self.attenuation)

    def __str__(self):
        return ('repointing at {:.4g} Hz: attenuation {:.3f} ({:.2f} dB), '
                'above transit: {}, above cutoff: {}'.format(
                    self.frequency, self.attenuation, self.attenuation_db,
                    self.above_transit, self.above_cutoff))


# Used when no rate check was made: no attenuation, no blur.
NO_LIMIT = RateReport(0., np.inf, 1., False, False, 0.)


class ScanPattern:
    """A timed sequence of drive voltages.

    Attributes:
        t(numpy array): Start time of each sample, relative to the start of
            the pattern, in seconds.
        v_x(numpy array): x drive voltages.
        v_y(numpy array): y drive voltages.
        scan_rate(float): Repointing frequency, in Hz.
        kind(str): One of ``'raster'``, ``'line'``, ``'lissajous'``,
            ``'random_access'``.
        grid(tuple or ``None``): ``(n_x, n_y)`` for rasters.
        theta(numpy array or ``None``): Commanded azimuths in degrees.
        phi(numpy array or ``None``): Commanded elevations in degrees.
        dwell(numpy array): Duration of each sample, in seconds.
        masked(numpy array of bool): Samples outside the calibrated field of
            view. The beam is parked at the center voltage and the pixel is
            reported as a miss.
    """

    def __init__(self, t, v_x, v_y, scan_rate, kind, grid=None, theta=None,
                 phi=None, dwell=None, masked=None):

        self.t = np.asarray(t, dtype=float)
        self.v_x = np.asarray(v_x, dtype=float)
        self.v_y = np.asarray(v_y, dtype=float)
        self.scan_rate = float(scan_rate)
        self.kind = kind
        self.grid = tuple(int(n) for n in grid) if grid is not None else None
        self.theta = None if theta is None else np.asarray(theta, float)
        self.phi = None if phi is None else np.asarray(phi, float)
        if dwell is None:
            dwell = np.full(len(self.t), 1 / self.scan_rate)
        self.dwell = np.asarray(dwell, dtype=float)
        if masked is None:
            masked = np.zeros(len(self.t), dtype=bool)
        self.masked = np.asarray(masked, dtype=bool)

        if kind not in PATTERN_KINDS:
            raise ValueError('Unknown pattern kind ' + str(kind) +
                             '. Accepted values are ' +
                             ', '.join(PATTERN_KINDS) + '.')
        if not len(self.t) == len(self.v_x) == len(self.v_y) > 0:
            raise ValueError('t, v_x and v_y must have the same non zero '
                             'length.')
        if self.scan_rate <= 0:
            raise ValueError('scan_rate must be positive.')
        if np.any(np.diff(self.t) <= 0):
            raise ValueError('Sample times must be strictly increasing.')
        if self.grid is not None and (self.grid[0] * self.grid[1] !=
                                      len(self.t)):
            raise ValueError('Grid {} does not match {} samples.'.format(
                self.grid, len(self.t)))

    @property
    def n_samples(self):
        return len(self.t)

    @property
    def frame_size(self):
        """Number of samples in one frame."""
        if self.grid is not None:
            return self.grid[0] * self.grid[1]
        return self.n_samples

    @property
    def duration(self):
        return self.t[-1] - self.t[0] + self.dwell[-1]

    @property
    def frame_duration(self):
        return self.frame_size / self.scan_rate

    @property
    def frame_rate(self):
        return self.scan_rate / self.frame_size

    @property
    def axes(self):
        """1 if only one voltage changes over the pattern, else 2."""
        moving = [np.ptp(v) > 1e-9 for v in (self.v_x, self.v_y)]
        return 2 if all(moving) else 1

    @property
    def samples(self):
        """List of ``(v_x, v_y, t)`` tuples."""
        return list(zip(self.v_x, self.v_y, self.t))

    def __str__(self):
        s = '{} pattern, {} samples at {:.6g} Hz'.format(
            self.kind, self.n_samples, self.scan_rate)
        if self.grid is not None:
            s += ', grid {}x{}, {:.2f} fps'.format(self.grid[0], self.grid[1],
                                                   self.frame_rate)
        return s


def _centered_axis(n, span, center):

    if n < 1:
        raise ValueError('Grid dimensions must be at least 1, got '
                         '{}.'.format(n))
    if n == 1:
        return np.array([float(center)])
    return center + np.linspace(-span / 2, span / 2, n)


def raster(grid, fov, scan_rate, maps, center=(0., 0.),
           skip_unreachable=False):
    """Row-major raster: azimuth is the fast axis, elevation the slow one.

    Args:
        grid(tuple): ``(n_x, n_y)`` number of pixels along azimuth and
            elevation.
        fov(tuple): ``(theta_span, phi_span)`` in degrees.
        scan_rate(float): Pixel rate in Hz.
        maps(:obj:`CalibrationMaps
            <metalidar.calibration.CalibrationMaps>`): The calibration maps.
        center(tuple): Direction ``(theta, phi)`` of the center of the field
            of view, in degrees. Default is the optical axis.
        skip_unreachable(bool): If ``True``, pixels outside the maps are
            masked instead of raising an error. Default is ``False``.

    Returns:
        A :obj:`ScanPattern`. A grid with one row or one column is a
        ``'line'`` pattern.

    Raises:
        UnreachableAngleError: If some pixels fall outside the maps and
            ``skip_unreachable`` is ``False``.
    """

    n_x, n_y = grid
    thetas = _centered_axis(n_x, fov[0], center[0])
    phis = _centered_axis(n_y, fov[1], center[1])
    theta, phi = np.meshgrid(thetas, phis)
    theta, phi = theta.ravel(), phi.ravel()

    v_x, v_y = maps.lookup(theta, phi)
    masked = np.isnan(v_x) | np.isnan(v_y)
    bad = np.flatnonzero(masked)
    if bad.size and not skip_unreachable:
        cells = [(int(i % n_x), int(i // n_x)) for i in bad]
        raise UnreachableAngleError(
            '{} pixels are outside the reachable field of view, e.g. '
            '(theta, phi) = ({:.2f}, {:.2f}) deg at cell {}.'.format(
                bad.size, theta[bad[0]], phi[bad[0]], cells[0]), cells)
    if masked.all():
        raise UnreachableAngleError('No pixel is reachable.', bad.tolist())
    v_x = np.where(masked, maps.center, v_x)
    v_y = np.where(masked, maps.center, v_y)

    kind = 'line' if min(n_x, n_y) == 1 and n_x * n_y > 1 else 'raster'
    t = np.arange(n_x * n_y) / scan_rate

    return ScanPattern(t, v_x, v_y, scan_rate, kind, grid=(n_x, n_y),
                       theta=theta, phi=phi, masked=masked)


def lissajous(A, B, omega_theta, omega_phi, psi, duration, sample_rate, maps):
    """Lissajous trajectory ``theta = A sin(omega_theta t + psi)``, ``phi = B
    sin(omega_phi t)``.

    Args:
        A(float): Azimuth amplitude in degrees.
        B(float): Elevation amplitude in degrees.
        omega_theta(float): Azimuth angular rate in rad/s.
        omega_phi(float): Elevation angular rate in rad/s.
        psi(float): Azimuth phase in radians.
        duration(float): Pattern duration in seconds.
        sample_rate(float): Sample rate in Hz.
        maps(:obj:`CalibrationMaps
            <metalidar.calibration.CalibrationMaps>`): The calibration maps.

    Returns:
        A :obj:`ScanPattern`.

    Raises:
        UnreachableAngleError: If the trajectory leaves the calibrated field
            of view.
    """

    if abs(A) > maps.theta_grid.max() or abs(B) > maps.phi_grid.max():
        raise UnreachableAngleError(
            'Amplitudes ({}, {}) exceed the calibrated field of '
            'view.'.format(A, B), [])

    n = int(round(duration * sample_rate))
    if n < 1:
        raise ValueError('duration * sample_rate must be at least 1.')
    t = np.arange(n) / sample_rate
    theta = A * np.sin(omega_theta * t + psi)
    phi = B * np.sin(omega_phi * t)

    v_x, v_y = maps.lookup(theta, phi)
    bad = np.flatnonzero(np.isnan(v_x) | np.isnan(v_y))
    if bad.size:
        raise UnreachableAngleError(
            '{} samples are outside the reachable field of view, first at '
            'index {}.'.format(bad.size, bad[0]), bad.tolist())

    return ScanPattern(t, v_x, v_y, sample_rate, 'lissajous', theta=theta,
                       phi=phi)


def random_access(points, maps, t0=0.):
    """Point-to-point pattern: the beam settles on each point and stays there
    for the point dwell time.

    Args:
        points: Sequence of ``(theta, phi, dwell)``, angles in degrees and
            dwell in seconds.
        maps(:obj:`CalibrationMaps
            <metalidar.calibration.CalibrationMaps>`): The calibration maps.
        t0(float): Start time. Default is ``0``.

    Returns:
        A :obj:`ScanPattern` whose scan rate is the inverse of the shortest
        dwell.

    Raises:
        UnreachableAngleError: If a point is not reachable.
    """

    points = np.asarray(points, dtype=float).reshape(-1, 3)
    theta, phi, dwell = points.T
    if np.any(dwell <= 0):
        raise ValueError('Dwell times must be positive.')

    v_x, v_y = maps.lookup(theta, phi)
    bad = np.flatnonzero(np.isnan(v_x) | np.isnan(v_y))
    if bad.size:
        raise UnreachableAngleError(
            'Point {} at (theta, phi) = ({}, {}) deg is not '
            'reachable.'.format(bad[0], theta[bad[0]], phi[bad[0]]),
            bad.tolist())

    t = t0 + np.cumsum(dwell) - dwell
    return ScanPattern(t, v_x, v_y, 1 / dwell.min(), 'random_access',
                       theta=theta, phi=phi, dwell=dwell)


def lowpass_attenuation(frequency, cutoff):
    """First order low-pass amplitude response."""
    return 1 / np.sqrt(1 + (np.asarray(frequency, dtype=float) / cutoff) ** 2)


def rate_sweep(frequencies, limits, axes):
    """Amplitude response of the deflector over a range of repointing
    frequencies."""
    return lowpass_attenuation(frequencies, limits.cutoff(axes))


def check_rate(pattern, limits, axes=None):
    """Check the repointing frequency of a pattern against the deflector
    bandwidth.

    Scanning above the cutoff is allowed: the signal module attenuates the
    echoes and smooths the drive accordingly.

    Args:
        pattern(:obj:`ScanPattern`): The pattern.
        limits(:obj:`ScanLimits`): The limits.
        axes(int): 1 or 2. Default is the number of moving axes of the
            pattern.

    Returns:
        A :obj:`RateReport`.
    """

    axes = pattern.axes if axes is None else axes
    f = pattern.scan_rate
    cutoff = limits.cutoff(axes)
    attenuation = float(lowpass_attenuation(f, cutoff))

    return RateReport(f, cutoff, attenuation,
                      f > 1 / limits.transit_time,
                      attenuation < 0.5, f / cutoff)
