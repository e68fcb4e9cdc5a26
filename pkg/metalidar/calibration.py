"""
The :mod:`calibration <metalidar.calibration>` module implements the
voltage/angle calibration chain.

A :class:`CalibrationCurve` maps the radial drive voltage to the deflection
angle alpha of the first order. Directions are handled in scan angles
(azimuth theta, elevation phi) and converted to the metasurface polar pair
(theta_MS, alpha), then to voltages with ``V = r (cos theta_MS, sin
theta_MS)``. :func:`build_maps` tabulates this chain over a grid of
directions, yielding the :class:`CalibrationMaps` used by the scan pattern
generators.

Angles are in radians for the coordinate transforms, and in degrees for
curves and maps.

Summary:

.. autosummary::
    :nosignatures:

    fit_curve
    minimax_fit
    ideal_curve
    voltages_to_polar
    polar_to_voltages
    spherical_to_ms
    ms_to_spherical
    build_maps
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.interpolate import RegularGridInterpolator

from .optics import AodSpec


class FitError(ValueError):
    """Raised when a calibration curve cannot be fitted or inverted."""


class MsAngles(namedtuple('MsAngles', ['theta_ms', 'alpha', 'degenerate'])):
    """Polar coordinates of a direction about the optical axis.

    Args:
        theta_ms: Azimuth about the optical axis, in ``[0, 2 pi)``.
        alpha: Angle from the optical axis.
        degenerate: ``True`` where the direction is the axis itself, in which
            case ``theta_ms`` is set to 0.
    """

    __slots__ = ()


class CalibrationCurve(namedtuple('CalibrationCurve',
                                  ['coefficients', 'valid_voltage',
                                   'valid_angle', 'center',
                                   'residual_rms'])):
    """Cubic mapping from drive voltage to deflection angle.

    The polynomial is expressed in ``v - center``. Curves are usually built
    with :func:`fit_curve` or :func:`ideal_curve`.

    Args:
        coefficients(tuple): ``(c0, c1, c2, c3)``, in degrees per volt
            powers.
        valid_voltage(tuple): ``(min, max)`` absolute voltages on which the
            curve is valid.
        valid_angle(tuple): ``(min, max)`` angles in degrees reached over
            ``valid_voltage``.
        center(float): Voltage of the undeflected position.
        residual_rms(float): RMS residual of the fit, in degrees.
    """

    __slots__ = ()

    def evaluate(self, v):
        """Deflection angle (degrees) for absolute voltages ``v``."""
        return P.polyval(np.asarray(v, dtype=float) - self.center,
                         self.coefficients)

    def derivative(self, v):
        return P.polyval(np.asarray(v, dtype=float) - self.center,
                         P.polyder(self.coefficients))

    def is_monotonic(self, n_points=2001):
        """Whether the curve is strictly monotonic on ``valid_voltage``."""
        v = np.linspace(self.valid_voltage[0], self.valid_voltage[1],
                        n_points)
        slope = self.derivative(v)
        return bool(np.all(slope > 0) or np.all(slope < 0))

    @property
    def increasing(self):
        lo, hi = self.valid_voltage
        return self.evaluate(hi) > self.evaluate(lo)

    def invert(self, angle, tol=1e-10, max_iter=50):
        """Voltages producing ``angle`` (degrees), found by bisection.

        Angles outside ``valid_angle`` give ``nan``.
        """

        angle = np.asarray(angle, dtype=float)
        lo = np.full(angle.shape, self.valid_voltage[0])
        hi = np.full(angle.shape, self.valid_voltage[1])
        sign = 1. if self.increasing else -1.
        target = sign * angle

        for _ in range(max_iter):
            mid = (lo + hi) / 2
            below = sign * self.evaluate(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.all(hi - lo < tol):
                break

        v = (lo + hi) / 2
        a_min, a_max = self.valid_angle
        outside = (angle < a_min - 1e-9) | (angle > a_max + 1e-9)
        return np.where(outside | np.isnan(angle), np.nan, v)


def fit_curve(samples, center=0., weights=None):
    """Least-squares cubic fit of measured deflection angles.

    Args:
        samples: Sequence of ``(voltage, angle)`` pairs, angles in degrees.
        center(float): Voltage of the undeflected position, i.e. the middle of
            the drive span (``5`` for a 0-10 V device). Default is ``0``.
        weights: Optional non-negative weight of each sample in the squared
            residual sum. Default is ``None``, i.e. uniform weights. The
            reported ``residual_rms`` is always unweighted.

    Returns:
        A :obj:`CalibrationCurve`. Its valid range is the range of the
        sampled voltages.

    Raises:
        FitError: If fewer than 5 samples are given, if they do not span both
            sides of ``center``, if the weights do not match the samples or
            if they cannot determine a cubic.
    """

    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise FitError('samples must be a sequence of (voltage, angle) '
                       'pairs.')
    if len(samples) < 5:
        raise FitError('At least 5 samples are needed, got '
                       '{}.'.format(len(samples)))

    v, angle = samples[:, 0], samples[:, 1]
    x = v - center
    if not (np.any(x < 0) and np.any(x > 0)):
        raise FitError('Samples must span both sides of the center voltage '
                       '{}.'.format(center))

    if weights is None:
        scale = np.ones_like(x)
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != x.shape or np.any(weights < 0):
            raise FitError('weights must hold one non-negative value per '
                           'sample.')
        scale = np.sqrt(weights)

    vander = np.vander(x, 4, increasing=True)
    coefficients, _, rank, _ = np.linalg.lstsq(vander * scale[:, None],
                                               angle * scale, rcond=None)
    if rank < 4:
        raise FitError('Rank deficient sample set (rank {}).'.format(rank))

    residuals = angle - vander.dot(coefficients)
    valid_voltage = (float(v.min()), float(v.max()))
    ends = P.polyval(np.array(valid_voltage) - center, coefficients)

    return CalibrationCurve(tuple(float(c) for c in coefficients),
                            valid_voltage,
                            (float(ends.min()), float(ends.max())),
                            float(center),
                            float(np.sqrt(np.mean(residuals ** 2))))


def minimax_fit(samples, center=0., n_iter=30):
    """Cubic minimizing the largest residual over ``samples``, obtained by
    Lawson's iteratively reweighted least squares.

    Each iteration multiplies the weight of every sample by its absolute
    residual, so that the weights concentrate on the extremal points of the
    error curve. Same arguments and errors as :func:`fit_curve`.
    """

    samples = np.asarray(samples, dtype=float)
    weights = np.full(len(samples), 1. / max(len(samples), 1))
    curve = fit_curve(samples, center)
    for _ in range(n_iter):
        residuals = np.abs(samples[:, 1] - curve.evaluate(samples[:, 0]))
        weights = weights * residuals
        total = weights.sum()
        if not total > 0:
            break
        weights /= total
        curve = fit_curve(samples, center, weights)
    return curve


def ideal_samples(aod=None, max_angle=60., n_samples=41):
    """Deflection angles of the ideal chain, ``alpha = -asin((V - center) /
    V_half)``, sampled at Chebyshev-Lobatto voltages up to ``max_angle``
    degrees."""

    aod = aod if aod is not None else AodSpec()
    if not 0 < max_angle < 90:
        raise ValueError('max_angle must lie in (0, 90), got '
                         '{}.'.format(max_angle))
    u = np.sin(np.radians(max_angle)) * np.cos(
        np.pi * np.arange(n_samples) / (n_samples - 1))
    v = aod.v_center + aod.v_half * u
    return np.column_stack((v, -np.degrees(np.arcsin(u))))


def ideal_curve(aod=None, max_angle=60., n_samples=41, minimax=False):
    """Cubic fitted on the ideal chain up to ``max_angle`` degrees. See
    :func:`ideal_samples`.

    With ``minimax=True`` the cubic minimizes the largest error instead of
    the squared error (see :func:`minimax_fit`). A dense sampling
    (``n_samples`` around 200) is then advised.
    """

    aod = aod if aod is not None else AodSpec()
    samples = ideal_samples(aod, max_angle, n_samples)
    if minimax:
        return minimax_fit(samples, center=aod.v_center)
    return fit_curve(samples, center=aod.v_center)


def voltages_to_polar(v_x, v_y):
    """Polar form ``(r, theta_MS)`` of a voltage pair. ``theta_MS`` lies in
    ``[0, 2 pi)`` and is 0 at the origin."""

    v_x = np.asarray(v_x, dtype=float)
    v_y = np.asarray(v_y, dtype=float)
    return np.hypot(v_x, v_y), np.mod(np.arctan2(v_y, v_x), 2 * np.pi)


def polar_to_voltages(r, theta_ms):
    """Inverse of :func:`voltages_to_polar`."""

    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError('r must be non-negative.')
    return r * np.cos(theta_ms), r * np.sin(theta_ms)


def spherical_to_ms(theta, phi):
    """Convert scan angles to the polar pair about the optical axis.

    Args:
        theta: Azimuth in radians, ``|theta| < pi/2``.
        phi: Elevation in radians, ``|phi| < pi/2``.

    Returns:
        A :obj:`MsAngles` ``(theta_ms, alpha, degenerate)``.
    """

    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(np.abs(theta) >= np.pi / 2) or np.any(np.abs(phi) >= np.pi / 2):
        raise ValueError('Scan angles must be below 90 degrees.')

    x = np.cos(phi) * np.sin(theta)
    y = np.sin(phi)
    z = np.cos(phi) * np.cos(theta)
    alpha = np.arctan2(np.hypot(x, y), z)
    degenerate = (x == 0) & (y == 0)
    theta_ms = np.where(degenerate, 0., np.mod(np.arctan2(y, x), 2 * np.pi))

    return MsAngles(theta_ms, alpha, degenerate)


def ms_to_spherical(alpha, theta_ms):
    """Inverse of :func:`spherical_to_ms`.

    Returns:
        A tuple ``(theta, phi)`` in radians.

    Raises:
        ValueError: If ``alpha`` is not in ``[0, pi/2)``.
    """

    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0) or np.any(alpha >= np.pi / 2):
        raise ValueError('alpha must lie in [0, pi/2).')

    theta = np.arctan(np.tan(alpha) * np.cos(theta_ms))
    phi = np.arcsin(np.sin(alpha) * np.sin(theta_ms))
    return theta, phi


class CalibrationMaps:
    """Drive voltages tabulated over a grid of scan directions.

    Voltages are stored relative to ``center``; :meth:`lookup` returns
    absolute ones. Unreachable cells hold ``nan`` and are ``False`` in
    ``valid``. Grids are indexed ``[phi, theta]``.

    Attributes:
        theta_grid(numpy array): Azimuths of the columns, in degrees.
        phi_grid(numpy array): Elevations of the rows, in degrees.
        v_x(numpy array): Relative x voltages.
        v_y(numpy array): Relative y voltages.
        valid(numpy array of bool): Reachable cells.
        grid_step(float): Grid resolution in degrees.
        center(float): Voltage of the undeflected position.
        curve(:obj:`CalibrationCurve`): The curve the maps derive from.
    """

    def __init__(self, theta_grid, phi_grid, v_x, v_y, grid_step, curve):

        self.theta_grid = np.asarray(theta_grid, dtype=float)
        self.phi_grid = np.asarray(phi_grid, dtype=float)
        self.v_x = np.asarray(v_x, dtype=float)
        self.v_y = np.asarray(v_y, dtype=float)
        self.valid = ~(np.isnan(self.v_x) | np.isnan(self.v_y))
        self.grid_step = float(grid_step)
        self.curve = curve
        self.center = curve.center

        points = (self.phi_grid, self.theta_grid)
        self._interp_x = RegularGridInterpolator(points, self.v_x,
                                                 bounds_error=False,
                                                 fill_value=np.nan)
        self._interp_y = RegularGridInterpolator(points, self.v_y,
                                                 bounds_error=False,
                                                 fill_value=np.nan)

    def lookup(self, theta, phi):
        """Absolute voltages for scan angles in degrees (bilinear
        interpolation). Unreachable directions give ``nan``."""

        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        theta, phi = np.broadcast_arrays(theta, phi)
        pts = np.column_stack((phi.ravel(), theta.ravel()))
        v_x = self._interp_x(pts).reshape(theta.shape)
        v_y = self._interp_y(pts).reshape(theta.shape)
        return v_x + self.center, v_y + self.center

    def voltages_to_angles(self, v_x, v_y):
        """Commanded scan angles (degrees) for absolute voltages: the inverse
        of :meth:`lookup`, computed from the curve."""

        r, theta_v = voltages_to_polar(np.asarray(v_x) - self.center,
                                       np.asarray(v_y) - self.center)
        a_pos = self.curve.evaluate(self.center + r)
        a_neg = self.curve.evaluate(self.center - r)
        use_pos = a_pos >= a_neg
        alpha = np.where(use_pos, a_pos, a_neg)
        theta_ms = np.where(use_pos, theta_v, theta_v + np.pi)
        theta, phi = ms_to_spherical(np.radians(np.clip(alpha, 0, 89.999)),
                                     theta_ms)
        return np.degrees(theta), np.degrees(phi)

    def is_antisymmetric(self, tol=1e-9):
        """Whether ``map(-theta, -phi) == -map(theta, phi)`` on every cell,
        invalid cells included."""

        if not (np.allclose(self.theta_grid, -self.theta_grid[::-1]) and
                np.allclose(self.phi_grid, -self.phi_grid[::-1])):
            return False
        if not np.array_equal(self.valid, self.valid[::-1, ::-1]):
            return False
        ok = self.valid
        flipped_x = -self.v_x[::-1, ::-1]
        flipped_y = -self.v_y[::-1, ::-1]
        return bool(np.all(np.abs(self.v_x[ok] - flipped_x[ok]) <= tol) and
                    np.all(np.abs(self.v_y[ok] - flipped_y[ok]) <= tol))

    def coverage(self):
        """Reachable part of the grid.

        Returns:
            A tuple ``(fraction, max_theta, max_phi)``: the fraction of valid
            cells and the largest reachable ``|theta|`` on the ``phi = 0``
            row and ``|phi|`` on the ``theta = 0`` column, in degrees.
        """

        fraction = self.valid.mean()
        row = np.argmin(np.abs(self.phi_grid))
        col = np.argmin(np.abs(self.theta_grid))
        thetas = np.abs(self.theta_grid[self.valid[row]])
        phis = np.abs(self.phi_grid[self.valid[:, col]])
        max_theta = thetas.max() if thetas.size else np.nan
        max_phi = phis.max() if phis.size else np.nan
        return float(fraction), float(max_theta), float(max_phi)


def build_maps(curve, grid_step=0.5, span=75.):
    """Tabulate the calibration chain over a square grid of directions.

    For every cell, the direction is converted to ``(theta_MS, alpha)``, the
    curve is inverted to get the radial voltage and the voltage pair is
    obtained with :func:`polar_to_voltages`. A curve whose radial voltage is
    negative for positive angles (decreasing curve) yields voltages pointing
    away from ``theta_MS``.

    Args:
        curve(:obj:`CalibrationCurve`): The calibration curve.
        grid_step(float): Grid resolution in degrees. Default is ``0.5``.
        span(float): The grid covers ``[-span, span]`` degrees on both axes.
            Default is ``75``.

    Returns:
        A :obj:`CalibrationMaps` object.

    Raises:
        FitError: If the curve is not monotonic.
    """

    if not curve.is_monotonic():
        raise FitError('Cannot invert a non monotonic calibration curve.')
    if grid_step <= 0 or not 0 < span < 90:
        raise ValueError('grid_step must be positive and span in (0, 90).')

    n = int(round(2 * span / grid_step)) + 1
    grid = np.linspace(-span, span, n)
    theta, phi = np.meshgrid(grid, grid)
    theta_ms, alpha, _ = spherical_to_ms(np.radians(theta), np.radians(phi))

    v = curve.invert(np.degrees(alpha))
    v_rel = v - curve.center
    # Zero direction maps onto the center voltage exactly.
    v_rel = np.where(alpha == 0, 0., v_rel)
    theta_ms = np.where(v_rel < 0, theta_ms + np.pi, theta_ms)
    v_x, v_y = polar_to_voltages(np.where(np.isnan(v_rel), 0, np.abs(v_rel)),
                                 theta_ms)
    unreachable = np.isnan(v_rel)
    v_x[unreachable] = np.nan
    v_y[unreachable] = np.nan

    return CalibrationMaps(grid, grid, v_x, v_y, grid_step, curve)
