"""
The :mod:`optics <metalidar.optics>` module models the deflection physics of
the acousto-optic deflector (AOD) followed by the metasurface (MS).

The MS imposes the radially parabolic phase

    Phi(r) = -(2 pi / lambda) r^2 / (2 r_max)

whose gradient is a transverse momentum proportional to the distance from
the center. A beam hitting the MS at (r, theta_MS) therefore leaves it with
the transverse momentum of the incident beam plus ``-k0 (r / r_max)
(cos theta_MS, sin theta_MS)``: the deflection points towards ``-r`` and its
magnitude alpha obeys ``sin(alpha) = r / r_max``. Since the relay between the
AOD and the MS does not invert the beam position, a positive drive voltage
ends up steering the first order towards negative angles. Calibration curves
of the ideal chain are thus decreasing.

Two angle conventions are used:

- :func:`deflect` returns the polar angle ``theta_t`` and the azimuth
  ``phi_t`` of the outgoing wave vector, with ``phi_t`` measured from the
  y axis towards x, so that ``sin(theta_t) sin(phi_t)`` and ``sin(theta_t)
  cos(phi_t)`` are the x and y transverse components.
- Everything else (calibration, scene, frames) uses scan angles: azimuth
  theta in the x-z plane and elevation phi towards y. See
  :func:`polar_to_scan` and :func:`scan_to_polar`.

Summary:

.. autosummary::
    :nosignatures:

    phase
    deflect
    undeflect
    divergence_after_ms
    divergence_sweep
    power_budget
    loss_breakdown
    transit_limits
    max_range
    OpticsChain
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple

import numpy as np

from .utils import SPEED_OF_LIGHT
from .utils import angles_from_direction
from .utils import direction_from_angles


PHASE_PROFILES = ('parabolic',)

# AOD 63% first order, 4 dB in total for one axis.
DEFAULT_MS_EFFICIENCY = 10 ** -0.4 / 0.63


class EvanescentOrderError(ValueError):
    """Raised when the transmitted transverse momentum exceeds k0, i.e. when
    there is no propagating diffraction order."""


class MetasurfaceSpec(namedtuple('MetasurfaceSpec',
                                 ['r_max', 'wavelength',
                                  'first_order_efficiency',
                                  'zero_order_fraction',
                                  'edge_efficiency_droop', 'profile'])):
    """Geometry and efficiencies of the metasurface.

    Args:
        r_max(float): Radius of the MS, in meters. Default is ``0.5e-3``
            (1 mm device).
        wavelength(float): Design wavelength in meters. Default is
            ``633e-9``.
        first_order_efficiency(float): Fraction of the transmitted power in
            the deflected first order at the center of the MS. Default is
            back-solved from a 4 dB one-axis budget.
        zero_order_fraction(float): Fraction of the power left in the
            undeflected zeroth order. Default is ``0.2``.
        edge_efficiency_droop(float): Relative loss of first order efficiency
            at ``r_max``. Default is ``0.3``.
        profile(str): Phase profile law. Only ``'parabolic'`` is available.
    """

    __slots__ = ()

    def __new__(cls, r_max=0.5e-3, wavelength=633e-9,
                first_order_efficiency=DEFAULT_MS_EFFICIENCY,
                zero_order_fraction=0.2, edge_efficiency_droop=0.3,
                profile='parabolic'):

        if r_max <= 0:
            raise ValueError('r_max must be positive, got {}.'.format(r_max))
        if wavelength <= 0:
            raise ValueError('wavelength must be positive, got '
                             '{}.'.format(wavelength))
        if not (0 <= first_order_efficiency <= 1 and
                0 <= zero_order_fraction <= 1):
            raise ValueError('Diffraction efficiencies must lie in [0, 1].')
        if first_order_efficiency + zero_order_fraction > 1:
            raise ValueError('first_order_efficiency + zero_order_fraction '
                             'cannot exceed 1, got {} + {}.'.format(
                                 first_order_efficiency,
                                 zero_order_fraction))
        if not 0 <= edge_efficiency_droop <= 1:
            raise ValueError('edge_efficiency_droop must lie in [0, 1], got '
                             '{}.'.format(edge_efficiency_droop))
        if profile not in PHASE_PROFILES:
            raise ValueError('Unknown phase profile ' + str(profile) +
                             '. Accepted values are ' +
                             ', '.join(PHASE_PROFILES) + '.')

        return super(MetasurfaceSpec, cls).__new__(
            cls, float(r_max), float(wavelength),
            float(first_order_efficiency), float(zero_order_fraction),
            float(edge_efficiency_droop), profile)

    @property
    def k0(self):
        return 2 * np.pi / self.wavelength


class AodSpec(namedtuple('AodSpec',
                         ['fov_half_angle', 'aperture', 'acoustic_velocity',
                          'first_order_efficiency', 'second_axis_efficiency',
                          'voltage_span'])):
    """Parameters of the (one or two axis) acousto-optic deflector.

    Args:
        fov_half_angle(float): Maximum deflection per axis, in radians.
            Default is 1 degree.
        aperture(float): Beam diameter at the AOD, in meters. Default is
            ``3e-3``.
        acoustic_velocity(float): Acoustic velocity in the crystal, in m/s.
            Default is ``650``.
        first_order_efficiency(float): Power fraction in the AOD first order.
            Default is ``0.63``.
        second_axis_efficiency(float): Extra transmission of the second axis
            when both axes are used. Default is 1.5 dB of loss.
        voltage_span(tuple): ``(min, max)`` drive voltage per axis. Default is
            ``(-5, 5)``.
    """

    __slots__ = ()

    def __new__(cls, fov_half_angle=np.radians(1.), aperture=3e-3,
                acoustic_velocity=650., first_order_efficiency=0.63,
                second_axis_efficiency=10 ** -0.15, voltage_span=(-5., 5.)):

        if not 0 < fov_half_angle < np.pi / 2:
            raise ValueError('fov_half_angle must lie in (0, pi/2), got '
                             '{}.'.format(fov_half_angle))
        if aperture <= 0 or acoustic_velocity <= 0:
            raise ValueError('aperture and acoustic_velocity must be '
                             'positive.')
        for eff in (first_order_efficiency, second_axis_efficiency):
            if not 0 < eff <= 1:
                raise ValueError('AOD efficiencies must lie in (0, 1], got '
                                 '{}.'.format(eff))
        v_min, v_max = voltage_span
        if v_max <= v_min:
            raise ValueError('voltage_span must be increasing, got '
                             '{}.'.format(voltage_span))

        return super(AodSpec, cls).__new__(
            cls, float(fov_half_angle), float(aperture),
            float(acoustic_velocity), float(first_order_efficiency),
            float(second_axis_efficiency), (float(v_min), float(v_max)))

    @property
    def v_center(self):
        """Voltage of the undeflected (central) position."""
        return sum(self.voltage_span) / 2

    @property
    def v_half(self):
        """Half width of the voltage span."""
        return (self.voltage_span[1] - self.voltage_span[0]) / 2


class BeamState(namedtuple('BeamState',
                           ['impact_r', 'impact_theta_ms', 'direction_theta',
                            'direction_phi', 'divergence', 'power',
                            'order'])):
    """State of one diffraction order leaving the MS.

    Fields may be scalars or arrays of equal shape (one entry per shot).

    Args:
        impact_r: Radial impact position on the MS, in meters.
        impact_theta_ms: Angular impact position, in radians.
        direction_theta: Outgoing azimuth, in radians. ``nan`` if the order
            does not propagate.
        direction_phi: Outgoing elevation, in radians.
        divergence: Full-angle divergence, in radians.
        power: Optical power, in watts.
        order(int): 0 or 1.
    """

    __slots__ = ()


def phase(r, ms):
    """Phase retardation imposed by the MS at radius ``r``.

    Args:
        r(float or array): Radial position in meters, in ``[0, ms.r_max]``.
        ms(:obj:`MetasurfaceSpec`): The metasurface.

    Returns:
        The phase in radians: 0 at the center, ``-pi r_max / lambda`` at the
        edge.

    Raises:
        ValueError: If ``r`` is outside ``[0, r_max]``.
    """

    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > ms.r_max):
        raise ValueError('r must lie in [0, {}].'.format(ms.r_max))

    return -ms.k0 * r ** 2 / (2 * ms.r_max)


def phase_gradient(r, ms):
    """Analytic radial derivative of :func:`phase`."""
    return -ms.k0 * np.asarray(r, dtype=float) / ms.r_max


def deflect(impact_r, impact_theta_ms, incident_theta, incident_phi, ms,
            strict=True):
    """Direction of the first order leaving the MS.

    The incident transverse momentum (from the scan angles ``incident_theta``
    and ``incident_phi``) is added to the phase gradient at the impact point.
    With normal incidence, ``sin(theta_t) sin(phi_t) = -(r/r_max)
    cos(theta_MS)`` and ``sin(theta_t) cos(phi_t) = -(r/r_max)
    sin(theta_MS)``.

    Args:
        impact_r: Radial impact position in meters.
        impact_theta_ms: Angular impact position in radians.
        incident_theta: Azimuth of the incident beam, in radians.
        incident_phi: Elevation of the incident beam, in radians.
        ms(:obj:`MetasurfaceSpec`): The metasurface.
        strict(bool): If ``True`` (default), an evanescent order raises an
            error. Otherwise its angles are set to ``nan``.

    Returns:
        A tuple ``(theta_t, phi_t)``: polar angle and azimuth of the
        transmitted wave vector, in radians.

    Raises:
        ValueError: If ``impact_r`` is outside ``[0, r_max]`` or an incident
            angle is not below pi/2.
        EvanescentOrderError: If the transverse momentum exceeds k0.
    """

    r = np.asarray(impact_r, dtype=float)
    if np.any(r < 0) or np.any(r > ms.r_max * (1 + 1e-12)):
        raise ValueError('impact_r must lie in [0, {}].'.format(ms.r_max))
    incident_theta = np.asarray(incident_theta, dtype=float)
    incident_phi = np.asarray(incident_phi, dtype=float)
    if (np.any(np.abs(incident_theta) >= np.pi / 2) or
            np.any(np.abs(incident_phi) >= np.pi / 2)):
        raise ValueError('Incident angles must be below pi/2.')

    rho = r / ms.r_max
    s_x = (np.cos(incident_phi) * np.sin(incident_theta) -
           rho * np.cos(impact_theta_ms))
    s_y = np.sin(incident_phi) - rho * np.sin(impact_theta_ms)
    s = np.hypot(s_x, s_y)

    evanescent = s > 1 + 1e-12
    if strict and np.any(evanescent):
        raise EvanescentOrderError(
            'No propagating order: transverse momentum is {:.6f} k0.'.format(
                float(np.max(s))))

    theta_t = np.arcsin(np.minimum(s, 1))
    phi_t = np.arctan2(s_x, s_y)
    if np.any(evanescent):
        theta_t = np.where(evanescent, np.nan, theta_t)
        phi_t = np.where(evanescent, np.nan, phi_t)

    return theta_t, phi_t


def undeflect(theta_t, phi_t, incident_theta, incident_phi, ms):
    """Inverse of :func:`deflect`: impact position producing the outgoing
    direction ``(theta_t, phi_t)``.

    Returns:
        A tuple ``(impact_r, impact_theta_ms)``, with ``impact_theta_ms`` in
        ``[0, 2 pi)``.

    Raises:
        ValueError: If the direction needs an impact outside the MS.
    """

    g_x = (np.sin(theta_t) * np.sin(phi_t) -
           np.cos(incident_phi) * np.sin(incident_theta))
    g_y = np.sin(theta_t) * np.cos(phi_t) - np.sin(incident_phi)
    rho = np.hypot(g_x, g_y)
    if np.any(rho > 1 + 1e-12):
        raise ValueError('Direction not reachable by this metasurface.')

    impact_theta_ms = np.mod(np.arctan2(-g_y, -g_x), 2 * np.pi)

    return rho * ms.r_max, impact_theta_ms


def polar_to_scan(theta_t, phi_t):
    """Convert the ``(theta_t, phi_t)`` pair of :func:`deflect` to scan
    angles ``(theta, phi)``."""

    sin_t = np.sin(theta_t)
    d = np.stack((sin_t * np.sin(phi_t), sin_t * np.cos(phi_t),
                  np.cos(theta_t)), axis=-1)
    return angles_from_direction(d)


def scan_to_polar(theta, phi):
    """Inverse of :func:`polar_to_scan`."""

    d = direction_from_angles(theta, phi)
    theta_t = np.arctan2(np.hypot(d[..., 0], d[..., 1]), d[..., 2])
    phi_t = np.arctan2(d[..., 0], d[..., 1])
    return theta_t, phi_t


def divergence_after_ms(spot_diameter, impact_r, ms, floor_factor=1.):
    """Full-angle divergence of the first order.

    The local deflection angle varies across the spot, so the outgoing beam
    spreads over ``asin((r + w/2) / r_max) - asin((r - w/2) / r_max)`` where
    ``w`` is the spot diameter. The arguments are clipped to ``[-1, 1]``. The
    result never goes below the diffraction limit ``floor_factor * lambda /
    (pi w / 2)``, and never above pi.

    Args:
        spot_diameter(float): Beam diameter on the MS, in meters.
        impact_r: Radial impact position in meters.
        ms(:obj:`MetasurfaceSpec`): The metasurface.
        floor_factor(float): Scaling of the diffraction floor. Default is
            ``1``.

    Returns:
        The divergence in radians.
    """

    if spot_diameter <= 0:
        raise ValueError('spot_diameter must be positive, got '
                         '{}.'.format(spot_diameter))

    r = np.asarray(impact_r, dtype=float)
    half = spot_diameter / 2
    high = np.arcsin(np.clip((r + half) / ms.r_max, -1, 1))
    low = np.arcsin(np.clip((r - half) / ms.r_max, -1, 1))
    floor = floor_factor * ms.wavelength / (np.pi * half)

    return np.minimum(np.maximum(high - low, floor), np.pi)


def divergence_sweep(spot_diameter, ms_diameters, impact_fraction=0.5,
                     ms=None, floor_factor=1.):
    """Divergence of the first order for metasurfaces of several sizes.

    Larger devices have a smaller phase gradient, hence a smaller spread of
    deflection angles across the spot.

    Args:
        spot_diameter(float): Beam diameter on the MS, in meters.
        ms_diameters: Diameters of the devices, in meters.
        impact_fraction(float): Impact radius as a fraction of the device
            radius. Default is ``0.5``.
        ms(:obj:`MetasurfaceSpec`): Other parameters of the devices. Default
            has default values.
        floor_factor(float): See :func:`divergence_after_ms`.

    Returns:
        A numpy array of divergences in radians, one per diameter.
    """

    ms = ms if ms is not None else MetasurfaceSpec()
    if not 0 <= impact_fraction <= 1:
        raise ValueError('impact_fraction must lie in [0, 1], got '
                         '{}.'.format(impact_fraction))
    out = []
    for diameter in np.atleast_1d(np.asarray(ms_diameters, dtype=float)):
        device = ms._replace(r_max=diameter / 2)
        if device.r_max <= 0:
            raise ValueError('Diameters must be positive.')
        out.append(divergence_after_ms(spot_diameter,
                                       impact_fraction * device.r_max,
                                       device, floor_factor))
    return np.array(out, dtype=float)


def _aod_transmission(aod, axes):

    if axes not in (1, 2):
        raise ValueError('axes must be 1 or 2, got {}.'.format(axes))
    eff = aod.first_order_efficiency
    if axes == 2:
        eff *= aod.second_axis_efficiency
    return eff


def power_budget(order, impact_r, aod, ms, axes=1):
    """Fraction of the laser power carried by a diffraction order.

    Args:
        order(int): 0 or 1.
        impact_r: Radial impact position in meters.
        aod(:obj:`AodSpec`): The deflector.
        ms(:obj:`MetasurfaceSpec`): The metasurface.
        axes(int): Number of AOD axes in use. Default is ``1``.

    Returns:
        The transmitted power fraction.
    """

    aod_eff = _aod_transmission(aod, axes)
    if order == 0:
        return aod_eff * ms.zero_order_fraction * np.ones_like(
            np.asarray(impact_r, dtype=float))
    if order == 1:
        rho = np.asarray(impact_r, dtype=float) / ms.r_max
        droop = 1 - ms.edge_efficiency_droop * rho ** 2
        return aod_eff * ms.first_order_efficiency * droop
    raise ValueError('order must be 0 or 1, got {}.'.format(order))


def loss_breakdown(impact_r, aod, ms, axes=1):
    """Split the laser power into order-0, order-1 and lost fractions.

    Returns:
        dict: ``{'order0': ..., 'order1': ..., 'loss': ...}``, summing to 1.
    """

    order0 = power_budget(0, impact_r, aod, ms, axes)
    order1 = power_budget(1, impact_r, aod, ms, axes)
    return {'order0': order0, 'order1': order1,
            'loss': 1 - order0 - order1}


def transit_limits(aod):
    """Acoustic transit time across the beam and the corresponding nominal
    scan frequency.

    Returns:
        A tuple ``(transit_time, nominal_scan_frequency)``.
    """

    tau = aod.aperture / aod.acoustic_velocity
    return tau, 1 / tau


def max_range(f_rep):
    """Unambiguous range ``c / (2 f_rep)`` in meters."""

    if f_rep <= 0:
        raise ValueError('f_rep must be positive, got {}.'.format(f_rep))
    return SPEED_OF_LIGHT / (2 * f_rep)


class OpticsChain:
    """The AOD, the relay and the MS, seen from the drive voltages.

    The relay maps the AOD angle linearly onto the MS plane: the impact
    radius is ``r_max |V - V_center| / V_half`` and the impact azimuth is the
    azimuth of the voltage vector. With a scanning lens (``telecentric``) the
    beam hits the MS at normal incidence; without it (MS placed right after
    the AOD) it keeps the AOD angle.

    Args:
        aod(:obj:`AodSpec`): The deflector. Default has default values.
        ms(:obj:`MetasurfaceSpec`): The metasurface. Default has default
            values.
        telecentric(bool): Whether a scanning lens is used. Default is
            ``True``.
        spot_diameter(float): Beam diameter on the MS, in meters. Default is
            ``50e-6``.
        input_power(float): Laser power entering the AOD, in watts. Default
            is ``1`` so that :class:`BeamState` powers are fractions.
        divergence_floor(float): Scaling of the diffraction limited
            divergence. Default is ``1``.
    """

    def __init__(self, aod=None, ms=None, telecentric=True,
                 spot_diameter=50e-6, input_power=1., divergence_floor=1.):

        self.aod = aod if aod is not None else AodSpec()
        self.ms = ms if ms is not None else MetasurfaceSpec()
        self.telecentric = bool(telecentric)
        if spot_diameter <= 0 or input_power <= 0:
            raise ValueError('spot_diameter and input_power must be '
                             'positive.')
        self.spot_diameter = float(spot_diameter)
        self.input_power = float(input_power)
        self.divergence_floor = float(divergence_floor)

    def relative_drive(self, v_x, v_y):
        """Drive voltages relative to the span center, divided by the half
        span."""
        u_x = (np.asarray(v_x, dtype=float) - self.aod.v_center)
        u_y = (np.asarray(v_y, dtype=float) - self.aod.v_center)
        return u_x / self.aod.v_half, u_y / self.aod.v_half

    def drive_to_impact(self, v_x, v_y):
        """Impact position ``(r, theta_MS)`` on the MS for drive voltages."""
        u_x, u_y = self.relative_drive(v_x, v_y)
        impact_r = self.ms.r_max * np.hypot(u_x, u_y)
        impact_theta_ms = np.mod(np.arctan2(u_y, u_x), 2 * np.pi)
        return impact_r, impact_theta_ms

    def aod_angles(self, v_x, v_y):
        """Scan angles ``(theta, phi)`` of the beam leaving the AOD, i.e. of
        the undeflected order."""
        u_x, u_y = self.relative_drive(v_x, v_y)
        beta = self.aod.fov_half_angle
        d = np.stack((np.tan(beta * u_x), np.tan(beta * u_y),
                      np.ones_like(u_x)), axis=-1)
        return angles_from_direction(d)

    def incidence(self, v_x, v_y):
        """Scan angles of the beam hitting the MS."""
        if self.telecentric:
            zeros = np.zeros_like(np.asarray(v_x, dtype=float))
            return zeros, zeros.copy()
        return self.aod_angles(v_x, v_y)
