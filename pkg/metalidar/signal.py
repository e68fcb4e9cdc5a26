"""
The :mod:`signal <metalidar.signal>` module synthesizes the raw detector
records: one laser shot per scan sample, echoes delayed by ``2 d / c`` and
shaped like a smoothed step with an exponential decay, additive white noise.

Records are continuous: shot ``i`` starts at sample ``i * N`` where ``N =
sample_rate / f_rep`` must be an integer. Echoes arriving later than one
period land in the next shot (range ambiguity), and the last shot wraps
around to the first one, as in a steady state periodic acquisition.

Summary:

.. autosummary::
    :nosignatures:

    synthesize
    split_orders
    ground_truth
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple

import numpy as np
from scipy.signal import lfilter
from scipy.special import ndtr

from .optics import BeamState
from .optics import deflect
from .optics import divergence_after_ms
from .optics import max_range
from .optics import polar_to_scan
from .optics import power_budget
from .reader import ConfigError
from .scanpattern import NO_LIMIT
from .utils import SPEED_OF_LIGHT
from .utils import direction_from_angles
from .utils import get_rng
from .utils import off_axis_angle


NA_MODES = ('blocked', 'narrow', 'open')

# 10%-90% rise time of a Gaussian edge, in standard deviations.
RISE_TO_SIGMA = 2.563


class LaserSpec(namedtuple('LaserSpec',
                           ['f_rep', 'pulse_energy_scale', 'pulse_rise_time',
                            'pulse_decay_time', 'peak_power'])):
    """The pulsed laser.

    Args:
        f_rep(float): Pulse repetition rate in Hz, at most 250 MHz. Default
            is ``5e6``.
        pulse_energy_scale(float): Echo amplitude scale, arbitrary units.
            Default is ``1``.
        pulse_rise_time(float): 10%-90% rise time of the echoes, in seconds.
            Default is ``330e-12``.
        pulse_decay_time(float): Decay time constant of the echoes, in
            seconds. Default is ``10e-9``.
        peak_power(float): Laser peak power in watts. Default is ``10e-3``.
    """

    __slots__ = ()

    def __new__(cls, f_rep=5e6, pulse_energy_scale=1., pulse_rise_time=330e-12,
                pulse_decay_time=10e-9, peak_power=10e-3):

        if not 0 < f_rep <= 250e6:
            raise ValueError('f_rep must lie in (0, 250 MHz], got '
                             '{}.'.format(f_rep))
        if min(pulse_energy_scale, pulse_rise_time, pulse_decay_time,
               peak_power) <= 0:
            raise ValueError('Pulse parameters must be positive.')

        return super(LaserSpec, cls).__new__(
            cls, float(f_rep), float(pulse_energy_scale),
            float(pulse_rise_time), float(pulse_decay_time),
            float(peak_power))

    @property
    def d_max(self):
        """Unambiguous range, in meters."""
        return max_range(self.f_rep)


class DetectorSpec(namedtuple('DetectorSpec',
                              ['id', 'sample_rate', 'noise_sigma', 'na_mode',
                               'half_angle'])):
    """A photodetector and its digitizer.

    Args:
        id(str): Identifier, e.g. ``'A'``.
        sample_rate(float): Samples per second. Default is ``3e9``.
        noise_sigma(float): RMS of the additive noise, in amplitude units.
            Default is ``8e-4``.
        na_mode(str): ``'blocked'`` (every direction but a central cone),
            ``'narrow'`` (only a central cone) or ``'open'``. Default is
            ``'blocked'``.
        half_angle(float): Half angle of the central cone, in degrees.
            Default is ``2``.
    """

    __slots__ = ()

    def __new__(cls, id='A', sample_rate=3e9, noise_sigma=8e-4,
                na_mode='blocked', half_angle=2.):

        if sample_rate <= 0:
            raise ValueError('sample_rate must be positive.')
        if noise_sigma < 0:
            raise ValueError('noise_sigma must be non-negative.')
        if na_mode not in NA_MODES:
            raise ValueError('Unknown NA mode ' + str(na_mode) +
                             '. Accepted values are ' +
                             ', '.join(NA_MODES) + '.')
        if not 0 < half_angle < 90:
            raise ValueError('half_angle must lie in (0, 90) degrees, got '
                             '{}.'.format(half_angle))

        return super(DetectorSpec, cls).__new__(
            cls, str(id), float(sample_rate), float(noise_sigma), na_mode,
            float(half_angle))

    def accepts(self, gamma):
        """Whether echoes coming back at ``gamma`` radians from the optical
        axis reach the detector."""

        gamma = np.asarray(gamma, dtype=float)
        cone = np.radians(self.half_angle)
        if self.na_mode == 'blocked':
            return gamma >= cone
        if self.na_mode == 'narrow':
            return gamma < cone
        return np.isfinite(gamma)


def samples_per_period(sample_rate, f_rep):
    """Number of samples per laser period.

    Raises:
        ConfigError: If ``sample_rate / f_rep`` is not an integer.
    """

    ratio = sample_rate / f_rep
    n = int(round(ratio))
    if n < 1 or abs(ratio - n) > 1e-6 * ratio:
        raise ConfigError('sample_rate ({}) must be an integer multiple of '
                          'f_rep ({}).'.format(sample_rate, f_rep))
    return n


class WaveformRecord:
    """A digitized detector record.

    Attributes:
        samples(numpy array of float32): The samples.
        sample_rate(float): Samples per second.
        f_rep(float): Laser repetition rate.
        n_pixels(int): Number of shots in the record.
        t0(float): Time of the first shot, in seconds.
        detector_id(str): Id of the detector.
    """

    def __init__(self, samples, sample_rate, f_rep, n_pixels, t0=0.,
                 detector_id='A'):

        self.samples = np.asarray(samples, dtype=np.float32)
        self.sample_rate = float(sample_rate)
        self.f_rep = float(f_rep)
        self.n_pixels = int(n_pixels)
        self.t0 = float(t0)
        self.detector_id = str(detector_id)

        expected = self.n_pixels * self.samples_per_period
        if len(self.samples) != expected:
            raise ValueError('Record holds {} samples, expected {} ({} '
                             'shots).'.format(len(self.samples), expected,
                                              self.n_pixels))

    @property
    def samples_per_period(self):
        return samples_per_period(self.sample_rate, self.f_rep)

    def __len__(self):
        return len(self.samples)


def pulse_shape(t, rise_time, decay_time):
    """Echo of unit amplitude whose leading edge (50% point) is at ``t =
    0``."""

    t = np.asarray(t, dtype=float)
    sigma = rise_time / RISE_TO_SIGMA
    return ndtr(t / sigma) * np.exp(-np.maximum(t, 0) / decay_time)


def drive_lowpass(v, blur_width):
    """Smooth a drive sequence with a first order recursive filter whose
    time constant is ``blur_width`` samples."""

    v = np.asarray(v, dtype=float)
    if blur_width <= 0 or len(v) == 0:
        return v
    lam = np.exp(-1 / blur_width)
    y, _ = lfilter([1 - lam], [1, -lam], v, zi=[lam * v[0]])
    return y


def split_orders(v_x, v_y, chain, axes=2, strict=True):
    """Beam states of the zeroth and first orders for drive voltages.

    The zeroth order keeps the AOD angle; the first order is deflected by
    the MS at the impact point of the beam.

    Args:
        v_x: x drive voltages.
        v_y: y drive voltages.
        chain(:obj:`OpticsChain <metalidar.optics.OpticsChain>`): The optics.
        axes(int): Number of AOD axes in use, for the power budget. Default
            is ``2``.
        strict(bool): If ``True``, drives beyond the MS or evanescent orders
            raise an error. Otherwise the first order gets ``nan`` angles and
            no power there.

    Returns:
        A tuple ``(order0, order1)`` of :obj:`BeamState
        <metalidar.optics.BeamState>`.
    """

    ms = chain.ms
    impact_r, impact_theta_ms = chain.drive_to_impact(v_x, v_y)

    theta0, phi0 = chain.aod_angles(v_x, v_y)
    half_spot = chain.spot_diameter / 2
    div0 = np.full(np.shape(impact_r), chain.divergence_floor *
                   ms.wavelength / (np.pi * half_spot))
    power0 = chain.input_power * power_budget(0, impact_r, chain.aod, ms,
                                              axes)
    order0 = BeamState(impact_r, impact_theta_ms, theta0, phi0, div0, power0,
                       0)

    outside = impact_r > ms.r_max * (1 + 1e-12)
    if strict and np.any(outside):
        raise ValueError('Drive voltages put the beam outside the '
                         'metasurface.')
    r = np.minimum(impact_r, ms.r_max)
    inc_theta, inc_phi = chain.incidence(v_x, v_y)
    theta_t, phi_t = deflect(r, impact_theta_ms, inc_theta, inc_phi, ms,
                             strict=strict)
    theta1, phi1 = polar_to_scan(theta_t, phi_t)
    lost = outside | np.isnan(theta1)
    theta1 = np.where(lost, np.nan, theta1)
    phi1 = np.where(lost, np.nan, phi1)
    div1 = divergence_after_ms(chain.spot_diameter, r, ms,
                               chain.divergence_floor)
    power1 = chain.input_power * np.where(
        lost, 0., power_budget(1, r, chain.aod, ms, axes))
    order1 = BeamState(impact_r, impact_theta_ms, theta1, phi1, div1, power1,
                       1)

    return order0, order1


def shot_indices(pattern, f_rep):
    """Index of the pattern sample each laser shot is fired at.

    Patterns other than random access must repoint once per shot. Random
    access points get one shot per laser period of their dwell time.

    Returns:
        A numpy array of sample indices, one per shot.

    Raises:
        ConfigError: If the scan rate does not match ``f_rep``.
    """

    if pattern.kind != 'random_access' and not np.isclose(
            pattern.scan_rate, f_rep, rtol=1e-9):
        raise ConfigError('The scan rate ({} Hz) must equal f_rep ({} Hz): '
                          'one pulse per direction.'.format(
                              pattern.scan_rate, f_rep))

    n_shots = int(round(pattern.duration * f_rep))
    if n_shots < 1:
        raise ConfigError('The pattern is shorter than one laser period.')
    t_shot = np.arange(n_shots) / f_rep
    t_pattern = pattern.t - pattern.t[0]
    index = np.searchsorted(t_pattern, t_shot + 0.5 / f_rep, side='right') - 1
    return np.clip(index, 0, pattern.n_samples - 1)


def _shot_drive(pattern, f_rep, rate_report):
    """Drive voltages, relative times and blanking of every shot of a
    pattern."""

    index = shot_indices(pattern, f_rep)
    t_shot = np.arange(len(index)) / f_rep

    blur = rate_report.blur_width
    v_x = drive_lowpass(pattern.v_x[index], blur)
    v_y = drive_lowpass(pattern.v_y[index], blur)
    return t_shot, v_x, v_y, pattern.masked[index]


def _cast_orders(pattern, scene, chain, laser, rate_report, t0):
    """Beam states and scene hits of both orders for every shot."""

    t_shot, v_x, v_y, blanked = _shot_drive(pattern, laser.f_rep,
                                            rate_report)
    orders = split_orders(v_x, v_y, chain, axes=pattern.axes, strict=False)
    times = t0 + t_shot

    casts = []
    for beam in orders:
        ok = (beam.power > 0) & ~blanked
        directions = direction_from_angles(np.where(ok, beam.direction_theta,
                                                    0.),
                                           np.where(ok, beam.direction_phi,
                                                    0.))
        hits = scene.cast_rays(np.zeros(3), directions, times)
        gamma = np.where(ok, off_axis_angle(np.where(ok, beam.direction_theta,
                                                     0.),
                                            np.where(ok, beam.direction_phi,
                                                     0.)),
                         np.nan)
        casts.append((beam, hits, gamma, ok & hits.hit))

    return t_shot, casts


def _render(n_shots, n_per_shot, positions, amplitudes, sample_rate, laser):
    """Sum the echoes into a flat record. ``positions`` are the edges in
    samples from the start of the record."""

    length = n_shots * n_per_shot
    if len(positions) == 0:
        return np.zeros(length)

    sigma = laser.pulse_rise_time / RISE_TO_SIGMA * sample_rate
    before = int(np.ceil(5 * sigma)) + 1
    after = int(np.ceil(8 * laser.pulse_decay_time * sample_rate)) + 1
    offsets = np.arange(-before, after + 1)

    base = np.floor(positions).astype(np.int64)
    index = base[:, np.newaxis] + offsets
    t = (index - positions[:, np.newaxis]) / sample_rate
    values = amplitudes[:, np.newaxis] * pulse_shape(
        t, laser.pulse_rise_time, laser.pulse_decay_time)

    return np.bincount(np.mod(index, length).ravel(), weights=values.ravel(),
                       minlength=length)


def synthesize(pattern, scene, chain, laser, detectors, rate_report=None,
               random_state=None, t0=0., range_exponent=2., retro_boost=10.):
    """Synthesize the records of all detectors for one pass of a pattern.

    The echo amplitude of a shot is ``pulse_energy_scale * P / P_in *
    reflectivity * incidence_cosine / d ** range_exponent``, multiplied by
    ``retro_boost`` on retro-reflective surfaces and by the attenuation of
    ``rate_report``. Shots on masked pattern samples are blanked.

    Args:
        pattern(:obj:`ScanPattern <metalidar.scanpattern.ScanPattern>`): The
            drive pattern. Its scan rate must equal ``laser.f_rep``, except
            for random access patterns where each point gets as many shots as
            fit in its dwell time.
        scene(:obj:`Scene <metalidar.scene.Scene>`): The scene.
        chain(:obj:`OpticsChain <metalidar.optics.OpticsChain>`): The optics.
        laser(:obj:`LaserSpec`): The laser.
        detectors(list of :obj:`DetectorSpec`): The detectors.
        rate_report(:obj:`RateReport
            <metalidar.scanpattern.RateReport>`): Result of
            :func:`check_rate <metalidar.scanpattern.check_rate>` for the
            pattern. Default is no attenuation.
        random_state(int, RandomState instance or None): Noise generator.
        t0(float): Time of the first shot, in seconds. Default is ``0``.
        range_exponent(float): Distance exponent of the amplitude law.
            Default is ``2``.
        retro_boost(float): Gain of retro-reflective surfaces. Default is
            ``10``.

    Returns:
        A list of :obj:`WaveformRecord`, one per detector.

    Raises:
        ConfigError: If a sample rate is not a multiple of ``f_rep`` or the
            scan rate does not match ``f_rep``.
    """

    rate_report = rate_report if rate_report is not None else NO_LIMIT
    sizes = [samples_per_period(d.sample_rate, laser.f_rep)
             for d in detectors]
    rng = get_rng(random_state)

    t_shot, casts = _cast_orders(pattern, scene, chain, laser, rate_report,
                                 t0)
    n_shots = len(t_shot)

    records = []
    for detector, n_per_shot in zip(detectors, sizes):
        positions, amplitudes = [], []
        for beam, hits, gamma, visible in casts:
            accepted = visible & detector.accepts(gamma)
            d = hits.distance[accepted]
            gain = np.where(hits.retro[accepted], retro_boost, 1.)
            amplitudes.append(laser.pulse_energy_scale *
                              beam.power[accepted] / chain.input_power *
                              hits.reflectivity[accepted] *
                              hits.incidence_cosine[accepted] * gain /
                              d ** range_exponent *
                              rate_report.attenuation)
            shots = np.flatnonzero(accepted)
            positions.append(shots * n_per_shot +
                             2 * d / SPEED_OF_LIGHT * detector.sample_rate)

        samples = _render(n_shots, n_per_shot, np.concatenate(positions),
                          np.concatenate(amplitudes), detector.sample_rate,
                          laser)
        if detector.noise_sigma > 0:
            samples = samples + rng.normal(0, detector.noise_sigma,
                                           len(samples))
        records.append(WaveformRecord(samples, detector.sample_rate,
                                      laser.f_rep, n_shots, t0, detector.id))

    return records


def ground_truth(pattern, scene, chain, laser, detector, t0=0.,
                 rate_report=None):
    """Distance of the nearest echo each shot sends to ``detector``.

    Returns:
        A numpy array with one distance per shot, ``nan`` when no echo is
        accepted.
    """

    rate_report = rate_report if rate_report is not None else NO_LIMIT
    t_shot, casts = _cast_orders(pattern, scene, chain, laser, rate_report,
                                 t0)
    distance = np.full(len(t_shot), np.inf)
    for beam, hits, gamma, visible in casts:
        accepted = visible & detector.accepts(gamma)
        distance = np.where(accepted, np.minimum(distance, hits.distance),
                            distance)

    return np.where(np.isfinite(distance), distance, np.nan)
