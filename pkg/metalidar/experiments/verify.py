"""
The :mod:`verify <metalidar.experiments.verify>` module holds the numerical
checks of the package. Each suite returns a list of ``(name, value, ok)``
rows; :func:`run_verify` prints them and fails if any check does.

Suites:

- ``range``: unambiguous range at 5 and 16.67 MHz.
- ``calibration``: round trips of the angle and voltage conversions and of
  the metasurface deflection.
- ``direction``: calibrated voltages point the first order where asked,
  up to 60 degrees off axis.
- ``antisymmetry``: the voltage maps of the run are antisymmetric.
- ``transit``: nominal scan frequency and deflector bandwidth.
- ``loss``: power budget of one and two AOD axes.
- ``kinematics``: crossing time and event count of a fast target.
- ``depth``: noiseless ranging error on 100 random scenes, without
  interpolation.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np

from ..accuracy import angular_error
from ..accuracy import false_alarm_rate
from ..accuracy import max_error
from ..accuracy import miss_rate
from ..accuracy import rmse
from ..analysis import detectability
from ..calibration import build_maps
from ..calibration import ideal_curve
from ..calibration import ms_to_spherical
from ..calibration import polar_to_voltages
from ..calibration import spherical_to_ms
from ..calibration import voltages_to_polar
from ..optics import OpticsChain
from ..optics import deflect
from ..optics import loss_breakdown
from ..optics import max_range
from ..optics import power_budget
from ..optics import transit_limits
from ..optics import undeflect
from ..pipeline import extract_tof
from ..pipeline import fold
from ..reader import ConfigError
from ..scanpattern import ScanLimits
from ..scanpattern import ScanPattern
from ..scanpattern import check_rate
from ..scanpattern import raster
from ..scene import Box
from ..scene import Disk
from ..scene import Plane
from ..scene import Scene
from ..scene import Sphere
from ..signal import DetectorSpec
from ..signal import LaserSpec
from ..signal import ground_truth
from ..signal import split_orders
from ..signal import synthesize
from ..utils import SPEED_OF_LIGHT
from ..utils import direction_from_angles
from ..utils import get_rng
from .stages import AcceptanceError
from .stages import print_summary
from .stages import stage


def _angle_diff(a, b):
    """Absolute difference of two angles, modulo 2 pi."""
    d = np.mod(a - b + np.pi, 2 * np.pi) - np.pi
    return np.abs(d)


def check_range(config, rng, n_cases):

    d5 = max_range(5e6)
    d16 = max_range(16.67e6)
    return [('d_max 5 MHz', '{:.3f} m'.format(d5), abs(d5 - 29.98) < 5e-3),
            ('d_max 16.67 MHz', '{:.3f} m'.format(d16),
             abs(d16 - 8.99) < 5e-3)]


def check_calibration(config, rng, n_cases, tol=1e-9):
    """Round trips of ``n_cases`` random inputs each."""

    ms = config.chain.ms if config is not None else OpticsChain().ms

    alpha = rng.uniform(1e-3, np.radians(85), n_cases)
    theta_ms = rng.uniform(0, 2 * np.pi, n_cases)
    back = spherical_to_ms(*ms_to_spherical(alpha, theta_ms))
    sph_err = max(np.max(np.abs(back.alpha - alpha)),
                  np.max(_angle_diff(back.theta_ms, theta_ms)))

    r = rng.uniform(1e-3, 5., n_cases)
    r_back, t_back = voltages_to_polar(*polar_to_voltages(r, theta_ms))
    volt_err = max(np.max(np.abs(r_back - r)),
                   np.max(_angle_diff(t_back, theta_ms)))

    impact_r = ms.r_max * rng.uniform(1e-3, 0.95, n_cases)
    inc_theta = rng.uniform(-1, 1, n_cases) * np.radians(1)
    inc_phi = rng.uniform(-1, 1, n_cases) * np.radians(1)
    theta_t, phi_t = deflect(impact_r, theta_ms, inc_theta, inc_phi, ms,
                             strict=False)
    ok = np.isfinite(theta_t)
    r_ms, t_ms = undeflect(theta_t[ok], phi_t[ok], inc_theta[ok],
                           inc_phi[ok], ms)
    ms_err = max(np.max(np.abs(r_ms - impact_r[ok])) / ms.r_max,
                 np.max(_angle_diff(t_ms, theta_ms[ok])))

    return [('spherical/MS', '{:.2e} rad'.format(sph_err), sph_err < tol),
            ('voltages/polar', '{:.2e}'.format(volt_err), volt_err < tol),
            ('deflect/undeflect', '{:.2e} ({} cases)'.format(ms_err,
                                                             ok.sum()),
             ms_err < tol and ok.sum() == n_cases)]


def check_direction(config, rng, n_cases, max_alpha=60., tol=0.5):
    """Directions drawn uniformly in the ``+/- max_alpha`` degree box of scan
    angles, with voltages from a minimax cubic fitted one degree past
    ``max_alpha``.

    The corners of the box lie more than ``max_alpha`` off axis, outside the
    cone any cubic can reach within ``tol``: they are counted but not
    checked. Inside the cone, a direction the maps cannot reach is a
    failure.
    """

    base = config.chain if config is not None else OpticsChain()
    chain = OpticsChain(base.aod, base.ms, telecentric=True,
                        spot_diameter=base.spot_diameter)
    curve = ideal_curve(chain.aod, max_angle=max_alpha + 1., n_samples=201,
                        minimax=True)
    maps = build_maps(curve, grid_step=0.25, span=max_alpha + 1.)

    theta = rng.uniform(-max_alpha, max_alpha, n_cases)
    phi = rng.uniform(-max_alpha, max_alpha, n_cases)
    alpha = np.degrees(spherical_to_ms(np.radians(theta),
                                       np.radians(phi)).alpha)
    inside = alpha <= max_alpha
    theta, phi = theta[inside], phi[inside]

    v_x, v_y = maps.lookup(theta, phi)
    _, order1 = split_orders(v_x, v_y, chain, strict=False)
    got_theta = np.degrees(order1.direction_theta)
    got_phi = np.degrees(order1.direction_phi)
    reached = np.isfinite(got_theta) & np.isfinite(got_phi)

    worst = (angular_error(got_theta, got_phi, theta, phi, verbose=False)
             if reached.any() else np.inf)
    return [('pointing error', '{:.3f} deg max over {} directions, {} '
             'unreachable'.format(worst, len(theta), (~reached).sum()),
             bool(reached.all() and worst < tol)),
            ('beyond {:g} deg'.format(max_alpha),
             '{} of {} directions'.format(n_cases - len(theta), n_cases),
             True)]


def check_antisymmetry(config, rng, n_cases):

    if config is None:
        maps = build_maps(ideal_curve())
    else:
        maps = config.maps()
    ok = maps.is_antisymmetric()
    return [('antisymmetry', str(ok), ok)]


def check_transit(config, rng, n_cases):

    aod = config.chain.aod if config is not None else OpticsChain().aod
    limits = config.limits if config is not None else ScanLimits()
    _, f_nominal = transit_limits(aod)
    rows = [('nominal rate', '{:.1f} kHz'.format(f_nominal / 1e3),
             216e3 <= f_nominal < 217e3)]

    for axes, f in ((1, limits.cutoff_1d), (2, limits.cutoff_2d)):
        v_y = [0., 1.] if axes == 2 else [0., 0.]
        pattern = ScanPattern([0., 1 / f], [0., 1.], v_y, f, 'lissajous')
        report = check_rate(pattern, limits)
        db = report.attenuation_db
        rows.append(('{} axis cutoff'.format(axes),
                     '{:.3f} dB at {:.1f} MHz'.format(db, f / 1e6),
                     abs(db + 3.0103) < 0.01))
    return rows


def check_loss(config, rng, n_cases):

    chain = config.chain if config is not None else OpticsChain()
    one = -10 * np.log10(power_budget(1, 0., chain.aod, chain.ms, axes=1))
    two = -10 * np.log10(power_budget(1, 0., chain.aod, chain.ms, axes=2))
    total = sum(float(v) for v in loss_breakdown(0., chain.aod,
                                                 chain.ms).values())
    return [('one axis loss', '{:.2f} dB'.format(one), abs(one - 4) <= 0.5),
            ('second axis', '+{:.2f} dB'.format(two - one),
             abs(two - one - 1.5) <= 0.2),
            ('power balance', '{:.6f}'.format(total), abs(total - 1) < 1e-9)]


def check_kinematics(config, rng, n_cases):

    result = detectability(1234 / 3.6, 15., 120., 980e-6)
    return [('crossing time', '{:.1f} ms'.format(result.crossing_time * 1e3),
             abs(result.crossing_time - 74e-3) <= 0.03 * 74e-3),
            ('events', str(result.n_events), abs(result.n_events - 76) <= 2)]


def random_scene(rng, center, fov, max_depth=10.):
    """A tilted background plane with one to four spheres, disks and boxes
    in front of it, placed along random directions of the ``fov`` (degrees)
    around ``center``.

    The background crosses the optical axis between 0.6 and 0.9
    ``max_depth``, the objects lie between 0.15 and 0.55 ``max_depth``.
    """

    tilt = np.radians(rng.uniform(0, 20))
    azimuth = rng.uniform(0, 2 * np.pi)
    normal = (np.sin(tilt) * np.cos(azimuth), np.sin(tilt) * np.sin(azimuth),
              -np.cos(tilt))
    objects = [Plane('background',
                     position=(0., 0., rng.uniform(0.6, 0.9) * max_depth),
                     normal=normal, reflectivity=rng.uniform(0.3, 0.9))]

    for k in range(rng.randint(1, 5)):
        theta = center[0] + rng.uniform(-0.5, 0.5) * fov[0]
        phi = center[1] + rng.uniform(-0.5, 0.5) * fov[1]
        distance = rng.uniform(0.15, 0.55) * max_depth
        position = distance * direction_from_angles(np.radians(theta),
                                                    np.radians(phi))
        size = rng.uniform(0.05, 0.3)
        kwargs = {'reflectivity': rng.uniform(0.2, 0.9)}
        kind = rng.randint(3)
        if kind == 0:
            obj = Sphere('sphere{}'.format(k), position, radius=size,
                         **kwargs)
        elif kind == 1:
            facing = (rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), -1.)
            obj = Disk('disk{}'.format(k), position, normal=facing,
                       radius=size, **kwargs)
        else:
            obj = Box('box{}'.format(k), position,
                      size=rng.uniform(0.5, 1., 3) * size, **kwargs)
        objects.append(obj)

    return Scene(objects)


def check_depth(config, rng, n_cases, n_scenes=100, tol=0.05):
    """Noiseless ranging of ``n_scenes`` random scenes (see
    :func:`random_scene`), each with its own raster, without interpolation.

    Rasters stay at least 4 degrees off axis so that the blocked detector
    only sees the first order, and every target lies well inside d_max.
    """

    chain = OpticsChain()
    laser = LaserSpec(f_rep=5e6, pulse_energy_scale=50.)
    detector = DetectorSpec(noise_sigma=0., na_mode='blocked', half_angle=2.)
    maps = build_maps(ideal_curve(chain.aod, max_angle=25.), grid_step=0.1,
                      span=20.)

    depths, truths = [], []
    for _ in range(n_scenes):
        center = (rng.choice([-1., 1.]) * rng.uniform(8, 10),
                  rng.uniform(-3, 3))
        fov = (rng.uniform(4, 8), rng.uniform(2, 6))
        grid = (rng.randint(5, 21), rng.randint(2, 9))
        pattern = raster(grid, fov, laser.f_rep, maps, center=center)
        scene = random_scene(rng, center, fov)

        record, = synthesize(pattern, scene, chain, laser, [detector],
                             random_state=rng)
        tofs = extract_tof(fold(record), threshold_k=6., interpolate=False)
        depths.append(SPEED_OF_LIGHT * tofs.tof / 2)
        truths.append(ground_truth(pattern, scene, chain, laser, detector))

    depth, truth = np.concatenate(depths), np.concatenate(truths)
    worst = max_error(depth, truth, verbose=False)
    misses = miss_rate(depth, truth)
    alarms = false_alarm_rate(depth, truth)
    return [('depth error', '{:.1f} mm max, {:.1f} mm rms over {} shots in '
             '{} scenes'.format(worst * 1e3,
                                rmse(depth, truth, verbose=False) * 1e3,
                                len(depth), n_scenes),
             worst <= tol),
            ('depth misses', '{:.2%} missed, {:.2%} false alarms'.format(
                misses, alarms), misses == 0 and alarms == 0)]


SUITES = {
    'range': check_range,
    'calibration': check_calibration,
    'direction': check_direction,
    'antisymmetry': check_antisymmetry,
    'transit': check_transit,
    'loss': check_loss,
    'kinematics': check_kinematics,
    'depth': check_depth,
}


def run_verify(config=None, suites=None, n_cases=100000, random_state=0,
               verbose=True):
    """Run verification suites.

    Args:
        config(:obj:`RunConfig <metalidar.config.RunConfig>`): Optional run
            whose optics, limits and maps are checked. Default is ``None``:
            default components.
        suites(list of str): Suites to run. Default is all of them.
        n_cases(int): Number of random cases of the round trip and pointing
            suites. Default is ``100000``.
        random_state(int, RandomState instance or None): Generator of the
            random cases. Default is ``0``.
        verbose(bool): Whether to print a summary. Default is ``True``.

    Returns:
        The list of ``(suite, name, value, ok)`` rows.

    Raises:
        AcceptanceError: If a check fails.
        ConfigError: If a suite is unknown.
    """

    names = list(suites) if suites else sorted(SUITES)
    for name in names:
        if name not in SUITES:
            raise ConfigError('Unknown suite ' + str(name) + '. Accepted '
                              'values are ' + ', '.join(sorted(SUITES)) + '.')
    rng = get_rng(random_state)

    rows = []
    for name in names:
        with stage(name, config):
            for check, value, ok in SUITES[name](config, rng, n_cases):
                rows.append((name, check, value, bool(ok)))

    if verbose:
        print_summary('Verification', [
            (check, value, 'OK' if ok else 'FAIL')
            for _, check, value, ok in rows])

    failed = ['{}: {} = {}'.format(s, c, v) for s, c, v, ok in rows if not ok]
    if failed:
        raise AcceptanceError('{} check(s) failed: {}'.format(
            len(failed), '; '.join(failed)))
    return rows
