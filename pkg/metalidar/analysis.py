"""
The :mod:`analysis <metalidar.analysis>` module holds the measurements made
on reconstructed frames: rotation speed of a spinning target, size of a
feature, beam divergence, and the kinematic reach of a frame rate.

Summary:

.. autosummary::
    :nosignatures:

    track_rotation
    rotation_speed
    wobble_residuals
    feature_size
    depth_clusters
    fit_beam_waist
    divergence_regression
    detectability
    space_time_image
    passage_period
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple
import warnings

import numpy as np
from scipy import ndimage
from scipy.optimize import curve_fit
from scipy.signal import find_peaks

from .utils import direction_from_angles


class AngularTrack:
    """Angular position of a bright feature over a time series.

    Attributes:
        t(numpy array): Frame timestamps, in seconds.
        angle_center(numpy array): Fitted angle in ``[0, 2 pi)``, ``nan`` for
            flagged frames.
        angle_sigma(numpy array): Fitted Gaussian width, in radians.
        fit_quality(numpy array): Coefficient of determination of each fit.
        valid(numpy array of bool): Frames usable for a speed fit.
        t_acquired(numpy array): Intensity weighted time at which the
            feature pixels were acquired.
        frame_period(float): Time between frames.
    """

    def __init__(self, t, angle_center, angle_sigma, fit_quality, valid,
                 t_acquired, frame_period):

        self.t = np.asarray(t, dtype=float)
        self.angle_center = np.asarray(angle_center, dtype=float)
        self.angle_sigma = np.asarray(angle_sigma, dtype=float)
        self.fit_quality = np.asarray(fit_quality, dtype=float)
        self.valid = np.asarray(valid, dtype=bool)
        self.t_acquired = np.asarray(t_acquired, dtype=float)
        self.frame_period = float(frame_period)

    def __len__(self):
        return len(self.t)

    @property
    def frame_rate(self):
        return 1 / self.frame_period


class RotationEstimate(namedtuple('RotationEstimate',
                                  ['hz', 'uncertainty', 'aliased',
                                   'n_frames', 'intercept', 'residuals'])):
    """Result of :func:`rotation_speed`.

    Args:
        hz(float): Rotation speed in turns per second. Positive for
            increasing image angles.
        uncertainty(float): Standard error of ``hz``.
        aliased(bool): Whether the frame rate is below twice the expected
            speed.
        n_frames(int): Number of frames used.
        intercept(float): Unwrapped angle at ``t = 0``, in radians.
        residuals(numpy array): Fit residuals, in radians.
    """

    __slots__ = ()

    def __str__(self):
        s = '{:.3f} Hz +/- {:.3f} Hz over {} frames'.format(
            self.hz, self.uncertainty, self.n_frames)
        if self.aliased:
            s += ' (aliasing risk)'
        return s


class DivergenceFit(namedtuple('DivergenceFit',
                               ['slope', 'intercept', 'r_squared',
                                'divergence_deg', 'negative'])):
    """Result of :func:`divergence_regression`.

    Args:
        slope(float): Growth of the beam diameter per meter.
        intercept(float): Diameter extrapolated at ``z = 0``, in meters.
        r_squared(float): Coefficient of determination.
        divergence_deg(float): Full-angle divergence ``2 atan(slope / 2)``, in
            degrees.
        negative(bool): Whether the fitted slope is negative, which no
            physical beam produces.
    """

    __slots__ = ()


class Detectability(namedtuple('Detectability',
                               ['chord', 'crossing_time', 'n_events',
                                'max_speed'])):
    """Result of :func:`detectability`. Distances in meters, times in
    seconds, speeds in m/s."""

    __slots__ = ()


def _gaussian(x, amplitude, mu, sigma, offset):
    return amplitude * np.exp(-0.5 * ((x - mu) / sigma) ** 2) + offset


def _fit_angular_profile(profile, min_quality):
    """Fit a Gaussian plus offset to a circular profile.

    Returns:
        A tuple ``(center, sigma, quality)``; ``center`` is ``nan`` when the
        fit fails.
    """

    n_bins = len(profile)
    width = 2 * np.pi / n_bins
    if not np.all(np.isfinite(profile)) or np.ptp(profile) <= 0:
        return np.nan, np.nan, 0.

    # Put the maximum in the middle so the peak does not straddle 0.
    shift = n_bins // 2 - int(np.argmax(profile))
    rolled = np.roll(profile, shift)
    x = (np.arange(n_bins) + 0.5) * width
    p0 = (np.ptp(rolled), x[n_bins // 2], 3 * width, np.median(rolled))
    try:
        popt, _ = curve_fit(_gaussian, x, rolled, p0=p0, maxfev=2000)
    except (RuntimeError, ValueError):
        return np.nan, np.nan, 0.

    fitted = _gaussian(x, *popt)
    ss_res = np.sum((rolled - fitted) ** 2)
    ss_tot = np.sum((rolled - rolled.mean()) ** 2)
    quality = 1 - ss_res / ss_tot
    if popt[0] <= 0 or quality < min_quality:
        return np.nan, np.nan, quality

    center = np.mod(popt[1] - shift * width, 2 * np.pi)
    return center, abs(popt[2]), quality


def track_rotation(series, center, radius_range=None, depth_window=None,
                   n_bins=180, min_quality=0.3, verbose=False):
    """Track the angular position of the brightest feature around a center.

    For every frame, the intensity of the pixels is summed over radius into
    an angular profile about ``center``, normalized, and fitted with a
    Gaussian on the circle.

    Args:
        series(:obj:`TimeSeries <metalidar.frame.TimeSeries>`): Raster
            frames.
        center(tuple): ``(column, row)`` of the rotation center, in pixels.
        radius_range(tuple): ``(min, max)`` distance to the center in pixels.
            Default is ``None``: all pixels.
        depth_window(tuple): ``(min, max)`` depth in meters. Default is
            ``None``: all hits.
        n_bins(int): Number of angular bins. Default is ``180``.
        min_quality(float): Minimal coefficient of determination of a valid
            fit. Default is ``0.3``.
        verbose(bool): Whether to print a line per flagged frame. Default is
            ``False``.

    Returns:
        An :obj:`AngularTrack`. Frames with a flat profile or a failed fit are
        flagged as invalid.
    """

    cx, cy = center
    width = 2 * np.pi / n_bins
    t, centers, sigmas, qualities, t_acq = [], [], [], [], []

    for k, frame in enumerate(series):
        if frame.grid is None:
            raise ValueError('Rotation tracking needs raster frames.')
        n_x = frame.grid[0]
        index = np.arange(frame.n_pixels)
        col, row = index % n_x, index // n_x
        radius = np.hypot(col - cx, row - cy)
        psi = np.mod(np.arctan2(row - cy, col - cx), 2 * np.pi)

        keep = frame.hit & (radius > 0)
        if radius_range is not None:
            keep &= (radius >= radius_range[0]) & (radius <= radius_range[1])
        if depth_window is not None:
            keep &= ((frame.depth >= depth_window[0]) &
                     (frame.depth <= depth_window[1]))
        weights = np.where(keep, np.nan_to_num(frame.intensity), 0.)
        bins = np.minimum((psi / width).astype(int), n_bins - 1)
        profile = np.bincount(bins, weights=weights, minlength=n_bins)
        if profile.max() > 0:
            profile = profile / profile.max()

        mu, sigma, quality = _fit_angular_profile(profile, min_quality)
        if np.isnan(mu):
            t_feature = np.nan
            if verbose:
                print('Frame {}: no trackable feature.'.format(k))
        else:
            gap = np.abs(np.angle(np.exp(1j * (psi - mu))))
            near = keep & (gap <= max(2 * sigma, width))
            w = weights[near]
            t_feature = (np.sum(w * frame.t_pixels[near]) / w.sum()
                         if w.sum() > 0 else frame.timestamp)

        t.append(frame.timestamp)
        centers.append(mu)
        sigmas.append(sigma)
        qualities.append(quality)
        t_acq.append(t_feature)

    centers = np.array(centers)
    return AngularTrack(t, centers, sigmas, qualities, np.isfinite(centers),
                        t_acq, series.frame_period)


def rotation_speed(track, expected_hz=None, min_span=np.pi / 2,
                   max_step=0.75 * np.pi):
    """Rotation speed from an angular track.

    The valid angles are unwrapped (each step is taken on the nearest
    branch) and fitted with a line against the acquisition times of the
    feature, or the frame timestamps when those are unknown.

    The estimate is flagged as aliased when the frame rate is below twice
    ``expected_hz``, or when the largest unwrapped step between two valid
    frames exceeds ``max_step``: such a step is nearly as likely to be taken
    on the other branch.

    Args:
        track(:obj:`AngularTrack`): The track.
        expected_hz(float): Expected speed. Default is ``None``: only the
            steps are checked.
        min_span(float): Minimal angle covered by the track, in radians.
            Default is a quarter of a revolution.
        max_step(float): Largest step between valid frames, in radians,
            before the estimate is flagged. Default is ``0.75 pi``.

    Returns:
        A :obj:`RotationEstimate`.

    Raises:
        ValueError: If fewer than 2 frames are valid or the track does not
            cover ``min_span``.
    """

    valid = track.valid
    if valid.sum() < 2:
        raise ValueError('At least 2 valid frames are needed, got '
                         '{}.'.format(int(valid.sum())))

    angles = np.unwrap(track.angle_center[valid])
    times = np.where(np.isfinite(track.t_acquired), track.t_acquired,
                     track.t)[valid]
    if np.ptp(angles) < min_span:
        raise ValueError('The track covers {:.3f} rad, less than '
                         '{:.3f}.'.format(np.ptp(angles), min_span))

    aliased = False
    if expected_hz is not None and track.frame_rate < 2 * abs(expected_hz):
        aliased = True
        warnings.warn('Frame rate {:.1f} fps is below twice the expected '
                      'speed {:.2f} Hz: the estimate may be '
                      'aliased.'.format(track.frame_rate, expected_hz),
                      UserWarning)
    largest = np.max(np.abs(np.diff(angles)))
    if largest > max_step:
        aliased = True
        warnings.warn('Largest step between frames is {:.3f} rad: the '
                      'estimate may be aliased.'.format(largest),
                      UserWarning)

    if len(angles) > 3:
        (slope, intercept), cov = np.polyfit(times, angles, 1, cov=True)
        uncertainty = np.sqrt(cov[0, 0]) / (2 * np.pi)
    else:
        slope, intercept = np.polyfit(times, angles, 1)
        uncertainty = np.nan
    residuals = angles - (slope * times + intercept)

    return RotationEstimate(slope / (2 * np.pi), uncertainty, aliased,
                            len(angles), intercept, residuals)


def wobble_residuals(track, estimate):
    """Residuals of the linear rotation model as a function of the wheel
    angle. A wobbling wheel shows a systematic pattern.

    Returns:
        A tuple ``(angles, residuals)`` sorted by angle, angles in ``[0, 2
        pi)``.
    """

    angles = np.mod(track.angle_center[track.valid], 2 * np.pi)
    order = np.argsort(angles)
    return angles[order], np.asarray(estimate.residuals)[order]


def _pixel_pitch(frame):
    """Mean angular spacing of adjacent pixels, in radians."""

    n_x, n_y = frame.grid
    pitches = []
    if n_x > 1:
        pitches.append(np.ptp(frame.theta) / (n_x - 1))
    if n_y > 1:
        pitches.append(np.ptp(frame.phi) / (n_y - 1))
    return np.radians(np.mean(pitches))


def feature_size(frame, depth_window=None, threshold=None):
    """Length of the largest bright feature of a frame.

    Pixels within ``depth_window`` and at least as bright as ``threshold``
    are grouped into 8-connected components. The angular extent of the
    largest one along its principal axis, plus one pixel pitch, is converted
    to an arc length at the mean depth of the feature.

    Args:
        frame(:obj:`RangingFrame <metalidar.frame.RangingFrame>`): A raster
            frame.
        depth_window(tuple): ``(min, max)`` depth in meters. Default is
            ``None``: all hits.
        threshold(float): Intensity threshold. Default is half the highest
            intensity inside the window.

    Returns:
        The length in meters, or ``None`` if no pixel qualifies.
    """

    if frame.grid is None:
        raise ValueError('Feature sizes need raster frames.')

    keep = frame.hit.copy()
    if depth_window is not None:
        keep &= ((frame.depth >= depth_window[0]) &
                 (frame.depth <= depth_window[1]))
    if not keep.any():
        return None
    intensity = np.nan_to_num(frame.intensity)
    if threshold is None:
        threshold = intensity[keep].max() / 2
    keep &= intensity >= threshold

    n_x, n_y = frame.grid
    labels, n_labels = ndimage.label(keep.reshape(n_y, n_x),
                                     structure=np.ones((3, 3)))
    if n_labels == 0:
        return None
    sizes = np.bincount(labels.ravel())[1:]
    largest = labels.ravel() == np.argmax(sizes) + 1

    d = direction_from_angles(np.radians(frame.theta[largest]),
                              np.radians(frame.phi[largest]))
    if len(d) > 1:
        centered = d - d.mean(axis=0)
        _, _, axes = np.linalg.svd(centered, full_matrices=False)
        chord = np.ptp(centered.dot(axes[0]))
        extent = 2 * np.arcsin(min(chord / 2, 1.))
    else:
        extent = 0.
    extent += _pixel_pitch(frame)

    return float(extent * np.mean(frame.depth[largest]))


def depth_clusters(frame, depth_windows):
    """Centroids of the hits falling in each depth window.

    Args:
        frame(:obj:`RangingFrame <metalidar.frame.RangingFrame>`): A frame.
        depth_windows: Sequence of ``(min, max)`` depths in meters.

    Returns:
        A list with, for each window, a tuple ``(centroid, n_hits)`` where
        ``centroid`` is the mean ``(x, y, z)`` of the hits in meters
        (``None`` if the window is empty).
    """

    xyz, _ = frame.to_cartesian()
    depth = frame.depth[frame.hit]
    clusters = []
    for low, high in depth_windows:
        inside = (depth >= low) & (depth <= high)
        if inside.any():
            clusters.append((xyz[inside].mean(axis=0), int(inside.sum())))
        else:
            clusters.append((None, 0))
    return clusters


def _gaussian_beam(r, peak, w, offset):
    return peak * np.exp(-2 * r ** 2 / w ** 2) + offset


def fit_beam_waist(radii, intensity):
    """Full width at half maximum of a radial beam profile.

    Args:
        radii(array): Distances to the beam center, in meters.
        intensity(array): Intensity at each distance.

    Returns:
        The FWHM diameter in meters.

    Raises:
        ValueError: If the Gaussian fit does not converge.
    """

    r = np.abs(np.asarray(radii, dtype=float))
    y = np.asarray(intensity, dtype=float)
    if len(r) < 4:
        raise ValueError('At least 4 samples are needed.')
    half = r[y >= (y.max() + y.min()) / 2]
    w0 = max(half.max() if half.size else r.max() / 2, 1e-12) * 1.7
    try:
        popt, _ = curve_fit(_gaussian_beam, r, y,
                            p0=(np.ptp(y), w0, y.min()), maxfev=5000)
    except RuntimeError as e:
        raise ValueError('Beam profile fit failed: {}'.format(e))

    return float(abs(popt[1]) * np.sqrt(2 * np.log(2)))


def divergence_regression(profiles):
    """Linear fit of the beam diameter against the distance.

    Args:
        profiles: Sequence of ``(z, diameter)`` pairs in meters.

    Returns:
        A :obj:`DivergenceFit`.

    Raises:
        ValueError: With fewer than 3 profiles or a single distance.
    """

    profiles = np.asarray(profiles, dtype=float).reshape(-1, 2)
    if len(profiles) < 3:
        raise ValueError('At least 3 distances are needed, got '
                         '{}.'.format(len(profiles)))
    z, w = profiles.T
    if np.ptp(z) == 0:
        raise ValueError('All profiles are at the same distance.')

    slope, intercept = np.polyfit(z, w, 1)
    residuals = w - (slope * z + intercept)
    ss_tot = np.sum((w - w.mean()) ** 2)
    ss_res = np.sum(residuals ** 2)
    r_squared = 1 - ss_res / ss_tot if ss_tot > 0 else 1.
    if slope < 0:
        warnings.warn('Negative divergence slope {:.4g}.'.format(slope),
                      UserWarning)

    return DivergenceFit(float(slope), float(intercept), float(r_squared),
                         float(np.degrees(2 * np.arctan(slope / 2))),
                         bool(slope < 0))


def detectability(target_speed, range_, fov, frame_period, min_events=4):
    """How many frames see a target crossing the field of view.

    The target crosses the chord ``2 range sin(fov / 2)`` at
    ``target_speed``; one event is recorded per frame. The fastest target
    still recorded in ``min_events`` frames moves at ``target_speed *
    n_events / min_events``.

    With 1234 km/h, 15 m, 120 degrees and a 980 us frame period this gives a
    75.8 ms crossing, 77 events and about 23.7 Mm/h for 4 events. A figure of
    47 Mm/h is sometimes quoted for the same setup; it corresponds to 2
    events, not 4, and is not what this function returns.

    Args:
        target_speed(float): Speed in m/s.
        range_(float): Distance of the target, in meters.
        fov(float): Field of view in degrees.
        frame_period(float): Time between frames, in seconds.
        min_events(int): Number of events needed to detect the target.
            Default is ``4``.

    Returns:
        A :obj:`Detectability`.
    """

    if min(target_speed, range_, frame_period, min_events) <= 0 or fov < 0:
        raise ValueError('Arguments must be positive.')

    chord = 2 * range_ * np.sin(np.radians(fov) / 2)
    crossing_time = chord / target_speed
    n_events = int(np.floor(crossing_time / frame_period + 1e-9))
    max_speed = target_speed * n_events / min_events

    return Detectability(chord, crossing_time, n_events, max_speed)


def space_time_image(series, depth_window=None, field='intensity'):
    """Stack line frames into an image whose rows are time steps.

    Pixels outside ``depth_window`` or without echo are set to 0.

    Returns:
        A numpy array of shape ``(n_frames, n_pixels)``.
    """

    rows = []
    for frame in series:
        keep = frame.hit.copy()
        if depth_window is not None:
            keep &= ((frame.depth >= depth_window[0]) &
                     (frame.depth <= depth_window[1]))
        values = np.nan_to_num(getattr(frame, field))
        rows.append(np.where(keep, values, 0.))
    return np.array(rows)


def passage_period(image, frame_period):
    """Period at which features pass through a space-time image.

    The activity of each row (sum of its values) is autocorrelated; the
    highest autocorrelation peak gives the period.

    Returns:
        The period in seconds, or ``None`` if the activity is not periodic.
    """

    activity = np.asarray(image, dtype=float).sum(axis=1)
    activity = activity - activity.mean()
    if not np.any(activity):
        return None
    corr = np.correlate(activity, activity, mode='full')[len(activity) - 1:]
    corr /= corr[0]
    peaks, _ = find_peaks(corr, height=0.2)
    if not len(peaks):
        return None

    lag = peaks[np.argmax(corr[peaks])]
    # Refine with a parabola through the peak.
    if 0 < lag < len(corr) - 1:
        y0, y1, y2 = corr[lag - 1:lag + 2]
        denom = y0 - 2 * y1 + y2
        if denom < 0:
            lag = lag + 0.5 * (y0 - y2) / denom
    return float(lag * frame_period)
