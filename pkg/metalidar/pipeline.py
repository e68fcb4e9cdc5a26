"""
The :mod:`pipeline <metalidar.pipeline>` module turns detector records into
ranging frames.

The continuous record is folded into a matrix with one row per laser shot,
each row is differentiated, and the leading edge of the first echo is located
at the first derivative peak standing above the noise. Depths follow from the
round trip time and directions from the scan pattern.

Summary:

.. autosummary::
    :nosignatures:

    fold
    extract_tof
    assemble
    frames
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple
import warnings

import numpy as np
from joblib import Parallel
from joblib import delayed

from .frame import RangingFrame
from .frame import TimeSeries
from .signal import samples_per_period
from .signal import shot_indices
from .utils import SPEED_OF_LIGHT


# Scale factor between the median absolute deviation and the standard
# deviation of Gaussian noise.
MAD_TO_SIGMA = 1.4826


class FoldedMatrix:
    """A record folded into one row per laser shot.

    Attributes:
        values(numpy array): Shape ``(M, N)``: M shots of N samples.
        sample_rate(float): Samples per second.
        f_rep(float): Laser repetition rate.
        t0(float): Time of the first shot.
    """

    def __init__(self, values, sample_rate, f_rep, t0=0.):

        self.values = np.asarray(values)
        self.sample_rate = float(sample_rate)
        self.f_rep = float(f_rep)
        self.t0 = float(t0)
        n = samples_per_period(self.sample_rate, self.f_rep)
        if self.values.ndim != 2 or self.values.shape[1] != n:
            raise ValueError('Expected rows of {} samples, got shape '
                             '{}.'.format(n, self.values.shape))

    @property
    def shape(self):
        return self.values.shape

    def flatten(self):
        """The original record samples."""
        return self.values.ravel()


class ToFResult(namedtuple('ToFResult', ['tof', 'intensity', 'edge',
                                         'f_rep'])):
    """Per shot output of :func:`extract_tof`.

    Args:
        tof(numpy array): Round trip time in seconds, ``nan`` on a miss.
        intensity(numpy array): Echo amplitude, ``nan`` on a miss.
        edge(numpy array): Edge position in samples from the start of the
            row, ``nan`` on a miss.
        f_rep(float): Laser repetition rate.
    """

    __slots__ = ()

    def __len__(self):
        return len(self.tof)

    @property
    def hit(self):
        return np.isfinite(self.tof)


def fold(record):
    """Fold a :obj:`WaveformRecord <metalidar.signal.WaveformRecord>` into a
    :obj:`FoldedMatrix`. Row ``i`` holds the samples of shot ``i``; values are
    not modified.

    Raises:
        ValueError: If the record length is not a multiple of the samples per
            period.
    """

    n = samples_per_period(record.sample_rate, record.f_rep)
    samples = np.asarray(record.samples)
    if len(samples) % n:
        raise ValueError('Record length {} is not a multiple of {} samples '
                         'per period.'.format(len(samples), n))
    return FoldedMatrix(samples.reshape(-1, n), record.sample_rate,
                        record.f_rep, getattr(record, 't0', 0.))


def _subsample_offset(d, peak):
    """Offset of the derivative maximum relative to ``peak``, in samples.

    A parabola is fitted on the log of the three samples around the peak
    (exact for a Gaussian shaped derivative). When a neighbour is not
    positive, the centroid of the positive samples is used instead.
    """

    rows = np.arange(len(peak))
    n = d.shape[1]
    y1 = d[rows, peak]
    y0 = np.where(peak > 0, d[rows, np.maximum(peak - 1, 0)], 0.)
    y2 = np.where(peak < n - 1, d[rows, np.minimum(peak + 1, n - 1)], 0.)

    positive = (y0 > 0) & (y2 > 0)
    with np.errstate(divide='ignore', invalid='ignore'):
        l0 = np.log(np.where(positive, y0, 1.))
        l1 = np.log(np.where(positive, y1, 1.))
        l2 = np.log(np.where(positive, y2, 1.))
        denom = l0 - 2 * l1 + l2
        gaussian = np.where(denom < 0, 0.5 * (l0 - l2) / denom, 0.)

        p0, p2 = np.maximum(y0, 0), np.maximum(y2, 0)
        centroid = (p2 - p0) / (p0 + y1 + p2)

    offset = np.where(positive, gaussian, centroid)
    return np.clip(np.nan_to_num(offset), -0.5, 0.5)


def _extract_rows(values, sample_rate, threshold_k, interpolate,
                  intensity_window):

    x = np.asarray(values, dtype=float)
    n_rows, n = x.shape
    d = np.diff(x, axis=1)

    med = np.median(d, axis=1, keepdims=True)
    mad = MAD_TO_SIGMA * np.median(np.abs(d - med), axis=1, keepdims=True)
    floor = 1e-6 * np.max(np.abs(x), axis=1, keepdims=True)
    threshold = np.maximum(threshold_k * mad, floor)

    above = d > threshold
    found = above.any(axis=1)
    first = np.argmax(above, axis=1)

    # Peak of the contiguous run of samples above threshold starting at the
    # first crossing: later echoes cannot win.
    cols = np.arange(n - 1)
    after = cols >= first[:, np.newaxis]
    broken = np.cumsum(after & ~above, axis=1) > 0
    run = after & ~broken
    peak = np.argmax(np.where(run, d, -np.inf), axis=1)

    edge = peak + 0.5
    if interpolate:
        edge = edge + _subsample_offset(d, peak)

    start = peak + 1
    window = n if intensity_window is None else int(intensity_window)
    stop = np.minimum(start + window, n)
    in_window = ((np.arange(n) >= start[:, np.newaxis]) &
                 (np.arange(n) < stop[:, np.newaxis]))
    intensity = np.max(np.where(in_window, x, -np.inf), axis=1)

    tof = np.where(found, edge / sample_rate, np.nan)
    return (tof, np.where(found, intensity, np.nan),
            np.where(found, edge, np.nan))


def extract_tof(matrix, threshold_k=5., interpolate=True,
                intensity_window=None, chunk_size=8192, n_jobs=1):
    """Locate the first echo of every row of a folded matrix.

    For each row the first difference is computed; the noise level is the
    scaled median absolute deviation of the differences. The edge is the
    highest difference of the first run of differences exceeding
    ``threshold_k`` times the noise level. Rows with no such run are misses.

    Args:
        matrix(:obj:`FoldedMatrix`): The folded record.
        threshold_k(float): Detection threshold in noise standard deviations.
            Default is ``5``.
        interpolate(bool): Whether to refine the edge below one sample.
            Without it, edges lie on a lattice of one sample. Default is
            ``True``.
        intensity_window(int): Number of samples after the edge searched for
            the echo amplitude. Default is ``None``: up to the end of the row.
        chunk_size(int): Rows processed at once. Default is ``8192``.
        n_jobs(int): The maximum number of chunks processed in parallel.
            Default is ``1``.

    Returns:
        A :obj:`ToFResult`.
    """

    if threshold_k <= 0:
        raise ValueError('threshold_k must be positive, got '
                         '{}.'.format(threshold_k))
    values = matrix.values
    starts = range(0, max(len(values), 1), chunk_size)
    delayed_list = (delayed(_extract_rows)(values[s:s + chunk_size],
                                           matrix.sample_rate, threshold_k,
                                           interpolate, intensity_window)
                    for s in starts)
    out = Parallel(n_jobs=n_jobs)(delayed_list)

    tof, intensity, edge = (np.concatenate(parts) for parts in zip(*out))
    return ToFResult(tof, intensity, edge, matrix.f_rep)


def assemble(tofs, pattern, maps=None, chain=None, timestamp=0., order=1):
    """Build a ranging frame from the ToF of one pass of a pattern.

    Args:
        tofs(:obj:`ToFResult`): One entry per shot.
        pattern(:obj:`ScanPattern <metalidar.scanpattern.ScanPattern>`): The
            pattern the shots were fired along.
        maps(:obj:`CalibrationMaps
            <metalidar.calibration.CalibrationMaps>`): Used to recover the
            directions of patterns without commanded angles.
        chain(:obj:`OpticsChain <metalidar.optics.OpticsChain>`): Required
            for ``order=0``, whose direction is the AOD angle.
        timestamp(float): Time of the first shot, in seconds.
        order(int): Diffraction order the frame is assembled for. Default is
            ``1``.

    Returns:
        A :obj:`RangingFrame <metalidar.frame.RangingFrame>`. Masked
        pattern samples are misses.

    Raises:
        ValueError: If the number of shots does not match the pattern.
    """

    f_rep = tofs.f_rep
    if pattern.kind == 'random_access':
        index = shot_indices(pattern, f_rep)
    else:
        index = np.arange(pattern.n_samples)
    if len(tofs) != len(index):
        raise ValueError('Got {} shots for a pattern of {} shots.'.format(
            len(tofs), len(index)))

    v_x, v_y = pattern.v_x[index], pattern.v_y[index]
    if order == 0:
        if chain is None:
            raise ValueError('The optics chain is needed for order 0.')
        theta, phi = (np.degrees(a) for a in chain.aod_angles(v_x, v_y))
    elif order == 1:
        if pattern.theta is not None:
            theta, phi = pattern.theta[index], pattern.phi[index]
        elif maps is not None:
            theta, phi = maps.voltages_to_angles(v_x, v_y)
        else:
            raise ValueError('The pattern has no commanded angles: maps are '
                             'needed.')
    else:
        raise ValueError('order must be 0 or 1, got {}.'.format(order))

    masked = pattern.masked[index]
    depth = np.where(masked, np.nan, SPEED_OF_LIGHT * tofs.tof / 2)
    intensity = np.where(masked, np.nan, tofs.intensity)
    grid = pattern.grid if pattern.kind != 'random_access' else None
    t_pixels = timestamp + np.arange(len(index)) / f_rep

    return RangingFrame(theta, phi, depth, intensity, timestamp, grid,
                        t_pixels, f_rep)


def frames(records, pattern, maps=None, chain=None, threshold_k=5.,
           interpolate=True, order=1, n_jobs=1):
    """Cut records into consecutive passes of a pattern and assemble a frame
    for each.

    Args:
        records: A :obj:`WaveformRecord <metalidar.signal.WaveformRecord>` or
            a list of consecutive ones.
        pattern(:obj:`ScanPattern <metalidar.scanpattern.ScanPattern>`): The
            pattern repeated over the records.
        maps, chain, order: See :func:`assemble`.
        threshold_k, interpolate, n_jobs: See :func:`extract_tof`.

    Returns:
        A :obj:`TimeSeries <metalidar.frame.TimeSeries>`. A trailing partial
        frame is dropped with a warning.
    """

    if not isinstance(records, (list, tuple)):
        records = [records]

    frame_list = []
    frame_period = None
    for record in records:
        frame_shots = len(shot_indices(pattern, record.f_rep))
        frame_period = frame_shots / record.f_rep
        n_frames, rest = divmod(record.n_pixels, frame_shots)
        if rest:
            warnings.warn('Dropping a partial frame of {} shots out of '
                          '{}.'.format(rest, frame_shots), UserWarning)

        tofs = extract_tof(fold(record), threshold_k, interpolate,
                           n_jobs=n_jobs)
        for k in range(n_frames):
            part = slice(k * frame_shots, (k + 1) * frame_shots)
            chunk = ToFResult(tofs.tof[part], tofs.intensity[part],
                              tofs.edge[part], tofs.f_rep)
            frame_list.append(assemble(chunk, pattern, maps, chain,
                                       record.t0 + k * frame_period, order))

    if frame_period is None:
        raise ValueError('No records given.')
    return TimeSeries(frame_list, frame_period)
