"""
The :mod:`dump <metalidar.dump>` module reads and writes every file format
of the package.

Waveform binaries (``.mlwf``) are little-endian: a 56 byte header followed
by ``n_samples`` float32 samples. ::

    offset  size  type       field
    0       4     char[4]    magic, b'MLWF'
    4       2     uint16     format version, 1
    6       2                padding
    8       8     char[8]    detector id, NUL padded ASCII
    16      8     float64    sample_rate (Hz)
    24      8     float64    f_rep (Hz)
    32      8     uint64     n_pixels
    40      8     float64    t0 (s)
    48      8     uint64     n_samples
    56                       samples

Frame CSV files start with ``#`` comment lines giving the timestamp, the grid
and the scan rate, followed by a header and one row per pixel. Misses have
empty ``depth_m`` and ``intensity`` fields: ::

    # timestamp = 0.000980
    # grid = 70 70
    # scan_rate = 5000000
    pixel_index,theta_deg,phi_deg,depth_m,intensity
    0,-6.5,-6.5,,
    1,-6.3116,-6.5,1.50012,0.0403

Point clouds are ASCII XYZI: one ``x y z intensity`` line per hit, in meters.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import hashlib
import json
import os
import pickle
import struct

import numpy as np

from .frame import RangingFrame
from .signal import WaveformRecord


WAVEFORM_MAGIC = b'MLWF'
WAVEFORM_VERSION = 1
WAVEFORM_HEADER = struct.Struct('<4sH2x8sddQdQ')

FRAME_COLUMNS = ('pixel_index', 'theta_deg', 'phi_deg', 'depth_m',
                 'intensity')


def dump_waveform(file_name, record):
    """Write a :obj:`WaveformRecord <metalidar.signal.WaveformRecord>`."""

    detector_id = record.detector_id.encode('ascii')
    if len(detector_id) > 8:
        raise ValueError('Detector ids are limited to 8 characters.')
    samples = np.asarray(record.samples, dtype='<f4')
    header = WAVEFORM_HEADER.pack(WAVEFORM_MAGIC, WAVEFORM_VERSION,
                                  detector_id, record.sample_rate,
                                  record.f_rep, record.n_pixels, record.t0,
                                  len(samples))
    with open(file_name, 'wb') as f:
        f.write(header)
        f.write(samples.tobytes())


def load_waveform(file_name):
    """Read a waveform written by :func:`dump_waveform`.

    Raises:
        ValueError: If the file is not a valid waveform binary.
    """

    with open(file_name, 'rb') as f:
        raw = f.read()
    if len(raw) < WAVEFORM_HEADER.size:
        raise ValueError('{} is too short to be a waveform.'.format(
            file_name))
    (magic, version, detector_id, sample_rate, f_rep, n_pixels, t0,
     n_samples) = WAVEFORM_HEADER.unpack_from(raw)
    if magic != WAVEFORM_MAGIC:
        raise ValueError('{} is not a waveform file.'.format(file_name))
    if version != WAVEFORM_VERSION:
        raise ValueError('Unsupported waveform version {}.'.format(version))
    samples = np.frombuffer(raw, dtype='<f4', offset=WAVEFORM_HEADER.size)
    if len(samples) != n_samples:
        raise ValueError('{} holds {} samples, expected {}.'.format(
            file_name, len(samples), n_samples))

    return WaveformRecord(samples.astype(np.float32), sample_rate, f_rep,
                          n_pixels, t0, detector_id.rstrip(b'\0').decode())


def _fmt(value, digits=6):
    return '' if not np.isfinite(value) else '{:.{}g}'.format(value, digits)


def dump_frame_csv(file_name, frame):
    """Write a :obj:`RangingFrame <metalidar.frame.RangingFrame>` as CSV."""

    with open(file_name, 'w') as f:
        f.write('# timestamp = {!r}\n'.format(frame.timestamp))
        if frame.grid is not None:
            f.write('# grid = {} {}\n'.format(*frame.grid))
        if frame.scan_rate is not None:
            f.write('# scan_rate = {!r}\n'.format(frame.scan_rate))
        f.write(','.join(FRAME_COLUMNS) + '\n')
        for i in range(frame.n_pixels):
            f.write('{},{},{},{},{}\n'.format(
                i, _fmt(frame.theta[i], 10), _fmt(frame.phi[i], 10),
                _fmt(frame.depth[i], 8), _fmt(frame.intensity[i])))


def load_frame_csv(file_name):
    """Read a frame written by :func:`dump_frame_csv`. Pixel times are
    rebuilt from the timestamp and the scan rate."""

    meta = {}
    rows = []
    with open(file_name) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            if line.startswith('#'):
                key, _, value = line[1:].partition('=')
                meta[key.strip()] = value.strip()
            elif line.startswith(FRAME_COLUMNS[0]):
                continue
            else:
                rows.append([float(v) if v else np.nan
                             for v in line.split(',')])

    values = np.array(rows, dtype=float).reshape(-1, len(FRAME_COLUMNS))
    timestamp = float(meta.get('timestamp', 0.))
    grid = (tuple(int(n) for n in meta['grid'].split())
            if 'grid' in meta else None)
    scan_rate = float(meta['scan_rate']) if 'scan_rate' in meta else None
    t_pixels = None
    if scan_rate is not None:
        t_pixels = timestamp + values[:, 0] / scan_rate

    return RangingFrame(values[:, 1], values[:, 2], values[:, 3],
                        values[:, 4], timestamp, grid, t_pixels, scan_rate)


def dump_point_cloud(file_name, frame):
    """Write the hits of a frame as ASCII XYZI."""

    xyz, intensity = frame.to_cartesian()
    with open(file_name, 'w') as f:
        f.write('# x y z intensity\n')
        for (x, y, z), i in zip(xyz, intensity):
            f.write('{:.6f} {:.6f} {:.6f} {:.6g}\n'.format(x, y, z, i))


def load_point_cloud(file_name):
    """Read an XYZI file. Returns an array of shape ``(n, 4)``."""
    return np.loadtxt(file_name, comments='#', ndmin=2)


def dump_pattern(file_name, pattern):
    """Write a scan pattern as a whitespace separated table."""

    theta = pattern.theta if pattern.theta is not None else np.full(
        pattern.n_samples, np.nan)
    phi = pattern.phi if pattern.phi is not None else np.full(
        pattern.n_samples, np.nan)
    header = 'kind = {}, scan_rate = {!r}, grid = {}\nt v_x v_y theta phi ' \
             'dwell'.format(pattern.kind, pattern.scan_rate, pattern.grid)
    table = np.column_stack((pattern.t, pattern.v_x, pattern.v_y, theta, phi,
                             pattern.dwell))
    np.savetxt(file_name, table, fmt='%.10g', header=header)


def dump_curve(file_name, curve, n_points=181):
    """Write a calibration curve as a ``voltage angle_deg`` table. The
    header holds the polynomial coefficients."""

    v = np.linspace(curve.valid_voltage[0], curve.valid_voltage[1], n_points)
    header = ('center = {!r}, residual_rms = {!r}\ncoefficients = {}\n'
              'voltage angle_deg').format(
                  curve.center, curve.residual_rms,
                  ' '.join(repr(float(c)) for c in curve.coefficients))
    np.savetxt(file_name, np.column_stack((v, curve.evaluate(v))),
               fmt='%.10g', header=header)


def dump_maps(prefix, maps):
    """Write the voltage maps as two CSV grids, ``<prefix>_vx.csv`` and
    ``<prefix>_vy.csv``. The first row holds the azimuths, the first column
    the elevations (degrees); unreachable cells are empty.

    Returns:
        The two file names.
    """

    names = []
    for suffix, grid in (('vx', maps.v_x), ('vy', maps.v_y)):
        name = '{}_{}.csv'.format(prefix, suffix)
        with open(name, 'w') as f:
            f.write('phi\\theta,' + ','.join(_fmt(t) for t in maps.theta_grid)
                    + '\n')
            for phi, row in zip(maps.phi_grid, grid):
                f.write(_fmt(phi) + ',' + ','.join(_fmt(v, 10) for v in row)
                        + '\n')
        names.append(name)
    return names


def load_maps(prefix, curve):
    """Read maps written by :func:`dump_maps`.

    Args:
        prefix(str): Prefix given to :func:`dump_maps`.
        curve(:obj:`CalibrationCurve
            <metalidar.calibration.CalibrationCurve>`): The curve the maps
            were built from.
    """

    from .calibration import CalibrationMaps

    grids = []
    for suffix in ('vx', 'vy'):
        with open('{}_{}.csv'.format(prefix, suffix)) as f:
            lines = [line.rstrip('\n').split(',') for line in f if line.strip()]
        theta = np.array([float(v) for v in lines[0][1:]])
        phi = np.array([float(line[0]) for line in lines[1:]])
        grids.append(np.array([[float(v) if v else np.nan for v in line[1:]]
                               for line in lines[1:]]))
    step = theta[1] - theta[0] if len(theta) > 1 else 1.
    return CalibrationMaps(theta, phi, grids[0], grids[1], step, curve)


def dump_table(file_name, columns, header):
    """Write columns of numbers as CSV, ready to be plotted.

    Args:
        columns(list of arrays): Columns of equal length.
        header(list of str): Column names.
    """

    with open(file_name, 'w') as f:
        f.write(','.join(header) + '\n')
        for row in zip(*columns):
            f.write(','.join(_fmt(float(v), 10) for v in row) + '\n')


def file_digest(file_name):
    """SHA-256 of a file, as a hex string."""

    sha = hashlib.sha256()
    with open(file_name, 'rb') as f:
        for block in iter(lambda: f.read(1 << 20), b''):
            sha.update(block)
    return sha.hexdigest()


def write_manifest(file_name, outputs, **info):
    """Write a JSON manifest listing output files with their SHA-256.

    Args:
        file_name(str): Path of the manifest.
        outputs(list of str): Paths of the output files.
        info: Any other JSON serializable entry (seed, versions, timings).
    """

    root = os.path.dirname(os.path.abspath(file_name))
    manifest = dict(info)
    manifest['outputs'] = [
        {'path': os.path.relpath(os.path.abspath(p), root),
         'sha256': file_digest(p)} for p in outputs]
    with open(file_name, 'w') as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
    return manifest


def dump(file_name, series=None, config=None, verbose=0):
    """A basic wrapper around Pickle to save a time series and the run
    configuration that produced it.

    What is dumped is a dictionary with keys ``'series'`` and ``'config'``.

    Args:
        file_name(str): The name (with full path) of the file.
        series(:obj:`TimeSeries <metalidar.frame.TimeSeries>`): The frames.
        config(:obj:`RunConfig <metalidar.config.RunConfig>`): The
            configuration.
        verbose(int): Level of verbosity. If ``1``, then a message indicates
            that the dumping went successfully. Default is ``0``.
    """

    dump_obj = {'series': series, 'config': config}
    with open(file_name, 'wb') as f:
        pickle.dump(dump_obj, f, protocol=pickle.HIGHEST_PROTOCOL)

    if verbose:
        print('The dump has been saved as file', file_name)


def load(file_name):
    """Load a file written by :func:`dump`.

    Returns:
        A tuple ``(series, config)``.
    """

    with open(file_name, 'rb') as f:
        dump_obj = pickle.load(f)

    return dump_obj['series'], dump_obj['config']
