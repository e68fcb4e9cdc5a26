"""Module for testing the dump module."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import json
import os
import struct
import tempfile

import numpy as np
import pandas as pd
import pytest

from metalidar import dump
from metalidar.calibration import build_maps
from metalidar.calibration import ideal_curve
from metalidar.frame import RangingFrame
from metalidar.frame import TimeSeries
from metalidar.signal import WaveformRecord


def test_waveform_header(tmpdir):
    """The header is 56 bytes of little-endian fields."""

    samples = np.linspace(-1, 1, 1200).astype(np.float32)
    record = WaveformRecord(samples, 3e9, 5e6, 2, t0=0.25, detector_id='B')
    file_name = str(tmpdir.join('b.mlwf'))
    dump.dump_waveform(file_name, record)

    with open(file_name, 'rb') as f:
        raw = f.read()
    assert len(raw) == 56 + 4 * 1200
    assert raw[:4] == b'MLWF'
    assert struct.unpack_from('<H', raw, 4)[0] == 1
    assert raw[8:16] == b'B' + b'\0' * 7
    assert struct.unpack_from('<ddQdQ', raw, 16) == (3e9, 5e6, 2, 0.25, 1200)

    loaded = dump.load_waveform(file_name)
    assert np.array_equal(loaded.samples, samples)
    assert loaded.detector_id == 'B'
    assert loaded.t0 == 0.25
    assert loaded.n_pixels == 2


def test_bad_waveforms(tmpdir):

    record = WaveformRecord(np.zeros(600), 3e9, 5e6, 1,
                            detector_id='too_long_id')
    with pytest.raises(ValueError):
        dump.dump_waveform(str(tmpdir.join('x.mlwf')), record)

    short = str(tmpdir.join('short.mlwf'))
    with open(short, 'wb') as f:
        f.write(b'MLWF')
    with pytest.raises(ValueError, match='too short'):
        dump.load_waveform(short)

    wrong = str(tmpdir.join('wrong.mlwf'))
    with open(wrong, 'wb') as f:
        f.write(b'RIFF' + b'\0' * 60)
    with pytest.raises(ValueError, match='not a waveform'):
        dump.load_waveform(wrong)

    truncated = str(tmpdir.join('truncated.mlwf'))
    dump.dump_waveform(truncated, WaveformRecord(np.zeros(600), 3e9, 5e6, 1))
    with open(truncated, 'rb+') as f:
        f.truncate(56 + 4 * 500)
    with pytest.raises(ValueError, match='expected 600'):
        dump.load_waveform(truncated)


def raster_frame():
    theta = np.array([-1., 0., 1., -1., 0., 1.])
    phi = np.array([-1., -1., -1., 1., 1., 1.])
    depth = np.array([1.5, np.nan, 2.25, 3., 4.125, np.nan])
    intensity = np.array([0.5, np.nan, 0.25, 1., 2., np.nan])
    return RangingFrame(theta, phi, depth, intensity, 9.8e-4, grid=(3, 2),
                        t_pixels=9.8e-4 + np.arange(6) / 5e6, scan_rate=5e6)


def test_frame_csv(tmpdir):

    frame = raster_frame()
    file_name = str(tmpdir.join('frame.csv'))
    dump.dump_frame_csv(file_name, frame)

    with open(file_name) as f:
        head = [next(f) for _ in range(4)]
    assert head[0].startswith('# timestamp = ')
    assert head[1] == '# grid = 3 2\n'
    assert head[3] == 'pixel_index,theta_deg,phi_deg,depth_m,intensity\n'

    # any CSV reader understands it; misses are empty fields
    table = pd.read_csv(file_name, comment='#')
    assert list(table.columns) == ['pixel_index', 'theta_deg', 'phi_deg',
                                   'depth_m', 'intensity']
    assert table['depth_m'].isna().sum() == 2
    assert list(table['pixel_index']) == list(range(6))

    loaded = dump.load_frame_csv(file_name)
    assert loaded.grid == (3, 2)
    assert loaded.timestamp == frame.timestamp
    assert loaded.scan_rate == 5e6
    assert np.allclose(loaded.depth, frame.depth, equal_nan=True)
    assert np.allclose(loaded.t_pixels, frame.t_pixels)


def test_frame_csv_without_grid(tmpdir):

    frame = RangingFrame([1., 2.], [0., 0.], [1., np.nan], [1., np.nan])
    file_name = str(tmpdir.join('frame.csv'))
    dump.dump_frame_csv(file_name, frame)
    loaded = dump.load_frame_csv(file_name)
    assert loaded.grid is None
    assert loaded.scan_rate is None
    assert loaded.n_hits == 1


def test_point_cloud(tmpdir):

    frame = raster_frame()
    file_name = str(tmpdir.join('cloud.xyz'))
    dump.dump_point_cloud(file_name, frame)
    cloud = dump.load_point_cloud(file_name)
    assert cloud.shape == (4, 4)
    xyz, intensity = frame.to_cartesian()
    assert np.allclose(cloud[:, :3], xyz, atol=1e-6)
    assert np.allclose(np.linalg.norm(cloud[:, :3], axis=1),
                       frame.depth[frame.hit], atol=1e-5)
    assert np.allclose(cloud[:, 3], intensity)


def test_maps(tmpdir):

    curve = ideal_curve(max_angle=30.)
    maps = build_maps(curve, grid_step=1., span=40.)
    prefix = str(tmpdir.join('maps'))
    names = dump.dump_maps(prefix, maps)
    assert [os.path.basename(n) for n in names] == ['maps_vx.csv',
                                                    'maps_vy.csv']

    loaded = dump.load_maps(prefix, curve)
    assert np.array_equal(loaded.valid, maps.valid)
    assert np.allclose(loaded.v_x, maps.v_x, equal_nan=True, atol=1e-9)
    assert loaded.grid_step == 1.
    assert np.allclose(loaded.lookup(12., -7.), maps.lookup(12., -7.),
                       atol=1e-8)


def test_tables(tmpdir):

    curve_file = str(tmpdir.join('curve.txt'))
    dump.dump_curve(curve_file, ideal_curve(max_angle=30.), n_points=11)
    table = np.loadtxt(curve_file)
    assert table.shape == (11, 2)
    with open(curve_file) as f:
        assert f.readline().startswith('# center = 0')

    csv_file = str(tmpdir.join('sweep.csv'))
    dump.dump_table(csv_file, [[1., 2.], [3., np.nan]], ['a', 'b'])
    sweep = pd.read_csv(csv_file)
    assert list(sweep.columns) == ['a', 'b']
    assert np.isnan(sweep['b'][1])


def test_manifest(tmpdir):

    out = str(tmpdir.join('a.txt'))
    with open(out, 'w') as f:
        f.write('abc')
    manifest_file = str(tmpdir.join('manifest.json'))
    manifest = dump.write_manifest(manifest_file, [out], seed=0)

    expected = ('ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f2001'
                '5ad')
    assert dump.file_digest(out) == expected
    with open(manifest_file) as f:
        assert json.load(f) == manifest
    assert manifest['seed'] == 0
    assert manifest['outputs'] == [{'path': 'a.txt', 'sha256': expected}]


def test_dump():
    """Dump a time series and load it back."""

    series = TimeSeries([raster_frame()], 1e-3)
    with tempfile.NamedTemporaryFile() as tmp_file:
        dump.dump(tmp_file.name, series, {'name': 'fig3'})
        loaded, config = dump.load(tmp_file.name)
    assert config == {'name': 'fig3'}
    assert len(loaded) == 1
    assert np.allclose(loaded[0].depth, series[0].depth, equal_nan=True)


def test_dump_nothing():
    """Ensure that by default None objects are dumped."""
    with tempfile.NamedTemporaryFile() as tmp_file:
        dump.dump(tmp_file.name)
        series, config = dump.load(tmp_file.name)
        assert series is None
        assert config is None
