"""
The :mod:`calibrate <metalidar.experiments.calibrate>` module fits the
calibration curve of a run and exports the voltage maps.
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from collections import namedtuple
import os
import warnings

from ..dump import dump_curve
from ..dump import dump_maps
from ..dump import write_manifest
from .stages import AcceptanceError
from .stages import print_summary
from .stages import stage
from .stages import versions


class CalibrationResult(namedtuple('CalibrationResult',
                                   ['curve', 'maps', 'coverage',
                                    'outputs'])):
    """Result of :func:`run_calibrate`.

    Args:
        curve(:obj:`CalibrationCurve
            <metalidar.calibration.CalibrationCurve>`): The fitted curve.
        maps(:obj:`CalibrationMaps
            <metalidar.calibration.CalibrationMaps>`): The voltage maps.
        coverage(tuple): See :meth:`CalibrationMaps.coverage
            <metalidar.calibration.CalibrationMaps.coverage>`.
        outputs(list of str): The files written.
    """

    __slots__ = ()


def run_calibrate(config, verbose=True):
    """Fit the curve of ``config``, build the maps and check them.

    Files are written to ``<out>/calibration/``: ``curve.txt``,
    ``maps_vx.csv``, ``maps_vy.csv``, ``coverage.txt`` and
    ``manifest.json``.

    Raises:
        AcceptanceError: If the curve is not monotonic or the maps are not
            antisymmetric.
    """

    with stage('calibrate', config):
        curve = config.curve()
        if not curve.is_monotonic():
            raise AcceptanceError('The calibration curve is not monotonic.')
        maps = config.maps(curve)

    fraction, max_theta, max_phi = maps.coverage()
    symmetric = maps.is_antisymmetric()
    if fraction < 1:
        warnings.warn('{:.1%} of the map grid is unreachable.'.format(
            1 - fraction), UserWarning)

    folder = os.path.join(config.out, 'calibration')
    if not os.path.isdir(folder):
        os.makedirs(folder)
    curve_file = os.path.join(folder, 'curve.txt')
    coverage_file = os.path.join(folder, 'coverage.txt')
    dump_curve(curve_file, curve)
    outputs = [curve_file] + dump_maps(os.path.join(folder, 'maps'), maps)
    with open(coverage_file, 'w') as f:
        f.write('fraction = {!r}\nmax_theta_deg = {!r}\nmax_phi_deg = {!r}\n'
                'antisymmetric = {}\n'.format(fraction, max_theta, max_phi,
                                               symmetric))
    outputs.append(coverage_file)
    write_manifest(os.path.join(folder, 'manifest.json'), outputs,
                   command='calibrate', config=config.path,
                   residual_rms=curve.residual_rms, versions=versions())

    if verbose:
        print_summary('Calibration of {}'.format(config.name), [
            ('residual rms', '{:.4g} deg'.format(curve.residual_rms), ''),
            ('coverage', '{:.1%}'.format(fraction),
             'OK' if fraction == 1 else 'PARTIAL'),
            ('max theta', '{:.2f} deg'.format(max_theta), ''),
            ('max phi', '{:.2f} deg'.format(max_phi), ''),
            ('antisymmetric', str(symmetric),
             'OK' if symmetric else 'FAIL'),
        ])

    if not symmetric:
        raise AcceptanceError('The voltage maps are not antisymmetric.')

    return CalibrationResult(curve, maps, (fraction, max_theta, max_phi),
                             outputs)
