"""
The :mod:`metalidar.accuracy` module provides tools for comparing
reconstructed depths and directions with the ground truth.

Available accuracy metrics:

.. autosummary::
    :nosignatures:

    rmse
    mae
    max_error
    angular_error
    miss_rate
    false_alarm_rate
"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import numpy as np

from .utils import direction_from_angles


def _paired(estimated, truth):
    """Differences on the pixels where both values are known."""

    estimated = np.asarray(estimated, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if estimated.shape != truth.shape:
        raise ValueError('Shapes {} and {} differ.'.format(estimated.shape,
                                                           truth.shape))
    both = np.isfinite(estimated) & np.isfinite(truth)
    if not both.any():
        raise ValueError('No pixel has both an estimate and a true value.')
    return estimated[both] - truth[both]


def rmse(estimated, truth, verbose=True):
    """Compute RMSE (Root Mean Squared Error) over the pixels where both
    values are finite.

    Args:
        estimated(array): Estimated values, ``nan`` for misses.
        truth(array): True values, ``nan`` where nothing is visible.
        verbose: If True, will print computed value. Default is ``True``.

    Returns:
        The Root Mean Squared Error.

    Raises:
        ValueError: When no pixel has both values.
    """

    rmse_ = np.sqrt(np.mean(_paired(estimated, truth) ** 2))

    if verbose:
        print('RMSE: {0:1.4f}'.format(rmse_))

    return rmse_


def mae(estimated, truth, verbose=True):
    """Compute MAE (Mean Absolute Error). See :func:`rmse`."""

    mae_ = np.mean(np.abs(_paired(estimated, truth)))

    if verbose:
        print('MAE:  {0:1.4f}'.format(mae_))

    return mae_


def max_error(estimated, truth, verbose=True):
    """Largest absolute error. See :func:`rmse`."""

    max_ = np.max(np.abs(_paired(estimated, truth)))

    if verbose:
        print('Max:  {0:1.4f}'.format(max_))

    return max_


def angular_error(theta, phi, theta_true, phi_true, verbose=True):
    """Largest angle between estimated and true directions.

    Args:
        theta, phi: Estimated scan angles in degrees.
        theta_true, phi_true: True scan angles in degrees.
        verbose: If True, will print computed value. Default is ``True``.

    Returns:
        The angle in degrees.
    """

    d = direction_from_angles(np.radians(theta), np.radians(phi))
    d_true = direction_from_angles(np.radians(theta_true),
                                   np.radians(phi_true))
    cos = np.clip(np.sum(d * d_true, axis=-1), -1, 1)
    err = np.degrees(np.arccos(cos))
    if not np.any(np.isfinite(err)):
        raise ValueError('No valid direction pair.')
    err_ = np.nanmax(err)

    if verbose:
        print('Angular error: {0:1.4f} deg'.format(err_))

    return err_


def miss_rate(estimated, truth):
    """Fraction of visible targets with no estimate."""

    visible = np.isfinite(np.asarray(truth, dtype=float))
    if not visible.any():
        return 0.
    missed = visible & ~np.isfinite(np.asarray(estimated, dtype=float))
    return missed.sum() / visible.sum()


def false_alarm_rate(estimated, truth):
    """Fraction of empty pixels reported as hits."""

    empty = ~np.isfinite(np.asarray(truth, dtype=float))
    if not empty.any():
        return 0.
    alarms = empty & np.isfinite(np.asarray(estimated, dtype=float))
    return alarms.sum() / empty.sum()
