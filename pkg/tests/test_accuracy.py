"""Module for testing accuracy evaluation measures (RMSE, MAE...)"""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from math import sqrt

import numpy as np
import pytest

from metalidar.accuracy import angular_error
from metalidar.accuracy import false_alarm_rate
from metalidar.accuracy import mae
from metalidar.accuracy import max_error
from metalidar.accuracy import miss_rate
from metalidar.accuracy import rmse


def test_mae():
    """Tests for the MAE function."""

    assert mae([0, 1, 2, 100], [0, 1, 2, 100]) == 0
    assert mae([0, 2], [0, 0]) == abs(0 - 2) / 2
    assert mae([0, 4], [2, 3]) == (abs(2 - 0) + abs(3 - 4)) / 2

    with pytest.raises(ValueError):
        mae([], [])


def test_rmse():
    """Tests for the RMSE function."""

    assert rmse([0, 1, 2, 100], [0, 1, 2, 100]) == 0
    assert rmse([0, 2], [0, 0]) == sqrt((0 - 2)**2 / 2)
    assert rmse([0, 4], [2, 3]) == sqrt(((2 - 0)**2 + (3 - 4)**2) / 2)

    with pytest.raises(ValueError):
        rmse([1, 2], [1, 2, 3])


def test_misses_are_ignored():
    """Pixels missing on either side do not count."""

    estimated = [1., np.nan, 3., 10.]
    truth = [1.5, 2., 3., np.nan]
    assert mae(estimated, truth) == 0.25
    assert max_error(estimated, truth) == 0.5

    with pytest.raises(ValueError):
        max_error([np.nan], [1.])


def test_angular_error():

    assert np.isclose(angular_error([0., 10.], [0., 0.], [0., 10.],
                                    [0., 0.]), 0, atol=1e-5)
    assert np.isclose(angular_error([0., 10.], [0., 0.], [1., 10.],
                                    [0., 0.]), 1)
    with pytest.raises(ValueError):
        angular_error([np.nan], [0.], [0.], [0.])


def test_detection_rates():

    estimated = [1., np.nan, np.nan, 4.]
    truth = [1., 2., np.nan, np.nan]
    assert miss_rate(estimated, truth) == 0.5
    assert false_alarm_rate(estimated, truth) == 0.5

    assert miss_rate([1.], [np.nan]) == 0
    assert false_alarm_rate([1.], [1.]) == 0
