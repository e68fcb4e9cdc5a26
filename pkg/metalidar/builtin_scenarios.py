"""This module contains the registry of the bundled scenarios and the
location of the run outputs."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)

import errno
import os
from collections import namedtuple
from os.path import join

from .reader import ConfigError


DATA_DIR = join(os.path.dirname(os.path.abspath(__file__)), 'data')


def get_output_dir():
    """Return folder where run outputs are written.
    Default folder is ~/.metalidar_runs/, but it can also be set by the
    environment variable ``METALIDAR_OUTPUT_FOLDER``.
    """

    folder = os.environ.get('METALIDAR_OUTPUT_FOLDER',
                            os.path.expanduser('~') + '/.metalidar_runs/')
    try:
        os.makedirs(folder)
    except OSError as e:
        if e.errno != errno.EEXIST:
            # reraise exception if folder does not exist and creation failed.
            raise

    return folder


# a builtin scenario has
# - a config file (in the data folder)
# - the name of its scene file
# - a one line description
BuiltinScenario = namedtuple('BuiltinScenario',
                             ['config', 'scene', 'description'])

BUILTIN_SCENARIOS = {
    'fig2':
        BuiltinScenario(
            config='fig2.ini',
            scene='fig2_three_objects',
            description='1D line scan of three objects at 1.5, 2.4 and 3.5 m'
        ),
    'fig3':
        BuiltinScenario(
            config='fig3.ini',
            scene='fig3_three_actors',
            description='150x150 deg raster of three actors at 1.2, 2.7 and '
                        '4.9 m'
        ),
    'fig4':
        BuiltinScenario(
            config='fig4.ini',
            scene='fig4_dual_zone',
            description='dual zone imaging: chessboard seen by the zeroth '
                        'order, wide scene by the first'
        ),
    'fig5':
        BuiltinScenario(
            config='fig5.ini',
            scene='fig5_chopper',
            description='chopper at 92.71 Hz, 70x70 pixels at 5 MHz, 1020 fps'
        ),
    'fig5_row1':
        BuiltinScenario(
            config='fig5_row1.ini',
            scene='fig5_chopper',
            description='chopper at 92.71 Hz, 150x150 pixels at 16.67 MHz, '
                        '741 fps'
        ),
    'fig5_row3':
        BuiltinScenario(
            config='fig5_row3.ini',
            scene='fig5_chopper',
            description='chopper at 92.71 Hz, 70x70 pixels at 16.67 MHz, '
                        '3401 fps'
        ),
    'figs10':
        BuiltinScenario(
            config='figs10.ini',
            scene='figs10_line_chopper',
            description='1D line scan of a chopper tape in front of a ribbon'
        ),
}


def _unknown(name):
    return ConfigError('Unknown scenario ' + str(name) + '. Accepted values '
                       'are ' + ', '.join(sorted(BUILTIN_SCENARIOS)) + '.')


def get_builtin_config_path(name):
    """Path of the config file of a bundled scenario."""

    try:
        return join(DATA_DIR, BUILTIN_SCENARIOS[name].config)
    except KeyError:
        raise _unknown(name)


def get_builtin_scene_path(name):
    """Path of a bundled scene file, e.g. ``'fig5_chopper'``."""

    scenes = sorted(set(s.scene for s in BUILTIN_SCENARIOS.values()))
    if name not in scenes:
        raise ConfigError('Unknown scene ' + str(name) + '. Accepted values '
                          'are ' + ', '.join(scenes) + '.')
    return join(DATA_DIR, name + '.ini')
