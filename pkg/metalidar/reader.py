"""This module contains the Reader class and the ConfigError exception."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import ast
import configparser
from collections import OrderedDict

import numpy as np


class ConfigError(ValueError):
    """Raised when a configuration (or scene) file is invalid, or when the
    parameters it sets are inconsistent with each other."""


class Reader():
    """The Reader class is used to parse configuration and scene files.

    Files are made of sections and ``key = value`` lines: ::

        # comment
        [laser]
        f_rep = 5e6
        pulse_rise_time = 330e-12

        [aod]
        fov_half_angle_deg = 1.0
        voltage_span = (-5, 5)

    Values are Python literals (numbers, strings, tuples, booleans, ``None``).
    Anything else is kept as a plain string. A key ending in ``_deg`` holds a
    value in degrees for a field expressed in radians: the suffix is removed
    and the value converted.

    Args:
        comment_prefixes(tuple): Prefixes of comment lines. Default is
            ``('#', ';')``.
    """

    def __init__(self, comment_prefixes=('#', ';')):

        self.comment_prefixes = tuple(comment_prefixes)

    def _parser(self):

        parser = configparser.ConfigParser(
            interpolation=None, comment_prefixes=self.comment_prefixes,
            inline_comment_prefixes=self.comment_prefixes)
        parser.optionxform = str  # keys are case sensitive
        return parser

    def read(self, file_path):
        """Parse a file.

        Args:
            file_path(str): Path of the file.

        Returns:
            An ordered dict mapping section names to option dicts.

        Raises:
            ConfigError: If the file does not exist or cannot be parsed.
        """

        try:
            with open(file_path) as f:
                text = f.read()
        except (IOError, OSError) as e:
            raise ConfigError('Cannot read {}: {}'.format(file_path, e))

        return self.read_string(text, source=file_path)

    def read_string(self, text, source='<string>'):
        """Parse the content of a file. See :meth:`read`."""

        parser = self._parser()
        try:
            parser.read_string(text, source=source)
        except configparser.Error as e:
            raise ConfigError('Cannot parse {}: {}'.format(source, e))

        return OrderedDict((name, self.parse_section(parser.items(name)))
                           for name in parser.sections())

    def parse_section(self, items):
        """Convert the raw ``(key, value)`` pairs of a section."""

        options = OrderedDict()
        for key, raw in items:
            value = self.parse_value(raw)
            if key.endswith('_deg'):
                key = key[:-len('_deg')]
                value = to_radians(value)
            options[key] = value

        return options

    def parse_value(self, raw):
        """Parse a single value.

        Args:
            raw(str): The value as written in the file.

        Returns:
            The Python literal, or the stripped string if ``raw`` is not a
            literal.
        """

        raw = raw.strip()
        try:
            return ast.literal_eval(raw)
        except (ValueError, SyntaxError):
            return raw


def to_radians(value):

    if isinstance(value, (tuple, list)):
        return tuple(float(np.radians(v)) for v in value)
    return float(np.radians(value))
