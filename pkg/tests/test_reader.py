"""Module for testing the Reader class."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import os
import tempfile

import numpy as np
import pytest

from metalidar import ConfigError
from metalidar import Reader


def test_params():
    """Ensure values are parsed as Python literals."""

    text = """
    [laser]
    f_rep = 5e6
    name = 'A'
    telecentric = True
    span = (-5, 5)
    nothing = None
    bare = some words
    """

    sections = Reader().read_string(text)
    assert list(sections) == ['laser']
    laser = sections['laser']
    assert laser['f_rep'] == 5e6
    assert laser['name'] == 'A'
    assert laser['telecentric'] is True
    assert laser['span'] == (-5, 5)
    assert laser['nothing'] is None
    assert laser['bare'] == 'some words'


def test_degrees():
    """Keys ending in _deg are converted to radians and renamed."""

    text = """
    [aod]
    fov_half_angle_deg = 1.0
    tape_deg = (90, 180)
    """

    aod = Reader().read_string(text)['aod']
    assert 'fov_half_angle_deg' not in aod
    assert np.isclose(aod['fov_half_angle'], np.pi / 180)
    assert np.allclose(aod['tape'], (np.pi / 2, np.pi))


def test_comments_and_case():

    text = """
    # a comment
    [Run]
    ; another one
    Name = 'x'  # inline
    """

    sections = Reader().read_string(text)
    assert sections['Run']['Name'] == 'x'


def test_sections_keep_their_order():

    text = '[b]\nx = 1\n[a]\nx = 2\n[c]\nx = 3\n'
    assert list(Reader().read_string(text)) == ['b', 'a', 'c']


def test_parse_errors():

    with pytest.raises(ConfigError):
        Reader().read_string('no section here')
    with pytest.raises(ConfigError):
        Reader().read_string('[a]\nx = 1\n[a]\nx = 2\n')


def test_read_file():

    with tempfile.NamedTemporaryFile('w', suffix='.ini', delete=False) as f:
        f.write('[scene]\nfile = "wall.ini"\n')
    try:
        assert Reader().read(f.name) == {'scene': {'file': 'wall.ini'}}
    finally:
        os.remove(f.name)

    with pytest.raises(ConfigError, match='Cannot read'):
        Reader().read('/does/not/exist.ini')
