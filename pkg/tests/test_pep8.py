"""
Module for testing if the code is PEP8 compliant.
"""

from flake8.api import legacy as flake8


def test_regular_files():

    style_guide = flake8.get_style_guide(
        filename=['*.py'],
        exclude=['doc', 'examples', '.eggs', '*.egg', 'build'],
        select=['E', 'W', 'F'],
        max_line_length=79
    )

    report = style_guide.check_files(['metalidar', 'tests', 'setup.py'])

    assert report.get_statistics('F') == []
    # assert report.get_statistics('E') == []
    # assert report.get_statistics('W') == []
