"""Helpers shared by the run_* functions: the :class:`AcceptanceError`
exception, error reporting per stage, timings and printed summaries."""

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
from contextlib import contextmanager
import time

from ..reader import ConfigError


class AcceptanceError(ValueError):
    """Raised when a verification check fails."""


@contextmanager
def stage(name, config=None, timings=None):
    """Run a block as the stage ``name`` of a run.

    Domain errors raised inside the block are re-raised as
    :class:`ConfigError <metalidar.reader.ConfigError>` whose message starts
    with the stage name and the config path. If ``timings`` is a dict, the
    duration of the block is stored under ``name``.
    """

    start = time.time()
    try:
        yield
    except AcceptanceError:
        raise
    except (ValueError, TypeError) as e:
        path = getattr(config, 'path', None) or '<no config file>'
        raise ConfigError('{} ({}): {}'.format(name, path, e))
    if timings is not None:
        timings[name] = time.time() - start


def versions():
    """Versions of the package and of its numerical dependencies."""

    import joblib
    import numpy
    import scipy

    from .. import __version__

    return {'metalidar': __version__, 'numpy': numpy.__version__,
            'scipy': scipy.__version__, 'joblib': joblib.__version__}


def print_summary(title, rows):
    """Print a table of ``(name, value, status)`` rows."""

    print(title)
    print()
    row_format = '{:<18}{:<52}{:<8}'
    print(row_format.format('', 'Value', 'Status'))
    for name, value, status in rows:
        print(row_format.format(name, value, status))
    print()
