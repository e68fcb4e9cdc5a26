#!/usr/bin/env python

from __future__ import (absolute_import, division, print_function,
                        unicode_literals)
import argparse
import sys
import warnings

from metalidar.builtin_scenarios import BUILTIN_SCENARIOS
from metalidar.builtin_scenarios import get_output_dir
from metalidar.config import RunConfig
from metalidar.experiments import AcceptanceError
from metalidar.experiments import SUITES
from metalidar.experiments import TASKS
from metalidar.experiments import run_analyze
from metalidar.experiments import run_calibrate
from metalidar.experiments import run_simulate
from metalidar.experiments import run_verify
from metalidar import __version__


class MyParser(argparse.ArgumentParser):
    """A parser which prints the help message when an error occurs. Taken from
    http://stackoverflow.com/questions/4042452/display-help-message-with-python-argparse-when-script-is-called-without-any-argu."""  # noqa

    def error(self, message):
        sys.stderr.write('error: %s\n' % message)
        self.print_help()
        sys.exit(2)


def _add_config_arguments(parser, required=True):

    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--config', type=str, metavar='<file path>',
                       help='A run configuration file.')
    group.add_argument('--scenario', type=str, metavar='<scenario name>',
                       choices=sorted(BUILTIN_SCENARIOS),
                       help='A bundled scenario. Allowed values are ' +
                       ', '.join(sorted(BUILTIN_SCENARIOS)) + '.')
    parser.add_argument('--seed', type=int, metavar='<random seed>',
                        default=None,
                        help='Overrides the seed of the config.')
    parser.add_argument('--out', type=str, metavar='<dir>', default=None,
                        help='Where to write the outputs. Default is a '
                        'folder named after the run in ' + get_output_dir())
    parser.add_argument('-q', '--quiet', action='store_true',
                        help='Only print errors.')


def build_parser():

    parser = MyParser(
        description='Simulate a metasurface enhanced AOD lidar: synthesize '
        'detector records for a scene, extract the time of flight of every '
        'laser shot, assemble frames and analyze them.',
        epilog="""Example:\n
        metalidar simulate --scenario fig5 --seed 7 --out runs/fig5""")
    parser.add_argument('-v', '--version', action='version',
                        version=__version__)
    commands = parser.add_subparsers(dest='command', metavar='<command>')
    commands.required = True

    simulate = commands.add_parser('simulate', help='Simulate a time series.')
    _add_config_arguments(simulate)
    simulate.add_argument('--no-frames', dest='export_frames',
                          action='store_false',
                          help='Do not write frame CSV and point clouds.')

    calibrate = commands.add_parser('calibrate',
                                    help='Fit the calibration and export '
                                    'the voltage maps.')
    _add_config_arguments(calibrate)

    analyze = commands.add_parser('analyze', help='Analyze a simulated '
                                  'series.')
    _add_config_arguments(analyze)
    analyze.add_argument('--task', dest='tasks', action='append',
                         choices=TASKS, metavar='<task>',
                         help='Task to run, may be repeated. Allowed values '
                         'are ' + ', '.join(TASKS) + '. Default is the tasks '
                         'of the config.')
    analyze.add_argument('--input', type=str, metavar='<file path>',
                         default=None,
                         help='The series.pkl to analyze. Default is the one '
                         'in the output folder.')

    verify = commands.add_parser('verify', help='Run the numerical checks.')
    _add_config_arguments(verify, required=False)
    verify.add_argument('--suite', dest='suites', action='append',
                        choices=sorted(SUITES), metavar='<suite>',
                        help='Suite to run, may be repeated. Allowed values '
                        'are ' + ', '.join(sorted(SUITES)) + '. Default is '
                        'all of them.')
    verify.add_argument('--n-cases', dest='n_cases', type=int,
                        default=100000, metavar='<number of cases>',
                        help='Random cases per round trip check. Default is '
                        '100000.')

    return parser


def _load_config(args):

    if args.config is not None:
        config = RunConfig.load_from_file(args.config)
    elif args.scenario is not None:
        config = RunConfig.load_builtin(args.scenario)
    else:
        return None
    return config.override(seed=args.seed, out=args.out)


def run(args):

    config = _load_config(args)
    verbose = not args.quiet
    if args.command == 'simulate':
        run_simulate(config, export_frames=args.export_frames,
                     verbose=verbose)
    elif args.command == 'calibrate':
        run_calibrate(config, verbose=verbose)
    elif args.command == 'analyze':
        run_analyze(config, args.input, args.tasks, verbose=verbose)
    else:
        random_state = args.seed if args.seed is not None else 0
        run_verify(config, args.suites, args.n_cases, random_state,
                   verbose=verbose)


def main(argv=None):
    """Entry point. Returns 0 on success, 2 on an invalid configuration and
    3 when a check fails."""

    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            if args.quiet:
                warnings.simplefilter('ignore')
            run(args)
    except AcceptanceError as e:
        sys.stderr.write('check failed: %s\n' % e)
        return 3
    except (ValueError, IOError) as e:
        sys.stderr.write('error: %s\n' % e)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
