"""
Command line front end.

    halfspace-edof sweep --preset fig4 --out fig4.csv
    halfspace-edof green --mode half --plane x=10 --first=-5:5:101 --second 0:10:101
    halfspace-edof validate --only identity
"""
import argparse
import contextlib
import json
import logging
import sys
from datetime import datetime, timezone

from . import __version__
from .config import PRESETS, ScenarioConfig, SweepSpec, format_config, load_config, preset
from .errors import ConfigurationError, GeometryError, HalfSpaceError
from .sweep import (FIT_COLUMNS, SWEEP_COLUMNS, UNCONVERGED, PlaneSpec, SweepRow, dump_fit, dump_green_grid,
                    evaluate_point, optimal_antenna_number, run_sweep, write_table)
from .validation import CHECKS, parse_tolerances, validate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIGURATION = 2
EXIT_NUMERICAL = 3


def _scenario(args):
    config = load_config(args.config) if args.config else ScenarioConfig()
    sweep = None
    if args.preset:
        config, sweep = preset(args.preset, config)
    for item in args.set or ():
        key, sep, value = item.partition('=')
        if not sep:
            raise ConfigurationError(f"--set expects key=value, got '{item}'")
        config = config.override(key, value)
    if args.mode:
        config = config.replace(green_mode=args.mode)
    return config, sweep


def _triple(text, name, kinds):
    parts = text.replace(':', ',').split(',')
    if len(parts) != len(kinds):
        raise ConfigurationError(f"{name} expects {len(kinds)} values, got '{text}'")
    try:
        return tuple(kind(part) for kind, part in zip(kinds, parts))
    except ValueError:
        raise ConfigurationError(f"invalid {name} '{text}'") from None


def _plane(args):
    axis, sep, value = args.plane.partition('=')
    if not sep:
        raise ConfigurationError(f"--plane expects axis=value, got '{args.plane}'")
    try:
        value = float(value)
    except ValueError:
        raise ConfigurationError(f"invalid plane position '{args.plane}'") from None
    kwargs = {'fixed_axis': axis.strip(), 'fixed_value': value}
    if args.first:
        kwargs['first'] = _triple(args.first, '--first', (float, float, int))
    if args.second:
        kwargs['second'] = _triple(args.second, '--second', (float, float, int))
    if args.source:
        kwargs['source'] = _triple(args.source, '--source', (float, float, float))
    return PlaneSpec(**kwargs)


def _sweep_spec(args, preset_sweep):
    ranged = (args.start, args.stop, args.step)
    if args.values is not None:
        return SweepSpec.from_list(args.var or 'M', args.values)
    if any(v is not None for v in ranged):
        if any(v is None for v in ranged):
            raise ConfigurationError("--from, --to and --step go together")
        return SweepSpec.from_range(args.var or 'M', *ranged)
    if preset_sweep is not None and args.var is None:
        return preset_sweep
    raise ConfigurationError("give the sweep values with --values or --from/--to/--step, or a --preset")


def _cmd_green(args, config, preset_sweep):
    plane = _plane(args)
    rows = dump_green_grid(config, plane)
    return list(plane.axes) + ['re', 'im'], rows, None, {'plane': plane.fixed_axis, 'value': plane.fixed_value}


def _cmd_fit(args, config, preset_sweep):
    rows, residual = dump_fit(config)
    return FIT_COLUMNS, rows, f"# residual={residual:.12g}", {'residual': residual}


def _cmd_edof(args, config, preset_sweep):
    point = evaluate_point(config)
    row = SweepRow(config.M, config.M, config.N, config.rho, config.z_r, config.z_s, *point)
    return SWEEP_COLUMNS, [row], None, {'status': row.status}


def _cmd_sweep(args, config, preset_sweep):
    sweep = _sweep_spec(args, preset_sweep)
    rows = run_sweep(config, sweep, jobs=args.jobs)
    summary = {
        'variable': sweep.variable,
        'points': len(rows),
        'failed': sum(row.status not in ('ok', UNCONVERGED) for row in rows),
        'unconverged': sum(row.status == UNCONVERGED for row in rows),
    }
    if sweep.variable == 'M':
        summary['optimal_M_half'] = optimal_antenna_number(rows, 'xi_half')
        summary['optimal_M_free'] = optimal_antenna_number(rows, 'xi_free')
        logger.info("optimal antenna number: %s in half space, %s in free space", summary['optimal_M_half'],
                    summary['optimal_M_free'])
    return SWEEP_COLUMNS, rows, None, summary


_TABLE_COMMANDS = {
    'green': _cmd_green,
    'fit': _cmd_fit,
    'edof': _cmd_edof,
    'sweep': _cmd_sweep,
}


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        try:
            stream = open(path, 'w', encoding='utf-8', newline='')
        except OSError as e:
            raise ConfigurationError(f"cannot write '{path}': {e.strerror}") from None
        with stream:
            yield stream


def _write_metadata(path, command, config, summary):
    metadata = {
        'command': command,
        'version': __version__,
        'created': datetime.now(timezone.utc).isoformat(timespec='seconds'),
        'config': format_config(config).splitlines(),
        'summary': summary,
    }
    with open(f"{path}.meta.json", 'w', encoding='utf-8') as stream:
        json.dump(metadata, stream, indent=2)
        stream.write('\n')


def _run(args):
    config, preset_sweep = _scenario(args)

    if args.command == 'validate':
        tolerances = parse_tolerances(args.tol)
        only = [name.strip() for item in args.only or () for name in item.split(',') if name.strip()]
        results = validate(config, tolerances, only)
        with _output(args.out) as stream:
            for result in results:
                stream.write(result.line() + '\n')
        passed = all(result.passed for result in results)
        if args.out:
            _write_metadata(args.out, 'validate', config, {r.name: r.passed for r in results})
        return EXIT_OK if passed else EXIT_VALIDATION

    columns, rows, footer, summary = _TABLE_COMMANDS[args.command](args, config, preset_sweep)
    with _output(args.out) as stream:
        write_table(stream, columns, rows, footer)
    if args.out:
        _write_metadata(args.out, args.command, config, summary)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help="scenario file of key = value lines")
    common.add_argument('--preset', choices=sorted(PRESETS), help="figure scenario")
    common.add_argument('--set', action='append', metavar='KEY=VALUE', help="override one configuration key")
    common.add_argument('--mode', choices=['free', 'half', 'oracle'], help="Green's function evaluator")
    common.add_argument('--out', metavar='PATH', help="output file (default: standard output)")
    common.add_argument('-v', '--verbose', action='count', default=0, help="-v for progress, -vv for detail")

    parser = argparse.ArgumentParser(prog='halfspace-edof',
                                     description="Half-space Green's function and MIMO effective degrees of freedom")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest='command', required=True)

    green = commands.add_parser('green', parents=[common], help="Green's function over a plane")
    green.add_argument('--plane', default='x=10', help="fixed axis and position, e.g. x=10")
    green.add_argument('--first', metavar='START:STOP:COUNT', help="grid along the first free axis")
    green.add_argument('--second', metavar='START:STOP:COUNT', help="grid along the second free axis")
    green.add_argument('--source', metavar='X,Y,Z', help="source position")

    commands.add_parser('fit', parents=[common], help="complex-image coefficients")
    commands.add_parser('edof', parents=[common], help="EDoF of a single scenario")

    sweep = commands.add_parser('sweep', parents=[common], help="EDoF over a range of one variable")
    sweep.add_argument('--var', choices=['M', 'rho', 'zr'], help="swept variable (M also sets N)")
    sweep.add_argument('--from', dest='start', type=float)
    sweep.add_argument('--to', dest='stop', type=float)
    sweep.add_argument('--step', type=float)
    sweep.add_argument('--values', help="comma separated values")
    sweep.add_argument('--jobs', type=int, default=1, help="worker processes")

    check = commands.add_parser('validate', parents=[common], help="run the numerical self-checks")
    check.add_argument('--only', action='append', metavar='CHECK', help=f"one of {', '.join(CHECKS)}")
    check.add_argument('--tol', action='append', metavar='[CHECK=]REL', help="tolerance override")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    logging.captureWarnings(True)

    try:
        code = _run(args)
    except (ConfigurationError, GeometryError) as e:
        print(f"Fatal error: {e}", file=sys.stderr)
        sys.exit(EXIT_CONFIGURATION)
    except HalfSpaceError as e:
        print(f"Fatal error: {type(e).__name__}: {e}", file=sys.stderr)
        sys.exit(EXIT_NUMERICAL)
    sys.exit(code)
