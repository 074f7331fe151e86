#!/usr/bin/env python3
"""
DeLaM Kernel Command-Line Tool

Type checks .dlm files, computes weak head normal forms, compares
definitions, normalises universe levels and runs the law bench.
Exit codes: 0 success, 1 type or conversion error, 2 parse error.
"""

import sys
import argparse
import json
from pathlib import Path

# Add src directory to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from delam import (
    ConfigError,
    DelamError,
    Layer,
    ParseError,
    check_file,
    configure_logging,
    conv_definitions,
    level_norm,
    load_config,
    parse_file,
    run_laws,
    suite_names,
    whnf_definition,
)
from delam.driver import EXIT_ERROR, EXIT_OK, EXIT_PARSE


def cmd_check(args, config) -> int:
    """Check every file; the exit code is the worst of the per-file codes"""
    reports = [check_file(path, config.fuel) for path in args.files]
    if args.json:
        payload = [r.to_dict() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        for report in reports:
            stream = sys.stdout if report.exit_code == EXIT_OK else sys.stderr
            print(report.render(), file=stream)
    return max(r.exit_code for r in reports)


def _load(path: str):
    try:
        return parse_file(path), None
    except ParseError as e:
        print(e.render(path), file=sys.stderr)
        return None, EXIT_PARSE


def cmd_whnf(args, config) -> int:
    source, code = _load(args.file)
    if source is None:
        return code
    try:
        steps = whnf_definition(source, args.name, config.fuel, trace=args.trace)
    except KeyError:
        print(f"Definition '{args.name}' not found in {args.file}", file=sys.stderr)
        names = [d.name for d in source.definitions]
        if names:
            print(f"Available definitions: {', '.join(names)}", file=sys.stderr)
        return EXIT_ERROR
    except DelamError as e:
        print(f"{args.file}: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    for k, step in enumerate(steps):
        print(f"{k:>4}  {step}" if args.trace else step)
    return EXIT_OK


def cmd_conv(args, config) -> int:
    source, code = _load(args.file)
    if source is None:
        return code
    layer = Layer.parse(args.layer) if args.layer else None
    try:
        diagnostic, used = conv_definitions(source, args.name1, args.name2, config.fuel, layer)
    except KeyError as e:
        print(f"Error: {e.args[0]}", file=sys.stderr)
        return EXIT_ERROR
    if diagnostic is None:
        print(f"{args.name1} and {args.name2} are convertible at layer {used.value}")
        return EXIT_OK
    if args.json:
        print(json.dumps({"convertible": False, "layer": used.value, **diagnostic.to_dict()}, indent=2))
    else:
        print(diagnostic.render(args.file), file=sys.stderr)
    return EXIT_ERROR


def cmd_level_norm(args, config) -> int:
    names = [v.strip() for v in args.vars.split(",") if v.strip()] if args.vars is not None else None
    try:
        print(level_norm(args.level, names))
    except ParseError as e:
        print(e.render("<level>"), file=sys.stderr)
        return EXIT_PARSE
    except DelamError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_lawbench(args, config) -> int:
    report = run_laws(args.suite, cases=config.law_cases, seed=config.law_seed, depth=config.law_depth)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render())
    return EXIT_OK if report.ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delam",
        description="Type checker and law bench for the DeLaM kernel",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Check a file (exit 0 ok, 1 type error, 2 parse error)
  python delam_tool.py check tests/corpus/ok/id.dlm

  # Machine-readable diagnostics
  python delam_tool.py check tests/corpus/bad/omega_ty.dlm --json

  # Weak head normal form of a definition, with every step
  python delam_tool.py whnf tests/corpus/ok/recursor_succ.dlm size --trace

  # Compare two definitions at layer d
  python delam_tool.py conv tests/corpus/ok/eta_pi.dlm f g --layer d

  # Normalise a level over level variables l and k
  python delam_tool.py level-norm "l \\/ (1+l)" --vars l

  # Run the substitution laws with a small budget
  python delam_tool.py lawbench lsubst --cases 200 --seed 3

Environment:
  DELAM_FUEL       default reduction fuel
  DELAM_LOG_LEVEL  default log level
        """
    )
    parser.add_argument('--fuel', type=int, metavar='N',
                        help='Reduction step budget (default: from the profile)')
    parser.add_argument('--profile', default='default',
                        help='Settings profile under src/delam/settings (default: default)')
    parser.add_argument('-v', '--verbose', action='store_true', help='Log kernel activity')
    parser.add_argument('-q', '--quiet', action='store_true', help='Only log errors')

    sub = parser.add_subparsers(dest='command', required=True)

    check = sub.add_parser('check', help='Type check .dlm files')
    check.add_argument('files', nargs='+', help='.dlm files to check')
    check.add_argument('--json', action='store_true', help='Output the report as JSON')
    check.set_defaults(run=cmd_check)

    whnf = sub.add_parser('whnf', help='Weak head normal form of a definition')
    whnf.add_argument('file', help='.dlm file')
    whnf.add_argument('name', help='Definition to reduce')
    whnf.add_argument('--trace', action='store_true', help='Print every reduction step')
    whnf.set_defaults(run=cmd_whnf)

    conv = sub.add_parser('conv', help='Check two definitions for convertibility')
    conv.add_argument('file', help='.dlm file')
    conv.add_argument('name1', help='First definition')
    conv.add_argument('name2', help='Second definition')
    conv.add_argument('--layer', choices=['v', 'c', 'd', 'm'],
                      help='Layer to compare at (default: typeof of the first definition)')
    conv.add_argument('--json', action='store_true', help='Output a mismatch as JSON')
    conv.set_defaults(run=cmd_conv)

    norm = sub.add_parser('level-norm', help='Normalise a universe level')
    norm.add_argument('level', help='Level expression, e.g. "l \\/ (1+l)"')
    norm.add_argument('--vars', metavar='NAMES',
                      help='Comma-separated level variables, outermost first (default: every name used)')
    norm.set_defaults(run=cmd_level_norm)

    bench = sub.add_parser('lawbench', help='Run randomized law suites')
    bench.add_argument('suite', choices=suite_names(), help='Suite to run')
    bench.add_argument('--cases', type=int, metavar='N', help='Cases per law (default: from the profile)')
    bench.add_argument('--seed', type=int, metavar='S', help='Random seed (default: from the profile)')
    bench.add_argument('--depth', type=int, metavar='D', help='Generation depth (default: from the profile)')
    bench.add_argument('--json', action='store_true', help='Output the report as JSON')
    bench.set_defaults(run=cmd_lawbench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.profile).with_overrides(
            fuel=args.fuel,
            law_cases=getattr(args, 'cases', None),
            law_seed=getattr(args, 'seed', None),
            law_depth=getattr(args, 'depth', None),
        )
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if args.verbose:
        configure_logging("DEBUG")
    elif args.quiet:
        configure_logging("ERROR")
    else:
        configure_logging(config.log_level)

    for path in [*getattr(args, 'files', []), getattr(args, 'file', None)]:
        if path is not None and not Path(path).exists():
            print(f"Error: File '{path}' not found", file=sys.stderr)
            return EXIT_ERROR

    return args.run(args, config)


if __name__ == "__main__":
    sys.exit(main())
