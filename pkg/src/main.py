import argparse
import logging
import sys

from core.builtins import BUILTIN_NAMES, builtin
from core.config import APP_NAME, APP_VERSION, get_workbench_config, load_environment, setup_logging
from core.exceptions import OracleMismatch, ValidationFailed, WorkbenchError
from core.fileformat import emit, read_structure, write_structure
from core.pipeline import FUNCTORS, apply_functor, find_any_isomorphism, roundtrips, sweep, validate_structure
from core.render import render_dot, write_dot

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _emit_to(obj, out) -> None:
    if out:
        write_structure(obj, out)
    else:
        sys.stdout.write(emit(obj))


def cmd_validate(args) -> int:
    obj = read_structure(args.path)
    report = validate_structure(obj)
    for line in report.lines():
        print(line)
    if not report.ok:
        first = report.first_failure()
        print(f"{obj.name}: invalid, first failure {first.line()}")
        return EXIT_FAILED
    print(f"{obj.name}: valid")
    return EXIT_OK


def cmd_builtin(args) -> int:
    if args.list or not args.name:
        for name in BUILTIN_NAMES:
            print(name)
        return EXIT_OK
    _emit_to(builtin(args.name), args.out)
    return EXIT_OK


def cmd_functor(args) -> int:
    obj = read_structure(args.path)
    result = apply_functor(args.functor, obj, bounded=args.bounded, generalized=args.generalized)
    _emit_to(result, args.out)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    trips = roundtrips(read_structure(args.path))
    for trip in trips:
        for line in trip.lines():
            print(line)
    return EXIT_OK if all(t.ok for t in trips) else EXIT_FAILED


def cmd_iso(args) -> int:
    first = read_structure(args.first)
    second = read_structure(args.second)
    witness = find_any_isomorphism(first, second)
    if witness is None:
        print("not isomorphic")
        return EXIT_FAILED
    for line in witness.describe():
        print(line)
    return EXIT_OK


def cmd_render(args) -> int:
    obj = read_structure(args.path)
    validate_structure(obj).raise_if_failed()
    if args.out:
        write_dot(obj, args.out)
    else:
        sys.stdout.write(render_dot(obj))
    return EXIT_OK


def cmd_sweep(args) -> int:
    max_size = args.max_size or get_workbench_config()["sweep_max_size"]
    rows = sweep(max_size)
    for row in rows:
        print(row.line())
    print(f"{len(rows)} bRS-algebras, {sum(not r.ok for r in rows)} failures")
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description="Workbench for finite Sugihara monoids, their twist products and dualities",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv")
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check the axioms of an algebra or space file")
    p.add_argument("path")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("builtin", help="Write a built-in algebra")
    p.add_argument("name", nargs="?")
    p.add_argument("--out", help="Output file (default: stdout)")
    p.add_argument("--list", action="store_true", help="List the built-in names")
    p.set_defaults(handler=cmd_builtin)

    p = sub.add_parser("functor", help="Apply a functor to an algebra or space file")
    p.add_argument("--functor", required=True, choices=FUNCTORS)
    p.add_argument("path")
    p.add_argument("--out", help="Output file (default: stdout)")
    p.add_argument("--bounded", action="store_true", help="Add bounds to a Sugihara monoid first")
    p.add_argument("--generalized", action="store_true", help="Forget the bottom of a bG-algebra first")
    p.set_defaults(handler=cmd_functor)

    p = sub.add_parser("roundtrip", help="Run every applicable double dual")
    p.add_argument("path")
    p.set_defaults(handler=cmd_roundtrip)

    p = sub.add_parser("iso", help="Search for an isomorphism between two files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_iso)

    p = sub.add_parser("render", help="Write the Hasse diagram as Graphviz DOT")
    p.add_argument("path")
    p.add_argument("--out", help="Output .dot file (default: stdout)")
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("sweep", help="Check every small bRS-algebra")
    p.add_argument("--max-size", type=int, default=None)
    p.set_defaults(handler=cmd_sweep)
    return parser


def main(argv=None) -> int:
    load_environment()
    parser = build_parser()
    args = parser.parse_args(argv)

    level = None
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    try:
        setup_logging(level=level)
        return args.handler(args)
    except (ValidationFailed, OracleMismatch) as e:
        logger.warning(f"{args.command} failed: {e}")
        print(e.user_message, file=sys.stderr)
        return EXIT_FAILED
    except WorkbenchError as e:
        logger.error(f"{args.command}: {e}")
        print(e.user_message, file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        logger.error(f"{args.command}: {e}")
        print(f"Cannot access {e.filename or 'file'}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
