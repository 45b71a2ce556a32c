"""Command-line driver.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 type error, 4 runtime (stuck or
out of fuel). Errors go to stderr as one line with a ``<kind>-error:`` prefix.
"""

from __future__ import annotations

import argparse
import json
import sys
import threading
from pathlib import Path

from .core.eval import eval_stmt
from .core.parser import parse_core_program, pretty_core
from .core.syntax import STRATEGIES, CoreProgram, Cut
from .core.typing import check_core_program
from .focusing import focus_program, simplify_program
from .fun.eval import evaluate
from .fun.parser import parse_program, pretty_term
from .fun.typing import check_program
from .lexer import ParseError
from .trace import RunResult
from .translate import translate_program
from .types import TypeCheckError

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_TYPE, EXIT_RUNTIME = range(5)
DEFAULT_FUEL = 100_000
# deep terms recurse deeply; run commands on a thread with room for it
STACK_BYTES = 512 * 2**20
RECURSION_LIMIT = 60_000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror}")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _report(r: RunResult, result_text: str, args) -> int:
    if args.json:
        print(json.dumps(r.to_json(result_text)))
    else:
        if args.trace:
            for s in r.trace:
                print(f"{s.index:>4}  {s.rule:<8} {s.term}")
        if r.ok:
            print(result_text)
    if not r.ok:
        print(f"runtime-error: {r.status}: {r.reason} (after {r.steps} steps)", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def _load_fun(path: str):
    P = parse_program(_read(path))
    check_program(P)
    return P


def cmd_check(args) -> int:
    P = _load_fun(args.file)
    print(f"ok: {len(P.definitions)} definition(s)")
    return EXIT_OK


def cmd_run(args) -> int:
    P = _load_fun(args.file)
    if P.main is None:
        raise _UsageError(f"{args.file} has no main term to run")
    r = evaluate(P, P.main, args.fuel, trace=args.trace or args.json)
    return _report(r, pretty_term(r.final), args)


def cmd_compile(args) -> int:
    C = translate_program(_load_fun(args.file))
    if args.focus:
        C = focus_program(C)
    if args.simplify:
        C = simplify_program(C)
    _write(pretty_core(C), args.output)
    return EXIT_OK


def _load_core(path: str) -> CoreProgram:
    C = parse_core_program(_read(path))
    check_core_program(C)
    return C


def cmd_check_core(args) -> int:
    C = _load_core(args.file)
    print(f"ok: {len(C.definitions)} definition(s)")
    return EXIT_OK


def cmd_run_core(args) -> int:
    C = _load_core(args.file)
    if C.main is None:
        raise _UsageError(f"{args.file} has no final statement to run")
    r = eval_stmt(C, C.main, args.strategy, args.fuel, trace=args.trace or args.json)
    value = r.final.producer if r.ok and isinstance(r.final, Cut) else r.final
    return _report(r, pretty_core(value), args)


def cmd_focus(args) -> int:
    _write(pretty_core(focus_program(_load_core(args.file))), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sequent-ir", description="Fun to Core compiler and evaluators.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def runner(p):
        p.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="maximum number of steps")
        p.add_argument("--trace", action="store_true", help="print every step")
        p.add_argument("--json", action="store_true", help="print the trace and result as JSON")

    p = sub.add_parser("check", help="typecheck a .fun program")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="evaluate the main term of a .fun program")
    p.add_argument("file")
    runner(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compile", help="translate a .fun program to .core")
    p.add_argument("file")
    p.add_argument("--focus", action="store_true", help="apply static focusing")
    p.add_argument("--simplify", action="store_true", help="contract administrative redexes")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("check-core", help="typecheck a .core program")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_core)

    p = sub.add_parser("run-core", help="run the final statement of a .core program")
    p.add_argument("file")
    p.add_argument("--strategy", choices=STRATEGIES, default="cbv")
    runner(p)
    p.set_defaults(func=cmd_run_core)

    p = sub.add_parser("focus", help="statically focus a .core program")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_focus)
    return ap


def _main(argv: list[str] | None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "fuel", 0) < 0:
            raise _UsageError("--fuel must be non-negative")
        return args.func(args)
    except _UsageError as e:
        print(f"usage-error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse-error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except TypeCheckError as e:
        print(f"type-error: {e.kind}: {e}", file=sys.stderr)
        return EXIT_TYPE
    except RecursionError:
        print("runtime-error: recursion: term nested too deeply", file=sys.stderr)
        return EXIT_RUNTIME


def main(argv: list[str] | None = None) -> int:
    outcome: list = []

    def work():
        try:
            outcome.append(_main(argv))
        except BaseException as e:  # re-raised on the calling thread
            outcome.append(e)

    old_limit = sys.getrecursionlimit()
    old_stack = threading.stack_size(STACK_BYTES)
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    try:
        t = threading.Thread(target=work)
        t.start()
        t.join()
    finally:
        sys.setrecursionlimit(old_limit)
        threading.stack_size(old_stack)
    if isinstance(outcome[0], BaseException):
        raise outcome[0]
    return outcome[0]


if __name__ == "__main__":
    sys.exit(main())
