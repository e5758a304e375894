"""Command-line front end: ``clari check|normalize|stable|countermodel|stdlib``.

Exit codes: 0 success, 1 check or stability failure, 2 parse error,
3 fuel exhausted, 4 usage error.
"""
from __future__ import annotations

import argparse
import sys
import threading
from functools import lru_cache
from pathlib import Path

from .checker import EMPTY_CTX, Checker
from .classical import EMPTY_DB, NotStable, prove_stable
from .corpus import Session, load_stdlib, stdlib_dir
from .diagnostics import (
    E_FUEL, E_NOTSTABLE, E_PARSE, ClariError, Diagnostic, error, format_diagnostic,
)
from .environment import EMPTY
from .heyting import MAX_SIZE, SizeLimit, find_countermodel, formula_of_term, show_formula
from .reduction import DEFAULT_FUEL, Fuel, normalize
from .syntax import parse_term, show

OK, FAILURE, PARSE, FUEL, USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def exit_code(e: ClariError) -> int:
    code = e.diagnostic.code
    if code == E_PARSE:
        return PARSE
    if code == E_FUEL:
        return FUEL
    return FAILURE


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--fuel", type=int, default=argparse.SUPPRESS,
                        help=f"reduction budget per command (default {DEFAULT_FUEL})")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print diagnostics as JSON objects, one per line")
    common.add_argument("--no-stdlib", action="store_true", default=argparse.SUPPRESS,
                        help="start from an empty environment")

    p = _Parser(prog="clari", description=__doc__.splitlines()[0])
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-stdlib", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="check script files")
    c.add_argument("files", nargs="+", type=Path)

    n = sub.add_parser("normalize", parents=[common], help="print the normal form of a term")
    n.add_argument("-e", "--expr", required=True)

    s = sub.add_parser("stable", parents=[common], help="prove a proposition stable")
    s.add_argument("-e", "--expr", required=True)

    m = sub.add_parser("countermodel", parents=[common], help="search finite Heyting algebras")
    m.add_argument("-e", "--expr", required=True)
    m.add_argument("--max-size", type=int, default=3)

    t = sub.add_parser("stdlib", parents=[common], help="check the standard library")
    t.add_argument("--tier", type=int, choices=(1, 2), default=1)
    return p


class _Runner:
    def __init__(self, args, out, err):
        self.args, self.out, self.err = args, out, err

    def say(self, line: str = "") -> None:
        print(line, file=self.out)

    def report(self, e: ClariError) -> int:
        print(format_diagnostic(e.diagnostic, self.args.json), file=self.err)
        return exit_code(e)

    def library(self):
        if self.args.no_stdlib:
            return EMPTY, EMPTY_DB
        # the user's budget applies to their own commands, not to the library
        return _library(str(stdlib_dir()))

    # -- subcommands ----------------------------------------------------------

    def check(self) -> int:
        env, hints = self.library()
        session = Session(env=env, hints=hints, fuel=self.args.fuel)
        status = OK
        for path in self.args.files:
            if not path.is_file():
                print(f"clari: no such file: {path}", file=self.err)
                status = status or USAGE
                continue
            shown = len(session.output)
            try:
                session.load_file(path)
            except ClariError as e:
                for line in session.output[shown:]:
                    self.say(line)
                status = status or self.report(e)
                continue
            for line in session.output[shown:]:
                self.say(line)
            r = session.reports[-1]
            self.say(f"{path}: {r.total} declaration{'' if r.total == 1 else 's'} checked")
        return status

    def normalize(self) -> int:
        env, _ = self.library()
        t = parse_term(self.args.expr, "<expr>")
        fuel = Fuel(self.args.fuel)
        Checker(env, fuel).infer(EMPTY_CTX, t)
        self.say(show(normalize(env, t, fuel)))
        return OK

    def stable(self) -> int:
        env, hints = self.library()
        phi = parse_term(self.args.expr, "<expr>")
        res = prove_stable(env, hints, phi, fuel=Fuel(self.args.fuel))
        if isinstance(res, NotStable):
            raise error(E_NOTSTABLE, f"{show(phi)} is {res.describe()}", actual=res.subformula)
        self.say(f"stable: {show(phi)}")
        self.say(f"  by {show(res.witness)}")
        return OK

    def countermodel(self) -> int:
        if not 1 <= self.args.max_size <= MAX_SIZE:
            raise UsageError(f"clari countermodel: --max-size must be between 1 and {MAX_SIZE}")
        env, _ = self.library()
        f = formula_of_term(parse_term(self.args.expr, "<expr>"), env)
        cm = find_countermodel(f, self.args.max_size)
        if cm is None:
            self.say(f"no countermodel for {show_formula(f)} among algebras of size <= {self.args.max_size}")
            return OK
        self.say(cm.render())
        self.say(f"witness: {cm.to_json()}")
        return OK

    def stdlib(self) -> int:
        tiers = (1, 2) if self.args.tier == 2 else (1,)
        lib = load_stdlib(tiers=tiers, fuel=self.args.fuel)
        total = 0
        for tier in tiers:
            c = lib.counts((tier,))
            total += c["defs"] + c["theorems"] + c["statements"]
            self.say(f"tier {tier}: {c['defs']} defs, {c['theorems']} theorems proved, "
                     f"{c['statements']} statement-only")
        self.say(f"{total} definitions checked, 0 failures")
        return OK


@lru_cache(maxsize=4)
def _library(directory: str):
    lib = load_stdlib(tiers=(1, 2), directory=Path(directory))
    return lib.env, lib.hints


# deep unary numerals nest one frame per succ
_STACK_BYTES = 512 * 1024 * 1024
_RECURSION = 200_000


def main(argv=None, out=None, err=None) -> int:
    result = []
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, _RECURSION))
    size = threading.stack_size(_STACK_BYTES)
    try:
        t = threading.Thread(target=lambda: result.append(_main(argv, out, err)))
        t.start()
        t.join()
    finally:
        threading.stack_size(size)
        sys.setrecursionlimit(old)
    return result[0] if result else FAILURE


def _main(argv, out, err) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=err)
        return USAGE
    except SystemExit as e:  # --help
        return e.code or OK
    runner = _Runner(args, out, err)
    try:
        return getattr(runner, args.command)()
    except UsageError as e:
        print(e, file=err)
        return USAGE
    except SizeLimit as e:
        print(f"clari: {e}", file=err)
        return USAGE
    except ClariError as e:
        return runner.report(e)
    except RecursionError:
        return runner.report(ClariError(Diagnostic(E_FUEL, "term nesting exceeds the recursion limit")))


if __name__ == "__main__":
    sys.exit(main())
