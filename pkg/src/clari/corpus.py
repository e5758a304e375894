"""Loading scripts and the standard library into a global environment.

A :class:`Session` threads one environment and hint database through any
number of script files, resolving ``import`` directives relative to the
importing file. Each file is loaded at most once; import cycles are
reported as parse errors.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .checker import EMPTY_CTX, Checker
from .classical import EMPTY_DB, HintDb, NotStable, prove_stable, register_hint
from .diagnostics import ClariError, E_DUPNAME, E_PARSE, SourceSpan, error
from .environment import DEF, EMPTY, STATEMENT, THEOREM, Global, GlobalEnv
from .reduction import DEFAULT_FUEL, Fuel, normalize
from .syntax import (
    CheckCmd, Decl, Def, HintCmd, ImportCmd, NormalizeCmd, StableCmd, StatementOnly, Theorem,
    parse_script, show,
)
from .term import check_scope

TIERS = {
    1: ("logic/core.ct", "dn/monad.ct", "setoid/core.ct"),
    2: ("weakvalue/core.ct", "nat/gcd.ct", "nat/pigeonhole.ct"),
}


def stdlib_dir() -> Path:
    override = os.environ.get("CLARI_STDLIB")
    return Path(override) if override else Path(__file__).parent / "stdlib"


@dataclass
class FileReport:
    path: str
    tier: int | None
    defs: int = 0
    theorems: int = 0
    statements: int = 0

    @property
    def total(self) -> int:
        return self.defs + self.theorems + self.statements


@dataclass
class Session:
    """Mutable driver state; the environment itself stays an immutable value."""

    env: GlobalEnv = EMPTY
    hints: HintDb = EMPTY_DB
    fuel: int = DEFAULT_FUEL
    output: list[str] = field(default_factory=list)
    reports: list[FileReport] = field(default_factory=list)
    _loaded: set = field(default_factory=set)
    _loading: list = field(default_factory=list)

    # -- files ----------------------------------------------------------------

    def load_file(self, path, tier: int | None = None) -> None:
        path = Path(path).resolve()
        if path in self._loaded:
            return
        if path in self._loading:
            cycle = " -> ".join(p.name for p in self._loading + [path])
            raise error(E_PARSE, f"import cycle: {cycle}")
        text = path.read_text(encoding="utf-8")
        self._loading.append(path)
        try:
            self.run_script(text, str(path), tier, base=path.parent)
        finally:
            self._loading.pop()
        self._loaded.add(path)

    def run_script(self, text: str, file: str = "<input>", tier: int | None = None,
                   base: Path | None = None) -> None:
        report = FileReport(file, tier)
        for decl in parse_script(text, file):
            self.run_decl(decl, report, tier, base)
        self.reports.append(report)

    # -- declarations ---------------------------------------------------------

    def run_decl(self, decl: Decl, report: FileReport, tier: int | None = None,
                 base: Path | None = None) -> None:
        try:
            self._run(decl, report, tier, base)
        except ClariError as e:
            d = e.diagnostic
            if d.location is None:
                e.diagnostic = d.at(_span_for(decl, e))
            raise

    def _run(self, decl: Decl, report: FileReport, tier, base) -> None:
        fuel = Fuel(self.fuel)
        checker = Checker(self.env, fuel)
        match decl:
            case ImportCmd(path):
                target = Path(path)
                if not target.is_absolute():
                    target = (base or Path.cwd()) / target
                self.load_file(target, tier)
            case Def(name, ty, body) | Theorem(name, ty, body):
                self._fresh(name)
                self._closed(ty)
                self._closed(body)
                _stage(decl, "type", lambda: checker.sort_level(EMPTY_CTX, ty))
                _stage(decl, "body", lambda: checker.check(EMPTY_CTX, body, ty))
                kind = THEOREM if isinstance(decl, Theorem) else DEF
                self.env = self.env.extend(Global(name, ty, body, kind, report.path))
                if kind == THEOREM:
                    report.theorems += 1
                else:
                    report.defs += 1
            case StatementOnly(name, ty):
                if tier == 1:
                    raise error(E_PARSE, f"statement {name!r}: statement-only declarations are not allowed in tier-1 files")
                self._fresh(name)
                self._closed(ty)
                _stage(decl, "type", lambda: checker.sort_level(EMPTY_CTX, ty))
                self.env = self.env.extend(Global(name, ty, None, STATEMENT, report.path))
                report.statements += 1
            case CheckCmd(t):
                self._closed(t)
                ty = checker.infer(EMPTY_CTX, t)
                self.output.append(f"{show(t)} : {show(normalize(self.env, ty, fuel, delta=False))}")
            case NormalizeCmd(t):
                self._closed(t)
                checker.infer(EMPTY_CTX, t)
                self.output.append(show(normalize(self.env, t, fuel)))
            case StableCmd(phi):
                self._closed(phi)
                res = prove_stable(self.env, self.hints, phi, fuel=fuel)
                if isinstance(res, NotStable):
                    from .diagnostics import E_NOTSTABLE
                    raise error(E_NOTSTABLE, f"{show(phi)} is {res.describe()}", actual=res.subformula)
                self.output.append(f"stable: {show(phi)}")
                self.output.append(f"  by {show(res.witness)}")
            case HintCmd(kind, name):
                self.hints = register_hint(self.env, self.hints, name, kind)
            case _:
                raise TypeError(f"not a declaration: {decl!r}")

    def _fresh(self, name: str) -> None:
        if name in self.env:
            raise error(E_DUPNAME, f"{name!r} is already defined")

    @staticmethod
    def _closed(t) -> None:
        from .checker import _closed
        _closed(t, EMPTY_CTX)

    # -- reporting ------------------------------------------------------------

    def counts(self, tiers=None) -> dict:
        out = {"defs": 0, "theorems": 0, "statements": 0}
        for r in self.reports:
            if tiers is None or r.tier in tiers:
                out["defs"] += r.defs
                out["theorems"] += r.theorems
                out["statements"] += r.statements
        return out


def _stage(decl, part: str, thunk) -> None:
    try:
        thunk()
    except ClariError as e:
        if e.diagnostic.location is None:
            span = getattr(decl, f"{part}_span", None) or decl.span
            e.diagnostic = e.diagnostic.at(span) if span else e.diagnostic
        if getattr(decl, "name", None):
            e.diagnostic = replace(e.diagnostic, message=f"in {decl.name} ({part}): {e.diagnostic.message}")
        raise


def _span_for(decl: Decl, e: ClariError) -> SourceSpan | None:
    return decl.span


@dataclass
class Library:
    env: GlobalEnv
    hints: HintDb
    session: Session

    def counts(self, tiers=None) -> dict:
        return self.session.counts(tiers)


def load_stdlib(env: GlobalEnv = EMPTY, tiers=(1,), fuel: int = DEFAULT_FUEL,
                directory: Path | None = None) -> Library:
    """Check the standard-library files of the requested tiers into ``env``.

    Tier 2 depends on tier 1, which is loaded first whenever tier 2 is
    requested. The first diagnostic aborts the load.
    """
    root = Path(directory) if directory else stdlib_dir()
    wanted = sorted(set(tiers) | ({1} if 2 in tiers else set()))
    session = Session(env=env, fuel=fuel)
    for tier in wanted:
        for rel in TIERS[tier]:
            session.load_file(root / rel, tier)
    return Library(session.env, session.hints, session)


def stdlib_files(tiers=(1, 2), directory: Path | None = None) -> list[Path]:
    root = Path(directory) if directory else stdlib_dir()
    return [root / rel for t in sorted(tiers) for rel in TIERS[t]]
