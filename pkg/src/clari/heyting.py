"""Finite Heyting algebras as countermodels for propositional formulas.

A formula provable in the kernel's propositional fragment evaluates to the
top element of every Heyting algebra under every valuation, so a single
algebra and valuation where it does not is a certificate of unprovability.
Algebras are enumerated on labeled carriers ``0..n-1`` with ``0`` the bottom
and ``n-1`` the top; the search order is fixed, so the reported witness is
canonical.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Union

from .diagnostics import E_MISMATCH, ClariError, error
from .environment import EMPTY, GlobalEnv
from .reduction import whnf
from .term import (
    Const, Pi, Sigma, Sum, Term, Univ, UnitTy, Var, VoidTy, apps, occurs, spine,
)

MAX_SIZE = 6


class SizeLimit(ValueError):
    pass


class MissingAtom(KeyError):
    pass


# -- formulas -----------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class Imp:
    left: "PropFormula"
    right: "PropFormula"


@dataclass(frozen=True)
class SumP:
    left: "PropFormula"
    right: "PropFormula"


PropFormula = Union[Atom, Top, Bot, And, Imp, SumP]


def Not(a: PropFormula) -> PropFormula:
    return Imp(a, Bot())


def OrW(left: PropFormula, right: PropFormula) -> PropFormula:
    return Not(And(Not(left), Not(right)))


def atoms(f: PropFormula) -> list[str]:
    """Atom names in order of first occurrence."""
    seen: dict[str, None] = {}

    def walk(g):
        if isinstance(g, Atom):
            seen.setdefault(g.name)
        elif isinstance(g, (And, Imp, SumP)):
            walk(g.left)
            walk(g.right)

    walk(f)
    return list(seen)


def show_formula(f: PropFormula) -> str:
    def go(g, prec):
        match g:
            case Atom(name):
                return name
            case Top():
                return "top"
            case Bot():
                return "bot"
            case Imp(a, Bot()):
                return "~" + go(a, 3)
            case And(a, b):
                s, p = f"{go(a, 3)} & {go(b, 3)}", 2
            case SumP(a, b):
                s, p = f"{go(a, 3)} + {go(b, 3)}", 2
            case Imp(a, b):
                s, p = f"{go(a, 1)} -> {go(b, 0)}", 0
        return f"({s})" if p < prec else s

    return go(f, 0)


# -- algebras -----------------------------------------------------------------

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HeytingAlgebra:
    size: int
    leq: tuple[tuple[bool, ...], ...]
    meet: Table
    join: Table
    imp: Table
    bottom: int
    top: int

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def neg(self, a: int) -> int:
        return self.imp[a][self.bottom]


Valuation = Mapping[str, int]


@dataclass(frozen=True)
class Violation:
    law: str
    witness: dict

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.law} fails at ({args})"


def violations(h: HeytingAlgebra) -> Iterator[Violation]:
    """Every failed law, in a fixed order; the first one found by shape stops the scan."""
    n = h.size
    tables = {"leq": h.leq, "meet": h.meet, "join": h.join, "imp": h.imp}
    for name, tab in tables.items():
        if len(tab) != n or any(len(row) != n for row in tab):
            yield Violation("dimensions", {"table": name})
            return
    if not (0 <= h.bottom < n and 0 <= h.top < n):
        yield Violation("dimensions", {"bottom": h.bottom, "top": h.top})
        return
    for name in ("meet", "join", "imp"):
        for a, b in itertools.product(range(n), repeat=2):
            if not 0 <= tables[name][a][b] < n:
                yield Violation("dimensions", {"table": name, "a": a, "b": b})
                return
    le = h.le
    R = range(n)
    for a in R:
        if not le(a, a):
            yield Violation("reflexivity", {"a": a})
    for a, b in itertools.product(R, R):
        if a != b and le(a, b) and le(b, a):
            yield Violation("antisymmetry", {"a": a, "b": b})
    for a, b, c in itertools.product(R, R, R):
        if le(a, b) and le(b, c) and not le(a, c):
            yield Violation("transitivity", {"a": a, "b": b, "c": c})
    for a in R:
        if not le(h.bottom, a):
            yield Violation("bottom", {"a": a})
        if not le(a, h.top):
            yield Violation("top", {"a": a})
    for a, b in itertools.product(R, R):
        m, j = h.meet[a][b], h.join[a][b]
        if not (le(m, a) and le(m, b)) or any(le(c, a) and le(c, b) and not le(c, m) for c in R):
            yield Violation("meet", {"a": a, "b": b})
        if not (le(a, j) and le(b, j)) or any(le(a, c) and le(b, c) and not le(j, c) for c in R):
            yield Violation("join", {"a": a, "b": b})
    for a, b, c in itertools.product(R, R, R):
        if le(h.meet[a][c], b) != le(c, h.imp[a][b]):
            yield Violation("residuation", {"a": a, "b": b, "c": c})
    for a, b, c in itertools.product(R, R, R):
        if h.meet[a][h.join[b][c]] != h.join[h.meet[a][b]][h.meet[a][c]]:
            yield Violation("distributivity", {"a": a, "b": b, "c": c})


def validate_algebra(h: HeytingAlgebra) -> Violation | None:
    """None when every law holds, otherwise the first violation."""
    return next(violations(h), None)


def _bound(leq, n, a, b, upper: bool) -> int | None:
    if upper:
        cands = [c for c in range(n) if leq[a][c] and leq[b][c]]
        best = [c for c in cands if all(leq[c][d] for d in cands)]
    else:
        cands = [c for c in range(n) if leq[c][a] and leq[c][b]]
        best = [c for c in cands if all(leq[d][c] for d in cands)]
    return best[0] if best else None


def from_order(leq) -> HeytingAlgebra | None:
    """The Heyting algebra on a bounded order, or None if it is not a distributive lattice."""
    n = len(leq)
    leq = tuple(tuple(bool(x) for x in row) for row in leq)
    meet, join = [[0] * n for _ in range(n)], [[0] * n for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        m, j = _bound(leq, n, a, b, False), _bound(leq, n, a, b, True)
        if m is None or j is None:
            return None
        meet[a][b], join[a][b] = m, j
    for a, b, c in itertools.product(range(n), repeat=3):
        if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
            return None
    imp = [[0] * n for _ in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        # residuation: the largest c with meet(a, c) <= b
        imp[a][b] = _largest([c for c in range(n) if leq[meet[a][c]][b]], leq)
    freeze = lambda t: tuple(tuple(r) for r in t)
    return HeytingAlgebra(n, leq, freeze(meet), freeze(join), freeze(imp), 0, n - 1)


def _largest(cands, leq) -> int:
    return next(c for c in cands if all(leq[d][c] for d in cands))


def _is_order(leq, n) -> bool:
    R = range(n)
    for a, b in itertools.product(R, R):
        if a != b and leq[a][b] and leq[b][a]:
            return False
    return all(leq[a][c] for a, b, c in itertools.product(R, R, R) if leq[a][b] and leq[b][c])


@lru_cache(maxsize=None)
def _algebras_of_size(n: int) -> tuple[HeytingAlgebra, ...]:
    if n == 1:
        return (HeytingAlgebra(1, ((True,),), ((0,),), ((0,),), ((0,),), 0, 0),)
    free = [(a, b) for a in range(1, n - 1) for b in range(1, n - 1) if a != b]
    out = []
    # product() varies the last free cell fastest, which is lexicographic
    # order on the row-major leq table with False before True
    for bits in itertools.product((False, True), repeat=len(free)):
        leq = [[a == b or a == 0 or b == n - 1 for b in range(n)] for a in range(n)]
        for (a, b), bit in zip(free, bits):
            leq[a][b] = bit
        if not _is_order(leq, n):
            continue
        h = from_order(leq)
        if h is not None:
            out.append(h)
    return tuple(out)


def enumerate_algebras(max_size: int) -> Iterator[HeytingAlgebra]:
    """All Heyting algebras on labeled carriers of size 1..max_size."""
    if not 0 <= max_size <= MAX_SIZE:
        raise SizeLimit(f"algebra size must be between 0 and {MAX_SIZE}, got {max_size}")
    for n in range(1, max_size + 1):
        yield from _algebras_of_size(n)


def chain(n: int) -> HeytingAlgebra:
    return from_order([[a <= b for b in range(n)] for a in range(n)])


def boolean_algebra() -> HeytingAlgebra:
    return chain(2)


# -- evaluation and search ----------------------------------------------------

def eval_formula(h: HeytingAlgebra, v: Valuation, f: PropFormula) -> int:
    match f:
        case Atom(name):
            if name not in v:
                raise MissingAtom(name)
            return v[name]
        case Top():
            return h.top
        case Bot():
            return h.bottom
        case And(a, b):
            return h.meet[eval_formula(h, v, a)][eval_formula(h, v, b)]
        case SumP(a, b):
            return h.join[eval_formula(h, v, a)][eval_formula(h, v, b)]
        case Imp(a, b):
            return h.imp[eval_formula(h, v, a)][eval_formula(h, v, b)]
    raise TypeError(f"not a formula: {f!r}")


def valuations(h: HeytingAlgebra, names) -> Iterator[dict]:
    for vals in itertools.product(range(h.size), repeat=len(names)):
        yield dict(zip(names, vals))


def valid_in(h: HeytingAlgebra, f: PropFormula) -> bool:
    names = atoms(f)
    return all(eval_formula(h, v, f) == h.top for v in valuations(h, names))


@dataclass(frozen=True)
class Countermodel:
    formula: PropFormula
    algebra: HeytingAlgebra
    valuation: dict
    value: int

    def to_json(self) -> str:
        h = self.algebra
        return json.dumps({
            "formula": show_formula(self.formula),
            "size": h.size,
            "leq": [[int(x) for x in row] for row in h.leq],
            "bottom": h.bottom,
            "top": h.top,
            "valuation": self.valuation,
            "value": self.value,
        }, separators=(",", ":"))

    def render(self) -> str:
        h = self.algebra
        width = len(str(h.size - 1))
        head = " " * (width + 3) + " ".join(str(b).rjust(width) for b in range(h.size))
        rows = [f"{str(a).rjust(width)} |" + "".join(" " + ("1" if h.leq[a][b] else "0").rjust(width)
                                                      for b in range(h.size)) for a in range(h.size)]
        lines = [f"countermodel for {show_formula(self.formula)}",
                 f"algebra of size {h.size} (bottom {h.bottom}, top {h.top}), a <= b table:",
                 head, *rows, "valuation:"]
        lines += [f"  {k} = {v}" for k, v in self.valuation.items()]
        lines.append(f"value: {self.value}")
        return "\n".join(lines)


def find_countermodel(f: PropFormula, max_size: int) -> Countermodel | None:
    """The first (algebra, valuation) in the fixed search order where ``f`` is not top."""
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    names = sorted(atoms(f))
    for h in enumerate_algebras(max_size):
        for v in valuations(h, names):
            value = eval_formula(h, v, f)
            if value != h.top:
                return Countermodel(f, h, v, value)
    return None


# -- from kernel terms --------------------------------------------------------

_UNARY = {"neg": Not, "not": Not, "nn": lambda a: Not(Not(a)), "dn": lambda a: Not(Not(a))}
_BINARY = {
    "and": And,
    "orW": OrW,
    "orD": lambda a, b: Not(Not(SumP(a, b))),
    "iff": lambda a, b: And(Imp(a, b), Imp(b, a)),
}


def _not_prop(t: Term):
    return error(E_MISMATCH, "not a propositional formula", actual=t)


def formula_of_term(t: Term, env: GlobalEnv = EMPTY, names=()) -> PropFormula:
    """Read a kernel proposition as a formula.

    Free constants unknown to ``env`` become atoms, as do the variables in
    ``names`` (innermost first). The connectives ``neg``, ``nn``/``dn``,
    ``and``, ``orW``, ``orD`` and ``iff`` are recognised by name; other
    defined constants are unfolded.
    """
    names = list(names)
    t = whnf(env, t, delta=False)
    match t:
        case UnitTy():
            return Top()
        case VoidTy():
            return Bot()
        case Var(i):
            if i < len(names) and names[i] is not None:
                return Atom(names[i])
            raise _not_prop(t)
        case Pi(a, b) if not occurs(b, 0):
            return Imp(formula_of_term(a, env, names), formula_of_term(b, env, [None] + names))
        case Sigma(a, b) if not occurs(b, 0):
            return And(formula_of_term(a, env, names), formula_of_term(b, env, [None] + names))
        case Sum(a, b):
            return SumP(formula_of_term(a, env, names), formula_of_term(b, env, names))
    head, args = spine(t)
    if isinstance(head, Const):
        sub = [formula_of_term(a, env, names) for a in args] if head.name in _UNARY or head.name in _BINARY else None
        if head.name in _UNARY and len(args) == 1:
            return _UNARY[head.name](*sub)
        if head.name in _BINARY and len(args) == 2:
            return _BINARY[head.name](*sub)
        body = env.body(head.name) if head.name in env else None
        if body is not None:
            return formula_of_term(apps(body, *args), env, names)
        if head.name not in env and not args:
            return Atom(head.name)
    raise _not_prop(t)


def parse_formula(text: str, env: GlobalEnv = EMPTY) -> PropFormula:
    from .syntax import parse_term

    return formula_of_term(parse_term(text), env)


def statement_formula(ty: Term, env: GlobalEnv = EMPTY) -> PropFormula | None:
    """The propositional content of ``Pi (P Q ... : Type0), body``, or None."""
    names: list = []
    while True:
        ty = whnf(env, ty, delta=False)
        if isinstance(ty, Pi) and ty.domain == Univ(0):
            base = ty.name if ty.name not in ("_", "") else "p"
            name, k = base, 1
            while name in names:
                name, k = f"{base}{k}", k + 1
            names.insert(0, name)
            ty = ty.codomain
        else:
            break
    try:
        return formula_of_term(ty, env, names)
    except ClariError:
        return None
