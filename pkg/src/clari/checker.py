"""Bidirectional type checking for the core calculus.

Universes: ``Type0 : Type1 : Type2`` with cumulativity in the conversion
rule. Pi and Sigma domains must live in ``Type0`` or ``Type1``; formation
lands at the maximum level of the components. Errors are raised as
:class:`ClariError` carrying a :class:`Diagnostic`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import (
    ClariError, E_DUPNAME, E_MISMATCH, E_NOTFN, E_SCOPE, E_UNIV, error,
)
from .environment import DEF, STATEMENT, Global, GlobalEnv
from .reduction import Fuel, _fuel, convertible, normalize, whnf
from .term import (
    App, BOOL, BoolElim, BoolTy, Const, FF, FALSE, Inl, Inr, Lam, NAT, NatElim, NatTy,
    Pair, Pi, SigElim, Sigma, Succ, Sum, SumElim, TRUE, TT, Term, UNIT_TY, Univ, UnitTy,
    UnitVal, VOID, Var, VoidElim, VoidTy, ZERO, Zero, ScopeError, check_scope, instantiate,
    shift, subst,
)

MAX_LEVEL = 2


@dataclass(frozen=True)
class Context:
    """Telescope of local variable types, innermost last."""

    entries: tuple = ()
    names: tuple = ()

    def extend(self, ty: Term, name: str = "x") -> Context:
        return Context(self.entries + (ty,), self.names + (name,))

    def lookup(self, index: int) -> Term:
        if index >= len(self.entries):
            raise error(E_SCOPE, f"variable #{index} is not bound in a context of length {len(self.entries)}")
        return shift(self.entries[-1 - index], 0, index + 1)

    def __len__(self):
        return len(self.entries)


EMPTY_CTX = Context()


class Checker:
    """Type checking against one environment with one shared fuel budget."""

    def __init__(self, env: GlobalEnv, fuel: Fuel | int | None = None):
        self.env = env
        self.fuel = _fuel(fuel)

    # -- helpers --------------------------------------------------------------

    def whnf(self, t: Term) -> Term:
        return whnf(self.env, t, self.fuel)

    def nf(self, t: Term) -> Term:
        return normalize(self.env, t, self.fuel)

    def mismatch(self, message: str, expected: Term | None, actual: Term | None) -> ClariError:
        exp = self.nf(expected) if expected is not None else None
        act = self.nf(actual) if actual is not None else None
        return error(E_MISMATCH, message, exp, act)

    def sort_level(self, ctx: Context, ty: Term) -> int:
        """Universe level of the type ``ty``; fails if ``ty`` is not a type."""
        s = self.whnf(self.infer(ctx, ty))
        if not isinstance(s, Univ):
            raise self.mismatch("expected a type", None, s)
        return s.level

    def domain_level(self, ctx: Context, ty: Term) -> int:
        level = self.sort_level(ctx, ty)
        if level >= MAX_LEVEL:
            raise error(E_UNIV, f"cannot quantify over a type in Type{level}", actual=ty)
        return level

    def subtype(self, actual: Term, expected: Term) -> bool:
        """Conversion extended with ``Type i <= Type j`` for ``i <= j`` (covariant in Pi codomains)."""
        if convertible(self.env, actual, expected, self.fuel):
            return True
        a, e = self.whnf(actual), self.whnf(expected)
        if isinstance(a, Univ) and isinstance(e, Univ):
            return a.level <= e.level
        if isinstance(a, Pi) and isinstance(e, Pi):
            return (convertible(self.env, a.domain, e.domain, self.fuel)
                    and self.subtype(a.codomain, e.codomain))
        return False

    def motive(self, ctx: Context, motive: Term, over: Term, name: str) -> None:
        self.sort_level(ctx.extend(over, name), motive)

    # -- rules ----------------------------------------------------------------

    def check(self, ctx: Context, t: Term, ty: Term) -> None:
        actual = self.infer(ctx, t)
        if not self.subtype(actual, ty):
            raise self.mismatch("type mismatch", ty, actual)

    def infer(self, ctx: Context, t: Term) -> Term:
        match t:
            case Var(k):
                return ctx.lookup(k)
            case Univ(level):
                if level + 1 > MAX_LEVEL:
                    raise error(E_UNIV, f"Type{level} has no type (the hierarchy stops at Type{MAX_LEVEL})")
                return Univ(level + 1)
            case Pi(dom, cod) | Sigma(dom, cod):
                i = self.domain_level(ctx, dom)
                j = self.sort_level(ctx.extend(dom, t.name), cod)
                return Univ(max(i, j))
            case Lam(ann, body):
                self.domain_level(ctx, ann)
                return Pi(ann, self.infer(ctx.extend(ann, t.name), body), t.name)
            case App(fn, arg):
                f_ty = self.whnf(self.infer(ctx, fn))
                if not isinstance(f_ty, Pi):
                    raise error(E_NOTFN, "application of a non-function", actual=self.nf(f_ty))
                self.check(ctx, arg, f_ty.domain)
                return instantiate(f_ty.codomain, arg)
            case Pair(a, b, ann):
                s = self.whnf(ann)
                if not isinstance(s, Sigma):
                    raise self.mismatch("pair annotation is not a Sigma type", None, ann)
                self.sort_level(ctx, ann)
                self.check(ctx, a, s.first)
                self.check(ctx, b, instantiate(s.second, a))
                return ann
            case SigElim(m, scrut, branch):
                s_ty = self.infer(ctx, scrut)
                s = self.whnf(s_ty)
                if not isinstance(s, Sigma):
                    raise self.mismatch("eliminated term is not a pair", None, s_ty)
                self.motive(ctx, m, s_ty, t.names[0])
                inner = ctx.extend(s.first, t.names[1]).extend(s.second, t.names[2])
                pair = Pair(Var(1), Var(0), shift(s_ty, 0, 2))
                self.check(inner, branch, subst(shift(m, 1, 2), 0, pair))
                return instantiate(m, scrut)
            case Sum(left, right):
                return Univ(max(self.sort_level(ctx, left), self.sort_level(ctx, right)))
            case Inl(a, other):
                self.sort_level(ctx, other)
                return Sum(self.infer(ctx, a), other)
            case Inr(b, other):
                self.sort_level(ctx, other)
                return Sum(other, self.infer(ctx, b))
            case SumElim(m, scrut, left, right):
                s_ty = self.infer(ctx, scrut)
                s = self.whnf(s_ty)
                if not isinstance(s, Sum):
                    raise self.mismatch("eliminated term is not a sum", None, s_ty)
                self.motive(ctx, m, s_ty, t.names[0])
                lm = subst(shift(m, 1, 1), 0, Inl(Var(0), shift(s.right, 0, 1)))
                rm = subst(shift(m, 1, 1), 0, Inr(Var(0), shift(s.left, 0, 1)))
                self.check(ctx.extend(s.left, t.names[1]), left, lm)
                self.check(ctx.extend(s.right, t.names[2]), right, rm)
                return instantiate(m, scrut)
            case UnitTy() | VoidTy() | BoolTy() | NatTy():
                return Univ(0)
            case UnitVal():
                return UNIT_TY
            case VoidElim(m, scrut):
                self.check(ctx, scrut, VOID)
                self.motive(ctx, m, VOID, t.names[0])
                return instantiate(m, scrut)
            case TT() | FF():
                return BOOL
            case BoolElim(m, scrut, x, y):
                self.check(ctx, scrut, BOOL)
                self.motive(ctx, m, BOOL, t.names[0])
                self.check(ctx, x, instantiate(m, TRUE))
                self.check(ctx, y, instantiate(m, FALSE))
                return instantiate(m, scrut)
            case Zero():
                return NAT
            case Succ(n):
                self.check(ctx, n, NAT)
                return NAT
            case NatElim(m, scrut, z, f):
                self.check(ctx, scrut, NAT)
                self.motive(ctx, m, NAT, t.names[0])
                self.check(ctx, z, instantiate(m, ZERO))
                step_ctx = ctx.extend(NAT, t.names[1]).extend(m, t.names[2])
                self.check(step_ctx, f, subst(shift(m, 1, 2), 0, Succ(Var(1))))
                return instantiate(m, scrut)
            case Const(name):
                g = self.env.get(name)
                if g is None:
                    raise error(E_SCOPE, f"unknown constant {name!r}")
                return g.type
        raise TypeError(f"not a term: {t!r}")


def _closed(t: Term, ctx: Context) -> None:
    try:
        check_scope(t, len(ctx))
    except ScopeError as e:
        raise error(E_SCOPE, str(e)) from None


def infer(env: GlobalEnv, ctx: Context, t: Term, fuel: Fuel | int | None = None) -> Term:
    _closed(t, ctx)
    return Checker(env, fuel).infer(ctx, t)


def check(env: GlobalEnv, ctx: Context, t: Term, ty: Term, fuel: Fuel | int | None = None) -> None:
    _closed(t, ctx)
    _closed(ty, ctx)
    Checker(env, fuel).check(ctx, t, ty)


def check_type(env: GlobalEnv, ctx: Context, ty: Term, fuel: Fuel | int | None = None) -> int:
    """Check that ``ty`` is a type and return its universe level."""
    _closed(ty, ctx)
    return Checker(env, fuel).sort_level(ctx, ty)


def define_global(env: GlobalEnv, name: str, stated_type: Term, body: Term | None,
                  kind: str = DEF, fuel: Fuel | int | None = None, origin: str | None = None) -> GlobalEnv:
    """Check ``stated_type`` is a type and ``body`` inhabits it, then append.

    ``body=None`` declares a statement-only entry: only the type is checked.
    """
    if name in env:
        raise error(E_DUPNAME, f"{name!r} is already defined")
    fuel = _fuel(fuel)
    check_type(env, EMPTY_CTX, stated_type, fuel)
    if body is None:
        kind = STATEMENT
    else:
        check(env, EMPTY_CTX, body, stated_type, fuel)
    return env.extend(Global(name, stated_type, body, kind, origin))
