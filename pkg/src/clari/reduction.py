"""Reduction, normalization and convertibility.

The strategy is leftmost-outermost. Children are visited in field order,
except that an eliminator visits its scrutinee first: the scrutinee is the
position that decides whether the eliminator itself becomes a redex.
``normalize`` is a head-first recursive reducer that contracts exactly the
redexes ``step`` would, in the same order, and spends one unit of fuel per
contraction.
"""
from __future__ import annotations

from .diagnostics import Diagnostic, ClariError, E_FUEL
from .environment import GlobalEnv
from .term import (
    App, BoolElim, Const, ELIMINATORS, FF, Inl, Inr, Lam, NatElim, Pair, SHAPE, SigElim,
    Succ, SumElim, TT, Term, Zero, children, instantiate, instantiate2, rebuild,
)

DEFAULT_FUEL = 1_000_000


class FuelExhausted(ClariError):
    def __init__(self, partial: Term):
        super().__init__(Diagnostic(E_FUEL, "reduction fuel exhausted", actual=partial))
        self.partial = partial


class Fuel:
    """Budget of redex contractions; running out raises FuelExhausted."""

    __slots__ = ("remaining", "spent")

    def __init__(self, remaining: int = DEFAULT_FUEL):
        self.remaining = remaining
        self.spent = 0

    def spend(self, partial: Term) -> None:
        if self.remaining <= 0:
            raise FuelExhausted(partial)
        self.remaining -= 1
        self.spent += 1

    def __repr__(self):
        return f"Fuel(remaining={self.remaining})"


def _fuel(fuel: Fuel | int | None) -> Fuel:
    if fuel is None:
        return Fuel()
    if isinstance(fuel, int):
        return Fuel(fuel)
    return fuel


def _order(t: Term) -> range | tuple:
    n = len(SHAPE[type(t)])
    if isinstance(t, ELIMINATORS):
        return (1, 0) + tuple(range(2, n))
    return range(n)


def contract(env: GlobalEnv, t: Term, delta: bool = True) -> Term | None:
    """Contract ``t`` if its root is a redex, else return None."""
    match t:
        case App(Lam(_, body), arg):
            return instantiate(body, arg)
        case BoolElim(_, TT(), x, _):
            return x
        case BoolElim(_, FF(), _, y):
            return y
        case NatElim(_, Zero(), z, _):
            return z
        case NatElim(m, Succ(n), z, f):
            return instantiate2(f, n, NatElim(m, n, z, f, t.names))
        case SumElim(_, Inl(a, _), left, _):
            return instantiate(left, a)
        case SumElim(_, Inr(b, _), _, right):
            return instantiate(right, b)
        case SigElim(_, Pair(a, b, _), branch):
            return instantiate2(branch, a, b)
        case Const(name) if delta:
            return env.body(name)
    return None


def step(env: GlobalEnv, t: Term, delta: bool = True) -> Term | None:
    """Contract the leftmost-outermost redex of ``t``; None when ``t`` is normal."""
    r = contract(env, t, delta)
    if r is not None:
        return r
    if type(t) not in SHAPE:
        return None
    kids = list(children(t))
    for i in _order(t):
        s = step(env, kids[i], delta)
        if s is not None:
            kids[i] = s
            return rebuild(t, kids)
    return None


def whnf(env: GlobalEnv, t: Term, fuel: Fuel | int | None = None, delta: bool = True) -> Term:
    """Reduce ``t`` until its root can no longer become a redex."""
    fuel = _fuel(fuel)
    while True:
        if isinstance(t, App):
            try:
                f = whnf(env, t.fn, fuel, delta)
            except FuelExhausted as e:
                raise FuelExhausted(App(e.partial, t.arg)) from None
            if isinstance(f, Lam):
                fuel.spend(App(f, t.arg))
                t = instantiate(f.body, t.arg)
                continue
            return t if f is t.fn else App(f, t.arg)
        if isinstance(t, ELIMINATORS):
            kids = list(children(t))
            try:
                kids[1] = whnf(env, t.scrutinee, fuel, delta)
            except FuelExhausted as e:
                kids[1] = e.partial
                raise FuelExhausted(rebuild(t, kids)) from None
            head = rebuild(t, kids)
            r = contract(env, head, delta)
            if r is None:
                return head
            fuel.spend(head)
            t = r
            continue
        if isinstance(t, Const) and delta:
            body = env.body(t.name)
            if body is None:
                return t
            fuel.spend(t)
            t = body
            continue
        return t


def normalize(env: GlobalEnv, t: Term, fuel: Fuel | int | None = None, delta: bool = True) -> Term:
    """Full normal form, reducing under binders; FuelExhausted carries the partial term."""
    fuel = _fuel(fuel)
    t = whnf(env, t, fuel, delta)
    if type(t) not in SHAPE:
        return t
    kids = list(children(t))
    for i in _order(t):
        try:
            kids[i] = normalize(env, kids[i], fuel, delta)
        except FuelExhausted as e:
            kids[i] = e.partial
            raise FuelExhausted(rebuild(t, kids)) from None
    return rebuild(t, kids)


def convertible(env: GlobalEnv, t: Term, u: Term, fuel: Fuel | int | None = None) -> bool:
    """Whether ``t`` and ``u`` have alpha-equal normal forms.

    Compared lazily: both sides go to weak head normal form and the
    comparison recurses into children only when the heads agree. Without
    eta this decides the same relation as comparing full normal forms.
    """
    fuel = _fuel(fuel)
    if t == u:
        return True
    # Same head constant applied to convertible arguments needs no unfolding.
    if isinstance(t, App) and isinstance(u, App):
        ht, hu = _head(t), _head(u)
        if isinstance(ht, Const) and ht == hu and _args_convertible(env, t, u, fuel):
            return True
    t = whnf(env, t, fuel)
    u = whnf(env, u, fuel)
    if t == u:
        return True
    if type(t) is not type(u):
        return False
    kt, ku = children(t), children(u)
    if not kt:
        return False  # distinct leaves
    return all(convertible(env, a, b, fuel) for a, b in zip(kt, ku))


def _head(t: Term) -> Term:
    while isinstance(t, App):
        t = t.fn
    return t


def _args_convertible(env, t, u, fuel) -> bool:
    while isinstance(t, App) and isinstance(u, App):
        if not convertible(env, t.arg, u.arg, fuel):
            return False
        t, u = t.fn, u.fn
    return not isinstance(t, App) and not isinstance(u, App)
