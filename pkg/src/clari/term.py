"""Abstract syntax for the unified term/type language.

Variables are de Bruijn indices: ``Var(0)`` is the innermost enclosing
binder. Binder names (``name``/``names`` fields) are printing hints only and
never take part in equality, so ``==`` on terms is alpha-equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union


class NegativeIndex(ValueError):
    """A shift would push a free variable below index 0."""


class ScopeError(ValueError):
    """A variable index points past every enclosing binder and context entry."""

    def __init__(self, index: int, depth: int):
        super().__init__(f"variable #{index} is out of scope (only {depth} binders in scope)")
        self.index = index
        self.depth = depth


_frozen = dataclass(frozen=True)


@_frozen
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise NegativeIndex(f"negative de Bruijn index {self.index}")


@_frozen
class Univ:
    level: int

    def __post_init__(self):
        if self.level not in (0, 1, 2):
            raise ValueError(f"universe level must be 0, 1 or 2, got {self.level}")


@_frozen
class Pi:
    domain: Term
    codomain: Term
    name: str = field(default="x", compare=False)


@_frozen
class Lam:
    annotation: Term
    body: Term
    name: str = field(default="x", compare=False)


@_frozen
class App:
    fn: Term
    arg: Term


@_frozen
class Sigma:
    first: Term
    second: Term
    name: str = field(default="x", compare=False)


@_frozen
class Pair:
    fst: Term
    snd: Term
    as_type: Term


@_frozen
class SigElim:
    motive: Term
    scrutinee: Term
    branch: Term
    names: tuple = field(default=("p", "a", "b"), compare=False)


@_frozen
class Sum:
    left: Term
    right: Term


@_frozen
class Inl:
    payload: Term
    other_type: Term


@_frozen
class Inr:
    payload: Term
    other_type: Term


@_frozen
class SumElim:
    motive: Term
    scrutinee: Term
    left_branch: Term
    right_branch: Term
    names: tuple = field(default=("s", "x", "y"), compare=False)


@_frozen
class UnitTy:
    pass


@_frozen
class UnitVal:
    pass


@_frozen
class VoidTy:
    pass


@_frozen
class VoidElim:
    motive: Term
    scrutinee: Term
    names: tuple = field(default=("v",), compare=False)


@_frozen
class BoolTy:
    pass


@_frozen
class TT:
    pass


@_frozen
class FF:
    pass


@_frozen
class BoolElim:
    motive: Term
    scrutinee: Term
    if_true: Term
    if_false: Term
    names: tuple = field(default=("b",), compare=False)


@_frozen
class NatTy:
    pass


@_frozen
class Zero:
    pass


@_frozen
class Succ:
    pred: Term


@_frozen
class NatElim:
    motive: Term
    scrutinee: Term
    zero_case: Term
    succ_case: Term
    names: tuple = field(default=("n", "k", "ih"), compare=False)


@_frozen
class Const:
    name: str


Term = Union[
    Var, Univ, Pi, Lam, App, Sigma, Pair, SigElim, Sum, Inl, Inr, SumElim,
    UnitTy, UnitVal, VoidTy, VoidElim, BoolTy, TT, FF, BoolElim,
    NatTy, Zero, Succ, NatElim, Const,
]

LEAVES = (Var, Univ, UnitTy, UnitVal, VoidTy, BoolTy, TT, FF, NatTy, Zero, Const)

# Term-valued fields of each node and how many binders each one sits under.
SHAPE: dict[type, tuple[tuple[str, int], ...]] = {
    Pi: (("domain", 0), ("codomain", 1)),
    Lam: (("annotation", 0), ("body", 1)),
    App: (("fn", 0), ("arg", 0)),
    Sigma: (("first", 0), ("second", 1)),
    Pair: (("fst", 0), ("snd", 0), ("as_type", 0)),
    SigElim: (("motive", 1), ("scrutinee", 0), ("branch", 2)),
    Sum: (("left", 0), ("right", 0)),
    Inl: (("payload", 0), ("other_type", 0)),
    Inr: (("payload", 0), ("other_type", 0)),
    SumElim: (("motive", 1), ("scrutinee", 0), ("left_branch", 1), ("right_branch", 1)),
    VoidElim: (("motive", 1), ("scrutinee", 0)),
    BoolElim: (("motive", 1), ("scrutinee", 0), ("if_true", 0), ("if_false", 0)),
    Succ: (("pred", 0),),
    NatElim: (("motive", 1), ("scrutinee", 0), ("zero_case", 0), ("succ_case", 2)),
}

ELIMINATORS = (SigElim, SumElim, VoidElim, BoolElim, NatElim)

# Singletons for the nullary constructors; equality is structural anyway.
UNIT_TY, UNIT, VOID, BOOL, TRUE, FALSE, NAT, ZERO = (
    UnitTy(), UnitVal(), VoidTy(), BoolTy(), TT(), FF(), NatTy(), Zero()
)


def children(t: Term) -> tuple:
    """Term-valued fields of ``t`` in declaration order."""
    shape = SHAPE.get(type(t))
    if shape is None:
        return ()
    return tuple(getattr(t, f) for f, _ in shape)


def rebuild(t: Term, kids) -> Term:
    """Copy ``t`` with its term-valued fields replaced by ``kids``.

    Returns ``t`` itself when nothing changed, which keeps sharing intact.
    """
    shape = SHAPE[type(t)]
    old = [getattr(t, f) for f, _ in shape]
    if all(a is b for a, b in zip(old, kids)):
        return t
    cls = type(t)
    if cls in (Pi, Lam, Sigma):
        return cls(*kids, t.name)
    if cls in ELIMINATORS:
        return cls(*kids, t.names)
    return cls(*kids)


def free_bound(t: Term) -> int:
    """One more than the largest free index of ``t`` (0 when closed); cached per node."""
    cached = t.__dict__.get("_fb")
    if cached is not None:
        return cached
    if isinstance(t, Var):
        b = t.index + 1
    else:
        b = 0
        for f, k in SHAPE.get(type(t), ()):
            b = max(b, free_bound(getattr(t, f)) - k)
    object.__setattr__(t, "_fb", b)
    return b


def map_vars(t: Term, on_var: Callable[[int, int], Term], cutoff: int = 0, fixed: int = 0) -> Term:
    """Rebuild ``t`` replacing each variable via ``on_var(index, binders_entered + cutoff)``.

    ``on_var`` must leave indices below ``fixed + cutoff`` alone; subterms
    with no larger free index are returned as they are.
    """
    if free_bound(t) <= fixed + cutoff:
        return t
    if isinstance(t, Var):
        return on_var(t.index, cutoff)
    kids = [map_vars(getattr(t, f), on_var, cutoff + k, fixed) for f, k in SHAPE[type(t)]]
    return rebuild(t, kids)


def shift(t: Term, cutoff: int, amount: int) -> Term:
    """Displace free variables with index >= ``cutoff`` by ``amount``."""
    if amount == 0:
        return t

    def on_var(k: int, c: int) -> Term:
        if k < c:
            return Var(k)
        if k + amount < 0:
            raise NegativeIndex(f"shifting #{k} by {amount} goes below zero")
        return Var(k + amount)

    return map_vars(t, on_var, cutoff)


def subst(t: Term, target: int, replacement: Term) -> Term:
    """Replace ``Var(target)`` by ``replacement`` and remove that binder.

    ``replacement`` is written in the context of the result, i.e. the context
    of ``t`` with the target entry deleted. Free variables above the target
    drop by one.
    """

    def on_var(k: int, c: int) -> Term:
        j = target + c
        if k == j:
            return shift(replacement, 0, c)
        if k > j:
            return Var(k - 1)
        return Var(k)

    return map_vars(t, on_var, 0, target)


def instantiate(body: Term, arg: Term) -> Term:
    """Body of a one-binder form applied to ``arg`` (beta for one binder)."""
    return subst(body, 0, arg)


def instantiate2(body: Term, outer: Term, inner: Term) -> Term:
    """Body of a two-binder form; ``outer`` fills Var 1 and ``inner`` fills Var 0."""
    return subst(subst(body, 0, shift(inner, 0, 1)), 0, outer)


def alpha_eq(t: Term, u: Term) -> bool:
    return t == u


def occurs(t: Term, index: int) -> bool:
    """Whether ``Var(index)`` occurs free in ``t``."""
    if isinstance(t, Var):
        return t.index == index
    shape = SHAPE.get(type(t))
    if shape is None:
        return False
    return any(occurs(getattr(t, f), index + k) for f, k in shape)


def check_scope(t: Term, depth: int) -> None:
    """Raise ScopeError if a variable escapes ``depth`` enclosing entries."""
    if isinstance(t, Var):
        if t.index >= depth:
            raise ScopeError(t.index, depth)
        return
    shape = SHAPE.get(type(t))
    if shape is None:
        return
    for f, k in shape:
        check_scope(getattr(t, f), depth + k)


def constants(t: Term) -> set[str]:
    """Names of every global constant referenced in ``t``."""
    out: set[str] = set()

    def walk(u: Term) -> None:
        if isinstance(u, Const):
            out.add(u.name)
            return
        for kid in children(u):
            walk(kid)

    walk(t)
    return out


def size(t: Term) -> int:
    return 1 + sum(size(kid) for kid in children(t))


# -- small constructors used throughout -------------------------------------

def arrow(a: Term, b: Term) -> Pi:
    """Non-dependent function type ``a -> b`` (``b`` written outside the binder)."""
    return Pi(a, shift(b, 0, 1), "_")


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list]:
    """Split an application ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def numeral(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> int | None:
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.pred
    return n if isinstance(t, Zero) else None
