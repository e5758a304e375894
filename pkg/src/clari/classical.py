"""Stability certificates, hint databases and classical proof-term emitters.

Everything here is untrusted: the emitted terms are re-checked by the
kernel (:mod:`clari.checker`). Emitted proofs refer to the logic core of
the standard library (``neg``, ``stable_and``, ...) by name, so those
globals must be present in the environment passed in.
"""
from __future__ import annotations

from dataclasses import dataclass

from .checker import EMPTY_CTX, Checker, Context
from .diagnostics import E_MISMATCH, E_SCOPE, error
from .environment import GlobalEnv
from .reduction import Fuel, _fuel, normalize, whnf
from .term import (
    SHAPE, App, BoolElim, Const, FF, Lam, Pi, Sigma, Sum, TT, Term, Univ, UnitTy, Var, VoidTy,
    apps, children, instantiate, occurs, shift, spine,
)

STABLE, DECIDABLE = "stable", "decidable"


@dataclass(frozen=True)
class StabilityCertificate:
    """``witness : neg (neg target) -> target``."""

    target: Term
    witness: Term


@dataclass(frozen=True)
class NotStable:
    """Verdict that no stability rule applies at ``path`` (steps from the root)."""

    path: tuple[str, ...]
    subformula: Term
    reason: str

    def describe(self) -> str:
        where = "/".join(self.path) or "root"
        return f"not stable at {where}: {self.reason}"


@dataclass(frozen=True)
class HintDb:
    """Registered hints as ``(kind, name)`` pairs, first registered first tried."""

    entries: tuple[tuple[str, str], ...] = ()

    @property
    def stable(self) -> tuple[str, ...]:
        return tuple(n for k, n in self.entries if k == STABLE)

    @property
    def decidable(self) -> tuple[str, ...]:
        return tuple(n for k, n in self.entries if k == DECIDABLE)

    def __len__(self):
        return len(self.entries)


EMPTY_DB = HintDb()


# -- recognizing negations ---------------------------------------------------

def _unneg(t: Term) -> Term | None:
    match t:
        case App(Const("neg"), x):
            return x
        case Pi(x, VoidTy()):
            return x
    return None


def dn_body(t: Term) -> Term | None:
    """``psi`` when ``t`` is syntactically ``neg (neg psi)`` or ``dn psi``."""
    if isinstance(t, App) and t.fn == Const("dn"):
        return t.arg
    inner = _unneg(t)
    return None if inner is None else _unneg(inner)


def neg(t: Term) -> Term:
    return App(Const("neg"), t)


def stability_type(phi: Term) -> Term:
    """``neg (neg phi) -> phi``."""
    return Pi(neg(neg(phi)), shift(phi, 0, 1), "h")


def _stable_premise(t: Term) -> Term | None:
    """``psi`` when ``t`` is ``neg (neg psi) -> psi``."""
    if not isinstance(t, Pi) or occurs(t.codomain, 0):
        return None
    psi = dn_body(t.domain)
    if psi is not None and psi == shift(t.codomain, 0, -1):
        return psi
    return None


# -- hint shapes -------------------------------------------------------------

def _hint_shape(env: GlobalEnv, ty: Term, kind: str):
    """Return ``(telescope_length, pattern)`` or None if ``ty`` has the wrong shape."""
    k = 0
    t = whnf(env, ty, delta=False)
    while True:
        if kind == STABLE:
            psi = _stable_premise(t)
            if psi is not None and isinstance(spine(psi)[0], Const):
                return k, psi
        elif isinstance(t, Sum):
            n = _unneg(t.right)
            if n is not None and n == t.left and isinstance(spine(t.left)[0], Const):
                return k, t.left
        if not isinstance(t, Pi):
            return None
        k += 1
        t = whnf(env, t.codomain, delta=False)


def register_hint(env: GlobalEnv, db: HintDb, name: str, kind: str) -> HintDb:
    if kind not in (STABLE, DECIDABLE):
        raise error(E_MISMATCH, f"unknown hint kind {kind!r}")
    g = env.get(name)
    if g is None:
        raise error(E_SCOPE, f"unknown constant {name!r}")
    if _hint_shape(env, g.type, kind) is None:
        want = "Pi ..., neg (neg (h ...)) -> h ..." if kind == STABLE else "Pi ..., Sum(h ..., neg (h ...))"
        raise error(E_MISMATCH, f"{name} does not have the shape of a {kind} hint ({want})",
                    actual=g.type)
    return HintDb(db.entries + ((kind, name),))


def _match(pat: Term, t: Term, k: int, depth: int, sub: dict) -> bool:
    """First-order matching; pattern variables are the ``k`` telescope binders."""
    if isinstance(pat, Var) and depth <= pat.index < depth + k:
        slot = pat.index - depth
        if depth and any(occurs(t, i) for i in range(depth)):
            return False
        val = shift(t, 0, -depth) if depth else t
        if slot in sub:
            return sub[slot] == val
        sub[slot] = val
        return True
    if type(pat) is not type(t):
        return False
    if type(pat) not in SHAPE:
        return pat == t
    binders = SHAPE[type(pat)]
    for (_, nb), p, u in zip(binders, children(pat), children(t)):
        if not _match(p, u, k, depth + nb, sub):
            return False
    return True


# -- the prover --------------------------------------------------------------

_REQUIRED = ("neg", "stable_top", "stable_bot", "stable_and", "stable_imp", "stable_forall",
             "stable_boolatom", "dec_stable")


class _Prover:
    def __init__(self, env: GlobalEnv, db: HintDb, fuel: Fuel):
        self.env, self.db, self.fuel = env, db, fuel
        missing = [n for n in _REQUIRED if n not in env]
        if missing:
            raise error(E_SCOPE, "stability inference needs the logic core: missing " + ", ".join(missing))

    def whnf(self, t, delta=False):
        return whnf(self.env, t, self.fuel, delta)

    def prove(self, ctx: Context, phi: Term, path: tuple):
        t = self.whnf(phi)
        while True:
            psi = dn_body(t)
            if psi is not None and "dn_join" in self.env:
                return apps(Const("dn_join"), psi)
            for kind, name in self.db.entries:
                w = self.try_hint(ctx, t, kind, name, path)
                if w is not None:
                    return w
            head, args = spine(t)
            if head == Const("bracket") and len(args) == 1:
                r = normalize(self.env, args[0], self.fuel)
                if r == TT():
                    return Const("stable_top")
                if r == FF():
                    return Const("stable_bot")
                return App(Const("stable_boolatom"), args[0])
            if isinstance(head, Const) and self.env.body(head.name) is not None:
                self.fuel.spend(t)
                t = self.whnf(apps(self.env.body(head.name), *args))
                continue
            break
        return self.structural(ctx, t, path)

    def structural(self, ctx: Context, t: Term, path: tuple):
        match t:
            case UnitTy():
                return Const("stable_top")
            case VoidTy():
                return Const("stable_bot")
            case Pi(a, b) if not occurs(b, 0):
                b0 = shift(b, 0, -1)
                w = self.prove(ctx, b0, path + ("cod",))
                if isinstance(w, NotStable):
                    return w
                return apps(Const("stable_imp"), a, b0, w)
            case Pi(a, b):
                w = self.prove(ctx.extend(a, t.name), b, path + ("cod",))
                if isinstance(w, NotStable):
                    return w
                return apps(Const("stable_forall"), a, Lam(a, b, t.name), Lam(a, w, t.name))
            case Sigma(a, b) if not occurs(b, 0):
                b0 = shift(b, 0, -1)
                wa = self.prove(ctx, a, path + ("fst",))
                if isinstance(wa, NotStable):
                    return wa
                wb = self.prove(ctx, b0, path + ("snd",))
                if isinstance(wb, NotStable):
                    return wb
                return apps(Const("stable_and"), a, b0, wa, wb)
            case Sigma():
                return NotStable(path, t, "dependent pair (constructive existential)")
            case Sum():
                return NotStable(path, t, "sum (constructive disjunction)")
            case BoolElim(m, b, x, y):
                # stuck case analysis on a boolean: prove both branches
                wx = self.prove(ctx, x, path + ("true",))
                if isinstance(wx, NotStable):
                    return wx
                wy = self.prove(ctx, y, path + ("false",))
                if isinstance(wy, NotStable):
                    return wy
                motive = stability_type(m)
                return BoolElim(motive, b, wx, wy, t.names)
        return NotStable(path, t, "no stability rule applies")

    def try_hint(self, ctx: Context, goal: Term, kind: str, name: str, path: tuple):
        g = self.env.get(name)
        if g is None:
            return None
        shape = _hint_shape(self.env, g.type, kind)
        if shape is None:
            return None
        k, pattern = shape
        sub: dict = {}
        goal_n = normalize(self.env, goal, self.fuel, delta=False)
        if not _match(normalize(self.env, pattern, self.fuel, delta=False), goal_n, k, 0, sub):
            return None
        # instantiate the telescope left to right; unmatched slots must be stability premises
        args = []
        t = self.whnf(g.type)
        for i in range(k):
            slot = k - 1 - i
            if slot in sub:
                arg = sub[slot]
            else:
                psi = _stable_premise(self.whnf(t.domain))
                if psi is None:
                    return None
                arg = self.prove(ctx, psi, path + (f"{name}#{i}",))
                if isinstance(arg, NotStable):
                    return None
            args.append(arg)
            t = self.whnf(instantiate(t.codomain, arg))
        w = apps(Const(name), *args)
        if kind == DECIDABLE:
            return apps(Const("dec_stable"), goal, w)
        return w


def prove_stable(env: GlobalEnv, db: HintDb, phi: Term, ctx: Context = EMPTY_CTX,
                 fuel: Fuel | int | None = None, verify: bool = True):
    """Certificate that ``neg (neg phi) -> phi`` is provable, or a NotStable verdict.

    ``phi`` must be a proposition (a type in ``Type0``) in ``ctx``. With
    ``verify`` the certificate is re-checked by the kernel before returning.
    """
    fuel = _fuel(fuel)
    checker = Checker(env, fuel)
    level = checker.sort_level(ctx, phi)
    if level != 0:
        raise error(E_MISMATCH, "stability applies to propositions in Type0", Univ(0), Univ(level))
    w = _Prover(env, db, fuel).prove(ctx, phi, ())
    if isinstance(w, NotStable):
        return w
    cert = StabilityCertificate(phi, w)
    if verify:
        checker.check(ctx, w, stability_type(phi))
    return cert


# -- classical rules ---------------------------------------------------------

_RULES = {
    # kind: (constant, argument sorts); "A" is a Type0 domain, "P" a family over the previous A
    "orW-elim": ("orW_elim", ("prop", "prop", "prop")),
    "exW-elim": ("exW_elim", ("A", "P", "prop")),
    "dn-elim": ("dn_elim", ("prop", "prop")),
    "lem": ("lem", ("prop",)),
    "weaken-or": ("weaken_or", ("prop", "prop")),
    "weaken-ex": ("weaken_ex", ("A", "P")),
}


def _check_args(env: GlobalEnv, sorts, args, ctx: Context, fuel: Fuel) -> None:
    if len(sorts) != len(args):
        raise error(E_MISMATCH, f"expected {len(sorts)} arguments, got {len(args)}")
    checker = Checker(env, fuel)
    domain = None
    for sort, a in zip(sorts, args):
        if sort == "P":
            checker.check(ctx, a, Pi(domain, Univ(0), "a"))
        else:
            checker.check(ctx, a, Univ(0))
            domain = a


def emit_classical_rule(env: GlobalEnv, kind: str, *args: Term, ctx: Context = EMPTY_CTX,
                        fuel: Fuel | int | None = None) -> Term:
    """Proof term for one of the derived classical rules, instantiated at ``args``.

    Kinds: ``orW-elim`` (P Q R), ``exW-elim`` (A P R), ``dn-elim`` (P R),
    ``lem`` (P), ``weaken-or`` (P Q), ``weaken-ex`` (A P).
    """
    if kind not in _RULES:
        raise error(E_MISMATCH, f"unknown classical rule {kind!r}")
    name, sorts = _RULES[kind]
    if name not in env:
        raise error(E_SCOPE, f"rule {kind} needs the stdlib constant {name}")
    fuel = _fuel(fuel)
    _check_args(env, sorts, args, ctx, fuel)
    return apps(Const(name), *args)


# Closed templates for the double-negation monad; formulas are the leading
# Type0 parameters. NN(X) is written out as ((X -> Void) -> Void).

def _nn(x: str) -> str:
    return f"((({x}) -> Void) -> Void)"


_UNIT = "(fun (P : Type0) (a : P) (k : P -> Void) => k a)"
_MAP = ("(fun (P Q : Type0) (f : P -> Q) (x : " + _nn("P") + ") (k : Q -> Void) =>"
        " x (fun (a : P) => k (f a)))")
_JOIN = ("(fun (P : Type0) (x : " + _nn(_nn("P")) + ") (k : P -> Void) =>"
         " x (" + _UNIT + " (P -> Void) k))")
_BIND = ("(fun (P Q : Type0) (f : P -> " + _nn("Q") + ") (x : " + _nn("P") + ") =>"
         f" {_JOIN} Q ({_MAP} P {_nn('Q')} f x))")
_AP = ("(fun (P Q : Type0) (f : " + _nn("P -> Q") + ") (x : " + _nn("P") + ") =>"
       f" {_BIND} (P -> Q) Q (fun (g : P -> Q) => {_MAP} P Q g x) f)")
_MAP2 = ("(fun (P Q R : Type0) (f : P -> Q -> R) (x : " + _nn("P") + ") (y : " + _nn("Q") + ") =>"
         f" {_AP} Q R ({_AP} P (Q -> R) ({_UNIT} (P -> Q -> R) f) x) y)")

_DN_TEMPLATES = {"unit": (_UNIT, 1), "map": (_MAP, 2), "join": (_JOIN, 1),
                 "bind": (_BIND, 2), "ap": (_AP, 2), "map2": (_MAP2, 3)}
_template_cache: dict[str, Term] = {}


def dn_combinator(env: GlobalEnv, kind: str, *formulas: Term, ctx: Context = EMPTY_CTX,
                  fuel: Fuel | int | None = None) -> Term:
    """Raw lambda term for a double-negation monad combinator at ``formulas``.

    The result does not mention any global constant.
    """
    if kind not in _DN_TEMPLATES:
        raise error(E_MISMATCH, f"unknown combinator {kind!r}")
    src, arity = _DN_TEMPLATES[kind]
    fuel = _fuel(fuel)
    _check_args(env, ("prop",) * arity, formulas, ctx, fuel)
    if kind not in _template_cache:
        from .syntax import parse_term
        _template_cache[kind] = parse_term(src, f"<dn {kind}>")
    t = _template_cache[kind]
    for phi in formulas:
        t = instantiate(t.body, phi)
    return t
