"""Acceptance criteria, one check per criterion at its stated tolerance.

Run under pytest (results appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import itertools
import time
from functools import lru_cache

import pytest

from clari import NotStable, StabilityCertificate, check, load_stdlib, normalize, parse_term, prove_stable
from clari.checker import EMPTY_CTX
from clari.classical import stability_type
from clari.environment import STATEMENT, THEOREM
from clari.heyting import (
    And, Atom, Bot, Imp, Not, SumP, Top, boolean_algebra, chain, enumerate_algebras, eval_formula,
    find_countermodel, statement_formula,
)
from clari.term import FALSE, TRUE, App, Const, numeral

try:
    from conftest import ACCEPTANCE
except ImportError:  # pragma: no cover
    ACCEPTANCE = {}


@lru_cache(maxsize=None)
def tier1():
    return load_stdlib(tiers=(1,))


def record(n: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (title, ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {n}. {title} ({detail})")


# -- 1. reduction conformance --------------------------------------------------

GOLDEN = [
    # (input, expected normal form)
    ("elimB(b. Nat, true, 1, 2)", "1"),
    ("elimB(b. Nat, false, 1, 2)", "2"),
    ("elimN(k. Bool, zero, true, m r. false)", "true"),
    ("elimN(k. Nat, 2, 5, m r. succ r)", "7"),
    ("(fun (x : Nat) => succ x) 4", "5"),
    ("elimS(s. Nat, inl(true; Nat), x. 0, y. y)", "0"),
    ("elimS(s. Nat, inr(3; Bool), x. 0, y. y)", "3"),
    ("elimSig(p. Bool, pair(true, 0 : Sig (b : Bool), Nat), a b. a)", "true"),
    ("eqN 3 3", "true"),
    ("eqN 3 2", "false"),
    ("fun (n : Nat) => (fun (m : Nat) => m) (succ n)", "fun (n : Nat) => succ n"),
    ("rec Nat 2 1 (fun (k r : Nat) => elimN(j. Nat, r, 0, a b. succ (succ r)))", "5"),
]


def unary_equal(n: int, m: int) -> bool:
    a, b = "|" * n, "|" * m
    while a and b:
        a, b = a[1:], b[1:]
    return not a and not b


def criterion_1():
    env = tier1().env
    t0 = time.perf_counter()
    bad = [src for src, want in GOLDEN
           if normalize(env, parse_term(src)) != normalize(env, parse_term(want))]
    # the expected sides are themselves normal forms
    bad += [want for _, want in GOLDEN if normalize(env, parse_term(want)) != parse_term(want)]
    for n, m in itertools.product(range(6), repeat=2):
        got = normalize(env, App(App(Const("eqN"), numeral(n)), numeral(m)))
        if got != (TRUE if unary_equal(n, m) else FALSE):
            bad.append(f"eqN {n} {m}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    return ok, f"{len(GOLDEN)} golden cases + 36 oracle pairs, {len(bad)} mismatches, {dt:.2f}s < 1s"


# -- 2. tier-1 load ------------------------------------------------------------

TIER1_NAMES = """
lem weaken_or weaken_ex stable_top stable_bot stable_and stable_imp stable_forall stable_boolatom
orW_elim exW_elim dn_elim dn_unit dn_map dn_join dn_bind dn_ap dn_map2
dn_law_unit_left dn_law_unit_right dn_law_assoc or_dn_equiv classically_iff_dn
Omega EquivRel Respectful funSetoid propEq subSetoid quotient StableSetoid
""".split()


def criterion_2():
    t0 = time.perf_counter()
    lib = load_stdlib(tiers=(1,))
    dt = time.perf_counter() - t0
    missing = [n for n in TIER1_NAMES if n not in lib.env]
    laws = [lib.env[n].type for n in ("dn_law_unit_left", "dn_law_unit_right", "dn_law_assoc")
            if n in lib.env]
    as_iff = all(_conclusion_head(t) == Const("iff") for t in laws) and len(laws) == 3
    ok = len(lib.env) >= 25 and not missing and as_iff and dt < 10.0
    return ok, f"{len(lib.env)} globals, missing {missing or 'none'}, laws as iff: {as_iff}, {dt:.2f}s < 10s"


def _conclusion_head(ty):
    from clari.term import Pi, spine
    while isinstance(ty, Pi):
        ty = ty.codomain
    return spine(ty)[0]


# -- 3. stability suite --------------------------------------------------------

STABLE = [
    "Unit",
    "Void",
    "and Unit Void",
    "Pi (n : Nat), bracket (eqN n n)",
    "bracket (eqN 3 3)",
    "bracket (eqN 3 2)",
    "Sum(Unit, Void) -> Void",
    "dn (Sum(Unit, neg Unit))",
    "neg (neg (Sig (n : Nat), bracket (eqN n 0)))",
    "orW (Sum(Unit, Void)) Void",  # discharged by a stable hint
    "Pi (n m : Nat), EqN n m",  # discharged by a decidability hint
    "Pi (b : Bool), and (bracket b -> bracket b) (neg (bracket b) -> Unit)",
    "Pi (n m : Nat), and (bracket (eqN n m)) (Unit -> Void)",
    "Nat -> and Unit (dn (Sum(Unit, Void)))",
]

NOT_STABLE = [
    ("Sum(Unit, neg Unit)", ()),
    ("Sig (n : Nat), bracket (eqN n 0)", ()),
    ("Pi (n : Nat), Sum(bracket (eqN n 0), neg (bracket (eqN n 0)))", ("cod",)),
    ("and Unit (Sum(Unit, Void))", ("snd",)),
    ("Unit -> Pi (n : Nat), and (Sig (m : Nat), bracket (eqN m n)) Unit", ("cod", "cod", "fst")),
    ("and (Pi (b : Bool), Sum(bracket b, Unit)) Void", ("fst", "cod")),
]


def criterion_3():
    lib = tier1()
    certified = 0
    for text in STABLE:
        phi = parse_term(text)
        res = prove_stable(lib.env, lib.hints, phi, verify=False)
        if isinstance(res, StabilityCertificate):
            check(lib.env, EMPTY_CTX, res.witness, stability_type(phi))
            certified += 1
    located = 0
    for text, path in NOT_STABLE:
        res = prove_stable(lib.env, lib.hints, parse_term(text))
        located += isinstance(res, NotStable) and res.path == path
    ok = certified == len(STABLE) and located == len(NOT_STABLE)
    return ok, f"{certified}/{len(STABLE)} certified and re-checked, {located}/{len(NOT_STABLE)} refused at the expected path"


# -- 4. countermodels ----------------------------------------------------------

def all_formulas(depth: int):
    """Formulas over a, b, c, top, bot whose tree depth (a leaf counts 1) is at most ``depth``."""
    layer = [Atom("a"), Atom("b"), Atom("c"), Top(), Bot()]
    for _ in range(depth - 1):
        layer = layer[:5] + [op(x, y) for op in (And, Imp, SumP) for x in layer for y in layer]
    return layer


def truth(f, v):
    match f:
        case Atom(n):
            return v[n]
        case Top():
            return True
        case Bot():
            return False
        case And(x, y):
            return truth(x, v) and truth(y, v)
        case SumP(x, y):
            return truth(x, v) or truth(y, v)
        case Imp(x, y):
            return (not truth(x, v)) or truth(y, v)


def criterion_4():
    a = Atom("a")
    c3 = chain(3)
    t0 = time.perf_counter()
    first = [find_countermodel(f, 3) for f in (Imp(Not(Not(a)), a), SumP(a, Not(a)))]
    t_first = time.perf_counter() - t0
    chain_ok = all(cm is not None and cm.algebra == c3 and cm.valuation == {"a": 1} for cm in first)
    t0 = time.perf_counter()
    weak = find_countermodel(Not(And(Not(a), Not(Not(a)))), 5)
    t_weak = time.perf_counter() - t0
    h = boolean_algebra()
    forms = all_formulas(3)
    mismatches = 0
    for f in forms:
        for bits in itertools.product((0, 1), repeat=3):
            v = dict(zip("abc", bits))
            mismatches += (eval_formula(h, v, f) == h.top) != truth(f, {k: bool(x) for k, x in v.items()})
    ok = chain_ok and t_first < 1.0 and weak is None and t_weak < 60.0 and mismatches == 0
    return ok, (f"3-chain a=middle: {chain_ok} in {t_first:.2f}s; weak LEM to size 5: "
                f"{'none' if weak is None else 'found'} in {t_weak:.2f}s; "
                f"{len(forms)} formulas x 8 valuations, {mismatches} mismatches")


# -- 5. property suites --------------------------------------------------------

def criterion_5():
    import test_properties as tp

    lib = tier1()
    runs = [
        ("subject reduction x500", lambda: tp.test_subject_reduction(lib.env)),
        ("normalize idempotence x500", lambda: tp.test_normalize_is_idempotent(lib.env)),
        ("shift/subst cancellation x1000", tp.test_shift_then_subst_cancels),
    ]
    failures = []
    for name, run in runs:
        try:
            run()
        except Exception as e:  # a falsified property
            failures.append(f"{name}: {type(e).__name__}")
    from clari import parse_script, show_decl
    from clari.corpus import stdlib_files
    decls = 0
    for path in stdlib_files():
        for d in parse_script(path.read_text(), str(path)):
            decls += 1
            if parse_script(show_decl(d)) != [d]:
                failures.append(f"round trip: {path.name}")
    return not failures, f"{len(runs)} generated suites + {decls} corpus declarations round-tripped, failures: {failures or 'none'}"


# -- 6. soundness smoke test ---------------------------------------------------

def criterion_6():
    lib = tier1()
    t0 = time.perf_counter()
    algebras = list(enumerate_algebras(4))
    checked, failures = 0, []
    for g in lib.env:
        if g.kind != THEOREM:
            continue
        f = statement_formula(g.type, lib.env)
        if f is None:
            continue
        checked += 1
        from clari.heyting import atoms, valuations
        names = atoms(f)
        for h in algebras:
            if any(eval_formula(h, v, f) != h.top for v in valuations(h, names)):
                failures.append(g.name)
                break
    dt = time.perf_counter() - t0
    ok = checked > 0 and not failures and dt < 30.0
    return ok, f"{checked} propositional theorems x {len(algebras)} algebras, failures: {failures or 'none'}, {dt:.2f}s < 30s"


# -- 7. tier 2 (stretch) -------------------------------------------------------

def criterion_7():
    lib = load_stdlib(tiers=(2,))
    env = lib.env
    proved = ["WPVlaw1", "WPVlaw2"]
    statements = ["WPVlaw3", "WVlaw3", "gcdExists", "pigeonhole"]
    ok = (all(env[n].proved for n in proved)
          and all(env[n].kind == STATEMENT for n in statements))
    c = lib.counts((2,))
    return ok, f"tier 2: {c['defs']} defs, {c['theorems']} proved, {c['statements']} statement-only"


CRITERIA = {
    1: ("reduction conformance", criterion_1),
    2: ("stdlib tier-1 load", criterion_2),
    3: ("stability suite", criterion_3),
    4: ("countermodels", criterion_4),
    5: ("property suites", criterion_5),
    6: ("soundness smoke test", criterion_6),
    7: ("tier-2 stretch", criterion_7),
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    title, fn = CRITERIA[n]
    ok, detail = fn()
    record(n, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    import sys
    failed = 0
    for n, (title, fn) in sorted(CRITERIA.items()):
        ok, detail = fn()
        record(n, title, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
