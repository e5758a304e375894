import pytest

from clari import ClariError, parse_term
from clari.checker import EMPTY_CTX, Checker, check, check_type, define_global, infer
from clari.environment import EMPTY, STATEMENT
from clari.reduction import normalize
from clari.term import (
    BOOL, NAT, TRUE, UNIT_TY, VOID, ZERO, App, Const, Lam, NatElim, Pi, Succ, Sum, Univ, Var,
    arrow,
)


def codes(fn, *args):
    with pytest.raises(ClariError) as info:
        fn(*args)
    return info.value.diagnostic.code


def test_identity_has_arrow_type():
    ctx = EMPTY_CTX.extend(Univ(0), "phi")
    assert infer(EMPTY, ctx, Lam(Var(0), Var(0))) == Pi(Var(0), Var(1))


def test_universe_of_universe():
    assert infer(EMPTY, EMPTY_CTX, Univ(0)) == Univ(1)
    assert infer(EMPTY, EMPTY_CTX, Univ(1)) == Univ(2)
    assert codes(infer, EMPTY, EMPTY_CTX, Univ(2)) == "E-UNIV"


def test_constant_motive_recovers_rec():
    t = NatElim(BOOL, Succ(ZERO), TRUE, Var(0))
    assert infer(EMPTY, EMPTY_CTX, t) == BOOL


def test_identity_on_void_checks():
    check(EMPTY, EMPTY_CTX, Lam(VOID, Var(0)), Pi(VOID, VOID))


def test_identity_at_wrong_codomain():
    ctx = EMPTY_CTX.extend(Univ(0), "phi").extend(Univ(0), "psi")
    assert codes(check, EMPTY, ctx, Lam(Var(1), Var(0)), Pi(Var(1), Var(1))) == "E-MISMATCH"


def test_mismatch_reports_normalized_sides(env):
    with pytest.raises(ClariError) as info:
        check(env, EMPTY_CTX, parse_term("unit"), parse_term("neg Unit"))
    d = info.value.diagnostic
    assert d.expected == normalize(env, parse_term("neg Unit"))
    assert d.actual == UNIT_TY


def test_Z_one_is_unit_or_void(env):
    check(env, EMPTY_CTX, parse_term("Z 1"), Univ(0))
    check(env, EMPTY_CTX, parse_term("inl(unit; Void)"), parse_term("Z 1"))
    assert normalize(env, parse_term("Z 1")) == Sum(UNIT_TY, VOID)


def test_not_a_function():
    assert codes(infer, EMPTY, EMPTY_CTX, App(TRUE, TRUE)) == "E-NOTFN"


def test_scope_errors():
    assert codes(infer, EMPTY, EMPTY_CTX, Var(0)) == "E-SCOPE"
    assert codes(infer, EMPTY, EMPTY_CTX, Const("nope")) == "E-SCOPE"


def test_no_quantifying_over_large_universes():
    assert codes(check_type, EMPTY, EMPTY_CTX, parse_term("Pi (A : Type1), A")) == "E-UNIV"


def test_pi_over_type0_lands_in_type1():
    assert check_type(EMPTY, EMPTY_CTX, parse_term("Pi (A : Type0), A")) == 1
    assert check_type(EMPTY, EMPTY_CTX, parse_term("Bool -> Nat")) == 0


def test_cumulativity():
    check(EMPTY, EMPTY_CTX, BOOL, Univ(1))
    check(EMPTY, EMPTY_CTX, BOOL, Univ(2))
    assert codes(check, EMPTY, EMPTY_CTX, Univ(1), Univ(1)) == "E-MISMATCH"


def test_define_negation():
    neg = Lam(Univ(0), arrow(Var(0), VOID), "phi")
    env = define_global(EMPTY, "neg", Pi(Univ(0), Univ(0)), neg)
    assert "neg" in env
    assert infer(env, EMPTY_CTX, App(Const("neg"), UNIT_TY)) == Univ(0)


def test_define_lem_instance(env):
    ty = parse_term("orW (bracket true) (neg (bracket true))")
    env2 = define_global(env, "lem_true", ty, parse_term("lem (bracket true)"))
    assert env2.get("lem_true").proved


def test_duplicate_name():
    env = define_global(EMPTY, "b", BOOL, None)
    assert env.get("b").kind == STATEMENT
    assert codes(define_global, env, "b", BOOL, TRUE) == "E-DUPNAME"


def test_body_checked_against_stated_type():
    assert codes(define_global, EMPTY, "bad", BOOL, ZERO) == "E-MISMATCH"


def test_dependent_bool_elim():
    # a motive that picks the branch type from the boolean
    t = parse_term("fun (b : Bool) => elimB(c. elimB(d. Type0, c, Nat, Bool), b, 0, true)")
    ty = infer(EMPTY, EMPTY_CTX, t)
    assert isinstance(ty, Pi) and ty.domain == BOOL


def test_checker_shares_fuel():
    c = Checker(EMPTY, 5)
    c.infer(EMPTY_CTX, App(Lam(NAT, Var(0)), ZERO))
    assert c.fuel.remaining <= 5
