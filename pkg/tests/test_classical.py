import pytest

from clari import (
    ClariError, NotStable, StabilityCertificate, dn_combinator, emit_classical_rule, parse_term,
    prove_stable, register_hint,
)
from clari.checker import EMPTY_CTX, check
from clari.classical import EMPTY_DB, HintDb, stability_type
from clari.reduction import convertible
from clari.term import VOID, App, Const, Lam, Pi, Var, constants, spine


def prove(lib, text, db=None):
    return prove_stable(lib.env, lib.hints if db is None else db, parse_term(text))


def head(t):
    return spine(t)[0]


def test_bottom_certificate(lib):
    cert = prove(lib, "Void")
    assert isinstance(cert, StabilityCertificate)
    expected = Lam(Pi(Pi(VOID, VOID), VOID), App(Var(0), Lam(VOID, Var(0))))
    assert convertible(lib.env, cert.witness, expected)


def test_forall_over_boolean_atom(lib):
    cert = prove(lib, "Pi (n : Nat), bracket (eqN n 0)")
    assert head(cert.witness) == Const("stable_forall")
    assert "stable_boolatom" in constants(cert.witness)


def test_closed_boolean_atoms_evaluate(lib):
    assert prove(lib, "bracket (eqN 2 2)").witness == Const("stable_top")
    assert prove(lib, "bracket (eqN 2 3)").witness == Const("stable_bot")


def test_sum_is_refused(lib):
    res = prove(lib, "Sum(Unit, neg Unit)")
    assert isinstance(res, NotStable)
    assert res.path == ()
    assert "not stable at root" in res.describe()


def test_refusal_path_points_into_formula(lib):
    res = prove(lib, "Unit -> Pi (n : Nat), and Unit (Sig (m : Nat), bracket (eqN m n))")
    assert isinstance(res, NotStable)
    assert res.path == ("cod", "cod", "snd")


def test_hypotheses_are_irrelevant(lib):
    # only the conclusion of an implication needs to be stable
    assert isinstance(prove(lib, "Sum(Unit, Void) -> Void"), StabilityCertificate)


def test_double_negation_head_uses_join(lib):
    cert = prove(lib, "dn (Sum(Unit, Void))")
    assert cert.witness == App(Const("dn_join"), parse_term("Sum(Unit, Void)"))
    cert = prove(lib, "neg (neg (Sum(Unit, Void)))")
    assert head(cert.witness) == Const("dn_join")


def test_stable_hint_discharges_atom(lib):
    cert = prove(lib, "orW (Sum(Unit, Void)) Void")
    assert head(cert.witness) == Const("orW_stable")


def test_decidable_hint_discharges_atom(lib):
    cert = prove(lib, "Pi (n m : Nat), EqN n m")
    assert "dec_stable" in constants(cert.witness)
    assert "EqN_dec" in constants(cert.witness)


def test_hint_with_stability_premises(lib):
    # iff_stable needs both sides stable, proved recursively
    cert = prove(lib, "iff (bracket true) Void")
    assert head(cert.witness) == Const("iff_stable")


def test_without_hints_unfolding_still_works(lib):
    cert = prove(lib, "orW Unit Void", EMPTY_DB)
    assert isinstance(cert, StabilityCertificate)


def test_first_registered_hint_wins(lib):
    from clari import Session
    s = Session(env=lib.env)
    s.run_script("theorem twin : Pi (P : Type0), neg (neg (neg P)) -> neg P := not_stable.")
    for order in (("twin", "not_stable"), ("not_stable", "twin")):
        db = EMPTY_DB
        for name in order:
            db = register_hint(s.env, db, name, "stable")
        cert = prove_stable(s.env, db, parse_term("neg Unit"))
        assert head(cert.witness) == Const(order[0])


def test_register_hint_validates_shape(lib):
    db = register_hint(lib.env, EMPTY_DB, "stable_boolatom", "stable")
    db = register_hint(lib.env, db, "EqN_dec", "decidable")
    assert db.stable == ("stable_boolatom",) and db.decidable == ("EqN_dec",)
    with pytest.raises(ClariError) as info:
        register_hint(lib.env, db, "eqN_refl", "stable")
    assert info.value.diagnostic.code == "E-MISMATCH"
    with pytest.raises(ClariError):
        register_hint(lib.env, db, "stable_boolatom", "decidable")
    with pytest.raises(ClariError) as info:
        register_hint(lib.env, db, "no_such_lemma", "stable")
    assert info.value.diagnostic.code == "E-SCOPE"


def test_only_propositions(lib):
    with pytest.raises(ClariError):
        prove(lib, "Type0")


def test_certificates_recheck(lib):
    for text in ["Unit", "and Unit Void", "Nat -> bracket false", "classically (Sum(Unit, Unit))"]:
        cert = prove(lib, text)
        check(lib.env, EMPTY_CTX, cert.witness, stability_type(parse_term(text)))


def test_lem_rule(lib):
    phi = parse_term("bracket true")
    t = emit_classical_rule(lib.env, "lem", phi)
    check(lib.env, EMPTY_CTX, t, parse_term("neg (and (neg (bracket true)) (neg (neg (bracket true))))"))


def test_weaken_or_rule(lib):
    t = emit_classical_rule(lib.env, "weaken-or", parse_term("Unit"), parse_term("Void"))
    check(lib.env, EMPTY_CTX, t, parse_term("Sum(Unit, Void) -> orW Unit Void"))


def test_weaken_ex_rule(lib):
    t = emit_classical_rule(lib.env, "weaken-ex", parse_term("Nat"), parse_term("fun (n : Nat) => EqN n 0"))
    check(lib.env, EMPTY_CTX, t, parse_term(
        "(Sig (n : Nat), EqN n 0) -> exW Nat (fun (n : Nat) => EqN n 0)"))


def test_orW_elim_chain(lib):
    rule = emit_classical_rule(lib.env, "orW-elim", VOID, VOID, VOID)
    idv = Lam(VOID, Var(0))
    chain = App(App(App(rule, idv), idv), Const("stable_bot"))
    check(lib.env, EMPTY_CTX, chain, parse_term("orW Void Void -> Void"))


def test_exW_elim_and_dn_elim_rules(lib):
    t = emit_classical_rule(lib.env, "exW-elim", parse_term("Nat"),
                            parse_term("fun (n : Nat) => bracket (eqN n 1)"), parse_term("Void"))
    check(lib.env, EMPTY_CTX, t, parse_term(
        "(Pi (a : Nat), bracket (eqN a 1) -> Void) -> (neg (neg Void) -> Void)"
        " -> exW Nat (fun (n : Nat) => bracket (eqN n 1)) -> Void"))
    t = emit_classical_rule(lib.env, "dn-elim", parse_term("Unit"), parse_term("Void"))
    check(lib.env, EMPTY_CTX, t, parse_term("(Unit -> Void) -> (neg (neg Void) -> Void) -> dn Unit -> Void"))


def test_rule_arguments_are_checked(lib):
    with pytest.raises(ClariError):
        emit_classical_rule(lib.env, "lem", parse_term("true"))
    with pytest.raises(ClariError):
        emit_classical_rule(lib.env, "lem")
    with pytest.raises(ClariError):
        emit_classical_rule(lib.env, "excluded-muddle", VOID)


SIGNATURES = {
    "unit": ("P -> dn P", 1),
    "map": ("(P -> Q) -> dn P -> dn Q", 2),
    "join": ("dn (dn P) -> dn P", 1),
    "bind": ("(P -> dn Q) -> dn P -> dn Q", 2),
    "ap": ("dn (P -> Q) -> dn P -> dn Q", 2),
    "map2": ("(P -> Q -> R) -> dn P -> dn Q -> dn R", 3),
}


@pytest.mark.parametrize("kind", sorted(SIGNATURES))
def test_dn_combinators_check_at_signature(lib, kind):
    sig, arity = SIGNATURES[kind]
    formulas = ["Unit", "bracket (eqN 1 2)", "Sum(Bool, Void)"][:arity]
    t = dn_combinator(lib.env, kind, *map(parse_term, formulas))
    assert not constants(t) - {"eqN", "bracket"}
    for name, f in zip("PQR", formulas):
        sig = sig.replace(name, f"({f})")
    check(lib.env, EMPTY_CTX, t, parse_term(sig))


def test_join_is_the_stability_witness_of_dn(lib):
    phi = parse_term("Sum(Unit, Unit)")
    join = dn_combinator(lib.env, "join", phi)
    check(lib.env, EMPTY_CTX, join, stability_type(App(Const("dn"), phi)))


def test_hintdb_is_a_value():
    db = HintDb()
    assert len(db) == 0 and db.entries == ()
