#!/usr/bin/env python3
"""Which propositions admit proof by contradiction?

The prover builds a witness of neg (neg phi) -> phi whenever phi is
built from stable pieces, and otherwise points at the offending
subformula.
"""
from clari import NotStable, emit_classical_rule, load_stdlib, parse_term, prove_stable, show
from clari.checker import EMPTY_CTX, check

lib = load_stdlib()

formulas = [
    "Pi (n : Nat), bracket (eqN n n)",
    "Pi (n m : Nat), EqN n m",
    "orW (Sum(Unit, Void)) Void",
    "dn (Sum(Unit, neg Unit))",
    "Sum(Unit, neg Unit)",
    "Unit -> Pi (n : Nat), and (Sig (m : Nat), bracket (eqN m n)) Unit",
]

for text in formulas:
    res = prove_stable(lib.env, lib.hints, parse_term(text))
    if isinstance(res, NotStable):
        print(f"{text}\n    {res.describe()}\n    at: {show(res.subformula)}")
    else:
        w = show(res.witness)
        print(f"{text}\n    stable by {w if len(w) < 90 else w[:87] + '...'}")

# the classical rules come out as ordinary, kernel-checked terms
phi = parse_term("bracket (eqN 2 3)")
lem = emit_classical_rule(lib.env, "lem", phi)
check(lib.env, EMPTY_CTX, lem, parse_term("orW (bracket (eqN 2 3)) (neg (bracket (eqN 2 3)))"))
print("\nlem at <eqN 2 3>:", show(lem))
