#!/usr/bin/env python3
# A tour of the kernel: parsing, checking, reduction and fuel.

from clari import Fuel, FuelExhausted, Session, infer, load_stdlib, normalize, parse_term, show
from clari.checker import EMPTY_CTX

lib = load_stdlib()
env = lib.env
print(len(env), "globals in tier 1")

# terms are read from surface syntax; binder names become de Bruijn indices
t = parse_term("fun (A : Type0) (x : A) => x")
print(t)
print(show(infer(env, EMPTY_CTX, t)))

# booleans, recursion and the decidable equality on naturals
for src in ["elimB(b. Bool, true, false, true)", "eqN 4 4", "eqN 4 2",
            "rec Nat 3 4 (fun (k r : Nat) => succ r)"]:
    print(f"{src:45s} ~> {show(normalize(env, parse_term(src)))}")

# every contraction costs one unit of fuel
f = Fuel(1000)
normalize(env, parse_term("eqN 20 20"), f)
print("eqN 20 20 spent", f.spent, "steps")

try:
    normalize(env, parse_term("eqN 200 200"), Fuel(50))
except FuelExhausted as e:
    print("out of fuel:", e.diagnostic.message)

# scripts go through a session, which keeps the environment and any output
s = Session(env=env, hints=lib.hints)
s.run_script("""
def double : Nat -> Nat := fun (n : Nat) => rec Nat n 0 (fun (k r : Nat) => succ (succ r)).
#normalize double 6.
#check double.
""")
print("\n".join(s.output))
