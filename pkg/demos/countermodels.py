#!/usr/bin/env python3
# Finite Heyting algebras refute the constructive readings of classical principles.

from collections import Counter

from clari.heyting import (
    And, Atom, Imp, Not, OrW, SumP, enumerate_algebras, find_countermodel, show_formula,
)

sizes = Counter(h.size for h in enumerate_algebras(6))
print("labeled algebras by size:", dict(sorted(sizes.items())))

a, b = Atom("a"), Atom("b")
candidates = [
    Imp(Not(Not(a)), a),           # double negation elimination
    SumP(a, Not(a)),               # constructive excluded middle
    OrW(a, Not(a)),                # weak excluded middle, unfolded
    Imp(Imp(Imp(a, b), a), a),     # Peirce
    SumP(Not(a), Not(Not(a))),
]

for f in candidates:
    cm = find_countermodel(f, 5)
    if cm is None:
        print(f"{show_formula(f):28s} valid in every algebra up to size 5")
    else:
        print(f"{show_formula(f):28s} fails: size {cm.algebra.size}, {cm.valuation}, value {cm.value}")

print()
print(find_countermodel(Imp(Not(Not(a)), a), 3).render())
