#!/usr/bin/env python3
"""Tier 2: weak values, gcd on unary naturals, and what is left as statements."""
import math

from clari import load_stdlib, normalize, parse_term
from clari.environment import STATEMENT
from clari.term import as_numeral

lib = load_stdlib(tiers=(2,))
env = lib.env

for tier in (1, 2):
    c = lib.counts((tier,))
    print(f"tier {tier}: {c['defs']} defs, {c['theorems']} theorems, {c['statements']} statement-only")

print("statement-only:", ", ".join(g.name for g in env if g.kind == STATEMENT))
print("proved monad laws:", [n for n in ("WPVlaw1", "WPVlaw2", "WVlaw1", "WVlaw2") if env[n].proved])

pairs = [(12, 18), (30, 42), (7, 0), (9, 6)]
for x, y in pairs:
    got = as_numeral(normalize(env, parse_term(f"gcdN {x} {y}")))
    print(f"gcdN {x} {y} = {got}  (math.gcd: {math.gcd(x, y)})")

# the truth of a weak boolean is stable; quantifying over all weak values
# would leave Type0, so ask about a concrete one
from clari import prove_stable, show

phi = parse_term("Nat -> bracketV (unit_V boolSetoid boolSetoid_stable true)")
print(show(prove_stable(env, lib.hints, phi).witness))
