"""A small dependent type theory with classical logic as its stable fragment.

The kernel (:mod:`term`, :mod:`reduction`, :mod:`checker`) is the trusted
part. Stability inference and classical rule emission (:mod:`classical`)
produce proof terms that the kernel re-checks. :mod:`heyting` searches
finite Heyting algebras for countermodels of propositional formulas.
"""
from .checker import EMPTY_CTX, Context, check, check_type, define_global, infer
from .classical import (
    HintDb, NotStable, StabilityCertificate, dn_combinator, emit_classical_rule, prove_stable,
    register_hint,
)
from .corpus import Library, Session, load_stdlib
from .diagnostics import ClariError, Diagnostic, SourceSpan, format_diagnostic
from .environment import EMPTY, Global, GlobalEnv
from .reduction import DEFAULT_FUEL, Fuel, FuelExhausted, convertible, normalize, step, whnf
from .syntax import parse_script, parse_term, show, show_decl
from .term import alpha_eq, shift, subst

__all__ = [
    "EMPTY", "EMPTY_CTX", "DEFAULT_FUEL", "ClariError", "Context", "Diagnostic", "Fuel",
    "FuelExhausted", "Global", "GlobalEnv", "HintDb", "Library", "NotStable", "Session",
    "SourceSpan", "StabilityCertificate", "alpha_eq", "check", "check_type", "convertible",
    "define_global", "dn_combinator", "emit_classical_rule", "format_diagnostic", "infer",
    "load_stdlib", "normalize", "parse_script", "parse_term", "prove_stable", "register_hint",
    "shift", "show", "show_decl", "step", "subst", "whnf",
]
