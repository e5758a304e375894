import pytest

from clari import load_stdlib, parse_term
from clari.checker import EMPTY_CTX, Checker

# criterion number -> (title, passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture(scope="session")
def lib():
    return load_stdlib(tiers=(1,))


@pytest.fixture(scope="session")
def lib2():
    return load_stdlib(tiers=(2,))


@pytest.fixture(scope="session")
def env(lib):
    return lib.env


@pytest.fixture
def T():
    """Parse surface syntax, optionally under named free variables (innermost last)."""
    def parse(text, *scope):
        return parse_term(text, scope=scope)
    return parse


@pytest.fixture
def infer(env):
    def go(text, ctx=EMPTY_CTX):
        return Checker(env).infer(ctx, parse_term(text))
    return go


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {n}. {title} ({detail})")
