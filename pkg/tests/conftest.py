"""Shared fixtures and hypothesis strategies."""

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from qtrace.algebras import build_Aq
from qtrace.config import reset_config
from qtrace.scalar import LaurentPoly, RatFunc

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def _clean_config(monkeypatch):
    monkeypatch.delenv("QTR_DEGREE_CAP", raising=False)
    monkeypatch.delenv("QTR_MEMORY_BUDGET", raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture(scope="session")
def A21():
    return build_Aq(2, 1)


@pytest.fixture(scope="session")
def A22():
    return build_Aq(2, 2)


@pytest.fixture(scope="session")
def A23():
    return build_Aq(2, 3)


small_coeff = st.one_of(
    st.integers(-3, 3),
    st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3)),
)

laurent = st.dictionaries(st.integers(-3, 3), small_coeff, max_size=3).map(LaurentPoly)


@st.composite
def ratfuncs(draw, allow_zero=True):
    num = draw(laurent)
    den = draw(laurent.filter(lambda p: not p.is_zero()))
    r = RatFunc(num, den)
    if not allow_zero and r.is_zero():
        r = RatFunc(1)
    return r


@st.composite
def elements(draw, alg, max_terms=3, max_len=3, degree=None):
    """A random element of ``alg``; homogeneous of total length ``degree`` when given."""
    n = len(alg.rs.alphabet)
    letters = st.integers(0, n - 1)
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        length = degree if degree is not None else draw(st.integers(0, max_len))
        w = tuple(draw(st.lists(letters, min_size=length, max_size=length)))
        terms[w] = terms.get(w, 0) + draw(st.integers(-3, 3).filter(bool))
    return alg.rs.element(terms)


# criterion number -> (title, passed, failing checks); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, bad = ACCEPTANCE[n]
        line = f"criterion {n:2d} {'PASS' if passed else 'FAIL'}  {title}"
        if bad:
            line += f"  (failing: {', '.join(bad)})"
        terminalreporter.write_line(line)
