import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtrace.algebras import build_Aq
from qtrace.config import set_config
from qtrace.rewrite import (
    Element,
    Letter,
    MeasureViolation,
    MemoryBudgetExceeded,
    RuleSet,
    check_overlaps,
    dimension_audit,
    exponent_vector,
    leading_term,
    multiply,
    normal_form,
)
from qtrace.scalar import eval_at_one, q

from .conftest import elements

qi = q.inverse()
A21 = build_Aq(2, 1)
A22 = build_Aq(2, 2)


def x(i, j, alg=A21, k=1):
    return alg.x(k, i, j)


def test_alphabet_order_n2():
    names = [a.name(False) for a in A21.rs.alphabet]
    assert names == ["x^1_2", "x^2_2", "x^1_1", "x^2_1"]


def test_alphabet_copy_major():
    copies = [a.copy for a in A22.rs.alphabet]
    assert copies == sorted(copies)


@pytest.mark.parametrize(
    "product, expected",
    [
        (lambda: x(2, 2) * x(1, 2), lambda: (x(1, 2) * x(2, 2)).scale(q**2)),
        (lambda: x(1, 1) * x(1, 2), lambda: x(1, 2) * x(1, 1) + (x(1, 2) * x(2, 2)).scale(q**-2 - 1)),
        (lambda: x(1, 2) * x(1, 2), lambda: Element(A21.rs, {(0, 0): q**0})),
        (lambda: A22.x(2, 1, 2) * A22.x(1, 1, 2), lambda: (A22.x(1, 1, 2) * A22.x(2, 1, 2)).scale(q**2)),
    ],
)
def test_normal_form_examples(product, expected):
    assert product() == expected()


def test_rendering():
    e = x(1, 1) * x(1, 2)
    assert str(e) == "(q^-2 - 1) x^1_2 x^2_2 + x^1_2 x^1_1"
    assert str(A22.x(1, 1, 2) * A22.x(2, 2, 1)) == "x(1)^1_2 x(2)^2_1"
    assert str(A21.rs.zero()) == "0"
    assert str(-x(1, 2)) == "-x^1_2"


def test_multiply_unit_and_order():
    one = A21.rs.one()
    e = x(2, 1) + x(1, 1)
    assert multiply(one, e) == e and multiply(e, one) == e
    assert multiply(x(1, 2), x(2, 2)) == Element(A21.rs, {(0, 1): q**0})
    assert multiply(x(2, 2), x(1, 2)) == multiply(x(1, 2), x(2, 2)).scale(q**2)


@settings(max_examples=40, deadline=None)
@given(elements(A21), elements(A21), elements(A21))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(elements(A22, max_len=4))
def test_normal_form_is_idempotent_and_strategy_free(e):
    raw = dict(e.terms)
    assert normal_form(raw, A22.rs) == e.terms
    assert all(A22.rs.is_normal(w) for w in e.terms)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=2, max_size=5))
def test_strategies_agree(word):
    rs = A22.rs
    t = {tuple(word): q**0}
    assert normal_form(t, rs, "leftmost") == normal_form(t, rs, "rightmost")


@settings(max_examples=30, deadline=None)
@given(elements(A22), elements(A22))
def test_linearity_and_grading(a, b):
    rs = A22.rs
    raw = {}
    for e, s in ((a, 1), (b, q)):
        for w, c in e.terms.items():
            raw[w] = raw.get(w, 0) + s * c
    assert Element(rs, normal_form(raw, rs)) == a + b.scale(q)
    for w in (a * b).terms:
        assert rs.multidegree(w) in {
            tuple(u + v for u, v in zip(rs.multidegree(w1), rs.multidegree(w2)))
            for w1 in a.terms
            for w2 in b.terms
        }


@pytest.mark.parametrize(
    "N, m, degree, count",
    [
        (2, 1, (2,), 10),
        (2, 2, (1, 1), 16),
        (3, 1, (2,), 45),
        (2, 3, (1, 1, 1), 64),
    ],
)
def test_dimension_audit_examples(N, m, degree, count):
    a = dimension_audit(build_Aq(N, m).rs, degree, samples=50)
    assert a["normal_count"] == a["expected_count"] == count
    assert a["closure_ok"]


def test_dimension_audit_cap():
    with pytest.raises(ValueError):
        dimension_audit(A21.rs, (9,))
    with pytest.raises(ValueError):
        dimension_audit(A21.rs, (3,), cap=2)
    with pytest.raises(ValueError):
        dimension_audit(A21.rs, (1, 1))


@pytest.mark.parametrize("N, m", [(2, 1), (2, 2), (3, 1)])
def test_no_failing_overlaps(N, m):
    assert check_overlaps(build_Aq(N, m).rs) == []


def test_leading_term_example():
    e = x(1, 2) * x(1, 1) + (x(1, 2) * x(2, 2)).scale(q**-2 - 1)
    lt = leading_term(e)
    assert A21.rs.word_str(lt) == "x^1_2 x^1_1"
    assert leading_term(x(2, 1)) == (3,)


@pytest.mark.parametrize("bad", [lambda: A21.rs.zero(), lambda: x(1, 1) + x(1, 1) * x(1, 2)])
def test_leading_term_errors(bad):
    with pytest.raises(ValueError):
        leading_term(bad())


@settings(max_examples=40, deadline=None)
@given(elements(A21, degree=2), elements(A21, degree=1))
def test_leading_terms_multiply(f, g):
    # no zero divisors: the leading term of a product is the product of leading terms
    if f.is_zero() or g.is_zero():
        return
    fg = f * g
    assert not fg.is_zero()
    n = len(A21.rs.alphabet)
    want = tuple(u + v for u, v in zip(exponent_vector(leading_term(f), n), exponent_vector(leading_term(g), n)))
    assert exponent_vector(leading_term(fg), n) == want


def test_classical_rules_are_swaps():
    rs = build_Aq(2, 2, qval=1).rs
    for (a, b), rhs in rs.rules.items():
        assert rhs == (((b, a), q**0),)
    # and the q-rules specialize to swaps plus vanishing corrections
    for (a, b), rhs in A22.rs.rules.items():
        at_one = {w: eval_at_one(c) for w, c in rhs}
        assert {w: c for w, c in at_one.items() if c} == {(b, a): 1}


def _toy(measure, rules):
    letters = [Letter("x", 1, 1, j, j, 0) for j in range(2)]
    return RuleSet(letters, rules, measure, name="toy")


def test_validation_rejects_non_decreasing_rule():
    with pytest.raises(MeasureViolation):
        _toy(lambda w: (0,), {(1, 0): (((0, 1), 1),)})


def test_validation_requires_all_out_of_order_pairs():
    with pytest.raises(ValueError):
        _toy(lambda w: (sum(a > b for a, b in zip(w, w[1:])),), {})


def test_runtime_measure_assertion():
    rs = _toy(lambda w: (sum(a > b for a, b in zip(w, w[1:])),), {(1, 0): (((0, 1), 1),)})
    rs.rules[(1, 0)] = (((1, 0), q),)  # corrupt after validation
    with pytest.raises(MeasureViolation):
        normal_form({(1, 0): 1}, rs)


def test_memory_budget():
    set_config(memory_budget="6K")  # ten pending terms
    e = (x(2, 1) + x(1, 1) + x(2, 2)) ** 2
    with pytest.raises(MemoryBudgetExceeded):
        e * e * x(1, 2)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        normal_form({(1, 0): 1}, A21.rs, "middle")


def test_element_scalar_interplay():
    e = x(1, 1)
    assert (e * 2 - e - e).is_zero()
    assert (2 * e) / 2 == e
    assert A21.rs.one() == 1
    assert (e - e) == 0
    assert A21.rs.scalar(q).scalar_value() == q
    assert e ** 0 == 1
