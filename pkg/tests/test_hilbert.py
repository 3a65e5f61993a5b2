import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtrace.config import set_config
from qtrace.hilbert import (
    CharacterPoly,
    SeriesTable,
    component_character,
    gq_hilbert,
    hilbert_series,
    mult_adjoint,
    mult_trivial,
    multidegrees,
    parse_rational_series,
    product_form,
    series_coefficients,
    series_compare,
    sl2_oracle,
)

GQ = "((1-s)*(1-t)*(1-s*t)+s*t)/((1-s)**2*(1-t)**2*(1-s*t))"


def test_multidegrees_order():
    assert multidegrees(2, 2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(multidegrees(3, 3)) == 20


def test_character_of_one_matrix():
    chi = component_character(2, 1, (1,))
    assert chi.coeffs == {(0, 0): 2, (-1, 1): 1, (1, -1): 1}
    assert chi.mass() == 4


@pytest.mark.parametrize("N, m, d", [(2, 1, (3,)), (2, 2, (2, 1)), (3, 1, (2,)), (2, 3, (1, 1, 1))])
def test_character_mass_counts_monomials(N, m, d):
    from math import comb, prod

    n = N * N
    assert component_character(N, m, d).mass() == prod(comb(n + k - 1, k) for k in d)


def test_character_errors():
    with pytest.raises(ValueError):
        component_character(2, 2, (1,))
    with pytest.raises(ValueError):
        component_character(2, 1, (-1,))


@settings(max_examples=30, deadline=None)
@given(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)).filter(lambda d: sum(d) <= 5))
def test_weyl_formula_agrees_with_sl2_weight_counts(d):
    chi = component_character(2, 3, d)
    assert (mult_trivial(chi), mult_adjoint(chi)) == sl2_oracle(chi)


@pytest.mark.parametrize("shift", [(1, 1), (-2, -2), (3, 3)])
def test_central_shift_does_not_change_multiplicities(shift):
    chi = component_character(2, 2, (2, 2))
    assert mult_trivial(chi.shift(shift)) == mult_trivial(chi) == 6
    assert mult_adjoint(chi.shift(shift)) == mult_adjoint(chi) == sl2_oracle(chi)[1]


def test_adjoint_of_rank_one_is_empty():
    assert mult_adjoint(component_character(1, 1, (2,))) == 0


def test_character_product():
    a = CharacterPoly(2, {(1, 0): 1, (0, 1): 1})
    assert (a * a).coeffs == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert a == CharacterPoly(2, {(0, 1): 1, (1, 0): 1, (5, 5): 0})


@pytest.mark.parametrize(
    "N, m, which, gens",
    [
        (2, 1, "R", [(1,), (2,)]),
        (2, 2, "R", [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]),
        (3, 1, "R", [(1,), (2,), (3,)]),
        (2, 1, "T", [(1,), (1,)]),
        (2, 2, "T", [(1, 0), (1, 0), (0, 1), (0, 1), (1, 1)]),
        (2, 1, "A", [(1,)] * 4),
        (2, 2, "A", [(1, 0)] * 4 + [(0, 1)] * 4),
    ],
)
def test_series_against_free_generation(N, m, which, gens):
    # classical invariant theory: these rings are polynomial (or free modules of the stated shape)
    table = hilbert_series(N, m, which, 6 if m == 1 else 5)
    assert series_compare(table, product_form(m, gens))


def test_invariants_of_three_copies():
    table = hilbert_series(2, 3, "R", 3)
    assert table[(1, 1, 1)] == 5
    assert table[(2, 0, 0)] == 2
    assert hilbert_series(3, 1, "R", 6).get((6,)) == 7


def test_series_cap_and_unknown_kind():
    with pytest.raises(ValueError):
        hilbert_series(2, 1, "R", 50)
    with pytest.raises(ValueError):
        hilbert_series(2, 1, "Q", 2)
    set_config(degree_cap=3)
    with pytest.raises(ValueError):
        hilbert_series(2, 1, "R", 4)


def test_table_output_formats():
    table = hilbert_series(2, 1, "A", 2)
    assert table.to_csv().splitlines() == ["d1,dim", "0,1", "1,4", "2,10"]
    data = json.loads(table.to_json())
    assert data["entries"][2] == {"degree": [2], "dim": 10}
    assert "(2,): 10" in table.to_text()
    assert table == SeriesTable(1, {(0,): 1, (1,): 4, (2,): 10})
    assert table.get((7,)) is None


@pytest.mark.parametrize(
    "text, num, den",
    [
        ("1/(1-s)", {(0,): 1}, {(0,): 1, (1,): -1}),
        ("(1+s)/(1-s**2)", {(0,): 1}, {(0,): 1, (1,): -1}),
    ],
)
def test_parse_rational_series(text, num, den):
    n, d = parse_rational_series(text, ("s",))
    assert series_coefficients(n, d, 1, 5) == series_coefficients(num, den, 1, 5)


def test_series_coefficients_errors_and_values():
    with pytest.raises(ValueError):
        series_coefficients({(0,): 1}, {(1,): 1}, 1, 3)
    got = series_coefficients({(0, 0): 1}, {(0, 0): 1, (1, 1): -1}, 2, 4)
    assert got[(2, 2)] == 1 and got[(1, 0)] == 0


def test_compare_detects_mismatch():
    table = hilbert_series(2, 1, "R", 4)
    assert not series_compare(table, "1/(1-s)")
    assert series_compare(table, "1/((1-s)*(1-s**2))")


@pytest.mark.slow
def test_matrix_algebra_generated_by_two_matrices():
    table = gq_hilbert(5)
    assert table[(1, 1)] == 2  # XY and YX
    assert series_compare(table, GQ)
