import pytest
from hypothesis import given, settings

from qtrace.algebras import build_Aq, build_mixed
from qtrace.matrixops import AlgMatrix, qtrace
from qtrace.parser import ParseError, algebra_for, evaluate, parse, parse_and_evaluate
from qtrace.scalar import RatFunc, q

from .conftest import elements, ratfuncs

qi = q.inverse()
A21 = build_Aq(2, 1)
A22 = build_Aq(2, 2)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^1_1", lambda: A21.x(1, 1, 1)),
        ("x^1_1 x^1_2", lambda: A21.x(1, 1, 1) * A21.x(1, 1, 2)),
        ("x^1_1 * x^1_2", lambda: A21.x(1, 1, 1) * A21.x(1, 1, 2)),
        ("q^-2 x^2_1", lambda: A21.x(1, 2, 1).scale(q**-2)),
        ("-x^1_2 + 3 x^2_2", lambda: A21.x(1, 2, 2).scale(3) - A21.x(1, 1, 2)),
        ("(x^1_1 + x^2_2)^2", lambda: (A21.x(1, 1, 1) + A21.x(1, 2, 2)) ** 2),
        ("Tr_q(X)", lambda: qtrace(AlgMatrix.generic(A21))),
        ("[x^1_1, x^1_2]", lambda: A21.x(1, 1, 1) * A21.x(1, 1, 2) - A21.x(1, 1, 2) * A21.x(1, 1, 1)),
        ("x^1_2 / (q + q^-1)", lambda: A21.x(1, 1, 2).scale((q + qi).inverse())),
    ],
)
def test_single_copy_examples(text, expected):
    assert parse_and_evaluate(text) == expected()


def test_copies_and_aliases():
    a = parse_and_evaluate("y^1_1 x^1_1", 2, 2)
    b = parse_and_evaluate("x(2)^1_1 x(1)^1_1", 2, 2)
    assert a == b == A22.x(2, 1, 1) * A22.x(1, 1, 1)


def test_matrix_expressions():
    got = parse_and_evaluate("X Y - q Y X", 2, 2)
    X, Y = AlgMatrix.generic(A22, 1), AlgMatrix.generic(A22, 2)
    assert got == X * Y - (Y * X).scale(q)
    assert parse_and_evaluate("X + 1", 2, 1) == AlgMatrix.generic(A21) + AlgMatrix.identity(A21)
    assert parse_and_evaluate("Tr_q(I)", 2, 1) == A21.scalar(q + qi)


def test_cayley_hamilton_in_syntax():
    text = "X^2 - q^-1 Tr_q(X) X + (q^-1 Tr_q(X)^2 - Tr_q(X^2)) / (q + q^-1) I"
    assert parse_and_evaluate(text).is_zero()


def test_constants_evaluate_to_scalars():
    assert parse_and_evaluate("(q^2 + 1)/q") == q + qi
    assert parse_and_evaluate("2^3 - 8") == 0
    assert isinstance(evaluate(parse("q"), A21), RatFunc)
    assert parse_and_evaluate("q").scalar_value() == q


def test_classical_evaluation():
    assert parse_and_evaluate("[x^1_1, x^1_2]", qval=1).is_zero()
    assert parse_and_evaluate("q", qval=1) == 1


def test_mixed_letters_pick_mixed_algebra():
    e = parse("t^1_1 D x^1_1")
    assert e.letters == {"t", "D", "x"}
    alg = algebra_for(e, 2, 1)
    assert alg is build_mixed(2, 1)
    assert algebra_for(parse("x^1_1"), 2, 1) is A21


def test_static_kinds():
    assert parse("Tr_q(X Y)", 2, 2).kind == "scalar"
    assert parse("x^1_1 X", 2, 1).kind == "matrix"
    assert parse("q^2 + 1").const
    assert not parse("x^1_1").const


@pytest.mark.parametrize(
    "text, N, m, pos",
    [
        ("x^3_1", 2, 1, 0),
        ("x(3)^1_1", 2, 2, 0),
        ("y^1_1", 2, 1, 0),
        ("Tr_q(x^1_1)", 2, 1, 0),
        ("x^1_1 / x^1_2", 2, 1, 6),
        ("(x^1_1", 2, 1, 6),
        ("q^-x^1_1", 2, 1, 3),
        ("x^1_1 +", 2, 1, 7),
        ("x^1_1 $", 2, 1, 6),
        ("", 2, 1, 0),
        ("t(2)^1_1", 2, 1, 0),
        ("I(2)", 2, 1, 0),
        ("x^1_1^-1", 2, 1, None),
    ],
)
def test_parse_errors(text, N, m, pos):
    with pytest.raises(ParseError) as err:
        parse(text, N, m)
    if pos is not None:
        assert err.value.pos == pos


def test_parse_error_is_value_error():
    assert issubclass(ParseError, ValueError)
    with pytest.raises(ParseError):
        parse(3)


def test_evaluate_in_given_algebra():
    e = parse("x^1_1 x^2_2")
    assert evaluate(e, build_Aq(2, 1, qval=1)) == build_Aq(2, 1, qval=1).x(1, 1, 1) * build_Aq(2, 1, qval=1).x(1, 2, 2)


@settings(max_examples=50, deadline=None)
@given(elements(A21, max_len=3))
def test_round_trip_single_copy(e):
    assert parse_and_evaluate(str(e), 2, 1) == e


@settings(max_examples=50, deadline=None)
@given(elements(A22, max_len=3))
def test_round_trip_two_copies(e):
    assert parse_and_evaluate(str(e), 2, 2) == e


@settings(max_examples=50, deadline=None)
@given(ratfuncs())
def test_round_trip_scalars(r):
    assert parse_and_evaluate(str(r)) == r
