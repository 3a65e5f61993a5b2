"""R-matrix conventions.  The Hecke and braid relations are standard sanity
oracles for the index conventions, not statements being reproduced."""

import itertools
import random

import pytest

from qtrace.rmatrix import QMatrix, braid_sides, build_R, derived, flip, hecke_residual, kron
from qtrace.scalar import RatFunc, q

qi = q.inverse()


def test_rank_one_case():
    R = build_R(1)
    assert R[1, 1, 1, 1] == q
    assert derived(R, "rinv")[1, 1, 1, 1] == qi


def test_case_list_n2():
    R = build_R(2)
    expected = {
        (1, 1, 1, 1): q,
        (2, 2, 2, 2): q,
        (1, 2, 1, 2): RatFunc(1),
        (2, 1, 2, 1): RatFunc(1),
        (2, 1, 1, 2): q - qi,
    }
    for idx in itertools.product((1, 2), repeat=4):
        assert R[idx] == expected.get(idx, 0), idx
    assert R[1, 2, 2, 1] == 0


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_case_list_general(N):
    R = build_R(N)
    for i, k, j, l in itertools.product(range(1, N + 1), repeat=4):
        if i == j == k == l:
            want = q
        elif i == j and k == l and i != k:
            want = RatFunc(1)
        elif i > j and i == l and j == k:
            want = q - qi
        else:
            want = RatFunc(0)
        assert R[i, k, j, l] == want


@pytest.mark.parametrize("N", [0, -2])
def test_build_R_domain(N):
    with pytest.raises(ValueError):
        build_R(N)


def test_rhat_entry():
    Rh = derived(build_R(2), "rhat")
    assert Rh[1, 2, 1, 2] == q - qi


def test_r21_entry():
    R21 = derived(build_R(2), "r21")
    assert R21[1, 2, 2, 1] == q - qi


@pytest.mark.parametrize("N", [1, 2, 3])
def test_hecke_sanity_oracle(N):
    R = build_R(N)
    assert hecke_residual(R).is_zero()
    rh = derived(R, "rhat")
    one = QMatrix.identity(R.size, R.n)
    assert rh.inverse() == rh - one.scale(q - qi)


@pytest.mark.parametrize("N", [2, 3])
def test_braid_sanity_oracle(N):
    left, right = braid_sides(build_R(N))
    assert left == right


@pytest.mark.parametrize("N", [1, 2, 3])
def test_rtilde_inverts_partial_transpose(N):
    R = build_R(N)
    assert (derived(derived(R, "rtilde"), "t2") @ derived(R, "t2")).is_identity()


@pytest.mark.parametrize("N", [2, 3])
def test_inverse(N):
    R = build_R(N)
    assert (R @ derived(R, "rinv")).is_identity()


def test_flip_is_an_involution():
    tau = flip(3)
    assert (tau @ tau).is_identity()


def _random_qmatrix(n, seed):
    rng = random.Random(seed)
    rows = [[q ** rng.randint(-2, 2) * rng.randint(-2, 2) for _ in range(n * n)] for _ in range(n * n)]
    return QMatrix(rows, n)


@pytest.mark.parametrize("seed", range(3))
def test_partial_transpose_is_an_involution(seed):
    A = _random_qmatrix(2, seed)
    assert derived(derived(A, "t2"), "t2") == A


def test_kron_shape():
    A = kron(QMatrix.identity(2), build_R(2))
    assert A.size == 8


def test_unknown_operator():
    with pytest.raises(ValueError):
        derived(build_R(2), "nope")


def test_pretty_lists_nonzero_entries():
    text = build_R(2).pretty()
    assert "[21|12]" in text and "[12|21]" not in text
