"""The standard SL_N R-matrix and the operators derived from it.

Rows and columns of an ``N^2 x N^2`` matrix are indexed by ordered pairs in
the order ``(1,1), (1,2), ..., (1,N), (2,1), ..., (N,N)``; ``R[i, k, j, l]``
is the entry in row ``(i, k)`` and column ``(j, l)``, i.e. ``R^{ik}_{jl}``.
"""

from __future__ import annotations

from .linalg import row_reduce
from .scalar import RatFunc, as_ratfunc, q

__all__ = ["QMatrix", "build_R", "derived", "flip", "kron", "braid_sides", "hecke_residual"]

_ZERO = RatFunc(0)
_ONE = RatFunc(1)


class QMatrix:
    """Dense square matrix over Q(q), optionally carrying a pair-index side ``n``."""

    __slots__ = ("size", "rows", "n")

    def __init__(self, rows, n=None):
        self.rows = [[as_ratfunc(v) for v in r] for r in rows]
        self.size = len(self.rows)
        if any(len(r) != self.size for r in self.rows):
            raise ValueError("QMatrix must be square")
        if n is None:
            r = int(round(self.size**0.5))
            n = r if r * r == self.size else None
        self.n = n

    @classmethod
    def identity(cls, size, n=None):
        return cls([[_ONE if i == j else _ZERO for j in range(size)] for i in range(size)], n)

    def pair(self, i, k):
        return (i - 1) * self.n + (k - 1)

    def __getitem__(self, idx):
        if len(idx) == 4:
            i, k, j, l = idx
            return self.rows[self.pair(i, k)][self.pair(j, l)]
        r, c = idx
        return self.rows[r][c]

    def __matmul__(self, other):
        size = self.size
        b = other.rows
        out = []
        for row in self.rows:
            acc = [_ZERO] * size
            for k, a in enumerate(row):
                if not a:
                    continue
                bk = b[k]
                for j in range(size):
                    if bk[j]:
                        acc[j] = acc[j] + a * bk[j]
            out.append(acc)
        return QMatrix(out, self.n)

    def __add__(self, other):
        return QMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.n)

    def __sub__(self, other):
        return QMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.n)

    def scale(self, c):
        c = as_ratfunc(c)
        return QMatrix([[c * v for v in r] for r in self.rows], self.n)

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.rows == other.rows

    def is_zero(self):
        return all(not v for r in self.rows for v in r)

    def is_identity(self):
        return self == QMatrix.identity(self.size, self.n)

    def map(self, f):
        return QMatrix([[f(v) for v in r] for r in self.rows], self.n)

    def nonzero(self):
        """Yield ``(i, k, j, l, value)`` for nonzero pair-indexed entries."""
        n = self.n
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                if v:
                    yield r // n + 1, r % n + 1, c // n + 1, c % n + 1, v

    def inverse(self):
        size = self.size
        aug = []
        for r, row in enumerate(self.rows):
            d = {c: v for c, v in enumerate(row) if v}
            d[size + r] = _ONE
            aug.append(d)
        red = row_reduce(aug)
        if len(red) < size or any(pc >= size for pc, _ in red):
            raise ArithmeticError("singular matrix over Q(q)")
        out = [None] * size
        for pc, prow in red:
            out[pc] = [prow.get(size + j, _ZERO) for j in range(size)]
        return QMatrix(out, self.n)

    def pretty(self):
        """Pair-indexed table, one nonzero entry per line."""
        lines = [f"QMatrix n={self.n} ({self.size}x{self.size}), nonzero entries:"]
        for i, k, j, l, v in self.nonzero():
            lines.append(f"  [{i}{k}|{j}{l}] = {v}")
        return "\n".join(lines)

    def __repr__(self):
        return self.pretty()


def build_R(N, qval=None):
    """The R-matrix of quantum SL_N; ``qval`` substitutes a value for q (e.g. 1)."""
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    qq = q if qval is None else as_ratfunc(qval)
    size = N * N
    rows = [[_ZERO] * size for _ in range(size)]
    diff = qq - qq.inverse()
    for i in range(1, N + 1):
        for k in range(1, N + 1):
            r = (i - 1) * N + (k - 1)
            for j in range(1, N + 1):
                for l in range(1, N + 1):
                    c = (j - 1) * N + (l - 1)
                    if i == j == k == l:
                        rows[r][c] = qq
                    elif i == j and k == l and i != k:
                        rows[r][c] = _ONE
                    elif i > j and i == l and j == k:
                        rows[r][c] = diff
    return QMatrix(rows, N)


def _permute(A, f):
    """Entry (i,k | j,l) of the result is A at f(i,k,j,l)."""
    n = A.n
    out = [[_ZERO] * A.size for _ in range(A.size)]
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    out[A.pair(i, k)][A.pair(j, l)] = A[f(i, k, j, l)]
    return QMatrix(out, n)


def flip(n):
    """The flip tau(e_j x e_l) = e_l x e_j."""
    return _permute(QMatrix.identity(n * n, n), lambda i, k, j, l: (k, i, j, l))


def derived(R, which):
    """One of ``rhat``, ``r21``, ``rinv``, ``t2``, ``rtilde``."""
    if which == "rhat":
        return _permute(R, lambda i, k, j, l: (k, i, j, l))
    if which == "r21":
        return _permute(R, lambda i, k, j, l: (k, i, l, j))
    if which == "t2":
        return _permute(R, lambda i, k, j, l: (i, l, j, k))
    if which == "rinv":
        return R.inverse()
    if which == "rtilde":
        return derived(derived(R, "t2").inverse(), "t2")
    raise ValueError(f"unknown derived operator {which!r}")


def kron(A, B):
    sa, sb = A.size, B.size
    out = [[_ZERO] * (sa * sb) for _ in range(sa * sb)]
    for r1, row1 in enumerate(A.rows):
        for c1, a in enumerate(row1):
            if not a:
                continue
            for r2, row2 in enumerate(B.rows):
                for c2, b in enumerate(row2):
                    if b:
                        out[r1 * sb + r2][c1 * sb + c2] = a * b
    return QMatrix(out, None)


def hecke_residual(R):
    """(R^ - q)(R^ + q^-1), which vanishes for the standard R-matrix."""
    rh = derived(R, "rhat")
    one = QMatrix.identity(R.size, R.n)
    return (rh - one.scale(q)) @ (rh + one.scale(q.inverse()))


def braid_sides(R):
    """Both sides of R^_12 R^_23 R^_12 = R^_23 R^_12 R^_23 on V x V x V."""
    rh = derived(R, "rhat")
    ident = QMatrix.identity(R.n, R.n)
    r12 = kron(rh, ident)
    r23 = kron(ident, rh)
    return r12 @ r23 @ r12, r23 @ r12 @ r23
