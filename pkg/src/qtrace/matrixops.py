"""Matrices over the algebras, the quantum trace, and the identity catalog.

Every catalog entry builds both sides of an identity from generic matrices
and reduces the difference to normal form.  ``verify(name, qval=1)`` runs the
same construction in the commutative ring (q specialized to 1).
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

from .algebras import build_Aq
from .linalg import rank_sparse
from .rewrite import Element, sum_of_products
from .rmatrix import QMatrix, build_R, derived
from .scalar import RatFunc, as_ratfunc

__all__ = [
    "AlgMatrix",
    "IdentityReport",
    "CATALOG",
    "qtrace",
    "verify",
    "verify_all",
    "coefficient_of",
    "qtrace_span_rank",
    "coefficient_vectors",
    "rea_residual",
    "cross_residual",
]


class AlgMatrix:
    """A square matrix of Elements of one algebra."""

    __slots__ = ("alg", "n", "rows")

    def __init__(self, alg, rows):
        self.alg = alg
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("AlgMatrix must be square")

    # -- constructors -----------------------------------------------------
    @classmethod
    def generic(cls, alg, k=1):
        N = alg.N
        return cls(alg, [[alg.x(k, i, j) for j in range(1, N + 1)] for i in range(1, N + 1)])

    @classmethod
    def scalar(cls, alg, f, n=None):
        """f * I, for an Element or a scalar f."""
        n = n or alg.N
        if not isinstance(f, Element):
            f = alg.scalar(f)
        z = alg.rs.zero()
        return cls(alg, [[f if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, alg, n=None):
        return cls.scalar(alg, 1, n)

    @classmethod
    def from_qmatrix(cls, alg, Q):
        return cls(alg, [[alg.scalar(v) for v in row] for row in Q.rows])

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def entries(self):
        for r in self.rows:
            yield from r

    # -- arithmetic -------------------------------------------------------
    def _zip(self, other, f):
        return AlgMatrix(self.alg, [[f(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return AlgMatrix(self.alg, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, AlgMatrix):
            return self.matmul(other)
        if isinstance(other, Element):
            return AlgMatrix(self.alg, [[a * other for a in r] for r in self.rows])
        return AlgMatrix(self.alg, [[a.scale(other) for a in r] for r in self.rows])

    def __rmul__(self, other):
        if isinstance(other, Element):
            return AlgMatrix(self.alg, [[other * a for a in r] for r in self.rows])
        return AlgMatrix(self.alg, [[a.scale(other) for a in r] for r in self.rows])

    __matmul__ = __mul__

    def scale(self, c):
        return AlgMatrix(self.alg, [[a.scale(c) for a in r] for r in self.rows])

    def matmul(self, other):
        rs = self.alg.rs
        n = self.n
        cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                pairs = [(a, b) for a, b in zip(row, col) if a.terms and b.terms]
                new.append(sum_of_products(rs, pairs) if pairs else rs.zero())
            out.append(new)
        return AlgMatrix(self.alg, out)

    def __pow__(self, k):
        out = AlgMatrix.identity(self.alg, self.n)
        for _ in range(k):
            out = out * self
        return out

    def map(self, f):
        return AlgMatrix(self.alg, [[f(a) for a in r] for r in self.rows])

    def is_zero(self):
        return all(a.is_zero() for a in self.entries())

    def __eq__(self, other):
        return isinstance(other, AlgMatrix) and self.rows == other.rows

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"AlgMatrix({self})"


def qtrace(F):
    """Tr(QF) with Q = diag(q^(N-1), q^(N-3), ..., q^(1-N))."""
    qv = F.alg.qv
    n = F.n
    total = F.alg.rs.zero()
    for i in range(n):
        total = total + F.rows[i][i].scale(qv ** (n - 1 - 2 * i))
    return total


Tr_q = qtrace


def qint(qv, n):
    """[n] at the algebra's value of q (the q-integer, or n itself at q = 1)."""
    return sum((qv ** (n - 1 - 2 * i) for i in range(n)), RatFunc(0))


def commutator(a, b):
    return a * b - b * a


# ---------------------------------------------------------------------------
# tensor embeddings for matrix equations on V (x) V


def _leg(M, pos):
    """M_1 = M (x) I or M_2 = I (x) M as an N^2 x N^2 AlgMatrix."""
    alg, N = M.alg, M.n
    z = alg.rs.zero()
    rows = [[z] * (N * N) for _ in range(N * N)]
    for i, k, j, l in itertools.product(range(N), repeat=4):
        if pos == 1 and k == l:
            rows[i * N + k][j * N + l] = M.rows[i][j]
        elif pos == 2 and i == j:
            rows[i * N + k][j * N + l] = M.rows[k][l]
    return AlgMatrix(alg, rows)


def rea_residual(M):
    """M_2 R^ M_2 R^ - R^ M_2 R^ M_2 (zero iff the entries of M satisfy the reflection equation)."""
    alg = M.alg
    Rh = AlgMatrix.from_qmatrix(alg, derived(build_R(alg.N, _qarg(alg)), "rhat"))
    M2 = _leg(M, 2)
    return M2 * Rh * M2 * Rh - Rh * M2 * Rh * M2


def cross_residual(X, Y):
    """R^-1 Y_1 R X_2 - X_2 R^-1 Y_1 R (zero iff Y stands to the right of X as a braided copy)."""
    alg = X.alg
    R = build_R(alg.N, _qarg(alg))
    Rm = AlgMatrix.from_qmatrix(alg, R)
    Ri = AlgMatrix.from_qmatrix(alg, derived(R, "rinv"))
    Y1, X2 = _leg(Y, 1), _leg(X, 2)
    return Ri * Y1 * Rm * X2 - X2 * Ri * Y1 * Rm


def _qarg(alg):
    return 1 if alg.classical else None


# ---------------------------------------------------------------------------
# coefficient extraction


def coefficient_of(e, pattern, copies=None):
    """Coefficient (an Element in the other copies) of a normal pattern word in ``e``.

    ``pattern`` is a word over letters of ``copies`` (default: the copies the
    pattern uses).
    """
    rs = e.rs
    pattern = tuple(pattern)
    if not rs.is_normal(pattern):
        raise ValueError(f"pattern {rs.word_str(pattern)} is not a normal word")
    if copies is None:
        copies = {rs.alphabet[a].copy for a in pattern}
    copies = set(copies)
    out = {}
    for w, c in e.terms.items():
        inside = tuple(a for a in w if rs.alphabet[a].copy in copies)
        if inside != pattern:
            continue
        rest = tuple(a for a in w if rs.alphabet[a].copy not in copies)
        out[rest] = out.get(rest, 0) + c
    return Element(rs, {w: c for w, c in out.items() if c})


def coefficient_vectors(elements, index=None):
    """Sparse coefficient rows of Elements (keyed by normal word)."""
    return [dict(e.terms) for e in elements]


# ---------------------------------------------------------------------------
# spanning by products of q-traces


def _monomials(m, d, maxlen):
    """Words over copies 1..m with multidegree <= d and length 1..maxlen."""
    out = []
    for L in range(1, maxlen + 1):
        for w in itertools.product(range(1, m + 1), repeat=L):
            if all(w.count(k + 1) <= d[k] for k in range(m)):
                out.append(w)
    return out


def _multidegree(word, m):
    return tuple(word.count(k + 1) for k in range(m))


class _TraceCache:
    def __init__(self, alg):
        self.alg = alg
        self.X = {k: AlgMatrix.generic(alg, k) for k in range(1, alg.m + 1)}
        self.mats = {}
        self.traces = {}

    def matrix(self, word):
        got = self.mats.get(word)
        if got is None:
            got = self.X[word[0]] if len(word) == 1 else self.matrix(word[:-1]) * self.X[word[-1]]
            self.mats[word] = got
        return got

    def trace(self, word):
        got = self.traces.get(word)
        if got is None:
            got = qtrace(self.matrix(word))
            self.traces[word] = got
        return got


def trace_products(alg, d, maxlen=None, cache=None):
    """All products (in every distinct order) of q-traces of monomials with total multidegree d."""
    m = alg.m
    d = tuple(d)
    maxlen = alg.N**2 if maxlen is None else maxlen
    cache = cache or _TraceCache(alg)
    monos = _monomials(m, d, maxlen)
    degs = {w: _multidegree(w, m) for w in monos}
    products = []

    def extend(start, remaining, chosen):
        if not any(remaining):
            for order in set(itertools.permutations(chosen)):
                products.append(order)
            return
        for idx in range(start, len(monos)):
            w = monos[idx]
            dw = degs[w]
            if all(a <= b for a, b in zip(dw, remaining)):
                extend(idx, tuple(b - a for a, b in zip(dw, remaining)), chosen + [w])

    extend(0, d, [])
    products.sort()
    elements = []
    for order in products:
        e = alg.rs.one()
        for w in order:
            e = e * cache.trace(w)
        elements.append(e)
    return products, elements


def qtrace_span_rank(N, m, d, maxlen=None, alg=None):
    """Rank over Q(q) of all products of q-traces of monomials with total multidegree d."""
    from .config import get_config

    d = tuple(d)
    if len(d) != m:
        raise ValueError(f"multidegree {d} does not have {m} components")
    if sum(d) > get_config().degree_cap:
        raise ValueError(f"total degree {sum(d)} exceeds the cap {get_config().degree_cap}")
    alg = alg or build_Aq(N, m)
    if sum(d) == 0:
        return {"rank": 1, "generators_used": 1}
    products, elements = trace_products(alg, d, maxlen)
    return {"rank": rank_sparse(coefficient_vectors(elements)), "generators_used": len(products)}


# ---------------------------------------------------------------------------
# the identity catalog


@dataclass
class IdentityReport:
    name: str
    passed: bool
    residual: object
    wall_time: float
    params: dict = field(default_factory=dict)
    detail: str = ""

    def residual_rendered(self):
        r = self.residual
        if isinstance(r, (list, tuple)):
            nonzero = [x for x in r if not _is_zero(x)]
            return "0" if not nonzero else f"{len(nonzero)} nonzero, first: {nonzero[0]}"
        if isinstance(r, AlgMatrix) and r.is_zero():
            return "0"
        return str(r)

    def to_dict(self):
        return {
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "residual_rendered": self.residual_rendered(),
            "detail": self.detail,
            "wall_time_ms": round(self.wall_time * 1000, 3),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _is_zero(r):
    if isinstance(r, (list, tuple)):
        return all(_is_zero(x) for x in r)
    return r.is_zero()


def _setup(N, m, qval):
    alg = build_Aq(N, m, qval)
    qv = alg.qv
    mats = [AlgMatrix.generic(alg, k) for k in range(1, m + 1)]
    I = AlgMatrix.identity(alg)
    return alg, qv, mats, I


def _ch2(N, m, qval):
    alg, qv, (X,), I = _setup(2, 1, qval)
    tX = qtrace(X)
    qi = qv.inverse()
    c = (tX * tX).scale(qi) - qtrace(X * X)
    return X * X - (tX * X).scale(qi) + (c * I).scale(qint(qv, 2).inverse())


def _bilinear_ch(N, m, qval):
    alg, qv, (X, Y), I = _setup(2, 2, qval)
    tX, tY = qtrace(X), qtrace(Y)
    s = tX * tY - qtrace(X * Y).scale(qv.inverse())
    return X * Y + (Y * X).scale(qv**2) - (tX * Y).scale(qv) - (tY * X).scale(qv) + s * I


def _qtryx(N, m, qval):
    alg, qv, (X, Y), I = _setup(2, 2, qval)
    qi = qv.inverse()
    return qtrace(Y * X).scale(qv**2) - qtrace(X * Y).scale(qi**2) - (qtrace(X) * qtrace(Y)).scale(qv - qi)


def _fund2(N, m, qval):
    alg, qv, (X, Y, Z), I = _setup(2, 3, qval)
    T = qtrace
    qi = qv.inverse()
    return (
        T(X) * T(Y) * T(Z)
        - (T(X * Y) * T(Z)).scale(qi)
        - (T(X) * T(Y * Z)).scale(qv)
        - (T(Y) * T(X * Z)).scale(qv)
        + T(Y * X * Z).scale(qv**2)
        + T(X * Y * Z)
    )


def _fund1(N, m, qval):
    alg, qv, (X, Y, Z), I = _setup(2, 3, qval)
    T = qtrace
    qi = qv.inverse()
    return (
        T(X) * T(Y) * T(Z)
        - (T(X * Y) * T(Z)).scale(qv)
        - (T(X) * T(Y * Z)).scale(qi)
        - (T(X * Z) * T(Y)).scale(qv)
        + T(X * Z * Y).scale(qv**2)
        + T(X * Y * Z)
    )


def _qtrzxy(N, m, qval):
    alg, qv, (X, Y, Z), I = _setup(2, 3, qval)
    qi = qv.inverse()
    return qtrace(Z * X * Y).scale(qv**2) - qtrace(X * Y * Z).scale(qi**2) - (qtrace(X * Y) * qtrace(Z)).scale(qv - qi)


def _qtryzx(N, m, qval):
    alg, qv, (X, Y, Z), I = _setup(2, 3, qval)
    qi = qv.inverse()
    return qtrace(Y * Z * X).scale(qv**2) - qtrace(X * Y * Z).scale(qi**2) - (qtrace(X) * qtrace(Y * Z)).scale(qv - qi)


CONGRUENCES = (("YXZ", (2, 1, 3), -1, 2), ("XZY", (1, 3, 2), -1, 2), ("YZX", (2, 3, 1), 1, 4),
               ("ZXY", (3, 1, 2), 1, 4), ("ZYX", (3, 2, 1), -1, 6))


def _cyclic_congruences(N, m, qval):
    """Residual: for each congruence, the rank increase of the degree <= 2 span (0 = member)."""
    alg, qv, mats, I = _setup(2, 3, qval)
    cache = _TraceCache(alg)
    _, low = trace_products(alg, (1, 1, 1), maxlen=2, cache=cache)
    base_rows = coefficient_vectors(low)
    base = rank_sparse(base_rows)
    txyz = cache.trace((1, 2, 3))
    out = []
    for _, word, sign, power in CONGRUENCES:
        diff = txyz - cache.trace(word).scale(sign * qv**power)
        grow = rank_sparse(base_rows + [dict(diff.terms)]) - base
        out.append(alg.scalar(grow))
    return out


def _rea_product(N, m, qval):
    alg, qv, (X, Y), I = _setup(N, 2, qval)
    return rea_residual(X * Y)


def _hom_2to3(N, m, qval):
    alg, qv, (X, Y, Z), I = _setup(N, 3, qval)
    return cross_residual(X * Y, Z)


def _central_qtrace_powers(N, m, qval, nmax=3):
    alg, qv, mats, I = _setup(N, m, qval)
    out = []
    gens = [alg.rs.element({(a.index,): 1}) for a in alg.rs.alphabet]
    for X in mats:
        P = I
        for _ in range(nmax):
            P = P * X
            t = qtrace(P)
            out.extend(commutator(t, g) for g in gens)
    return out


def hecke_contraction(alg, transposed=False):
    """sum Rt^{si}_{kt} Rt^{ml}_{in} Rt^{kj}_{jl} x^n_m y^s_t in A_q(N,2).

    With ``transposed=True`` the second factor is read as y^t_s instead.
    """
    N = alg.N
    Rt = derived(build_R(N, _qarg(alg)), "rtilde")
    rng = range(1, N + 1)
    terms = {}
    rs = alg.rs
    for s, i, k, t, mm, l, n, j in itertools.product(rng, repeat=8):
        c = Rt[s, i, k, t]
        if not c:
            continue
        c = c * Rt[mm, l, i, n]
        if not c:
            continue
        c = c * Rt[k, j, j, l]
        if not c:
            continue
        ys = (t, s) if transposed else (s, t)
        w = (rs.letter("x", 1, n, mm), rs.letter("x", 2, *ys))
        terms[w] = terms.get(w, 0) + c
    return rs.element(terms)


def _hecke_id_image(N, m, qval, transposed=False):
    alg, qv, (X, Y), I = _setup(2, 2, qval)
    qi = qv.inverse()
    expected = qtrace(X * Y).scale(qi**2) + (qtrace(X) * qtrace(Y)).scale(qi**5 - qi**3)
    return hecke_contraction(alg, transposed) - expected


def _hecke_id_image_yt(N, m, qval):
    return _hecke_id_image(N, m, qval, transposed=True)


def _prop5_i(N, m, qval):
    alg, qv, (X, Y, Z), I = _setup(2, 3, qval)
    c = commutator(qtrace(X * Y), qtrace(X * Z))
    rs = alg.rs
    pattern = (rs.letter("x", 2, 2, 1), rs.letter("x", 3, 2, 1))
    got = coefficient_of(c, pattern, copies={2, 3})
    x12 = alg.x(1, 1, 2)
    return got - (x12 * x12).scale(1 - qv**2), got


def _prop5_ii(N, m, qval):
    alg, qv, (X, Y), I = _setup(2, 2, qval)
    x11, x12 = alg.x(1, 1, 1), alg.x(1, 1, 2)
    c = commutator(qtrace(X * Y), x11)
    got = coefficient_of(c, (alg.rs.letter("x", 2, 2, 1),), copies={2})
    return got - commutator(x12, x11).scale(qv), got


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: object
    params: tuple  # admissible (N, m) pairs, first is the default
    witness: bool = False
    description: str = ""


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry("ch2", _ch2, ((2, 1),), description="quantum Cayley-Hamilton, 2x2"),
        CatalogEntry("bilinear_ch", _bilinear_ch, ((2, 2),), description="polarized Cayley-Hamilton"),
        CatalogEntry("qtryx", _qtryx, ((2, 2),), description="q^2 Tr_q(YX) - q^-2 Tr_q(XY)"),
        CatalogEntry("fund2", _fund2, ((2, 3),), description="six-term identity with Tr_q(YXZ)"),
        CatalogEntry("fund1", _fund1, ((2, 3),), description="six-term identity with Tr_q(XZY)"),
        CatalogEntry("qtrzxy", _qtrzxy, ((2, 3),), description="q^2 Tr_q(ZXY) - q^-2 Tr_q(XYZ)"),
        CatalogEntry("qtryzx", _qtryzx, ((2, 3),), description="q^2 Tr_q(YZX) - q^-2 Tr_q(XYZ)"),
        CatalogEntry("cyclic_congruences", _cyclic_congruences, ((2, 3),), description="Tr_q(XYZ) modulo degree <= 2 traces"),
        CatalogEntry("rea_product", _rea_product, ((2, 2), (3, 2)), description="X(1)X(2) satisfies the reflection equation"),
        CatalogEntry("hom_2to3", _hom_2to3, ((2, 3),), description="X(1)X(2) and X(3) satisfy the cross relations"),
        CatalogEntry("central_qtrace_powers", _central_qtrace_powers, ((2, 2),), description="Tr_q(X(k)^n), n <= 3, central"),
        CatalogEntry("hecke_id_image", _hecke_id_image, ((2, 2),), description="image of the identity of V (x) V"),
        CatalogEntry("hecke_id_image_yt", _hecke_id_image_yt, ((2, 2),),
                     description="same contraction with the y indices read as y^t_s"),
        CatalogEntry("prop5_i", _prop5_i, ((2, 3),), witness=True, description="y^2_1 z^2_1 coefficient of [Tr_q(XY), Tr_q(XZ)]"),
        CatalogEntry("prop5_ii", _prop5_ii, ((2, 2),), witness=True, description="y^2_1 coefficient of [Tr_q(XY), x^1_1]"),
    ]
}


def verify(name, N=None, m=None, qval=None):
    """Run one catalog entry; ``qval=1`` runs it in the commutative ring."""
    if name not in CATALOG:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(CATALOG)}")
    entry = CATALOG[name]
    dN, dm = entry.params[0]
    N = dN if N is None else N
    m = dm if m is None else m
    if (N, m) not in entry.params:
        raise ValueError(f"{name} is defined for (N, m) in {list(entry.params)}, got ({N}, {m})")
    start = time.perf_counter()
    result = entry.builder(N, m, qval)
    detail = ""
    if entry.witness:
        residual, value = result
        passed = residual.is_zero()
        if qval is None:
            passed = passed and not value.is_zero()
        detail = f"coefficient = {value}"
    else:
        residual = result
        passed = _is_zero(residual)
    elapsed = time.perf_counter() - start
    params = {"N": N, "m": m}
    if qval is not None:
        params["q"] = qval
    return IdentityReport(name, passed, residual, elapsed, params, detail)


def verify_all(qval=None):
    out = []
    for name, entry in CATALOG.items():
        for N, m in entry.params:
            out.append(verify(name, N, m, qval))
    return out
