"""The two-copy, 2x2 trace ring: presentation, freeness and the classical isomorphism.

Scalar matrices ``A, B, C, D, E`` are built from q-traces inside
``M_2(A_q(2,2))``.  The relation list is written once as a function of the
generators and a value of q, so the very same code produces the quantum
residuals and the residuals of the images in the commutative ring.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .algebras import build_Aq
from .config import get_config
from .hilbert import hilbert_series, multidegrees
from .linalg import rank_sparse
from .matrixops import AlgMatrix, IdentityReport, coefficient_vectors, commutator, qtrace
from .scalar import q

__all__ = [
    "PresentationGenerators",
    "quantum_generators",
    "classical_generators",
    "relations",
    "verify_presentation",
    "verify_xye",
    "freeness_check",
    "verify_iso",
    "rq_generators",
    "rq_commutativity",
    "rq_independence",
    "noncentral_witness",
    "format_table",
]


@dataclass
class PresentationGenerators:
    X: AlgMatrix
    Y: AlgMatrix
    A: AlgMatrix
    B: AlgMatrix
    C: AlgMatrix
    D: AlgMatrix
    E: AlgMatrix


def quantum_generators(alg=None):
    alg = alg or build_Aq(2, 2)
    qv = alg.qv
    qi = qv.inverse()
    X, Y = AlgMatrix.generic(alg, 1), AlgMatrix.generic(alg, 2)
    x, y = (lambda i, j: alg.x(1, i, j)), (lambda i, j: alg.x(2, i, j))
    S = lambda f: AlgMatrix.scalar(alg, f)
    tX, tY = qtrace(X), qtrace(Y)
    A = S(tX.scale(qi))
    B = S(tY.scale(qi))
    C = S((x(2, 2) * x(1, 1)).scale(qi * qi) - x(1, 2) * x(2, 1))
    D = S((y(2, 2) * y(1, 1)).scale(qi * qi) - y(1, 2) * y(2, 1))
    E = A * B - S(qtrace(X * Y).scale(qi ** 3))
    return PresentationGenerators(X, Y, A, B, C, D, E)


def classical_generators(alg=None):
    """x, y, a, b, c, d and e = ab - Tr(xy) I in the commutative ring."""
    alg = alg or build_Aq(2, 2, qval=1)
    x, y = AlgMatrix.generic(alg, 1), AlgMatrix.generic(alg, 2)
    S = lambda f: AlgMatrix.scalar(alg, f)

    def tr(M):
        return M[1, 1] + M[2, 2]

    def det(M):
        return M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1]

    a, b = S(tr(x)), S(tr(y))
    e = a * b - S(tr(x * y))
    return PresentationGenerators(x, y, a, b, S(det(x)), S(det(y)), e)


def relations(g, qv):
    """Yield (name, residual matrix) for the defining relations; each vanishes when it holds.

    Residuals are computed lazily, one per step, so callers can time them.
    """
    X, Y, A, B, C, D, E = g.X, g.Y, g.A, g.B, g.C, g.D, g.E
    qi = qv.inverse()
    q2, qm2 = qv * qv, qi * qi
    for cname, Z in (("A", A), ("B", B), ("C", C), ("D", D)):
        for gname, G in (("X", X), ("Y", Y)):
            yield f"{cname} commutes with {gname}", Z * G - G * Z
    yield "X^2 = AX - C", X * X - (A * X - C)
    yield "Y^2 = BY - D", Y * Y - (B * Y - D)
    yield "YX relation", Y * X - ((X * Y).scale(-qm2) + A * Y + B * X - E)
    xe = (E * X).scale(q2) + (A * B * X).scale(1 - q2) + (C * Y).scale(qm2 - q2) \
        + (A * X * Y).scale(1 - qm2) + (C * B).scale(q2 - 1)
    yield "XE relation", X * E - xe
    ye = (E * Y).scale(qm2) + (A * B * Y).scale(1 - qm2) + (D * X).scale(1 - qm2 * qm2) \
        + (B * X * Y).scale(qm2 * qm2 - qm2) + (A * D).scale(qm2 - 1)
    yield "YE relation", Y * E - ye


def _report(name, residual, start, params=None, detail=""):
    passed = residual.is_zero() if hasattr(residual, "is_zero") else bool(residual)
    return IdentityReport(name, passed, residual, time.perf_counter() - start, params or {}, detail)


def verify_presentation():
    start = time.perf_counter()
    g = quantum_generators()
    out = []
    for name, res in relations(g, g.X.alg.qv):
        out.append(_report(name, res, start))
        start = time.perf_counter()
    return out


def verify_xye():
    start = time.perf_counter()
    g = quantum_generators()
    return _report("XYE = EXY", g.X * g.Y * g.E - g.E * g.X * g.Y, start)


def rq_generators(alg=None):
    """The five commuting generators with their multidegrees."""
    alg = alg or build_Aq(2, 2)
    X, Y = AlgMatrix.generic(alg, 1), AlgMatrix.generic(alg, 2)
    return [
        ("Tr_q(X)", (1, 0), qtrace(X)),
        ("Tr_q(X^2)", (2, 0), qtrace(X * X)),
        ("Tr_q(Y)", (0, 1), qtrace(Y)),
        ("Tr_q(Y^2)", (0, 2), qtrace(Y * Y)),
        ("Tr_q(XY)", (1, 1), qtrace(X * Y)),
    ]


def rq_commutativity(alg=None):
    out = []
    for (n1, _, g1), (n2, _, g2) in itertools.combinations(rq_generators(alg), 2):
        start = time.perf_counter()
        out.append(_report(f"[{n1}, {n2}] = 0", commutator(g1, g2), start))
    return out


class _RqMonomials:
    """Products of the five generators, graded by multidegree and memoized by exponent vector."""

    def __init__(self, alg):
        self.alg = alg
        self.gens = rq_generators(alg)
        self.memo = {(0,) * 5: alg.rs.one()}

    def exponents(self, d):
        d = tuple(d)
        out = []
        degs = [g[1] for g in self.gens]
        bounds = [min(d[k] // g[k] for k in range(2) if g[k]) for g in degs]
        for ex in itertools.product(*(range(b + 1) for b in bounds)):
            tot = tuple(sum(e * g[k] for e, g in zip(ex, degs)) for k in range(2))
            if tot == d:
                out.append(ex)
        return out

    def element(self, ex):
        got = self.memo.get(ex)
        if got is None:
            k = max(i for i, e in enumerate(ex) if e)
            prev = list(ex)
            prev[k] -= 1
            got = self.element(tuple(prev)) * self.gens[k][2]
            self.memo[ex] = got
        return got


def _check_cap(cap):
    limit = get_config().degree_cap
    if cap > limit:
        raise ValueError(f"cap {cap} exceeds the degree cap {limit}")


def rq_independence(cap=4, alg=None):
    """Per multidegree: (number of generator monomials, rank of their span)."""
    _check_cap(cap)
    mons = _RqMonomials(alg or build_Aq(2, 2))
    out = {}
    for d in multidegrees(2, cap):
        exs = mons.exponents(d)
        els = [mons.element(ex) for ex in exs]
        out[d] = (len(exs), rank_sparse(coefficient_vectors(els)) if els else 0)
    return out


def _flatten(M):
    row = {}
    for i, r in enumerate(M.rows):
        for j, e in enumerate(r):
            for w, c in e.terms.items():
                row[(i, j, w)] = c
    return row


def freeness_check(cap=4, detail=False):
    """Rank of {r M : r an R_q monomial, M in I, X, Y, XY} equals the T_q series coefficient."""
    _check_cap(cap)
    alg = build_Aq(2, 2)
    X, Y = AlgMatrix.generic(alg, 1), AlgMatrix.generic(alg, 2)
    module_gens = [((0, 0), AlgMatrix.identity(alg)), ((1, 0), X), ((0, 1), Y), ((1, 1), X * Y)]
    mons = _RqMonomials(alg)
    series = hilbert_series(2, 2, "T", cap)
    table = {}
    for d in multidegrees(2, cap):
        rows = []
        for deg, M in module_gens:
            rest = (d[0] - deg[0], d[1] - deg[1])
            if min(rest) < 0:
                continue
            for ex in mons.exponents(rest):
                rows.append(_flatten(mons.element(ex) * M))
        table[d] = (len(rows), rank_sparse(rows), series[d])
    ok = all(n == r == h for n, r, h in table.values())
    return (ok, table) if detail else ok


def verify_iso():
    """Images of the relations under X->x, ..., E->e+(1-q^-2)xy, plus the classical inputs."""
    alg = build_Aq(2, 2, qval=1)
    cg = classical_generators(alg)
    qv = q
    qm2 = qv.inverse() * qv.inverse()
    out = []
    start = time.perf_counter()
    x, y, a, b, c, d, e = cg.X, cg.Y, cg.A, cg.B, cg.C, cg.D, cg.E
    out.append(_report("classical x^2 = ax - c", x * x - (a * x - c), start))
    start = time.perf_counter()
    out.append(_report("classical y^2 = by - d", y * y - (b * y - d), start))
    start = time.perf_counter()
    out.append(_report("classical yx = -xy + ay + bx - e", y * x - (-(x * y) + a * y + b * x - e), start))
    image_E = e + (x * y).scale(1 - qm2)
    img = PresentationGenerators(x, y, a, b, c, d, image_E)
    start = time.perf_counter()
    for name, res in relations(img, qv):
        out.append(_report(f"image of {name}", res, start))
        start = time.perf_counter()
    off_diag = image_E[1, 2]
    non_scalar = not off_diag.is_zero() or image_E[1, 1] != image_E[2, 2]
    out.append(IdentityReport("image of E is not scalar", non_scalar, off_diag,
                              time.perf_counter() - start, {}, f"(1,2) entry = {off_diag}"))
    return out


def noncentral_witness():
    """[Tr_q(XY), x^1_1] in A_q(2,2); the report passes when it is nonzero."""
    start = time.perf_counter()
    alg = build_Aq(2, 2)
    X, Y = AlgMatrix.generic(alg, 1), AlgMatrix.generic(alg, 2)
    c = commutator(qtrace(X * Y), alg.x(1, 1, 1))
    return IdentityReport("[Tr_q(XY), x^1_1] != 0", not c.is_zero(), c, time.perf_counter() - start, {},
                          f"commutator = {c}")


def format_table(reports):
    width = max((len(r.name) for r in reports), default=4)
    lines = [f"{'relation'.ljust(width)}  status  ms"]
    for r in reports:
        status = "ok" if r.passed else "FAIL"
        lines.append(f"{r.name.ljust(width)}  {status.ljust(6)}  {r.wall_time * 1000:.1f}")
    return "\n".join(lines)
