"""Exact linear algebra over Q(q).

``rank_over_field`` clears denominators row by row and runs a fraction-free
elimination over Z[q] (content-reduced rows keep coefficient growth in
check).  Polynomial arithmetic inside that loop is delegated to
``flint.fmpz_poly``.  ``row_reduce`` and ``solve_linear`` work directly with
:class:`~qtrace.scalar.RatFunc` entries in sparse ``{column: value}`` rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from flint import fmpz_poly

from .scalar import RatFunc, as_ratfunc

__all__ = ["rank_over_field", "rank_sparse", "solve_linear", "row_reduce", "in_span"]


def _row_to_zpoly(row):
    """Scale a sparse RatFunc row by a nonzero element of Q(q) so all entries lie in Z[q]."""
    dens = []
    for v in row.values():
        d = v.den
        if not d.is_one() and d not in dens:
            dens.append(d)
    mult = None
    for d in dens:
        mult = d if mult is None else mult * d
    scaled = {}
    for c, v in row.items():
        n = v.num
        if mult is not None:
            if v.den.is_one():
                n = n * mult
            else:
                rest = None
                for d in dens:
                    if d != v.den:
                        rest = d if rest is None else rest * d
                if rest is not None:
                    n = n * rest
        scaled[c] = n
    shift = min(n.low() for n in scaled.values())
    denom = 1
    for n in scaled.values():
        for _, coef in n.items():
            if isinstance(coef, Fraction):
                denom = lcm(denom, coef.denominator)
    out = {}
    for c, n in scaled.items():
        s, coeffs = n.to_poly()
        pad = [0] * (s - shift)
        out[c] = fmpz_poly(pad + [int(x * denom) for x in coeffs])
    return out


def _primitive(row):
    g = None
    for v in row.values():
        g = v if g is None else g.gcd(v)
        if g.degree() == 0 and abs(g[0]) == 1:
            return row
    if g is None:
        return row
    if g.degree() == 0 and abs(g[0]) == 1:
        return row
    return {c: v // g for c, v in row.items()}


def rank_sparse(rows):
    """Rank over Q(q) of sparse rows ``{column: RatFunc}``."""
    active = []
    for row in rows:
        row = {c: as_ratfunc(v) for c, v in row.items()}
        row = {c: v for c, v in row.items() if v}
        if row:
            active.append(_primitive(_row_to_zpoly(row)))
    rank = 0
    while active:
        r = min(range(len(active)), key=lambda i: (len(active[i]), max(v.degree() for v in active[i].values())))
        prow = active[r]
        c = min(prow, key=lambda k: (prow[k].degree(), k))
        p = prow[c]
        nxt = []
        for i, row in enumerate(active):
            if i == r:
                continue
            a = row.get(c)
            if a is None:
                nxt.append(row)
                continue
            g = p.gcd(a)
            pp, aa = p // g, a // g
            new = {}
            for k in row.keys() | prow.keys():
                if k == c:
                    continue
                v = pp * row[k] if k in row else fmpz_poly(0)
                if k in prow:
                    v = v - aa * prow[k]
                if v != 0:
                    new[k] = v
            if new:
                nxt.append(_primitive(new))
        rank += 1
        active = nxt
    return rank


def rank_over_field(matrix):
    """Rank over Q(q) of a rectangular matrix of scalars (lists of rows)."""
    rows = list(matrix)
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows of inconsistent length")
    return rank_sparse({j: v for j, v in enumerate(r) if v} for r in rows)


def row_reduce(rows, order=None):
    """Gauss-Jordan reduction of sparse rows over Q(q).

    ``order`` ranks columns for pivot choice (earlier = preferred pivot); by
    default columns are compared directly.  Returns a list of
    ``(pivot_column, row)`` with every pivot entry equal to 1 and every pivot
    column cleared from all other rows.
    """
    key = order if order is not None else (lambda c: c)
    pivots = []  # list of [col, row]
    for row in rows:
        row = {c: as_ratfunc(v) for c, v in row.items()}
        row = {c: v for c, v in row.items() if v}
        for pc, prow in pivots:
            f = row.get(pc)
            if f:
                _axpy(row, -f, prow)
        if not row:
            continue
        pc = min(row, key=key)
        inv = row[pc].inverse()
        row = {c: v * inv for c, v in row.items()}
        for entry in pivots:
            f = entry[1].get(pc)
            if f:
                _axpy(entry[1], -f, row)
        pivots.append([pc, row])
    return [(pc, prow) for pc, prow in pivots]


def _axpy(target, f, src):
    for c, v in src.items():
        nv = target.get(c, RatFunc(0)) + f * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def solve_linear(matrix, rhs):
    """One exact solution of ``matrix @ x = rhs`` over Q(q), or ``None``.

    Free variables are set to zero.
    """
    rows = [list(r) for r in matrix]
    rhs = list(rhs)
    if len(rows) != len(rhs):
        raise ValueError(f"{len(rows)} equations but {len(rhs)} right-hand sides")
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise ValueError("rows of inconsistent length")
    aug = []
    for r, b in zip(rows, rhs):
        d = {j: v for j, v in enumerate(r) if v}
        if b:
            d[width] = b
        aug.append(d)
    reduced = row_reduce(aug)
    x = [RatFunc(0)] * width
    for pc, prow in reduced:
        if pc == width:
            return None
        x[pc] = prow.get(width, RatFunc(0))
    return x


def in_span(vectors, target):
    """True iff the sparse ``target`` lies in the Q(q)-span of the sparse ``vectors``."""
    base = rank_sparse(vectors)
    return rank_sparse(list(vectors) + [target]) == base
