"""Multigraded Hilbert series through torus characters.

The letter ``x(k)^i_j`` has torus weight ``e_j - e_i``.  Because the normal
words of a multidegree are in bijection with commutative monomials, the
character of a graded component is a product of complete homogeneous
symmetric functions in these weights.  Multiplicities of the trivial and
adjoint representations come from the Weyl alternating sum.
"""

from __future__ import annotations

import csv
import functools
import io
import itertools
import json
from fractions import Fraction
from math import comb, prod

from .config import get_config
from .linalg import rank_sparse

__all__ = [
    "CharacterPoly",
    "SeriesTable",
    "component_character",
    "mult_trivial",
    "mult_adjoint",
    "sl2_oracle",
    "hilbert_series",
    "series_coefficients",
    "series_compare",
    "parse_rational_series",
    "product_form",
    "gq_hilbert",
    "multidegrees",
]


class CharacterPoly:
    """Finitely supported map from weights in Z^N to non-negative integers."""

    def __init__(self, N, coeffs=None):
        self.N = N
        self.coeffs = {tuple(w): c for w, c in (coeffs or {}).items() if c}

    def __getitem__(self, weight):
        return self.coeffs.get(tuple(weight), 0)

    def mass(self):
        return sum(self.coeffs.values())

    def __mul__(self, other):
        out = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + c1 * c2
        return CharacterPoly(self.N, out)

    def shift(self, v):
        return CharacterPoly(self.N, {tuple(a + b for a, b in zip(w, v)): c for w, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, CharacterPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"CharacterPoly({dict(sorted(self.coeffs.items()))})"


def _generator_weights(N):
    out = []
    for i in range(N):
        for j in range(N):
            w = [0] * N
            w[j] += 1
            w[i] -= 1
            out.append(tuple(w))
    return out


@functools.lru_cache(maxsize=None)
def _sym_power(N, d):
    """Character of the degree-d part of the polynomial ring on one generic matrix."""
    # coefficient table of prod_g 1/(1 - u z^{w_g}), truncated at u^d
    layers = [{(0,) * N: 1}] + [dict() for _ in range(d)]
    for g in _generator_weights(N):
        for deg in range(1, d + 1):
            # layers[deg] += z^g * layers[deg-1] (already updated for this g)
            cur = layers[deg]
            for w, c in layers[deg - 1].items():
                nw = tuple(a + b for a, b in zip(w, g))
                cur[nw] = cur.get(nw, 0) + c
    return CharacterPoly(N, layers[d])


def multidegrees(m, cap):
    """All multidegrees with m components and total degree <= cap, by total degree."""
    out = []
    for tot in range(cap + 1):
        for d in itertools.product(range(tot + 1), repeat=m):
            if sum(d) == tot:
                out.append(d)
    return out


def _check_cap(total, cap=None):
    limit = get_config().degree_cap
    if total > limit or (cap is not None and cap > limit):
        raise ValueError(f"total degree {max(total, cap or 0)} exceeds the cap {limit}")


def component_character(N, m, d):
    d = tuple(d)
    if len(d) != m or any(x < 0 for x in d):
        raise ValueError(f"multidegree {d} does not fit m={m}")
    _check_cap(sum(d))
    chi = CharacterPoly(N, {(0,) * N: 1})
    for dk in d:
        chi = chi * _sym_power(N, dk)
    return chi


def _sign(perm):
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def _sl_reduce(w):
    """Representative of w modulo the all-ones vector (last coordinate 0)."""
    return tuple(a - w[-1] for a in w)


def _weyl(chi, N, highest):
    # weights are taken modulo the all-ones vector, so the result is the SL_N multiplicity
    reduced = {}
    for w, c in chi.coeffs.items():
        r = _sl_reduce(w)
        reduced[r] = reduced.get(r, 0) + c
    rho = tuple(range(N - 1, -1, -1))
    lam = tuple(a + b for a, b in zip(highest, rho))
    total = 0
    for perm in itertools.permutations(range(N)):
        w_lam = tuple(lam[perm[i]] for i in range(N))
        total += _sign(perm) * reduced.get(_sl_reduce(tuple(a - b for a, b in zip(w_lam, rho))), 0)
    return total


def mult_trivial(chi, N=None):
    N = N or chi.N
    return _weyl(chi, N, (0,) * N)


def mult_adjoint(chi, N=None):
    N = N or chi.N
    if N == 1:
        return 0
    theta = (1,) + (0,) * (N - 2) + (-1,)
    return _weyl(chi, N, theta)


def sl2_oracle(chi):
    """(trivial, adjoint) multiplicities for N=2 from SL_2 weight counts: c0 - c2, c2 - c4."""
    c = {}
    for (a, b), n in chi.coeffs.items():
        c[a - b] = c.get(a - b, 0) + n
    return c.get(0, 0) - c.get(2, 0), c.get(2, 0) - c.get(4, 0)


class SeriesTable:
    """Exact coefficients indexed by multidegree."""

    def __init__(self, m, entries, label=""):
        self.m = m
        self.entries = dict(entries)
        self.label = label

    def __getitem__(self, d):
        return self.entries[tuple(d)]

    def get(self, d, default=None):
        return self.entries.get(tuple(d), default)

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"d{k + 1}" for k in range(self.m)] + ["dim"])
        for d, v in self.items():
            w.writerow(list(d) + [v])
        return buf.getvalue()

    def to_json(self):
        return json.dumps({"label": self.label, "m": self.m,
                           "entries": [{"degree": list(d), "dim": v} for d, v in self.items()]})

    def to_text(self):
        lines = [self.label] if self.label else []
        for d, v in self.items():
            lines.append(f"{d}: {v}")
        return "\n".join(lines)

    def __eq__(self, other):
        return isinstance(other, SeriesTable) and self.entries == other.entries


def hilbert_series(N, m, which="R", cap=4):
    """which = A (all of A_q), R (coinvariants) or T (equivariant matrices)."""
    if which not in ("A", "R", "T"):
        raise ValueError(f"which must be A, R or T, got {which!r}")
    _check_cap(cap, cap)
    entries = {}
    for d in multidegrees(m, cap):
        if which == "A":
            entries[d] = prod(comb(N * N + dk - 1, dk) for dk in d)
            continue
        chi = component_character(N, m, d)
        triv = mult_trivial(chi, N)
        entries[d] = triv if which == "R" else triv + mult_adjoint(chi, N)
    return SeriesTable(m, entries, f"H({which}, N={N}, m={m})")


def series_coefficients(num, den, m, cap):
    """Power-series coefficients of num/den up to total degree ``cap``.

    ``num`` and ``den`` map exponent tuples to integers.
    """
    zero = (0,) * m
    d0 = den.get(zero, 0)
    if not d0:
        raise ValueError("denominator has zero constant term")
    out = {}
    den_items = [(e, c) for e, c in den.items() if e != zero and c]
    for e in multidegrees(m, cap):
        v = Fraction(num.get(e, 0))
        for f, c in den_items:
            g = tuple(a - b for a, b in zip(e, f))
            if min(g) >= 0:
                v -= c * out.get(g, 0)
        v /= d0
        out[e] = v.numerator if v.denominator == 1 else v
    return out


def parse_rational_series(text, variables=("s", "t")):
    """Parse an integer-coefficient rational expression into (num, den) exponent maps."""
    import sympy

    syms = sympy.symbols(variables)
    expr = sympy.sympify(text, locals={str(s): s for s in syms})
    num, den = sympy.fraction(sympy.together(expr))

    def to_map(p):
        poly = sympy.Poly(sympy.expand(p), *syms)
        out = {}
        for mon, c in poly.terms():
            if not c.is_integer:
                raise ValueError(f"non-integer coefficient {c} in {text!r}")
            out[tuple(int(x) for x in mon)] = int(c)
        return out

    return to_map(num), to_map(den)


def series_compare(table, closed_form, cap=None):
    """True iff every coefficient of ``table`` up to ``cap`` matches the closed form.

    ``closed_form`` is ``(num, den)`` exponent maps or a string in s, t, ...
    """
    m = table.m
    if isinstance(closed_form, str):
        closed_form = parse_rational_series(closed_form, _VARS[:m])
    num, den = closed_form
    cap = max(sum(d) for d in table.entries) if cap is None else cap
    coeffs = series_coefficients(num, den, m, cap)
    return all(table.get(d) == coeffs[d] for d in multidegrees(m, cap))


_VARS = ("s", "t", "u", "v", "w")


def product_form(m, degrees):
    """(num, den) for 1 / prod (1 - z^g) over generator multidegrees g."""
    den = {(0,) * m: 1}
    for g in degrees:
        g = tuple(g)
        new = {}
        for e, c in den.items():
            new[e] = new.get(e, 0) + c
            f = tuple(a + b for a, b in zip(e, g))
            new[f] = new.get(f, 0) - c
        den = {e: c for e, c in new.items() if c}
    return {(0,) * m: 1}, den


def gq_hilbert(cap=5):
    """Dimensions of the components of the algebra generated by X and Y inside M_2(A_q(2,2))."""
    from .algebras import build_Aq
    from .matrixops import AlgMatrix

    _check_cap(cap, cap)
    alg = build_Aq(2, 2)
    X, Y = AlgMatrix.generic(alg, 1), AlgMatrix.generic(alg, 2)
    cache = {(): AlgMatrix.identity(alg)}

    def word_matrix(w):
        got = cache.get(w)
        if got is None:
            got = word_matrix(w[:-1]) * (X if w[-1] == 1 else Y)
            cache[w] = got
        return got

    entries = {}
    for d in multidegrees(2, cap):
        rows = []
        for pos in set(itertools.permutations((1,) * d[0] + (2,) * d[1])):
            M = word_matrix(pos)
            row = {}
            for i in range(2):
                for j in range(2):
                    for w, c in M.rows[i][j].terms.items():
                        row[(i, j, w)] = c
            rows.append(row)
        entries[d] = rank_sparse(rows)
    return SeriesTable(2, entries, "H(G_q(2,2))")
