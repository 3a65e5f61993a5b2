"""Exact scalars: rationals, Laurent polynomials in ``q`` and the field Q(q).

Rationals are :class:`fractions.Fraction` (plain ``int`` whenever the value is
integral, which keeps the hot paths cheap).  :class:`LaurentPoly` is a finitely
supported map ``exponent -> coefficient``; :class:`RatFunc` is a reduced ratio
of two of them with a unique normalized representative, so equality of field
elements is equality of representations.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "q",
    "q_integer",
    "eval_at_one",
    "as_ratfunc",
]


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Element of Q[q, q^-1], immutable."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = _clean(c)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t):
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        return cls._raw({0: _clean(c)} if c else {})

    @classmethod
    def monomial(cls, e, c=1):
        return cls._raw({e: _clean(c)} if c else {})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self):
        return dict(self._t)

    def items(self):
        return self._t.items()

    def coeff(self, e):
        return self._t.get(e, 0)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def is_one(self):
        return len(self._t) == 1 and self._t.get(0) == 1

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_monomial(self):
        return len(self._t) == 1

    def low(self):
        return min(self._t) if self._t else 0

    def high(self):
        return max(self._t) if self._t else 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._t.get(0, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.constant(other)
            else:
                return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = _clean(v)
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.constant(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return LaurentPoly._raw({})
                return LaurentPoly._raw({e: _clean(c * other) for e, c in self._t.items()})
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) == 1:
            (ea, ca), = a.items()
            if ca == 1:
                return LaurentPoly._raw({e + ea: c for e, c in b.items()})
            return LaurentPoly._raw({e + ea: _clean(c * ca) for e, c in b.items()})
        if len(b) == 1:
            return other * self
        t = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                t[e] = t.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: _clean(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisionError(f"{self} is not a unit of Q[q, q^-1]")
            (e, c), = self._t.items()
            return LaurentPoly.monomial(-e * (-n), Fraction(1) / Fraction(c) ** (-n))
        result = ONE_LP
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._t
            return len(self._t) == 1 and self._t.get(0) == other
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- evaluation / conversion -------------------------------------------
    def eval_at_one(self):
        return _clean(sum(self._t.values(), Fraction(0)))

    def __call__(self, value):
        """Evaluate at a nonzero rational (or any field element supporting ** and /)."""
        total = 0
        for e, c in self._t.items():
            total = total + c * value**e
        return total

    def to_poly(self):
        """Return ``(shift, coeffs)`` with self = q**shift * sum(coeffs[i] q**i), coeffs[0] != 0."""
        if not self._t:
            return 0, []
        lo, hi = min(self._t), max(self._t)
        return lo, [self._t.get(e, 0) for e in range(lo, hi + 1)]

    @classmethod
    def from_poly(cls, shift, coeffs):
        return cls._raw({shift + i: _clean(c) for i, c in enumerate(coeffs) if c})

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t):
            c = self._t[e]
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                qq = "q" if e == 1 else f"q^{e}"
                body = qq if a == 1 else f"{a}*{qq}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


ONE_LP = LaurentPoly._raw({0: 1})
ZERO_LP = LaurentPoly._raw({})


def q_integer(n):
    """The balanced q-integer q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"q-integer needs a positive integer, got {n!r}")
    return LaurentPoly._raw({n - 1 - 2 * k: 1 for k in range(n)})


def eval_at_one(p):
    """Substitute q := 1."""
    if isinstance(p, (LaurentPoly, RatFunc)):
        return p.eval_at_one()
    return p


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q (low -> high coefficient lists)


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pdivmod(a, b):
    a = [Fraction(c) for c in a]
    lb = Fraction(b[-1])
    qt = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lb
        qt[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a.pop()
        _trim(a)
    return qt, a


def _pgcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    lc = Fraction(a[-1])
    return [Fraction(c) / lc for c in a]


def _pexact_div(a, b):
    qt, r = _pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return qt


class RatFunc:
    """Element of Q(q) as a reduced, normalized ratio of Laurent polynomials.

    The denominator is a polynomial with nonzero constant term and leading
    coefficient 1; ``den`` is stored as ``None`` when it equals 1.
    """

    __slots__ = ("num", "_den", "_hash")

    def __init__(self, num=0, den=None):
        num = _as_lp(num)
        if den is None:
            self.num, self._den, self._hash = num, None, None
            return
        den = _as_lp(den)
        n, d = _normalize(num, den)
        self.num, self._den, self._hash = n, d, None

    @classmethod
    def _make(cls, num, den=None):
        obj = cls.__new__(cls)
        obj.num = num
        obj._den = den
        obj._hash = None
        return obj

    @property
    def den(self):
        return ONE_LP if self._den is None else self._den

    def is_laurent(self):
        return self._den is None

    def is_zero(self):
        return not self.num._t

    def __bool__(self):
        return bool(self.num._t)

    def is_one(self):
        return self._den is None and self.num.is_one()

    def __add__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self._den is None and other._den is None:
            return RatFunc._make(self.num + other.num)
        if not other.num._t:
            return self
        if not self.num._t:
            return other
        if self._den is not None and other._den is not None and self._den == other._den:
            n, d = _normalize(self.num + other.num, self._den)
        else:
            n, d = _normalize(self.num * other.den + other.num * self.den, self.den * other.den)
        return RatFunc._make(n, d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self._den)

    def __sub__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self._den is None and other._den is None:
            return RatFunc._make(self.num * other.num)
        if not self.num._t or not other.num._t:
            return RatFunc._make(ZERO_LP)
        n, d = _normalize(self.num * other.num, self.den * other.den)
        return RatFunc._make(n, d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num._t:
            raise ZeroDivisionError("division by zero in Q(q)")
        if self.num.is_monomial() and self._den is None:
            return RatFunc._make(self.num**-1)
        n, d = _normalize(self.den, self.num)
        return RatFunc._make(n, d)

    def __truediv__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self._den is None:
            return RatFunc._make(self.num**n)
        return RatFunc._make(self.num**n, self._den**n)

    def __eq__(self, other):
        if type(other) is not RatFunc:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self.num == other.num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self._den))
        return self._hash

    def eval_at_one(self):
        d = self.den.eval_at_one()
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at q = 1")
        return _clean(Fraction(self.num.eval_at_one()) / d)

    def __call__(self, value):
        return self.num(value) / self.den(value) if self._den is not None else self.num(value)

    def is_monomial(self):
        return self._den is None and self.num.is_monomial()

    def __str__(self):
        if self._den is None:
            return str(self.num)
        return f"({self.num})/({self._den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _as_lp(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    if isinstance(x, _RationalABC):
        return LaurentPoly.constant(Fraction(x))
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc._make(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc._make(LaurentPoly.constant(x))
    return None


def as_ratfunc(x):
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return r


def _normalize(num, den):
    """Reduce num/den; returns (num, den-or-None)."""
    if not den._t:
        raise ZeroDivisionError("zero denominator")
    if not num._t:
        return ZERO_LP, None
    if den.is_monomial():
        (e, c), = den._t.items()
        inv = Fraction(1) / Fraction(c)
        return LaurentPoly._raw({k - e: _clean(v * inv) for k, v in num._t.items()}), None
    sn, pn = num.to_poly()
    sd, pd = den.to_poly()
    g = _pgcd(pn, pd)
    if len(g) > 1:
        pn = _pexact_div(pn, g)
        pd = _pexact_div(pd, g)
    lc = Fraction(pd[-1])
    pn = [Fraction(c) / lc for c in pn]
    pd = [Fraction(c) / lc for c in pd]
    d = LaurentPoly.from_poly(0, pd)
    n = LaurentPoly.from_poly(sn - sd, pn)
    if d.is_one():
        return n, None
    return n, d


q = RatFunc._make(LaurentPoly._raw({1: 1}))
