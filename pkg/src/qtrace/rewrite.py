"""Graded quadratic rewriting to PBW normal form.

A :class:`RuleSet` orients every out-of-order letter pair ``a b`` (``a`` of
higher precedence than ``b``) into a linear combination of two-letter words.
:func:`normal_form` reduces words in decreasing order of the rule set's
termination measure, so every word is rewritten at most once per call and all
contributions to it have been collected by the time it is processed.  Every
produced word is checked to be strictly smaller than its source.
"""

from __future__ import annotations

import heapq
import itertools
import random
from fractions import Fraction
from dataclasses import dataclass
from math import comb

from .config import get_config
from .scalar import LaurentPoly, RatFunc, as_ratfunc

__all__ = [
    "Letter",
    "RuleSet",
    "Element",
    "MeasureViolation",
    "normal_form",
    "multiply",
    "dimension_audit",
    "leading_term",
    "check_overlaps",
    "exponent_vector",
]

_ZERO = RatFunc(0)
_ONE = RatFunc(1)


class MeasureViolation(RuntimeError):
    """A rewrite produced a word that is not smaller than its source."""


class MemoryBudgetExceeded(MemoryError):
    pass


@dataclass(frozen=True)
class Letter:
    """A generator.  ``index`` is its position in the precedence order."""

    kind: str  # "x", "t" or "D"
    copy: int
    row: int
    col: int
    index: int
    slot: int  # grading slot: copy-1 for x letters, then t, then D

    @property
    def h(self):
        return self.row * self.col

    def name(self, with_copy=True):
        if self.kind == "x":
            if with_copy:
                return f"x({self.copy})^{self.row}_{self.col}"
            return f"x^{self.row}_{self.col}"
        if self.kind == "t":
            return f"t^{self.row}_{self.col}"
        return "D"


class RuleSet:
    """An oriented quadratic rewriting system over an ordered alphabet.

    ``rules`` maps an out-of-order pair of letter indices to a tuple of
    ``(word, coefficient)`` pairs; ``measure`` maps a word to a tuple that
    every rule application must strictly decrease.
    """

    def __init__(self, alphabet, rules, measure, name="", show_copy=True):
        self.alphabet = tuple(alphabet)
        if [a.index for a in self.alphabet] != list(range(len(self.alphabet))):
            raise ValueError("alphabet must be listed in precedence order")
        self.rules = {k: tuple((tuple(w), as_ratfunc(c)) for w, c in v) for k, v in rules.items()}
        self.measure = measure
        self.name = name
        self.nslots = max((a.slot for a in self.alphabet), default=-1) + 1
        self.show_copy = show_copy
        self._slot = [a.slot for a in self.alphabet]
        self._overlaps_ok = None
        self._validate()

    def _validate(self):
        n = len(self.alphabet)
        for a in range(n):
            for b in range(n):
                if a > b and (a, b) not in self.rules:
                    raise ValueError(f"no rule for out-of-order pair {self.word_str((a, b))}")
        for (a, b), rhs in self.rules.items():
            if not a > b:
                raise ValueError(f"rule for in-order pair {self.word_str((a, b))}")
            src = self.measure((a, b))
            deg = self.multidegree((a, b))
            for w, c in rhs:
                if len(w) != 2 or self.multidegree(w) != deg:
                    raise ValueError(f"rule {self.word_str((a, b))} does not preserve multidegree")
                if not self.measure(w) < src:
                    raise MeasureViolation(
                        f"rule {self.word_str((a, b))} -> ... {self.word_str(w)} does not decrease the measure"
                    )

    # -- words ------------------------------------------------------------
    def multidegree(self, word):
        d = [0] * self.nslots
        for a in word:
            d[self._slot[a]] += 1
        return tuple(d)

    @staticmethod
    def is_normal(word):
        return all(word[p] <= word[p + 1] for p in range(len(word) - 1))

    def letter(self, kind, copy=0, row=0, col=0):
        for a in self.alphabet:
            if a.kind == kind and a.copy == copy and a.row == row and a.col == col:
                return a.index
        raise KeyError(f"no letter {kind}({copy})^{row}_{col} in {self.name}")

    def word_str(self, word):
        if not word:
            return "1"
        return " ".join(self.alphabet[a].name(self.show_copy) for a in word)

    # -- elements ---------------------------------------------------------
    def element(self, terms=None, strategy="leftmost"):
        """Normal form of a raw ``{word: coefficient}`` map, as an Element."""
        return Element(self, normal_form(terms or {}, self, strategy))

    def gen(self, kind, copy=0, row=0, col=0):
        return Element(self, {(self.letter(kind, copy, row, col),): _ONE})

    def scalar(self, c):
        c = as_ratfunc(c)
        return Element(self, {(): c} if c else {})

    def zero(self):
        return Element(self, {})

    def one(self):
        return self.scalar(1)

    def normal_words(self, degree):
        """All normal words of a multidegree, in increasing order."""
        slots = [[a.index for a in self.alphabet if a.slot == s] for s in range(self.nslots)]
        parts = [list(itertools.combinations_with_replacement(slots[s], degree[s])) for s in range(self.nslots)]
        for combo in itertools.product(*parts):
            yield tuple(itertools.chain.from_iterable(combo))

    def expected_count(self, degree):
        sizes = [sum(1 for a in self.alphabet if a.slot == s) for s in range(self.nslots)]
        out = 1
        for size, d in zip(sizes, degree):
            out *= comb(size + d - 1, d)
        return out

    def overlaps_ok(self):
        if self._overlaps_ok is None:
            self._overlaps_ok = check_overlaps(self) == []
        return self._overlaps_ok

    def __repr__(self):
        return f"RuleSet({self.name!r}, {len(self.alphabet)} letters, {len(self.rules)} rules)"

    def dump(self):
        """One rule per line: ``lhs = rhs`` in canonical rendering."""
        lines = []
        for (a, b) in sorted(self.rules, key=lambda k: (k[1], k[0])):
            rhs = Element(self, dict(self.rules[(a, b)]))
            lines.append(f"{self.word_str((a, b))} = {rhs}")
        return lines


def normal_form(terms, rs, strategy="leftmost"):
    """Expand ``{word: coefficient}`` in normal words; returns a new dict."""
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(terms, Element):
        terms = terms.terms
    rules = rs.rules
    measure = rs.measure
    budget = get_config().max_terms
    todo = {}
    heap = []
    for w, c in terms.items():
        if not c:
            continue
        w = tuple(w)
        if w in todo:
            todo[w] = todo[w] + c
        else:
            todo[w] = as_ratfunc(c)
            heap.append((tuple(-x for x in measure(w)), w))
    heapq.heapify(heap)
    result = {}
    left = strategy == "leftmost"
    while heap:
        key, w = heapq.heappop(heap)
        c = todo.pop(w)
        if not c:
            continue
        pos = -1
        L = len(w)
        if left:
            for p in range(L - 1):
                if w[p] > w[p + 1]:
                    pos = p
                    break
        else:
            for p in range(L - 2, -1, -1):
                if w[p] > w[p + 1]:
                    pos = p
                    break
        if pos < 0:
            v = result.get(w)
            result[w] = c if v is None else v + c
            continue
        head, tail = w[:pos], w[pos + 2:]
        for rw, rc in rules[(w[pos], w[pos + 1])]:
            nw = head + rw + tail
            nkey = tuple(-x for x in measure(nw))
            if not nkey > key:
                raise MeasureViolation(f"{rs.word_str(w)} -> {rs.word_str(nw)} does not decrease the measure")
            v = c * rc
            old = todo.get(nw)
            if old is None:
                todo[nw] = v
                heapq.heappush(heap, (nkey, nw))
                if len(todo) > budget:
                    raise MemoryBudgetExceeded(f"more than {budget} pending terms in {rs.name}")
            else:
                todo[nw] = old + v
    return {w: c for w, c in result.items() if c}


def _concat_products(pairs):
    raw = {}
    for e1, e2 in pairs:
        for w1, c1 in e1.terms.items():
            for w2, c2 in e2.terms.items():
                w = w1 + w2
                v = c1 * c2
                old = raw.get(w)
                raw[w] = v if old is None else old + v
    return raw


def multiply(e1, e2, rs=None):
    rs = rs or e1.rs
    if len(e1.terms) == 1 and () in e1.terms:
        return e2.scale(e1.terms[()])
    if len(e2.terms) == 1 and () in e2.terms:
        return e1.scale(e2.terms[()])
    return Element(rs, normal_form(_concat_products([(e1, e2)]), rs))


def sum_of_products(rs, pairs):
    """Normal form of sum(a * b for a, b in pairs) with a single reduction."""
    return Element(rs, normal_form(_concat_products(pairs), rs))


class Element:
    """A normal-form element: ``{normal word: nonzero coefficient}`` plus its rule set."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs, terms):
        self.rs = rs
        self.terms = terms

    def _lift(self, other):
        if isinstance(other, Element):
            if other.rs is not self.rs:
                raise ValueError(f"elements of different algebras: {self.rs.name} vs {other.rs.name}")
            return other
        return self.rs.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            v = t.get(w)
            v = c if v is None else v + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return Element(self.rs, t)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.rs, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = as_ratfunc(c)
        if not c:
            return Element(self.rs, {})
        if c.is_one():
            return self
        return Element(self.rs, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, self._lift(other))
        if not _is_scalar_like(other):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        if not _is_scalar_like(other):
            return NotImplemented
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(as_ratfunc(other).inverse())

    def __pow__(self, n):
        out = self.rs.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.rs is other.rs and self.terms == other.terms
        try:
            return self == self.rs.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("element is not a scalar")
        return self.terms.get((), _ZERO)

    def coefficient(self, word):
        return self.terms.get(tuple(word), _ZERO)

    def multidegrees(self):
        return {self.rs.multidegree(w) for w in self.terms}

    def is_homogeneous(self):
        return len(self.multidegrees()) <= 1

    def map_coefficients(self, f):
        t = {}
        for w, c in self.terms.items():
            v = as_ratfunc(f(c))
            if v:
                t[w] = v
        return Element(self.rs, t)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for w, c in self.sorted_terms():
            # sign of the lowest-order numerator coefficient is pulled out
            neg = min(c.num.items())[1] < 0
            if neg:
                c = -c
            if c.is_monomial():
                coef = "" if c.is_one() and w else str(c)
            else:
                coef = f"({c})"
            body = self.rs.word_str(w) if w else ""
            text = " ".join(s for s in (coef, body) if s)
            if not out:
                out.append(("-" if neg else "") + text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)

    def __repr__(self):
        return f"Element({self})"


def _is_scalar_like(x):
    return isinstance(x, (int, Fraction, RatFunc, LaurentPoly))


def commutator(a, b):
    return a * b - b * a


def exponent_vector(word, size):
    v = [0] * size
    for a in word:
        v[a] += 1
    return tuple(v)


def _h(rs, word):
    return sum(rs.alphabet[a].h for a in word)


def leading_term(e):
    """Leading word: minimal h (maximal for the order v < w iff h(v) > h(w)), then lex-largest exponents."""
    if not isinstance(e, Element) or e.is_zero():
        raise ValueError("leading term of zero")
    if not e.is_homogeneous():
        raise ValueError("leading term needs a homogeneous element")
    rs = e.rs
    size = len(rs.alphabet)
    hmin = min(_h(rs, w) for w in e.terms)
    cands = [w for w in e.terms if _h(rs, w) == hmin]
    return max(cands, key=lambda w: exponent_vector(w, size))


def check_overlaps(rs):
    """Overlap ambiguities a b c (a > b > c) whose two reductions disagree."""
    bad = []
    n = len(rs.alphabet)
    for a in range(n):
        for b in range(a):
            for c in range(b):
                w = {(a, b, c): _ONE}
                if normal_form(w, rs, "leftmost") != normal_form(w, rs, "rightmost"):
                    bad.append((a, b, c))
    return bad


def dimension_audit(rs, degree, samples=200, seed=0, cap=None):
    """Count normal words of a multidegree and probe that the rewriting closes on them.

    Returns a dict with ``normal_count``, ``expected_count``, ``closure_ok``
    and its ingredients ``generators_ok`` (every generator times every normal
    word of the preceding degree reduces to normal words of this degree),
    ``strategies_agree`` (leftmost and rightmost reduction agree on
    ``samples`` pseudorandom words) and ``overlaps_ok`` (all degree-3 overlap
    ambiguities resolve).
    """
    degree = tuple(degree)
    if len(degree) != rs.nslots or any(d < 0 for d in degree):
        raise ValueError(f"multidegree {degree} does not fit {rs.name}")
    cap = get_config().degree_cap if cap is None else cap
    if sum(degree) > cap:
        raise ValueError(f"total degree {sum(degree)} exceeds the cap {cap}")
    words = list(rs.normal_words(degree))
    gens_ok = True
    for s in range(rs.nslots):
        if degree[s] == 0:
            continue
        prev = tuple(d - (i == s) for i, d in enumerate(degree))
        prev_words = list(rs.normal_words(prev))
        for g in (a.index for a in rs.alphabet if a.slot == s):
            for w in prev_words:
                nf = normal_form({(g,) + w: _ONE}, rs)
                if any(not rs.is_normal(v) or rs.multidegree(v) != degree for v in nf):
                    gens_ok = False
    rng = random.Random(seed)
    pool = []
    for s in range(rs.nslots):
        letters = [a.index for a in rs.alphabet if a.slot == s]
        pool.append(letters)
    agree = True
    for _ in range(samples if sum(degree) >= 2 else 0):
        w = [rng.choice(pool[s]) for s in range(rs.nslots) for _ in range(degree[s])]
        rng.shuffle(w)
        c = as_ratfunc(rng.randint(1, 5))
        t = {tuple(w): c}
        if normal_form(t, rs, "leftmost") != normal_form(t, rs, "rightmost"):
            agree = False
            break
    overlaps = rs.overlaps_ok()
    return {
        "normal_count": len(words),
        "expected_count": rs.expected_count(degree),
        "generators_ok": gens_ok,
        "strategies_agree": agree,
        "overlaps_ok": overlaps,
        "closure_ok": gens_ok and agree and overlaps,
    }
