"""Surface syntax for elements and matrices.

Grammar, loosest binding first::

    sum     := signed (('+' | '-') signed)*
    signed  := '-' signed | product
    product := power (('*' | '/')? power)*      juxtaposition multiplies
    power   := atom ('^' ['-'] INT)?
    atom    := INT | 'q' | generator | 'D' | matrix | 'Tr_q(' sum ')'
             | '(' sum ')' | '[' sum ',' sum ']'

Generators are ``x(k)^i_j``, ``x^i_j`` (copy 1), ``y^i_j`` and ``z^i_j``
(copies 2 and 3) and ``t^i_j``; matrices are ``X(k)``, ``X``, ``Y``, ``Z``
and ``I``.  Every node carries a static kind, scalar or matrix, and scalars
embed as scalar matrices where a matrix is expected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .scalar import RatFunc, as_ratfunc

__all__ = ["ParseError", "Expr", "parse", "evaluate", "algebra_for", "parse_and_evaluate"]


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} at position {pos}")


@dataclass
class Expr:
    op: str
    args: tuple = ()
    value: object = None
    kind: str = "scalar"  # or "matrix"
    pos: int = 0
    const: bool = True  # no generators below this node
    letters: set = field(default_factory=set)  # kinds of letters used: "x", "t", "D"

    def __repr__(self):
        if self.op in ("num", "q", "gen", "mat"):
            return f"{self.op}({self.value})"
        return f"{self.op}({', '.join(map(repr, self.args))})"


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<gen>(?P<gl>[xyzt])(?:\((?P<gk>\d+)\))?\^(?P<gi>\d+)_(?P<gj>\d+))
  | (?P<tr>Tr_q\()
  | (?P<mat>(?P<ml>[XYZI])(?:\((?P<mk>\d+)\))?)
  | (?P<D>D)
  | (?P<q>q)
  | (?P<int>\d+)
  | (?P<op>[-+*/^(),\[\]])
    """,
    re.VERBOSE,
)


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup if mt.lastgroup in ("ws", "tr", "D", "q", "int", "op") else None
        if mt.group("gen"):
            kind = "gen"
        elif mt.group("mat"):
            kind = "mat"
        if kind != "ws":
            out.append((kind, mt, pos))
        pos = mt.end()
    out.append(("end", None, len(text)))
    return out


_COPY_ALIAS = {"x": 1, "y": 2, "z": 3}


class _Parser:
    def __init__(self, text, N, m):
        self.text = text
        self.N, self.m = N, m
        self.toks = _tokenize(text)
        self.i = 0

    # -- token helpers ----------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def is_op(self, ch):
        kind, mt, _ = self.peek()
        return kind == "op" and mt.group(0) == ch

    def expect(self, ch):
        if not self.is_op(ch):
            kind, mt, pos = self.peek()
            found = "end of input" if kind == "end" else repr(mt.group(0))
            raise ParseError(f"expected {ch!r}, found {found}", pos)
        self.i += 1

    # -- grammar ----------------------------------------------------------
    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        node = self.sum()
        kind, mt, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {mt.group(0)!r}", pos)
        return node

    def sum(self):
        node = self.signed()
        while self.is_op("+") or self.is_op("-"):
            op = "add" if self.is_op("+") else "sub"
            pos = self.peek()[2]
            self.i += 1
            node = _binary(op, node, self.signed(), pos)
        return node

    def signed(self):
        if self.is_op("-"):
            pos = self.peek()[2]
            self.i += 1
            arg = self.signed()
            return Expr("neg", (arg,), kind=arg.kind, pos=pos, const=arg.const, letters=set(arg.letters))
        return self.product()

    def _starts_atom(self):
        kind, mt, _ = self.peek()
        if kind in ("gen", "tr", "mat", "D", "q", "int"):
            return True
        return kind == "op" and mt.group(0) in "(["

    def product(self):
        node = self.power()
        while True:
            pos = self.peek()[2]
            if self.is_op("*"):
                self.i += 1
                node = _binary("mul", node, self.power(), pos)
            elif self.is_op("/"):
                self.i += 1
                rhs = self.power()
                if rhs.kind != "scalar" or not rhs.const:
                    raise ParseError("divisor must be a scalar without generators", pos)
                node = _binary("div", node, rhs, pos)
            elif self._starts_atom():
                node = _binary("mul", node, self.power(), pos)
            else:
                return node

    def power(self):
        base = self.atom()
        if not self.is_op("^"):
            return base
        pos = self.peek()[2]
        self.i += 1
        sign = 1
        if self.is_op("-"):
            sign = -1
            self.i += 1
        kind, mt, ipos = self.peek()
        if kind != "int":
            raise ParseError("exponent must be an integer", ipos)
        self.i += 1
        n = sign * int(mt.group(0))
        if n < 0 and not base.const:
            raise ParseError("negative powers are only defined for scalars without generators", pos)
        return Expr("pow", (base,), n, base.kind, pos, base.const, set(base.letters))

    def atom(self):
        kind, mt, pos = self.peek()
        self.i += 1
        if kind == "int":
            return Expr("num", value=int(mt.group(0)), pos=pos)
        if kind == "q":
            return Expr("q", value="q", pos=pos)
        if kind == "D":
            return Expr("gen", value=("D", 0, 0, 0), pos=pos, const=False, letters={"D"})
        if kind == "gen":
            return self._generator(mt, pos)
        if kind == "mat":
            return self._matrix(mt, pos)
        if kind == "tr":
            arg = self.sum()
            self.expect(")")
            if arg.kind != "matrix":
                raise ParseError("type mismatch: Tr_q needs a matrix argument", pos)
            return Expr("tr", (arg,), kind="scalar", pos=pos, const=False, letters=set(arg.letters))
        if kind == "op" and mt.group(0) == "(":
            node = self.sum()
            self.expect(")")
            return node
        if kind == "op" and mt.group(0) == "[":
            a = self.sum()
            self.expect(",")
            b = self.sum()
            self.expect("]")
            return _binary("bracket", a, b, pos)
        found = "end of input" if kind == "end" else repr(mt.group(0))
        raise ParseError(f"unexpected {found}", pos)

    def _check_index(self, v, lim, what, pos):
        if not 1 <= v <= lim:
            raise ParseError(f"{what} {v} out of range 1..{lim}", pos)

    def _generator(self, mt, pos):
        letter = mt.group("gl")
        i, j = int(mt.group("gi")), int(mt.group("gj"))
        self._check_index(i, self.N, "row index", pos)
        self._check_index(j, self.N, "column index", pos)
        if letter == "t":
            if mt.group("gk"):
                raise ParseError("t generators carry no copy index", pos)
            return Expr("gen", value=("t", 0, i, j), pos=pos, const=False, letters={"t"})
        if mt.group("gk"):
            if letter != "x":
                raise ParseError(f"copy index is only allowed on x, not {letter}", pos)
            k = int(mt.group("gk"))
        else:
            k = _COPY_ALIAS[letter]
        self._check_index(k, self.m, "copy", pos)
        return Expr("gen", value=("x", k, i, j), pos=pos, const=False, letters={"x"})

    def _matrix(self, mt, pos):
        letter = mt.group("ml")
        if letter == "I":
            if mt.group("mk"):
                raise ParseError("I takes no copy index", pos)
            return Expr("mat", value=0, kind="matrix", pos=pos)
        if mt.group("mk"):
            if letter != "X":
                raise ParseError(f"copy index is only allowed on X, not {letter}", pos)
            k = int(mt.group("mk"))
        else:
            k = {"X": 1, "Y": 2, "Z": 3}[letter]
        self._check_index(k, self.m, "copy", pos)
        return Expr("mat", value=k, kind="matrix", pos=pos, const=False, letters={"x"})


def _binary(op, a, b, pos):
    kind = "matrix" if "matrix" in (a.kind, b.kind) else "scalar"
    return Expr(op, (a, b), kind=kind, pos=pos, const=a.const and b.const, letters=a.letters | b.letters)


def parse(text, N=2, m=1):
    """Parse ``text`` with indices validated against N and m."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string")
    return _Parser(text, N, m).parse()


# ---------------------------------------------------------------------------
# evaluation


def algebra_for(expr, N, m, qval=None):
    """A_q(N, m), or the mixed algebra when t letters or D occur."""
    from .algebras import build_Aq, build_mixed

    if expr.letters & {"t", "D"}:
        return build_mixed(N, m, qval)
    return build_Aq(N, m, qval)


def evaluate(expr, alg):
    """Value of ``expr``: a RatFunc for constants, else an Element or AlgMatrix."""
    from .matrixops import AlgMatrix, qtrace

    qv = alg.qv

    def as_matrix(v):
        return v if isinstance(v, AlgMatrix) else AlgMatrix.scalar(alg, v)

    def ev(node):
        op = node.op
        if op == "num":
            return as_ratfunc(node.value)
        if op == "q":
            return qv
        if op == "gen":
            kind, k, i, j = node.value
            if kind == "x":
                return alg.x(k, i, j)
            if kind == "t":
                return alg.t(i, j)
            return alg.D()
        if op == "mat":
            return AlgMatrix.identity(alg) if node.value == 0 else AlgMatrix.generic(alg, node.value)
        if op == "neg":
            v = ev(node.args[0])
            return -v
        if op == "pow":
            v, n = ev(node.args[0]), node.value
            if n < 0 and v.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return v ** n
        if op == "tr":
            return qtrace(ev(node.args[0]))
        a, b = ev(node.args[0]), ev(node.args[1])
        if op == "div":
            if b.is_zero():
                raise ZeroDivisionError("division by zero")
            inv = b.inverse()
            return inv * a if isinstance(a, RatFunc) else a.scale(inv)
        if node.kind == "matrix" and op in ("add", "sub", "bracket"):
            a, b = as_matrix(a), as_matrix(b)
        if op == "add":
            return _add(a, b, alg)
        if op == "sub":
            return _add(a, -b, alg)
        if op == "mul":
            return _mul(a, b)
        if op == "bracket":
            return _add(_mul(a, b), -_mul(b, a), alg)
        raise AssertionError(op)

    def _mul(a, b):
        if isinstance(a, RatFunc) and isinstance(b, RatFunc):
            return a * b
        if isinstance(a, RatFunc):
            return b.scale(a)
        if isinstance(b, RatFunc):
            return a.scale(b)
        return a * b

    def _add(a, b, alg):
        if isinstance(a, RatFunc) and isinstance(b, RatFunc):
            return a + b
        if isinstance(a, RatFunc):
            a = alg.scalar(a)
        if isinstance(b, RatFunc):
            b = alg.scalar(b)
        return a + b

    return ev(expr)


def parse_and_evaluate(text, N=2, m=1, qval=None):
    expr = parse(text, N, m)
    alg = algebra_for(expr, N, m, qval)
    value = evaluate(expr, alg)
    if isinstance(value, RatFunc):
        value = alg.scalar(value)
    return value
