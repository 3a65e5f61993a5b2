"""Exact computation in quantized trace rings.

Scalars live in Q(q) (:mod:`qtrace.scalar`); the algebras are presented by
oriented quadratic rewriting systems (:mod:`qtrace.rewrite`,
:mod:`qtrace.algebras`); identities, Hilbert series and the N = 2 trace ring
are in :mod:`qtrace.matrixops`, :mod:`qtrace.hilbert` and
:mod:`qtrace.trace22`.
"""

__version__ = "0.1.0"

from .algebras import build_Aq, build_FqGL, build_FqM, build_mixed
from .matrixops import CATALOG, AlgMatrix, qtrace, verify
from .parser import parse, parse_and_evaluate
from .scalar import LaurentPoly, RatFunc, q

__all__ = [
    "__version__",
    "build_Aq",
    "build_FqM",
    "build_FqGL",
    "build_mixed",
    "AlgMatrix",
    "CATALOG",
    "qtrace",
    "verify",
    "parse",
    "parse_and_evaluate",
    "LaurentPoly",
    "RatFunc",
    "q",
]
