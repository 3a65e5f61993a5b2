"""
Counting invariants
===================

Hilbert series from characters, and spanning by products of q-traces.
"""

from qtrace.hilbert import hilbert_series, series_compare
from qtrace.matrixops import qtrace_span_rank

# Invariants of two 2x2 matrices, graded by the degree in each matrix.
R = hilbert_series(2, 2, "R", 4)
print(R.to_text())

# Five algebraically independent generators account for every coefficient.
print(series_compare(R, "1/((1-s)*(1-t)*(1-s**2)*(1-t**2)*(1-s*t))"))

# Products of q-traces of words in X and Y span each graded piece.
for d in [(1, 1), (2, 1), (2, 2)]:
    got = qtrace_span_rank(2, 2, d)
    print(d, "rank", got["rank"], "of", got["generators_used"], "products; expected", R[d])
