"""
The 2x2 trace ring on two matrices
==================================

Generators, relations, and the comparison with the classical ring.
"""

from qtrace.hilbert import gq_hilbert, series_compare
from qtrace.trace22 import format_table, freeness_check, noncentral_witness, verify_iso, verify_presentation

# Relations among X, Y and the scalar matrices A, B, C, D, E.
print(format_table(verify_presentation()))

# The ring is free over the invariants on I, X, Y and XY.
ok, table = freeness_check(3, detail=True)
print("free:", ok, table[(1, 1)])

# Images of the relations after sending q to 1.
print(all(r.passed for r in verify_iso()))

# q-traces are not central in general.
print(noncentral_witness().detail)

# The algebra generated by X and Y alone.
G = gq_hilbert(4)
print(G[(1, 1)], series_compare(G, "((1-s)*(1-t)*(1-s*t)+s*t)/((1-s)**2*(1-t)**2*(1-s*t))"))
