"""
Normal forms in the reflection equation algebra
===============================================

A short tour of the rewriting engine for the 2x2 case.
"""

from qtrace import build_Aq, parse_and_evaluate

# The algebra on one 2x2 matrix of generators.  Its letters are ordered
# x^1_2 < x^2_2 < x^1_1 < x^2_1 and every out-of-order pair has a rule.
A = build_Aq(2, 1)
for line in A.rs.dump():
    print(line)

# Products are reduced to normal order as soon as they are formed.
x11, x12 = A.x(1, 1, 1), A.x(1, 1, 2)
print("x11 x12 =", x11 * x12)

# The same computation through the surface syntax.
print(parse_and_evaluate("x^1_1 x^1_2"))

# At q = 1 the rules become plain swaps and the ring is commutative.
print("classical:", parse_and_evaluate("[x^1_1, x^1_2]", qval=1))

# A second copy Y = X(2) braids past the first one.
print(parse_and_evaluate("y^1_1 x^1_1", N=2, m=2))
