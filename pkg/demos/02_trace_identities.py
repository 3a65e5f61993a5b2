"""
Quantum trace identities
========================

Checks a few entries of the identity catalog and shows one that fails.
"""

from qtrace import CATALOG, verify

for name in ("ch2", "qtryx", "fund1", "fund2"):
    report = verify(name)
    print(f"{name:8s} passed={report.passed}  residual={report.residual_rendered()}")

# Every identity specializes to a classical statement at q = 1.
print("ch2 at q = 1:", verify("ch2", qval=1).passed)

# The contraction behind hecke_id_image does not reduce to the stated
# closed form; the residual is printed rather than hidden.  Reading the
# second factor transposed makes it vanish.
bad = verify("hecke_id_image")
print("hecke_id_image residual:", bad.residual_rendered())
print("transposed reading:", verify("hecke_id_image_yt").passed)

print(len(CATALOG), "catalog entries in total")
