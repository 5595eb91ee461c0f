"""Steering monogamy can fail when the steered party has two modes.

Walks through an 8x8 counterexample: how its rows are ordered,
why the rounded entries make it slightly indefinite, and how the quoted
spectrum and monogamy gap are recovered anyway.

    python3 demos/01_counterexample.py
"""

import numpy as np

from schurcov import steerability, symplectic_spectrum
from schurcov.verify import (
    COUNTEREXAMPLE_ENTRIES,
    COUNTEREXAMPLE_PERMUTATION,
    counterexample_cm,
    reproduce_counterexample,
)

np.set_printoptions(precision=3, suppress=True, linewidth=100)

print("Entries as given (A occupies the first four rows):")
print(COUNTEREXAMPLE_ENTRIES)

# The library orders quadratures mode by mode, (x1, p1, x2, p2). The given
# A block only reproduces the quoted numbers when read as (x1, x2, p1, p2),
# so A's middle rows are swapped before anything else happens.
print("\nreordering of A's rows:", COUNTEREXAMPLE_PERMUTATION)
V = counterexample_cm()

# One-decimal rounding leaves a small negative eigenvalue, so V + iΩ >= 0
# cannot hold exactly. Symplectic eigenvalues are taken as moduli of the
# eigenvalues of ΩV, which is what the relaxed (strict=False) paths compute.
print("smallest ordinary eigenvalue: %.4f" % np.linalg.eigvalsh(V.matrix)[0])
print("symplectic moduli:", symplectic_spectrum(V, strict=False))

# Reading the A block in the other convention gives a very different matrix.
naive = COUNTEREXAMPLE_ENTRIES
print("same entries read mode by mode, smallest modulus: %.4f" % symplectic_spectrum(naive, strict=False)[0])

rec = reproduce_counterexample()
print("\nG(B1B2 > A) = %.10f" % rec.g_joint)
print("G(B1 > A)   = %.10f" % rec.g_b1)
print("G(B2 > A)   = %.10f" % rec.g_b2)
print("gap         = %.6f   (reference -0.816863)" % rec.gap)

# B2 alone cannot steer A at all, yet adding it to B1 lowers the joint
# steerability below what B1 achieves by itself.
assert steerability(V, "B2", "A", strict=False) == 0.0
