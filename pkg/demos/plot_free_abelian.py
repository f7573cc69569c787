"""
Free abelian quandles
=====================

An element (i; n_1, ..., n_r) is x_i acted on n_j times by x_j.  Membership in
a finitely generated subquandle is decided exactly, and non-members get a
finite quotient that separates them.
"""

import numpy as np

from quandlekit.core import components, is_abelian, is_n_quandle
from quandlekit.freeabelian import (
    FreeAbelianElement as E,
    build_X_N,
    fab_membership,
    fab_op,
    fab_separate,
)

print(fab_op(E(1, (0, 2, -1)), E(3, (0, 1, 0))))

###############################################################################
# Only coordinates at positions no generator sits on are constrained.

gens = [E(1, (0, 0, 0)), E(2, (0, 0, 0))]
print(fab_membership(gens, E(1, (0, 7, 0))))
print(fab_membership([E(1, (0, 2))], E(1, (0, 5))))

###############################################################################
# The quotients X_N have r * N^(r-1) elements, one component per generator.

for r, N in ((2, 2), (2, 5), (3, 3)):
    X = build_X_N(r, N)
    q = X.quandle
    print(r, N, X.size, is_abelian(q), is_n_quandle(q, N), len(components(q)))

###############################################################################
# A certificate: (1; 0, 6) is not in <(1; 0, 0)>, and X_4 is the smallest
# quotient that sees it.

cert = fab_separate([E(1, (0, 0))], E(1, (0, 6)))
print("target size", cert.target.size, "excluded", cert.excluded, "image", sorted(cert.subquandle_image))
print(np.asarray(cert.target.table))
