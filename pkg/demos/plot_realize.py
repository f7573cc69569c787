"""
Finite fundamental n-quandles
=============================

Adding the relations x *^n y = x to the fundamental quandle of a link can make
it finite.  When it is, coset enumeration in the enveloping group finds it.
"""

from quandlekit import io
from quandlekit.core import components, dihedral_quandle, isomorphic
from quandlekit.realize import Undecided, realize_n_quandle, verify_homogeneous
from quandlekit.toddcoxeter import Limits

###############################################################################
# The trefoil's 2-quandle is R3, and its 3-quandle has four elements.

trefoil = io.read_link("trefoil.link")
for n in (2, 3, 4, 5):
    r = realize_n_quandle(trefoil, n)
    s = r.stats
    print(f"n={n}: |Q|={s['order']}  |Env|={s['env_order']}  |E0|={s['e0_order']}")

r = realize_n_quandle(trefoil, 2)
print("isomorphic to R3:", isomorphic(r.quandle, dihedral_quandle(3)) is not None)

###############################################################################
# The realized table is homogeneous: rebuilding it from the action of its
# inner automorphism group reproduces it.

print(verify_homogeneous(r))

###############################################################################
# For the figure-eight the 2-quandle is R5, but the 3-quandle is infinite, so
# enumeration never closes.  The answer is "undecided", never "infinite".

fig8 = io.read_link("figure-eight.pd")
print(realize_n_quandle(fig8, 2).stats)
out = realize_n_quandle(fig8, 3, Limits(max_cosets=2000, max_steps=10**5))
print(type(out).__name__, isinstance(out, Undecided))

###############################################################################
# Links give one block per component.

hopf = realize_n_quandle(io.read_link("hopf.link"), 2)
print("Hopf link blocks:", [len(c) for c in components(hopf.quandle)])
