"""
Counting colorings of knot diagrams
===================================

A coloring of a diagram by a quandle is a hom out of its fundamental quandle.
The count does not depend on the diagram chosen for the knot.
"""

from quandlekit import io
from quandlekit.core import count_homs, dihedral_quandle, trivial_quandle
from quandlekit.links import fundamental_quandle

###############################################################################
# The trefoil has three arcs and three crossings.

trefoil = io.read_link("trefoil.link")
P = fundamental_quandle(trefoil)
print(P)

###############################################################################
# Fox 3-colorings are homs into the dihedral quandle R3.  The trefoil has 9,
# the figure-eight only the 3 constant ones.

R3 = dihedral_quandle(3)
fig8 = fundamental_quandle(io.read_link("figure-eight.pd"))
print("trefoil -> R3:", count_homs(P, R3))
print("figure-eight -> R3:", count_homs(fig8, R3))
print("figure-eight -> R5:", count_homs(fig8, dihedral_quandle(5)))

###############################################################################
# Diagrams related by Reidemeister moves give the same counts into every
# small quandle.

for name in ("trefoil.link", "trefoil-r1.link", "trefoil-r2.link"):
    Q = fundamental_quandle(io.read_link(name))
    print(f"{name:18s}", [count_homs(Q, q) for q in (R3, trivial_quandle(2), dihedral_quandle(5))])
