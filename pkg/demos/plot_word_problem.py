"""
Racing for the word problem
===========================

To decide u = v in a presented quandle, one procedure searches for a
derivation while the other searches small finite quandles for a hom that
separates u from v.  Each answer comes with evidence that is checked again.
"""

from quandlekit import io
from quandlekit.race import dumps, generalized_membership, verdict_to_json, word_problem

free2 = io.read_presentation("free2.pres")
gcd = io.read_presentation("gcd.pres")

###############################################################################
# In the free quandle x*y and x differ; a three-element quandle shows it.

v = word_problem(free2, free2.word("x*y"), free2.word("x"))
print(dumps(verdict_to_json(v, free2)))

###############################################################################
# With x *^2 y = x and x *^3 y = x the exponents collapse to their gcd, so
# x*y = x.  The verdict carries a derivation that replays step by step.

v = word_problem(gcd, gcd.word("x*y"), gcd.word("x"))
print(type(v).__name__, "in", len(v.derivation.steps), "steps")
for step in v.derivation.to_json(gcd)[:4]:
    print("  ", dumps(step))

###############################################################################
# Membership in a generated subquandle works the same way.

Y = [free2.word("x"), free2.word("y")]
print(dumps(verdict_to_json(generalized_membership(free2, Y, free2.word("x*y")), free2, Y)))
Y = [free2.word("x")]
print(verdict_to_json(generalized_membership(free2, Y, free2.word("x*y")), free2, Y)["verdict"])
