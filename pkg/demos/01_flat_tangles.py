"""
Flat tangles and the cup-cap calculus
=====================================

Every crossing has two flat resolutions: the identity (strands pass
through) and a cup-cap (strands turn back).  Stacking resolutions is
just composing planar matchings, and closed loops pop off as counted
circles.  This script builds the basic generators and checks the two
relations that make the calculus tick.
"""

from platcube.tangle import (
    PlatClosure,
    close_plat,
    compose,
    cup_cap_tangle,
    identity_tangle,
    parse_braid_word,
)

# the two generators on 4 strands
ident = identity_tangle(4)
e1 = cup_cap_tangle(4, 1)
e2 = cup_cap_tangle(4, 2)
print("identity pairs:", ident.pairs)
print("e1 pairs:      ", e1.pairs)
print("e2 pairs:      ", e2.pairs)

# relation 1: e_k e_k = e_k plus one free circle (delooping)
sq = compose(e1, e1)
print("\ne1 . e1 -> pairs", sq.pairs, "circles", sq.circles)
assert sq.pairs == e1.pairs and sq.circles == 1

# relation 2: e_k e_{k+1} e_k = e_k with no circle
zigzag = compose(compose(e1, e2), e1)
print("e1 . e2 . e1 -> pairs", zigzag.pairs, "circles", zigzag.circles)
assert zigzag.pairs == e1.pairs and zigzag.circles == 0

# closing a tangle under a plat turns everything into circles
plat = PlatClosure.standard(4)
closed = close_plat(ident, plat)
print("\nidentity closed by cups/caps:", closed.circles, "circles")
closed = close_plat(e2, plat)
print("e2 closed by cups/caps:      ", closed.circles, "circle")

# words are parsed into (generator, sign) letters; signs pick which of
# the two resolutions sits at bit 0 of the cube later on
b = parse_braid_word("s2 s1^-1 s2 s2", 4)
print("\nparsed word:", b.letters)
