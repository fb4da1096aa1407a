#!/usr/bin/env python
# Tabulate E_2 totals against twice the link determinant for a family
# of alternating plat words, then poke one word with diagram moves to
# see which quantities move and which stay put.

from platcube.cube import braid_to_twists, build_cube
from platcube.invariants import determinant
from platcube.specseq import compute_pages
from platcube.tangle import BraidWord, mirror, parse_braid_word
from platcube.tqft import assemble_complex

WORDS = [
    ("s2 s2", 4),                            # Hopf
    ("s2 s2 s2", 4),                         # trefoil
    ("s2 s1^-1 s2 s2", 4),                   # figure-eight
    ("s2 s2 s2 s1^-1 s2", 4),                # 5_2
    ("s2 s2 s2 s2 s1^-1 s2", 4),             # 6_1
    ("s2 s2 s2 s1^-1 s2 s2", 4),             # 6_2
    ("s2 s2 s1^-1 s2 s1^-1 s2", 4),          # 6_3
    ("s2 s2 s4 s4", 6),                      # Hopf # Hopf
    ("s2 s2 s2 s4 s4 s4", 6),                # trefoil # trefoil
]


def totals(b):
    cc = assemble_complex(build_cube(braid_to_twists(b), b.strands))
    pages = compute_pages(cc.to_filtered(), r_max=2)
    return pages.total(1), pages.total(2)


print(f"{'word':34s} {'E_1':>5s} {'E_2':>5s} {'2*det':>6s}")
for word, strands in WORDS:
    b = parse_braid_word(word, strands)
    e1, e2 = totals(b)
    det = determinant(b)
    mark = "" if e2 == 2 * det else "   <-- differs"
    print(f"{word:34s} {e1:5d} {e2:5d} {2 * det:6d}{mark}")

# Now deform one diagram.  E_1 (the raw state count) is wildly
# presentation dependent; the E_2 total rides through mirrors and
# s_k s_k^-1 insertions unchanged.
print("\ndeforming the trefoil word:")
base = parse_braid_word("s2 s2 s2", 4)
variants = [
    ("as written", base),
    ("mirror", mirror(base)),
    ("with s1 s1^-1 inserted", BraidWord(4, ((1, 1), (1, -1)) + base.letters)),
    ("with s3 s3^-1 inserted", BraidWord(4, base.letters + ((3, 1), (3, -1)))),
]
for label, b in variants:
    e1, e2 = totals(b)
    print(f"  {label:26s} E_1 {e1:4d}   E_2 {e2}")
