"""
From cube to pages
==================

The state spaces at the cube vertices assemble into a chain complex
over GF(2), filtered by cube weight.  Running the weight filtration's
spectral sequence gives a nested chain of rank bounds:

    E_inf total  <=  ...  <=  E_2 total  <=  E_1 total

E_1 is the raw state count; for plat words the differential is pure
weight 1, so everything is decided by page 2.
"""

from platcube.cube import braid_to_twists, build_cube
from platcube.specseq import compute_pages, rank_bounds
from platcube.tangle import parse_braid_word
from platcube.tqft import assemble_complex


def show(word, strands):
    b = parse_braid_word(word, strands)
    cc = assemble_complex(build_cube(braid_to_twists(b), strands))
    pages = compute_pages(cc.to_filtered())
    print(f"word {word!r} on {strands} strands")
    for r in range(1, pages.stabilization + 1):
        page = pages.page(r)
        per_w = "  ".join(f"w={w}:{d}" for w, d in sorted(page.dims.items()))
        print(f"  E_{r}: total {page.total:3d}   {per_w}")
    print(f"  stabilized at page {pages.stabilization}")
    bounds = rank_bounds(pages)
    print("  bound chain:", " <= ".join(f"{name} {t}" for name, t in bounds.chain))
    print()


show("s2 s2 s2", 4)        # trefoil: 30 states collapse to 6
show("s2 s1^-1 s2 s2", 4)  # figure-eight: 66 states collapse to 10
show("s2 s2", 4)           # Hopf link
show("", 2)                # unknot: nothing to collapse
