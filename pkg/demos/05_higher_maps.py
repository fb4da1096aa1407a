"""
Supplying higher differentials from a file
==========================================

The cube differential is pure weight 1, so the engine never invents a
d_2 or beyond on its own.  Higher corrections can be injected from a
text table instead: blocks of the form

    r <source bits> <target bits>
    <one 0/1 row per target generator>

Each block must raise the weight by exactly r >= 2, and the corrected
differential must still square to zero — violations are rejected with
a witness.  Here we bolt a weight-2 arrow onto the Hopf-link complex
and watch page 2 acquire a nonzero differential.
"""

from platcube.cli import parse_higher_maps_text
from platcube.cube import braid_to_twists, build_cube
from platcube.specseq import compute_pages, load_higher_maps
from platcube.tangle import parse_braid_word
from platcube.tqft import assemble_complex

b = parse_braid_word("s2 s2", 4)
cc = assemble_complex(build_cube(braid_to_twists(b), 4))
fc = cc.to_filtered()

plain = compute_pages(fc)
print("without corrections:")
for r in range(1, plain.stabilization + 1):
    print(f"  E_{r} dims {dict(sorted(plain.dims(r).items()))}")

TABLE = """\
# one weight-2 block: resolution 00 (4 generators) -> resolution 11 (4)
2 00 11
0100
0000
0000
0000
"""

# the same file passed on the command line:
#   platcube --strands 4 --word "s2 s2" --higher-maps table.txt --pages
corrected = load_higher_maps(fc, parse_higher_maps_text(TABLE, cc))
pages = compute_pages(corrected)
print("\nwith the file's d_2 block:")
for r in range(1, pages.stabilization + 1):
    page = pages.page(r)
    print(f"  E_{r} dims {dict(sorted(page.dims.items()))}   d_{r} ranks {dict(sorted(page.d_ranks.items()))}")
print(f"  stabilized at page {pages.stabilization}; E_inf total {sum(pages.e_infinity.values())}")
