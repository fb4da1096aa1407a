"""Spectral pages: subspace formula vs Gaussian-cancellation oracle."""

import random

import numpy as np
import pytest

from platcube.cube import braid_to_twists, build_cube
from platcube.f2linalg import F2Matrix
from platcube.specseq import (
    FilteredComplex,
    HigherMapError,
    compute_pages,
    load_higher_maps,
    rank_bounds,
    total_homology_dim,
    verify_d_squared,
)
from platcube.specseq import _general_page
from platcube.tangle import BraidWord, parse_braid_word
from platcube.tqft import assemble_complex

from oracles import (
    cancellation_pages,
    conjugate_dense,
    dense_matmul,
    dense_rank,
    random_letters,
    split_by_shift,
)


def fc_from_dense(weights, dense):
    comps = {
        r: F2Matrix.from_dense(part) for r, part in split_by_shift(weights, dense).items()
    }
    return FilteredComplex(tuple(weights), comps)


def filtered_of(word, strands):
    b = parse_braid_word(word, strands)
    return assemble_complex(build_cube(braid_to_twists(b), strands)).to_filtered()


def random_filtered(rng, max_len=5):
    strands = rng.choice([2, 4])
    b = BraidWord(strands, random_letters(rng, strands, rng.randint(0, max_len)))
    return assemble_complex(build_cube(braid_to_twists(b), strands)).to_filtered()


# -- construction and validation --------------------------------------


def test_weights_must_be_sorted():
    with pytest.raises(ValueError):
        FilteredComplex((1, 0), {})


def test_component_shape_checked():
    with pytest.raises(ValueError):
        FilteredComplex((0, 1), {1: F2Matrix.zeros(3, 3)})


def test_component_shift_checked():
    # an entry from weight 0 to weight 0 is not a shift-1 entry
    bad = F2Matrix.from_dense([[0, 0], [1, 0]])
    with pytest.raises(ValueError):
        FilteredComplex((0, 0), {1: bad})
    # same matrix is fine when declared as shift 0
    FilteredComplex((0, 0), {0: bad})


def test_component_key_checked():
    with pytest.raises(ValueError):
        FilteredComplex((0,), {-1: F2Matrix.zeros(1, 1)})


def test_labels_length_checked():
    with pytest.raises(ValueError):
        FilteredComplex((0, 1), {}, labels=("a",))


def test_block_lookup():
    fc = FilteredComplex((0, 0, 2, 2, 2, 5), {})
    assert fc.block_range(0) == (0, 2)
    assert fc.block_range(2) == (2, 5)
    assert fc.block_range(1) == (2, 2)
    assert fc.low_index(3) == 5
    assert fc.weight_values == (0, 2, 5)


# -- d^2 verification -------------------------------------------------


def test_verify_d_squared_ok():
    fc = filtered_of("s2 s2", 4)
    report = verify_d_squared(fc)
    assert report.ok and report.witness is None


def test_verify_d_squared_witness():
    d = F2Matrix.from_dense([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    fc = FilteredComplex((0, 1, 2), {1: d})
    report = verify_d_squared(fc)
    assert not report.ok
    assert report.witness == 0
    assert report.image == 0b100  # generator 2
    with pytest.raises(ValueError):
        compute_pages(fc)


# -- higher-map loading -----------------------------------------------


def test_empty_table_is_identity():
    fc = filtered_of("s2 s2", 4)
    assert load_higher_maps(fc, {}) is fc


def test_zero_block_changes_nothing():
    fc = filtered_of("s2 s2", 4)
    out = load_higher_maps(fc, {2: F2Matrix.zeros(fc.n, fc.n)})
    a = compute_pages(fc)
    b = compute_pages(out)
    assert [p.dims for p in a.pages] == [p.dims for p in b.pages][: len(a.pages)]
    assert b.stabilization is not None


def test_higher_map_shift_bounds():
    fc = filtered_of("s2 s2", 4)
    with pytest.raises(ValueError):
        load_higher_maps(fc, {1: F2Matrix.zeros(fc.n, fc.n)})
    with pytest.raises(ValueError):
        load_higher_maps(fc, {2: F2Matrix.zeros(3, 3)})


def test_higher_map_off_block_rejected():
    fc = filtered_of("s2 s2", 4)
    lo, hi = fc.block_range(fc.weight_values[0])
    bad = F2Matrix.zeros(fc.n, fc.n)
    bad.words[lo, 0] = np.uint64(1) << np.uint64(lo + 1)  # weight shift 0
    with pytest.raises(ValueError):
        load_higher_maps(fc, {2: bad})


def test_higher_map_d2_witness():
    """A block that breaks D^2 = 0 is rejected with a usable witness.

    The arrow must land mid-filtration: on a spread-2 complex every
    legally shaped shift-2 block goes bottom-to-top and commutes for
    free, so a spread-3 word is the smallest honest test.
    """
    fc = filtered_of("s2 s2 s2", 4)
    w0 = fc.weight_values[0]
    lo, _ = fc.block_range(w0)
    t0, _ = fc.block_range(w0 + 2)
    h = np.zeros((fc.n, fc.n), dtype=np.uint8)
    h[t0, lo] = 1  # D(h(g_lo)) != 0 because the target splits onward
    with pytest.raises(HigherMapError) as err:
        load_higher_maps(fc, {2: F2Matrix.from_dense(h)})
    exc = err.value
    assert exc.witness is not None and exc.image
    total = (fc.differential + F2Matrix.from_dense(h)).to_dense()
    sq = dense_matmul(total, total)
    col = sq[:, exc.witness]
    assert sum(int(b) << i for i, b in enumerate(col)) == exc.image


def test_spread_two_blocks_always_load():
    """On a spread-2 complex any legal shift-2 block keeps D^2 = 0."""
    rng = random.Random(17)
    fc = filtered_of("s2 s2", 4)
    lo, hi = fc.block_range(fc.weight_values[0])
    t0, t1 = fc.block_range(fc.weight_values[0] + 2)
    h = np.zeros((fc.n, fc.n), dtype=np.uint8)
    for i in range(t0, t1):
        for j in range(lo, hi):
            h[i, j] = rng.random() < 0.5
    aug = load_higher_maps(fc, {2: F2Matrix.from_dense(h)})
    base = compute_pages(fc)
    full = compute_pages(aug)
    assert full.dims(1) == base.dims(1)
    assert full.dims(2) == base.dims(2)
    d2_rank = full.page(2).d_ranks[fc.weight_values[0]]
    assert full.total(3) == full.total(2) - 2 * d2_rank
    assert full.e_infinity_total == total_homology_dim(aug)
    ref = cancellation_pages(list(fc.weights), aug.differential.to_dense())
    assert {w: d for w, d in full.e_infinity.items() if d} == {
        w: d for w, d in ref[-1].items() if d
    }


def test_conjugated_injection_preserves_low_pages():
    """Valid higher components leave E_1 and E_2 dims untouched."""
    rng = random.Random(0)
    fc = filtered_of("s2 s2 s2", 4)
    dense = fc.differential.to_dense()
    conj = conjugate_dense(list(fc.weights), dense, rng, min_shift=2)
    parts = split_by_shift(list(fc.weights), conj)
    assert (parts.pop(1) == dense).all()  # d_1 itself is unchanged
    table = {r: F2Matrix.from_dense(p) for r, p in parts.items()}
    if not table:
        pytest.skip("conjugation produced no higher part for this seed")
    aug = load_higher_maps(fc, table)
    base = compute_pages(fc)
    full = compute_pages(aug)
    assert full.dims(1) == base.dims(1)
    assert full.dims(2) == base.dims(2)
    assert full.e_infinity_total == total_homology_dim(aug)


# -- pages against the cancellation oracle ----------------------------


def test_golden_unknot():
    pages = compute_pages(filtered_of("", 2))
    assert pages.dims(1) == {0: 2}
    assert pages.dims(2) == {0: 2}
    assert pages.stabilization == 1
    assert pages.e_infinity == {0: 2}


def test_golden_hopf():
    pages = compute_pages(filtered_of("s2 s2", 4))
    assert pages.total(1) == 12
    assert pages.total(2) == 4
    assert pages.stabilization == 2


def test_golden_trefoil():
    pages = compute_pages(filtered_of("s2 s2 s2", 4))
    assert pages.dims(1) == {-3: 4, -2: 6, -1: 12, 0: 8}
    assert pages.dims(2) == {-3: 2, -2: 0, -1: 2, 0: 2}
    assert pages.stabilization == 2
    assert pages.e_infinity_total == 6


def test_golden_figure_eight():
    fc = filtered_of("s2 s1^-1 s2 s2", 4)
    pages = compute_pages(fc)
    assert pages.total(1) == 66
    assert pages.total(2) == 10
    assert total_homology_dim(fc) == 10


def test_pure_d1_matches_cancellation():
    rng = random.Random(1)
    for _ in range(12):
        fc = random_filtered(rng)
        pages = compute_pages(fc)
        ref = cancellation_pages(list(fc.weights), fc.differential.to_dense())
        want1 = {w: d for w, d in ref[0].items()}
        want2 = {w: d for w, d in ref[1].items()} if len(ref) > 1 else want1
        got1 = {w: d for w, d in pages.dims(1).items() if d}
        got2 = {w: d for w, d in pages.dims(2).items() if d}
        assert got1 == {w: d for w, d in want1.items() if d}
        assert got2 == {w: d for w, d in want2.items() if d}
        assert pages.e_infinity_total == total_homology_dim(fc)


def test_conjugated_matches_cancellation():
    """The general windowed path, on complexes with real higher parts."""
    rng = random.Random(2)
    done = 0
    while done < 10:
        fc = random_filtered(rng, max_len=4)
        if fc.n == 0 or len(fc.weight_values) < 3:
            continue
        dense = conjugate_dense(list(fc.weights), fc.differential.to_dense(), rng)
        conj = fc_from_dense(list(fc.weights), dense)
        if conj.max_shift <= 1:
            continue
        done += 1
        pages = compute_pages(conj)
        ref = cancellation_pages(list(fc.weights), dense)
        for page in pages.pages:
            want = ref[min(page.r, len(ref)) - 1]
            got = {w: d for w, d in page.dims.items() if d}
            assert got == {w: d for w, d in want.items() if d}
        assert pages.stabilization is not None
        assert pages.e_infinity_total == len(fc.weights) - 2 * dense_rank(dense)
        # conjugation is a filtered iso: pages agree with the plain cube
        plain = compute_pages(fc)
        assert pages.dims(1) == plain.dims(1)
        assert pages.dims(2) == plain.dims(2)


def test_fast_and_general_paths_agree():
    rng = random.Random(3)
    for _ in range(6):
        fc = random_filtered(rng, max_len=4)
        if fc.n == 0:
            continue
        pages = compute_pages(fc)
        d = fc.differential
        dt = d.transpose()
        for r in (1, 2):
            gen = _general_page(fc, d, dt, r)
            assert gen.dims == pages.dims(r)
            if r == 1:
                assert gen.d_ranks == pages.page(1).d_ranks


# -- toy complexes with genuine higher differentials ------------------


def test_nonzero_d2():
    # two generators at weights 0 and 2, one weight-2 arrow between them
    d = F2Matrix.from_dense([[0, 0], [1, 0]])
    fc = FilteredComplex((0, 2), {2: d})
    pages = compute_pages(fc)
    assert pages.dims(1) == {0: 1, 2: 1}
    assert pages.dims(2) == {0: 1, 2: 1}
    assert pages.page(2).d_ranks == {0: 1, 2: 0}
    assert pages.dims(3) == {0: 0, 2: 0}
    assert pages.stabilization == 3
    assert pages.e_infinity_total == 0 == total_homology_dim(fc)


def test_weight_zero_component():
    # d_0 acts within a weight block; E_1 is its homology
    d0 = np.zeros((3, 3), dtype=np.uint8)
    d0[1, 0] = 1  # both generators at weight 0
    fc = FilteredComplex((0, 0, 1), {0: F2Matrix.from_dense(d0)})
    pages = compute_pages(fc)
    assert pages.dims(1) == {0: 0, 1: 1}
    assert pages.stabilization == 1
    assert total_homology_dim(fc) == 1
    ref = cancellation_pages([0, 0, 1], d0)
    assert {w: d for w, d in pages.dims(1).items() if d} == ref[0]


def test_empty_complex():
    fc = FilteredComplex((), {})
    pages = compute_pages(fc)
    assert pages.stabilization == 1
    assert pages.e_infinity == {}
    assert total_homology_dim(fc) == 0


# -- truncation and page access ---------------------------------------


def test_truncated_pure_run():
    fc = filtered_of("s2 s2 s2", 4)
    pages = compute_pages(fc, r_max=1)
    assert len(pages.pages) == 1
    assert pages.stabilization == 2  # known even though E_2 was not built
    with pytest.raises(ValueError):
        pages.e_infinity
    with pytest.raises(ValueError):
        pages.page(2)
    with pytest.raises(ValueError):
        pages.page(0)
    with pytest.raises(ValueError):
        compute_pages(fc, r_max=0)


def test_truncated_general_run():
    d = F2Matrix.from_dense([[0, 0], [1, 0]])
    fc = FilteredComplex((0, 2), {2: d})
    pages = compute_pages(fc, r_max=2)
    assert pages.stabilization is None
    with pytest.raises(ValueError):
        pages.e_infinity
    # beyond stabilization, page() replays the stable page
    full = compute_pages(fc)
    assert full.dims(9) == full.dims(3)


def test_stable_page_replay():
    pages = compute_pages(filtered_of("s2 s2", 4))
    assert pages.dims(7) == pages.dims(2)


# -- bounds -----------------------------------------------------------


def test_rank_bounds_chain():
    pages = compute_pages(filtered_of("s2 s2 s2", 4))
    rep = rank_bounds(pages)
    assert rep.chain == (("E_inf", 6), ("E_2", 6), ("E_1", 30))
    assert rep.first_page_bound == 30
    for w, chain in rep.per_weight.items():
        names = [n for n, _ in chain]
        assert names == ["E_inf", "E_2", "E_1"]
        vals = [v for _, v in chain]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_rank_bounds_without_e_inf():
    fc = FilteredComplex((0, 2), {2: F2Matrix.from_dense([[0, 0], [1, 0]])})
    rep = rank_bounds(compute_pages(fc, r_max=2))
    assert rep.chain[0][0] == "E_2"
    assert rep.first_page_bound == 2
