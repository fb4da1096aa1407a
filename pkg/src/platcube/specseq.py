"""Pages of the spectral sequence of a weight-filtered GF(2) complex.

The total complex carries an increasing integer weight per generator and a
differential split into components D_r that raise weight by exactly r.
Writing F_w for the span of generators of weight >= w, the standard
subspace chains

    Z_r^w = F_w  intersect  D^{-1}(F_{w+r})
    B_r^w = F_w  intersect  D(F_{w-r+1})

give E_r^w = Z_r^w / (Z_{r-1}^{w+1} + B_{r-1}^w), and the differential
d_r descends from D.  Because weights are sorted, every F_w is a
coordinate subspace and each page reduces to small eliminations on
contiguous index windows; quotient classes are handled by projecting to
the weight-w coordinates, under which the Z_{r-1}^{w+1} part vanishes
identically and only the boundary term survives.

Cube complexes feed in a pure weight-1 differential, for which
everything collapses no later than E_2; the window machinery exists for
externally supplied higher components (and for a weight-0 piece, which
the cube never produces but the formulas tolerate).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .f2linalg import (
    F2Matrix,
    Subspace,
    kernel_basis,
    matmul,
    rank,
    row_space,
    rref,
    span,
)

__all__ = [
    "FilteredComplex",
    "DSquaredReport",
    "verify_d_squared",
    "HigherMapError",
    "load_higher_maps",
    "PageData",
    "SpectralPages",
    "compute_pages",
    "total_homology_dim",
    "BoundsReport",
    "rank_bounds",
]


@dataclass(frozen=True, eq=False)
class FilteredComplex:
    """Weight-filtered complex: sorted generator weights + shift components.

    components maps shift r >= 0 to an n-by-n matrix whose (row, col)
    entries satisfy weight[row] == weight[col] + r.  Rows index targets.
    """

    weights: tuple[int, ...]
    components: dict[int, F2Matrix]
    labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        n = len(self.weights)
        if any(a > b for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError("generator weights must be sorted ascending")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels length does not match generator count")
        for r, mat in self.components.items():
            if not isinstance(r, int) or r < 0:
                raise ValueError(f"component shift {r!r} must be a nonnegative integer")
            if mat.shape != (n, n):
                raise ValueError(f"component {r} has shape {mat.shape}, expected {(n, n)}")
            _check_shift(self.weights, r, mat)

    @property
    def n(self) -> int:
        return len(self.weights)

    @cached_property
    def differential(self) -> F2Matrix:
        total = F2Matrix.zeros(self.n, self.n)
        for mat in self.components.values():
            total = total + mat
        return total

    @cached_property
    def weight_values(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.weights)))

    def block_range(self, w: int) -> tuple[int, int]:
        """Index range [lo, hi) of generators of weight exactly w."""
        arr = np.asarray(self.weights)
        return int(np.searchsorted(arr, w, "left")), int(np.searchsorted(arr, w, "right"))

    def low_index(self, w: int) -> int:
        """First index of weight >= w (start of F_w)."""
        return int(np.searchsorted(np.asarray(self.weights), w, "left"))

    @property
    def max_shift(self) -> int:
        nonzero = [r for r, m in self.components.items() if not m.is_zero()]
        return max(nonzero, default=0)

    @property
    def has_weight_zero_part(self) -> bool:
        return 0 in self.components and not self.components[0].is_zero()


def _check_shift(weights, r: int, mat: F2Matrix) -> None:
    n = len(weights)
    arr = np.asarray(weights)
    for w in sorted(set(weights)):
        c0 = int(np.searchsorted(arr, w, "left"))
        c1 = int(np.searchsorted(arr, w, "right"))
        t0 = int(np.searchsorted(arr, w + r, "left"))
        t1 = int(np.searchsorted(arr, w + r, "right"))
        if not mat.submatrix(0, t0, c0, c1).is_zero() or not mat.submatrix(t1, n, c0, c1).is_zero():
            raise ValueError(
                f"component {r} has entries off the weight-{w} to weight-{w + r} block"
            )


@dataclass(frozen=True)
class DSquaredReport:
    ok: bool
    witness: int | None = None
    image: int | None = None


def verify_d_squared(fc: FilteredComplex) -> DSquaredReport:
    """Does the total differential square to zero?  Witness on failure."""
    d = fc.differential
    sq = matmul(d, d)
    if sq.is_zero():
        return DSquaredReport(True)
    sq_t = sq.transpose()
    for j in range(sq_t.rows):
        img = sq_t.row_int(j)
        if img:
            return DSquaredReport(False, witness=j, image=img)
    raise AssertionError("unreachable")


class HigherMapError(ValueError):
    """External higher-map table breaks the complex; carries a witness."""

    def __init__(self, message: str, witness: int | None = None, image: int | None = None):
        super().__init__(message)
        self.witness = witness
        self.image = image


def load_higher_maps(fc: FilteredComplex, table: dict[int, F2Matrix]) -> FilteredComplex:
    """Adjoin externally supplied strictly-weight-raising components.

    Shifts must be >= 2 and the augmented differential must still
    square to zero; violations raise (HigherMapError when a D^2 witness
    exists).  An empty table returns the complex unchanged.
    """
    if not table:
        return fc
    for r, mat in table.items():
        if not isinstance(r, int) or r < 2:
            raise ValueError(f"higher map shift must be an integer >= 2, got {r!r}")
        if mat.shape != (fc.n, fc.n):
            raise ValueError(f"higher map for shift {r} has shape {mat.shape}, expected square of {fc.n}")
    merged = dict(fc.components)
    for r, mat in table.items():
        merged[r] = merged[r] + mat if r in merged else mat
    augmented = FilteredComplex(fc.weights, merged, fc.labels)
    report = verify_d_squared(augmented)
    if not report.ok:
        raise HigherMapError(
            f"augmented differential does not square to zero (witness generator {report.witness})",
            witness=report.witness,
            image=report.image,
        )
    return augmented


# -- page computation -------------------------------------------------


@dataclass(frozen=True, eq=False)
class PageData:
    """Dimensions and differentials of one page, keyed by weight."""

    r: int
    dims: dict[int, int]
    d_ranks: dict[int, int]
    d_matrices: dict[int, F2Matrix] = field(repr=False, default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.dims.values())


@dataclass(eq=False)
class SpectralPages:
    """Computed pages E_1..E_stop plus the stabilization index r*.

    stabilization is the least r with E_r = E_infinity when that is
    determined by the computation, else None.
    """

    pages: tuple[PageData, ...]
    stabilization: int | None
    weight_values: tuple[int, ...]

    def page(self, r: int) -> PageData:
        if r < 1:
            raise ValueError("pages are indexed from 1")
        if r <= len(self.pages):
            return self.pages[r - 1]
        if self.stabilization is not None and self.stabilization <= len(self.pages):
            return self.pages[-1]
        raise ValueError(f"page {r} was not computed and stabilization is unknown")

    def dims(self, r: int) -> dict[int, int]:
        return dict(self.page(r).dims)

    def total(self, r: int) -> int:
        return self.page(r).total

    @property
    def e_infinity(self) -> dict[int, int]:
        if self.stabilization is None or self.stabilization > len(self.pages):
            raise ValueError("E_infinity undetermined: computation was truncated")
        return dict(self.pages[self.stabilization - 1].dims)

    @property
    def e_infinity_total(self) -> int:
        return sum(self.e_infinity.values())


class _RowSolver:
    """Express vectors over a fixed independent row family, many times."""

    def __init__(self, rows: list[int], width: int):
        self.width = width
        self.count = len(rows)
        aug = [row | (1 << (width + i)) for i, row in enumerate(rows)]
        work = F2Matrix.from_int_rows(aug, width + self.count)
        reduced, rk, _ = rref(work)
        if rk != self.count:
            raise AssertionError("solver rows were not independent")
        mask = (1 << width) - 1
        self.pivot_rows = []
        for i in range(rk):
            full = reduced.row_int(i)
            left = full & mask
            pivot = left & -left
            self.pivot_rows.append((pivot, left, full >> width))

    def solve(self, v: int) -> int | None:
        acc = 0
        for pivot, left, combo in self.pivot_rows:
            if v & pivot:
                v ^= left
                acc ^= combo
        return acc if v == 0 else None


def _page_block_fast(fc: FilteredComplex, block_rank: dict[int, int]):
    """E_2 dims from block ranks alone (pure weight-1 differential)."""
    dims = {}
    for w in fc.weight_values:
        lo, hi = fc.block_range(w)
        m_w = hi - lo
        dims[w] = m_w - block_rank.get(w, 0) - block_rank.get(w - 1, 0)
    return dims


@dataclass
class _PageLevel:
    """Representative data of one (r, w) slot in the general path."""

    reps_pi: list[int]
    lifts: list[int]
    boundary: Subspace
    m: int


def _general_level(fc: FilteredComplex, d: F2Matrix, r: int, w: int) -> _PageLevel:
    n = fc.n
    lo_w = fc.low_index(w)
    hi_w = fc.low_index(w + 1)
    m_w = hi_w - lo_w
    z_lo, z_hi = lo_w, fc.low_index(w + r)
    mz = d.submatrix(z_lo, z_hi, z_lo, z_hi)
    zk = kernel_basis(mz)

    b_lo = fc.low_index(w - r + 1)
    b_hi = hi_w
    cons = d.submatrix(b_lo, lo_w, b_lo, b_hi)
    bk = kernel_basis(cons)
    out_block = d.submatrix(lo_w, hi_w, b_lo, b_hi)
    if bk.dim:
        b_rows = matmul(bk.basis, out_block.transpose())
        boundary = row_space(b_rows)
    else:
        boundary = Subspace.zero(m_w)

    reps_pi: list[int] = []
    lifts: list[int] = []
    mask = (1 << m_w) - 1
    accum = boundary
    for i in range(zk.dim):
        kvec = zk.basis.row_int(i)
        pi = kvec & mask
        if accum.reduce(pi):
            reps_pi.append(pi)
            lifts.append(kvec)
            accum = span(
                [accum.basis.row_int(j) for j in range(accum.dim)] + [pi], m_w
            )
    return _PageLevel(reps_pi, lifts, boundary, m_w)


def _general_page(fc: FilteredComplex, d: F2Matrix, dt: F2Matrix, r: int) -> PageData:
    levels = {w: _general_level(fc, d, r, w) for w in fc.weight_values}
    dims = {w: len(levels[w].reps_pi) for w in fc.weight_values}
    d_ranks = {}
    d_matrices = {}
    for w in fc.weight_values:
        src = levels[w]
        tgt = levels.get(w + r)
        rows_out = len(tgt.reps_pi) if tgt else 0
        mat = F2Matrix.zeros(rows_out, len(src.reps_pi))
        if tgt and src.reps_pi and tgt.m:
            t_lo = fc.low_index(w + r)
            t_hi = fc.low_index(w + r + 1)
            solver_rows = tgt.reps_pi + [
                tgt.boundary.basis.row_int(i) for i in range(tgt.boundary.dim)
            ]
            solver = _RowSolver(solver_rows, tgt.m)
            cols = []
            src_lo = fc.low_index(w)
            for lift in src.lifts:
                x = dt.premultiply_int(lift << src_lo)
                y = (x >> t_lo) & ((1 << (t_hi - t_lo)) - 1)
                combo = solver.solve(y)
                if combo is None:
                    raise AssertionError("page differential image escaped the target page")
                cols.append(combo & ((1 << rows_out) - 1))
            for ci, combo in enumerate(cols):
                for ri in range(rows_out):
                    if combo >> ri & 1:
                        mat.words[ri, ci // 64] ^= np.uint64(1) << np.uint64(ci % 64)
        d_matrices[w] = mat
        d_ranks[w] = rank(mat)
    return PageData(r, dims, d_ranks, d_matrices)


def compute_pages(fc: FilteredComplex, r_max: int | None = None) -> SpectralPages:
    """Pages E_1, E_2, ... with their differentials and ranks.

    Stops at r_max when given, else at the first page guaranteed final:
    weight spread + 1 in general, E_2 for a pure weight-1 differential.
    """
    report = verify_d_squared(fc)
    if not report.ok:
        raise ValueError(
            f"differential does not square to zero (witness generator {report.witness})"
        )
    if r_max is not None and r_max < 1:
        raise ValueError("r_max must be at least 1")

    if fc.n == 0:
        empty = PageData(1, {}, {}, {})
        return SpectralPages((empty,), 1, ())

    wvals = fc.weight_values
    spread = wvals[-1] - wvals[0]
    hard_stop = spread + 1 if spread >= 1 else 1
    stop = hard_stop if r_max is None else min(r_max, hard_stop)
    pure_d1 = not fc.has_weight_zero_part and fc.max_shift <= 1
    if pure_d1:
        stop = min(stop, 2)

    d = fc.differential

    pages: list[PageData] = []
    if pure_d1:
        block_rank: dict[int, int] = {}
        dims1 = {}
        mats1 = {}
        for w in wvals:
            lo, hi = fc.block_range(w)
            t_lo, t_hi = fc.block_range(w + 1)
            blk = d.submatrix(t_lo, t_hi, lo, hi)
            block_rank[w] = rank(blk)
            dims1[w] = hi - lo
            mats1[w] = blk
        pages.append(PageData(1, dims1, dict(block_rank), mats1))
        if stop >= 2:
            dims2 = _page_block_fast(fc, block_rank)
            zeros2 = {
                w: F2Matrix.zeros(dims2.get(w + 2, 0), dims2[w]) for w in wvals
            }
            pages.append(PageData(2, dims2, {w: 0 for w in wvals}, zeros2))
        if all(v == 0 for v in block_rank.values()):
            stabilization = 1
        else:
            stabilization = 2
    else:
        dt = d.transpose()
        for r in range(1, stop + 1):
            pages.append(_general_page(fc, d, dt, r))
        if stop == hard_stop:
            moved = [p.r for p in pages if any(p.d_ranks.values())]
            stabilization = max(moved, default=0) + 1
        else:
            stabilization = None

    return SpectralPages(tuple(pages), stabilization, wvals)


def total_homology_dim(fc: FilteredComplex) -> int:
    """dim ker D - dim im D for the total differential."""
    if fc.n == 0:
        return 0
    if not fc.has_weight_zero_part and fc.max_shift <= 1:
        total_rank = 0
        for w in fc.weight_values:
            lo, hi = fc.block_range(w)
            t_lo, t_hi = fc.block_range(w + 1)
            total_rank += rank(fc.differential.submatrix(t_lo, t_hi, lo, hi))
    else:
        total_rank = rank(fc.differential)
    return fc.n - 2 * total_rank


# -- rank bounds ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BoundsReport:
    """Nested upper bounds: E_infinity <= ... <= E_2 <= E_1 totals.

    chain runs from the deepest page out to E_1; first_page_bound is
    the headline E_1 figure (the a-priori rank bound available before
    any differential is computed).  Per-weight chains carry the same
    labels.
    """

    chain: tuple[tuple[str, int], ...]
    per_weight: dict[int, tuple[tuple[str, int], ...]]
    first_page_bound: int


def rank_bounds(pages: SpectralPages) -> BoundsReport:
    labels: list[tuple[str, PageData]] = []
    have_inf = pages.stabilization is not None and pages.stabilization <= len(pages.pages)
    if have_inf:
        labels.append(("E_inf", pages.pages[pages.stabilization - 1]))
    for page in reversed(pages.pages):
        labels.append((f"E_{page.r}", page))
    chain = tuple((name, page.total) for name, page in labels)
    totals = [t for _, t in chain]
    if any(a > b for a, b in zip(totals, totals[1:])):
        raise AssertionError("page totals failed to be nested")
    per_weight = {}
    for w in pages.weight_values:
        per_weight[w] = tuple((name, page.dims.get(w, 0)) for name, page in labels)
    return BoundsReport(chain, per_weight, pages.pages[0].total)
