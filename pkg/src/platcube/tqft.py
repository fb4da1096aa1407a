"""Two-dimensional mod-2 Frobenius calculus on the resolution cube.

The coefficient algebra has basis {1, X} with X^2 = 0; comultiplication
sends 1 to 1(x)X + X(x)1 and X to X(x)X.  A cube vertex with c circles
carries the c-fold tensor power: dimension 2^c, basis states indexed by
assigning 1 or X to each circle.  A merge edge acts by multiplication
on its two active circles, a split edge by comultiplication, and both
act as the identity on every spectator circle.

Basis order: circles in ascending label order, the first circle most
significant, and 1 before X in each factor.  So index 0 is all-1s and
for two circles the order is 1(x)1, 1(x)X, X(x)1, X(x)X.

Generators of the total complex are grouped by vertex, vertices sorted
by (weight, bitstring-as-integer); the differential collects one block
per increasing cube edge and raises weight by exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cube import ConsistencyError, Merge, ResolutionCube, Split
from .f2linalg import F2Matrix
from .specseq import FilteredComplex

__all__ = [
    "ONE",
    "X",
    "BASIS",
    "MULT_TABLE",
    "COMULT_TABLE",
    "multiply",
    "comultiply",
    "VertexSpace",
    "edge_map_matrix",
    "ChainComplexF2",
    "assemble_complex",
]

ONE = 0
X = 1
BASIS = (ONE, X)

MULT_TABLE = {
    (ONE, ONE): (ONE,),
    (ONE, X): (X,),
    (X, ONE): (X,),
    (X, X): (),
}

COMULT_TABLE = {
    ONE: ((ONE, X), (X, ONE)),
    X: ((X, X),),
}


def _as_element(a) -> frozenset:
    if a in BASIS:
        return frozenset([a])
    return frozenset(a)


def multiply(a, b) -> frozenset:
    """Product of two algebra elements (sets of basis labels, mod 2)."""
    out: set = set()
    for x in _as_element(a):
        for y in _as_element(b):
            out ^= set(MULT_TABLE[(x, y)])
    return frozenset(out)


def comultiply(a) -> frozenset:
    """Coproduct as a set of (left, right) basis pairs, mod 2."""
    out: set = set()
    for x in _as_element(a):
        out ^= set(COMULT_TABLE[x])
    return frozenset(out)


@dataclass(frozen=True)
class VertexSpace:
    """Tensor power of the algebra over the circles of one vertex."""

    circles: tuple[int, ...]

    @property
    def dim(self) -> int:
        return 1 << len(self.circles)

    def bit_of(self, label: int) -> int:
        """Bit position of a circle inside a basis index."""
        j = self.circles.index(label)
        return len(self.circles) - 1 - j

    def state_of_index(self, index: int) -> tuple[int, ...]:
        """Per-circle labels (ONE/X) in circle order."""
        c = len(self.circles)
        return tuple((index >> (c - 1 - j)) & 1 for j in range(c))

    def index_of_state(self, state) -> int:
        c = len(self.circles)
        idx = 0
        for j, v in enumerate(state):
            if v not in BASIS:
                raise ValueError(f"state entry {v!r} is not a basis label")
            idx |= v << (c - 1 - j)
        return idx


@dataclass(frozen=True)
class _ColumnMap:
    """Sparse columns of an edge block: <= 2 output rows per input."""

    dim_in: int
    dim_out: int
    out_a: np.ndarray
    out_b: np.ndarray
    terms: np.ndarray  # 1 or 2 valid outputs per column; 0 = killed

    def coo(self) -> tuple[np.ndarray, np.ndarray]:
        cols = np.arange(self.dim_in, dtype=np.int64)
        first = self.terms >= 1
        second = self.terms >= 2
        ri = np.concatenate([self.out_a[first], self.out_b[second]])
        ci = np.concatenate([cols[first], cols[second]])
        return ri, ci

    def matrix(self) -> F2Matrix:
        ri, ci = self.coo()
        return F2Matrix.from_coo(self.dim_out, self.dim_in, ri, ci)


def _edge_columns(space_i: VertexSpace, space_j: VertexSpace, cob: Merge | Split) -> _ColumnMap:
    v = np.arange(space_i.dim, dtype=np.int64)
    if isinstance(cob, Merge):
        active_i = set(cob.sources)
        active_j = {cob.target}
    else:
        active_i = {cob.source}
        active_j = set(cob.targets)
    base = np.zeros(space_i.dim, dtype=np.int64)
    for label in space_i.circles:
        if label in active_i:
            continue
        bit_in = space_i.bit_of(label)
        bit_out = space_j.bit_of(label)
        base |= ((v >> bit_in) & 1) << bit_out

    if isinstance(cob, Merge):
        a, b = cob.sources
        va = (v >> space_i.bit_of(a)) & 1
        vb = (v >> space_i.bit_of(b)) & 1
        product = va | vb  # X absorbs; X.X handled by the kill mask
        out_a = base | (product << space_j.bit_of(cob.target))
        terms = np.where(va & vb, 0, 1).astype(np.int64)
        return _ColumnMap(space_i.dim, space_j.dim, out_a, out_a.copy(), terms)

    a, b = cob.targets
    vc = (v >> space_i.bit_of(cob.source)) & 1
    bit_a = space_j.bit_of(a)
    bit_b = space_j.bit_of(b)
    # 1 -> 1(x)X + X(x)1 gives two rows; X -> X(x)X gives one
    out_a = np.where(vc == 0, base | (1 << bit_b), base | (1 << bit_a) | (1 << bit_b))
    out_b = np.where(vc == 0, base | (1 << bit_a), out_a)
    terms = np.where(vc == 0, 2, 1).astype(np.int64)
    return _ColumnMap(space_i.dim, space_j.dim, out_a, out_b, terms)


def edge_map_matrix(cube: ResolutionCube, i_vertex: int, j_vertex: int) -> F2Matrix:
    """The block of the differential attached to one cube edge."""
    cob = cube.edges[(i_vertex, j_vertex)]
    si = VertexSpace(cube.vertices[i_vertex].circles)
    sj = VertexSpace(cube.vertices[j_vertex].circles)
    return _edge_columns(si, sj, cob).matrix()


def _compose_columns(first: _ColumnMap, second: _ColumnMap) -> tuple[np.ndarray, np.ndarray]:
    """COO of second∘first (entries appear with multiplicity; mod 2 later)."""
    ri_parts = []
    ci_parts = []
    cols = np.arange(first.dim_in, dtype=np.int64)
    for take_first, mid in ((1, first.out_a), (2, first.out_b)):
        alive = first.terms >= take_first
        mid_alive = mid[alive]
        col_alive = cols[alive]
        for take_second, out in ((1, second.out_a), (2, second.out_b)):
            alive2 = second.terms[mid_alive] >= take_second
            ri_parts.append(out[mid_alive[alive2]])
            ci_parts.append(col_alive[alive2])
    return np.concatenate(ri_parts), np.concatenate(ci_parts)


@dataclass(eq=False)
class ChainComplexF2:
    """Total cube complex: graded generator list plus the differential."""

    cube: ResolutionCube
    order: tuple[int, ...]
    offsets: dict[int, int]
    spaces: dict[int, VertexSpace]
    weights: tuple[int, ...]
    d1: F2Matrix
    _columns: dict[tuple[int, int], _ColumnMap] = field(repr=False, default_factory=dict)

    @property
    def total_dim(self) -> int:
        return self.d1.rows

    def edge_matrix(self, i_vertex: int, j_vertex: int) -> F2Matrix:
        return self._columns[(i_vertex, j_vertex)].matrix()

    def generator_label(self, index: int) -> tuple[int, int]:
        """(vertex, basis index) of a global generator."""
        for vertex in self.order:
            off = self.offsets[vertex]
            dim = self.spaces[vertex].dim
            if off <= index < off + dim:
                return vertex, index - off
        raise IndexError(index)

    def to_filtered(self) -> FilteredComplex:
        return FilteredComplex(self.weights, {1: self.d1})


def assemble_complex(cube: ResolutionCube, check_faces: bool = True) -> ChainComplexF2:
    """Glue the edge blocks into one weight-filtered differential.

    With check_faces every square of the cube is verified to commute
    before the blocks are trusted; a failure raises ConsistencyError
    since it can only come from a convention bug, never from input.
    """
    order = tuple(sorted(cube.vertices, key=lambda v: (cube.weight(v), v)))
    spaces = {v: VertexSpace(cube.vertices[v].circles) for v in order}
    offsets = {}
    weights = []
    running = 0
    for v in order:
        offsets[v] = running
        running += spaces[v].dim
        weights.extend([cube.weight(v)] * spaces[v].dim)
    total = running

    columns = {}
    for i_vertex, j_vertex in cube.edge_pairs():
        columns[(i_vertex, j_vertex)] = _edge_columns(
            spaces[i_vertex], spaces[j_vertex], cube.edges[(i_vertex, j_vertex)]
        )

    if check_faces:
        _check_faces(cube, spaces, columns)

    ri_all = []
    ci_all = []
    for (i_vertex, j_vertex), cmap in columns.items():
        ri, ci = cmap.coo()
        ri_all.append(ri + offsets[j_vertex])
        ci_all.append(ci + offsets[i_vertex])
    if ri_all:
        d1 = F2Matrix.from_coo(total, total, np.concatenate(ri_all), np.concatenate(ci_all))
    else:
        d1 = F2Matrix.zeros(total, total)
    return ChainComplexF2(cube, order, offsets, spaces, tuple(weights), d1, columns)


def _check_faces(cube: ResolutionCube, spaces, columns) -> None:
    n = cube.n
    for i_vertex in cube.vertices:
        clear = [a for a in range(n) if not i_vertex >> a & 1]
        for ai in range(len(clear)):
            for bi in range(ai + 1, len(clear)):
                a, b = clear[ai], clear[bi]
                ja = i_vertex | (1 << a)
                jb = i_vertex | (1 << b)
                k_vertex = ja | jb
                dim_in = spaces[i_vertex].dim
                dim_out = spaces[k_vertex].dim
                r1, c1 = _compose_columns(columns[(i_vertex, ja)], columns[(ja, k_vertex)])
                r2, c2 = _compose_columns(columns[(i_vertex, jb)], columns[(jb, k_vertex)])
                m1 = F2Matrix.from_coo(dim_out, dim_in, r1, c1)
                m2 = F2Matrix.from_coo(dim_out, dim_in, r2, c2)
                if m1 != m2:
                    raise ConsistencyError(
                        f"face at vertex {cube.bitstring(i_vertex)} axes {a},{b} does not commute"
                    )
