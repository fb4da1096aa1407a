"""Bit-packed exact linear algebra over the two-element field.

Matrices are stored row-major, 64 columns per uint64 word, with the
padding bits of the last word kept at zero.  Every operation is pure:
arguments are never mutated and results are freshly allocated.  Sizes
here are desk scale (total dimensions in the low thousands), where
dense word-parallel XOR beats any sparse scheme by a wide margin.

Single vectors travel as Python ints with bit j = coordinate j; rows of
a matrix convert to and from that form via ``row_int`` and
``from_int_rows``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "F2Matrix",
    "Subspace",
    "matmul",
    "rank",
    "rref",
    "kernel_basis",
    "image_basis",
    "row_space",
    "span",
    "subspace_sum",
    "subspace_intersection",
    "quotient_dim",
    "preimage",
    "solve_row_combination",
]

_WORD = 64


def _nwords(cols: int) -> int:
    return (cols + _WORD - 1) // _WORD


def _popcount_u64(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr).astype(np.int64)
    bytes_ = arr.astype("<u8").view(np.uint8).reshape(arr.shape + (8,))
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
    return table[bytes_].sum(axis=-1)


def _pad_mask(cols: int) -> int:
    """Mask of valid bits in the final word of a row."""
    rem = cols % _WORD
    return (1 << rem) - 1 if rem else (1 << _WORD) - 1


class F2Matrix:
    """Dense matrix over GF(2); rows packed into uint64 words."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        if words.shape != (rows, _nwords(cols)) or words.dtype != np.uint64:
            raise ValueError("words array does not match declared shape")
        self.rows = rows
        self.cols = cols
        self.words = words

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, np.zeros((rows, _nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        w = np.zeros((n, _nwords(n)), dtype=np.uint64)
        idx = np.arange(n)
        w[idx, idx // _WORD] = np.uint64(1) << (idx % _WORD).astype(np.uint64)
        return cls(n, n, w)

    @classmethod
    def from_dense(cls, arr) -> "F2Matrix":
        """Build from any 0/1 array-like (entries taken mod 2)."""
        a = np.asarray(arr, dtype=np.uint8) % 2
        if a.ndim != 2:
            raise ValueError("from_dense expects a 2-d array")
        rows, cols = a.shape
        nw = _nwords(cols)
        padded = np.zeros((rows, nw * _WORD), dtype=np.uint8)
        padded[:, :cols] = a
        packed = np.packbits(padded, axis=1, bitorder="little")
        return cls(rows, cols, packed.view("<u8").astype(np.uint64))

    @classmethod
    def from_int_rows(cls, ints: Sequence[int], cols: int) -> "F2Matrix":
        """Rows given as Python ints, bit j = column j."""
        nw = _nwords(cols)
        out = cls.zeros(len(ints), cols)
        mask = (1 << cols) - 1
        for i, v in enumerate(ints):
            if v < 0 or v & ~mask:
                raise ValueError(f"row {i} has bits outside {cols} columns")
            for w in range(nw):
                out.words[i, w] = (v >> (_WORD * w)) & 0xFFFFFFFFFFFFFFFF
        return out

    @classmethod
    def from_bitstrings(cls, lines: Sequence[str]) -> "F2Matrix":
        """Rows as 0/1 strings; leftmost character is column 0."""
        if not lines:
            return cls.zeros(0, 0)
        cols = len(lines[0])
        rows = []
        for s in lines:
            if len(s) != cols or set(s) - {"0", "1"}:
                raise ValueError(f"bad bitstring row {s!r}")
            rows.append([int(ch) for ch in s])
        return cls.from_dense(rows)

    @classmethod
    def from_coo(cls, rows: int, cols: int, ri, ci) -> "F2Matrix":
        """Build from coordinate lists, entries accumulated mod 2."""
        out = cls.zeros(rows, cols)
        ri = np.asarray(ri, dtype=np.int64)
        ci = np.asarray(ci, dtype=np.int64)
        bits = np.uint64(1) << (ci % _WORD).astype(np.uint64)
        np.bitwise_xor.at(out.words, (ri, ci // _WORD), bits)
        return out

    # -- accessors ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j // _WORD] >> np.uint64(j % _WORD)) & np.uint64(1))

    def row_int(self, i: int) -> int:
        return int.from_bytes(self.words[i].astype("<u8").tobytes(), "little")

    def row_ints(self) -> list[int]:
        return [self.row_int(i) for i in range(self.rows)]

    def to_dense(self) -> np.ndarray:
        if self.cols == 0:
            return np.zeros((self.rows, 0), dtype=np.uint8)
        bytes_ = self.words.astype("<u8").view(np.uint8)
        bits = np.unpackbits(bytes_, axis=1, bitorder="little")
        return bits[:, : self.cols]

    def to_bitstrings(self) -> list[str]:
        dense = self.to_dense()
        return ["".join("1" if b else "0" for b in row) for row in dense]

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.rows, self.cols, self.words.copy())

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "F2Matrix":
        """Contiguous block [r0:r1, c0:c1] as a fresh matrix."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ValueError("submatrix range out of bounds")
        height = r1 - r0
        width = c1 - c0
        nw_out = _nwords(width)
        if width == 0 or height == 0:
            return F2Matrix.zeros(height, width)
        off, sh = divmod(c0, _WORD)
        src = self.words[r0:r1]
        pad = np.zeros((height, 2), dtype=np.uint64)
        padded = np.concatenate([src, pad], axis=1)
        if sh == 0:
            out = padded[:, off : off + nw_out].copy()
        else:
            lo = padded[:, off : off + nw_out] >> np.uint64(sh)
            hi = padded[:, off + 1 : off + nw_out + 1] << np.uint64(_WORD - sh)
            out = lo | hi
        out[:, -1] &= np.uint64(_pad_mask(width))
        return F2Matrix(height, width, out)

    def premultiply_int(self, v: int) -> int:
        """Row vector v (bit i = row i) times this matrix, as an int."""
        if v == 0 or self.rows == 0 or self.cols == 0:
            return 0
        nbytes = (self.rows + 7) // 8
        bits = np.unpackbits(
            np.frombuffer(v.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little"
        )[: self.rows]
        idx = np.nonzero(bits)[0]
        if idx.size == 0:
            return 0
        acc = np.bitwise_xor.reduce(self.words[idx], axis=0)
        return int.from_bytes(acc.astype("<u8").tobytes(), "little")

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    __hash__ = None  # mutable container semantics

    def __repr__(self) -> str:
        return f"F2Matrix({self.rows}x{self.cols})"

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return F2Matrix(self.rows, self.cols, self.words ^ other.words)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        return matmul(self, other)

    def transpose(self) -> "F2Matrix":
        # chunked so the dense intermediate stays small on big matrices
        out = F2Matrix.zeros(self.cols, self.rows)
        if self.rows == 0 or self.cols == 0:
            return out
        chunk = 2048  # multiple of 64 keeps chunks word-aligned
        for r0 in range(0, self.rows, chunk):
            r1 = min(r0 + chunk, self.rows)
            dense_t = self.submatrix(r0, r1, 0, self.cols).to_dense().T
            width = r1 - r0
            nw = _nwords(width)
            padded = np.zeros((self.cols, nw * 8), dtype=np.uint8)
            packed = np.packbits(dense_t, axis=1, bitorder="little")
            padded[:, : packed.shape[1]] = packed
            out.words[:, r0 // _WORD : r0 // _WORD + nw] = padded.view("<u8")
        return out

    def apply_int(self, v: int) -> int:
        """Image of the vector v (bit j = coordinate j) under this matrix.

        Rows act as linear functionals: result bit i = <row i, v>.
        """
        if v == 0 or self.rows == 0 or self.cols == 0:
            return 0
        vec = F2Matrix.from_int_rows([v], self.cols)
        acc = np.bitwise_xor.reduce(self.words & vec.words[0], axis=1)
        parities = (_popcount_u64(acc) & 1).astype(np.uint8)
        packed = np.packbits(parities, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    @classmethod
    def vstack(cls, mats: Sequence["F2Matrix"]) -> "F2Matrix":
        if not mats:
            raise ValueError("vstack of nothing")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack needs equal column counts")
        words = np.concatenate([m.words for m in mats], axis=0)
        return cls(sum(m.rows for m in mats), cols, words)


def matmul(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    """Matrix product over GF(2)."""
    if a.cols != b.rows:
        raise ValueError(f"inner dimension mismatch {a.shape} @ {b.shape}")
    out = np.zeros((a.rows, _nwords(b.cols)), dtype=np.uint64)
    # accumulate rows of b selected by set bits of each column slice of a
    for k in range(a.cols):
        col = (a.words[:, k // _WORD] >> np.uint64(k % _WORD)) & np.uint64(1)
        sel = col.astype(bool)
        if sel.any():
            out[sel] ^= b.words[k]
    return F2Matrix(a.rows, b.cols, out)


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    return ((words[:, col // _WORD] >> np.uint64(col % _WORD)) & np.uint64(1)).astype(bool)


def rref(m: F2Matrix) -> tuple[F2Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form; returns (R, rank, pivot columns).

    Leftmost-pivot, eliminate-above-and-below; this is the canonical
    form every Subspace basis is kept in.
    """
    w = m.words.copy()
    pivots = []
    r = 0
    for col in range(m.cols):
        if r >= m.rows:
            break
        bits = _column_bits(w, col)
        cand = np.nonzero(bits[r:])[0]
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            w[[r, p]] = w[[p, r]]
            bits[[r, p]] = bits[[p, r]]
        bits[r] = False
        w[bits] ^= w[r]
        pivots.append(col)
        r += 1
    return F2Matrix(m.rows, m.cols, w), r, tuple(pivots)


def rank(m: F2Matrix) -> int:
    """Rank over GF(2); forward elimination only."""
    w = m.words.copy()
    r = 0
    for col in range(m.cols):
        if r >= m.rows:
            break
        bits = _column_bits(w, col)
        cand = np.nonzero(bits[r:])[0]
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            w[[r, p]] = w[[p, r]]
            bits[[r, p]] = bits[[p, r]]
        below = bits.copy()
        below[: r + 1] = False
        w[below] ^= w[r]
        r += 1
    return r


def kernel_basis(m: F2Matrix) -> "Subspace":
    """Right null space {v : m v = 0} as a Subspace of F_2^cols."""
    R, rk, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = 1 << f
        for i, p in enumerate(pivots):
            if R.get(i, f):
                v |= 1 << p
        vecs.append(v)
    return span(vecs, m.cols)


def image_basis(m: F2Matrix) -> "Subspace":
    """Column space of m as a Subspace of F_2^rows."""
    return row_space(m.transpose())


def row_space(m: F2Matrix) -> "Subspace":
    R, rk, _ = rref(m)
    return Subspace(m.cols, F2Matrix(rk, m.cols, R.words[:rk].copy()))


def span(vectors: Iterable[int], ambient: int) -> "Subspace":
    """Subspace spanned by int-encoded vectors."""
    vecs = list(vectors)
    mat = F2Matrix.from_int_rows(vecs, ambient)
    return row_space(mat)


class Subspace:
    """Subspace of F_2^ambient, basis held in reduced row echelon form.

    The RREF basis is canonical, so equality of subspaces is equality
    of basis matrices.
    """

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, basis: F2Matrix):
        if basis.cols != ambient:
            raise ValueError("basis width does not match ambient dimension")
        self.ambient = ambient
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.rows

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, F2Matrix.identity(ambient))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, F2Matrix.zeros(0, ambient))

    def reduce(self, v: int) -> int:
        """Residue of v after subtracting its projection onto the basis."""
        for i in range(self.basis.rows):
            row = self.basis.row_int(i)
            pivot = row & -row
            if v & pivot:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(other.basis.row_int(i)) for i in range(other.dim))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    return row_space(F2Matrix.vstack([a.basis, b.basis]))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rref [[A|A],[B|0]]; rows with zero left half give it."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    n = a.ambient
    top = [r | (r << n) for r in a.basis.row_ints()]
    bot = list(b.basis.row_ints())
    big = F2Matrix.from_int_rows(top + bot, 2 * n)
    R, rk, _ = rref(big)
    mask = (1 << n) - 1
    vecs = []
    for i in range(rk):
        v = R.row_int(i)
        if (v & mask) == 0:
            vecs.append(v >> n)
    return span(vecs, n)


def quotient_dim(a: Subspace, b: Subspace) -> int:
    """dim(a / b); demands b <= a."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    if not a.contains_subspace(b):
        raise ValueError("quotient_dim: second subspace is not contained in the first")
    return a.dim - b.dim


def preimage(m: F2Matrix, s: Subspace) -> Subspace:
    """{v : m v in s} as a subspace of the domain F_2^cols.

    Uses the perp of s: over GF(2) the dot-pairing is nondegenerate, so
    v lies in s exactly when every functional vanishing on s kills m v.
    """
    if s.ambient != m.rows:
        raise ValueError("subspace does not live in the codomain")
    perp = kernel_basis(s.basis)  # rows are functionals cutting out s
    if perp.dim == 0:
        return Subspace.full(m.cols)
    return kernel_basis(matmul(perp.basis, m))


def solve_row_combination(m: F2Matrix, v: int) -> int | None:
    """Coefficients c (bitmask over rows) with XOR of chosen rows = v.

    Returns None when v is outside the row space.
    """
    n = m.cols
    k = m.rows
    aug = [m.row_int(i) | (1 << (n + i)) for i in range(k)]
    work = F2Matrix.from_int_rows(aug, n + k)
    # eliminate on the first n columns only
    w = work.words
    r = 0
    mask = (1 << n) - 1
    for col in range(n):
        if r >= k:
            break
        bits = _column_bits(w, col)
        cand = np.nonzero(bits[r:])[0]
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            w[[r, p]] = w[[p, r]]
            bits[[r, p]] = bits[[p, r]]
        bits[r] = False
        w[bits] ^= w[r]
        r += 1
    acc = 0
    for i in range(r):
        row = work.row_int(i)
        left = row & mask
        if left == 0:
            continue
        pivot = left & -left
        if v & pivot:
            v ^= left
            acc ^= row >> n
    return acc if v == 0 else None
