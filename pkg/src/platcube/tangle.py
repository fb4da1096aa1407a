"""Braid words, plat closures, and crossingless strip tangles.

A flat tangle is a crossingless matching of the boundary points of a
horizontal strip, together with a count of closed circles carried
along.  Interior isotopy is quotiented away: only the boundary pairing
and the circle number survive, which is exactly the data the
circle-counting TQFT downstream consumes.  Boundary points are numbered
0..bottom-1 along the lower edge and bottom..bottom+top-1 along the
upper edge, both left to right.

Composition stacks one strip on another, fusing matched interface
points; closed loops born at the interface increment the circle count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "BraidWord",
    "parse_braid_word",
    "mirror",
    "FlatTangle",
    "identity_tangle",
    "cup_cap_tangle",
    "elementary_tangle",
    "compose",
    "PlatClosure",
    "parse_plat",
    "close_plat",
]


# -- braid words ------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    """Word in the generators s1..s(strands-1); letters are (index, sign)."""

    strands: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.strands <= 0 or self.strands % 2:
            raise ValueError(f"strand count must be even and positive, got {self.strands}")
        object.__setattr__(self, "letters", tuple((int(k), int(e)) for k, e in self.letters))
        for k, e in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise ValueError(f"letter index {k} out of range 1..{self.strands - 1}")
            if e not in (-1, 1):
                raise ValueError(f"letter sign must be +1 or -1, got {e}")

    def __len__(self) -> int:
        return len(self.letters)

    def as_text(self) -> str:
        return " ".join(f"s{k}" if e == 1 else f"s{k}^-1" for k, e in self.letters)


_TOKEN = re.compile(r"s(\d+)(\^-1)?$")


def parse_braid_word(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated tokens s<k> / s<k>^-1 into a BraidWord."""
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"malformed braid token {tok!r}")
        k = int(m.group(1))
        e = -1 if m.group(2) else 1
        if not 1 <= k <= strands - 1:
            raise ValueError(f"token {tok!r}: index {k} out of range for {strands} strands")
        letters.append((k, e))
    return BraidWord(strands, tuple(letters))


def mirror(b: BraidWord) -> BraidWord:
    """Reverse the word and invert every letter."""
    return BraidWord(b.strands, tuple((k, -e) for k, e in reversed(b.letters)))


# -- flat tangles -----------------------------------------------------


def _noncrossing(pairs, order) -> bool:
    """Is the matching non-crossing in the given boundary order?"""
    stack: list[int] = []
    partner = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    for p in order:
        if stack and partner[stack[-1]] == p:
            stack.pop()
        else:
            stack.append(p)
    return not stack


@dataclass(frozen=True)
class FlatTangle:
    """Crossingless (bottom, top)-tangle: boundary pairing + circle count."""

    bottom: int
    top: int
    pairs: tuple[tuple[int, int], ...]
    circles: int = 0

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", canon)
        m = self.bottom + self.top
        if m % 2:
            raise ValueError("total boundary point count must be even")
        if self.circles < 0:
            raise ValueError("negative circle count")
        seen = [p for pair in canon for p in pair]
        if sorted(seen) != list(range(m)):
            raise ValueError("pairs are not a perfect matching of the boundary")
        # boundary cycle: along the bottom, then back along the top
        order = list(range(self.bottom)) + [self.bottom + j for j in reversed(range(self.top))]
        if not _noncrossing(canon, order):
            raise ValueError("matching is not planar in the strip")

    def partner(self, p: int) -> int:
        for a, b in self.pairs:
            if a == p:
                return b
            if b == p:
                return a
        raise KeyError(p)


def identity_tangle(n: int) -> FlatTangle:
    return FlatTangle(n, n, tuple((p, n + p) for p in range(n)))


def cup_cap_tangle(n: int, k: int) -> FlatTangle:
    """Cup-cap at 1-based position k: joins strands k,k+1 below and above."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"cup-cap position {k} out of range 1..{n - 1}")
    pairs = [(k - 1, k), (n + k - 1, n + k)]
    for p in range(n):
        if p not in (k - 1, k):
            pairs.append((p, n + p))
    return FlatTangle(n, n, tuple(pairs))


def elementary_tangle(kind: str, strands: int, k: int | None = None) -> FlatTangle:
    """Dispatch on the two resolution shapes: "identity" or "cupcap"."""
    if kind == "identity":
        return identity_tangle(strands)
    if kind == "cupcap":
        if k is None:
            raise ValueError("cupcap tangle needs a position")
        return cup_cap_tangle(strands, k)
    raise ValueError(f"unknown elementary tangle kind {kind!r}")


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def compose(lower: FlatTangle, upper: FlatTangle) -> FlatTangle:
    """Stack upper onto lower, fusing the shared interface."""
    if lower.top != upper.bottom:
        raise ValueError(
            f"interface mismatch: lower has {lower.top} top points, upper has {upper.bottom} bottom points"
        )
    nb, ni, nt = lower.bottom, lower.top, upper.top
    # node ids: 0..nb-1 bottom, nb..nb+ni-1 interface, then top
    uf = _UnionFind(nb + ni + nt)
    for a, b in lower.pairs:
        uf.union(a, b)
    for a, b in upper.pairs:
        uf.union(nb + a, nb + b)

    ends: dict[int, list[int]] = {}
    for p in list(range(nb)) + [nb + ni + j for j in range(nt)]:
        ends.setdefault(uf.find(p), []).append(p)
    pairs = []
    for members in ends.values():
        if len(members) != 2:
            raise AssertionError("open component without exactly two endpoints")
        a, b = members
        a = a if a < nb else a - ni
        b = b if b < nb else b - ni
        pairs.append((a, b))

    # interface classes touching no outer point close up into circles
    outer_roots = set(ends)
    closed = {uf.find(nb + j) for j in range(ni)} - outer_roots
    return FlatTangle(nb, nt, tuple(pairs), lower.circles + upper.circles + len(closed))


# -- plat closures ----------------------------------------------------


@dataclass(frozen=True)
class PlatClosure:
    """Planar pairings closing a 2m-strand tangle below (cups) and above (caps).

    Pairs are 0-based strand positions.
    """

    cups: tuple[tuple[int, int], ...]
    caps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for name in ("cups", "caps"):
            raw = getattr(self, name)
            canon = tuple(sorted(tuple(sorted(p)) for p in raw))
            object.__setattr__(self, name, canon)
        n = self.strands
        for name in ("cups", "caps"):
            pairs = getattr(self, name)
            flat = sorted(p for pair in pairs for p in pair)
            if flat != list(range(n)):
                raise ValueError(f"{name} are not a perfect matching of 0..{n - 1}")
            if not _noncrossing(pairs, list(range(n))):
                raise ValueError(f"{name} matching is not planar")

    @property
    def strands(self) -> int:
        return 2 * len(self.cups)

    @classmethod
    def standard(cls, strands: int) -> "PlatClosure":
        if strands <= 0 or strands % 2:
            raise ValueError("plat closure needs an even, positive strand count")
        pairs = tuple((2 * i, 2 * i + 1) for i in range(strands // 2))
        return cls(pairs, pairs)

    def cup_tangle(self) -> FlatTangle:
        n = self.strands
        return FlatTangle(0, n, tuple(self.cups))

    def cap_tangle(self) -> FlatTangle:
        n = self.strands
        return FlatTangle(n, 0, tuple(self.caps))


def parse_plat(text: str, strands: int) -> PlatClosure:
    """Parse "a-b,c-d/e-f,g-h" (1-based, cups/caps) into a PlatClosure."""
    parts = text.split("/")
    if len(parts) != 2:
        raise ValueError("plat spec needs exactly one '/' between cups and caps")

    def side(chunk: str) -> tuple[tuple[int, int], ...]:
        pairs = []
        for item in chunk.split(","):
            m = re.match(r"(\d+)-(\d+)$", item.strip())
            if not m:
                raise ValueError(f"malformed plat pair {item!r}")
            a, b = int(m.group(1)), int(m.group(2))
            if not (1 <= a <= strands and 1 <= b <= strands):
                raise ValueError(f"plat pair {item!r} out of range for {strands} strands")
            pairs.append((a - 1, b - 1))
        return tuple(pairs)

    return PlatClosure(side(parts[0]), side(parts[1]))


def close_plat(t: FlatTangle, plat: PlatClosure) -> FlatTangle:
    """Close a (n, n)-tangle into a (0, 0) diagram: circles only."""
    if t.bottom != plat.strands or t.top != plat.strands:
        raise ValueError("tangle boundary does not match the plat closure")
    return compose(compose(plat.cup_tangle(), t), plat.cap_tangle())
