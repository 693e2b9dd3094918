"""Boolean cube vertices, the Hamming metric, and the cube's symmetry group.

Vertices of {0,1}^n are stored as n-bit integer masks. The text form is a
string of n characters from {0,1} whose *leftmost* character is coordinate 1,
i.e. bit 0 of the mask. The symmetry group of the cube is generated by
coordinate permutations and XOR translations; its order is 2^n * n!.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator

MAX_DIM = 16


class DimensionError(ValueError):
    """Raised on dimension mismatches or out-of-range dimensions."""


def check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise DimensionError(f"dimension must be in 1..{MAX_DIM}, got {n}")


def hamming_distance(u: int, v: int) -> int:
    """Number of coordinates where the two masks differ."""
    return (u ^ v).bit_count()


def weight(v: int) -> int:
    return v.bit_count()


def parse_vertex(text: str, dim: int | None = None) -> tuple[int, int]:
    """Parse a 0/1 string into (mask, dim). Leftmost character is bit 0."""
    text = text.strip()
    if dim is not None and len(text) != dim:
        raise DimensionError(f"expected {dim} characters, got {len(text)!r}")
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a 0/1 vertex string: {text!r}")
    mask = 0
    for i, ch in enumerate(text):
        if ch == "1":
            mask |= 1 << i
    return mask, len(text)


def format_vertex(mask: int, dim: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(dim))


@dataclass(frozen=True)
class Isometry:
    """A cube symmetry: permute coordinates, then XOR-translate.

    perm[i] gives the source coordinate that lands at position i, so the
    action is (g.v)_i = v_perm[i] xor t_i.
    """

    perm: tuple[int, ...]
    translation: int

    def __post_init__(self) -> None:
        n = len(self.perm)
        check_dim(n)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a permutation")
        if not 0 <= self.translation < (1 << n):
            raise DimensionError("translation mask out of range")

    @property
    def dim(self) -> int:
        return len(self.perm)

    def apply(self, v: int) -> int:
        n = len(self.perm)
        if not 0 <= v < (1 << n):
            raise DimensionError("vertex out of range for this isometry")
        out = 0
        for i, src in enumerate(self.perm):
            if (v >> src) & 1:
                out |= 1 << i
        return out ^ self.translation

    def apply_set(self, vs: Iterable[int]) -> list[int]:
        return sorted(self.apply(v) for v in vs)


def identity_isometry(n: int) -> Isometry:
    check_dim(n)
    return Isometry(tuple(range(n)), 0)


def compose(g: Isometry, h: Isometry) -> Isometry:
    """Isometry acting as first h, then g."""
    if g.dim != h.dim:
        raise DimensionError("composing isometries of different dimensions")
    perm = tuple(h.perm[g.perm[i]] for i in range(g.dim))
    # translate h's offset through g's permutation
    t = 0
    for i, src in enumerate(g.perm):
        if (h.translation >> src) & 1:
            t |= 1 << i
    return Isometry(perm, t ^ g.translation)


def random_isometry(n: int, rng: random.Random) -> Isometry:
    check_dim(n)
    perm = list(range(n))
    rng.shuffle(perm)
    return Isometry(tuple(perm), rng.randrange(1 << n))


def group_order(n: int) -> int:
    """Order of the cube's symmetry group: 2^n * n!."""
    check_dim(n)
    return (1 << n) * math.factorial(n)


def enumerate_group(n: int) -> Iterator[Isometry]:
    """All 2^n * n! isometries; intended for small n only."""
    check_dim(n)
    for perm in permutations(range(n)):
        for t in range(1 << n):
            yield Isometry(perm, t)


class VertexSet:
    """A duplicate-free set of vertices of one cube, kept in ascending order."""

    __slots__ = ("dim", "members")

    def __init__(self, dim: int, members: Iterable[int]):
        check_dim(dim)
        ms = sorted(set(members))
        if ms and not 0 <= ms[0] <= ms[-1] < (1 << dim):
            raise DimensionError("vertex out of range for dimension")
        self.dim = dim
        self.members: tuple[int, ...] = tuple(ms)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, VertexSet)
                and self.dim == other.dim and self.members == other.members)

    def __hash__(self) -> int:
        return hash((self.dim, self.members))

    def __repr__(self) -> str:
        shown = ", ".join(format_vertex(v, self.dim) for v in self.members[:6])
        tail = ", ..." if len(self.members) > 6 else ""
        return f"VertexSet(n={self.dim}, [{shown}{tail}])"

    def union(self, other: "VertexSet") -> "VertexSet":
        if self.dim != other.dim:
            raise DimensionError("union of sets of different dimensions")
        return VertexSet(self.dim, self.members + other.members)

    def transform(self, g: Isometry) -> "VertexSet":
        if g.dim != self.dim:
            raise DimensionError("isometry dimension mismatch")
        return VertexSet(self.dim, (g.apply(v) for v in self.members))


def vertex_set_from_strings(rows: Iterable[str], dim: int | None = None) -> VertexSet:
    masks = []
    for row in rows:
        mask, n = parse_vertex(row, dim)
        dim = n
        masks.append(mask)
    if dim is None:
        raise ValueError("no vertices given and no dimension specified")
    return VertexSet(dim, masks)


def load_vertex_set(path: str) -> VertexSet:
    """Read a vertex-set file: one 0/1 string per line.

    Lines starting with '#' and blank lines are ignored; the first
    non-comment line may declare the dimension as "n=<dim>".
    """
    dim: int | None = None
    rows: list[str] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if dim is None and not rows and line.startswith("n="):
                dim = int(line[2:])
                check_dim(dim)
                continue
            try:
                parse_vertex(line, dim)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            rows.append(line)
    if dim is None and not rows:
        raise ValueError(f"{path}: empty vertex-set file")
    return vertex_set_from_strings(rows, dim)


def save_vertex_set(path: str, vs: VertexSet) -> None:
    with open(path, "w") as fh:
        fh.write(f"n={vs.dim}\n")
        for v in vs.members:
            fh.write(format_vertex(v, vs.dim) + "\n")


def _distance_profile(v: int, mapped: list[int]) -> tuple[int, ...]:
    return tuple(hamming_distance(v, m) for m in mapped)


def _columns(points: list[int], n: int) -> list[int]:
    """Column patterns: bit j of column c is point j's value at coordinate c."""
    cols = []
    for c in range(n):
        pat = 0
        for j, p in enumerate(points):
            if (p >> c) & 1:
                pat |= 1 << j
        cols.append(pat)
    return cols


def _perm_feasible(src: list[int], dst: list[int], n: int) -> bool:
    """Does a coordinate permutation map the src point list onto dst pointwise?

    Both lists are translated so their first point is the origin; a
    permutation exists iff the multisets of coordinate columns coincide.
    """
    return sorted(_columns(src, n)) == sorted(_columns(dst, n))


def isometric_contains(s: VertexSet, f: VertexSet) -> bool:
    """True iff some isometry maps f onto a subset of s.

    Backtracking over point assignments f -> s with distance-matrix
    consistency maintained by forward checking (per-point candidate
    bitmasks, most-constrained point first); a complete assignment is
    accepted when the induced coordinate mapping extends to a permutation
    (checked via column multisets).
    """
    if s.dim != f.dim:
        raise DimensionError("pattern and host dimensions differ")
    fpts = list(f.members)
    hosts = list(s.members)
    np_, nh = len(fpts), len(hosts)
    if np_ > nh:
        return False
    if not fpts:
        return True
    n = s.dim

    pd = [[hamming_distance(a, b) for b in fpts] for a in fpts]
    # hosts_at[h][d]: bitmask of host indices at distance d from host h
    hosts_at = [[0] * (n + 1) for _ in range(nh)]
    for i, a in enumerate(hosts):
        row = hosts_at[i]
        for j, b in enumerate(hosts):
            if i != j:
                row[hamming_distance(a, b)] |= 1 << j
    full = (1 << nh) - 1

    image: list[int] = [-1] * np_

    def extend(cands: list[int], unmapped: list[int]) -> bool:
        if not unmapped:
            src = [p ^ fpts[0] for p in fpts]
            dst = [hosts[image[i]] ^ hosts[image[0]] for i in range(np_)]
            return _perm_feasible(src, dst, n)
        p = min(unmapped, key=lambda q: cands[q].bit_count())
        rest = [q for q in unmapped if q != p]
        m = cands[p]
        while m:
            lsb = m & -m
            h = lsb.bit_length() - 1
            m ^= lsb
            image[p] = h
            nxt = list(cands)
            taken = ~(1 << h)
            ok = True
            for q in rest:
                nc = nxt[q] & hosts_at[h][pd[p][q]] & taken
                if nc == 0:
                    ok = False
                    break
                nxt[q] = nc
            if ok and extend(nxt, rest):
                return True
            image[p] = -1
        return False

    return extend([full] * np_, list(range(np_)))


def _min_masks_over_permutations(points: list[int], n: int) -> tuple[int, ...]:
    """Minimum sorted mask tuple over all coordinate permutations.

    DFS assigns target bit positions from most significant to least,
    choosing which source column lands there. Children are visited in order
    of their resulting partial tuples, so the incumbent becomes tight
    immediately; sorted partial masks lower-bound any completion, cutting
    branches that already exceed the incumbent.
    """
    npts = len(points)
    cols = _columns(points, n)
    incumbent: list[tuple[int, ...]] = []

    def dfs(pos: int, partial: list[int], remaining: list[int]) -> None:
        if pos < 0:
            cand = tuple(sorted(partial))
            if not incumbent or cand < incumbent[0]:
                incumbent[:] = [cand]
            return
        children = []
        seen = set()
        for i, col in enumerate(remaining):
            if col in seen:
                continue
            seen.add(col)
            nxt = list(partial)
            for j in range(npts):
                if (col >> j) & 1:
                    nxt[j] |= 1 << pos
            children.append((tuple(sorted(x >> pos for x in nxt)), i, nxt))
        children.sort(key=lambda t: t[0])
        for prefix, i, nxt in children:
            if incumbent:
                # truncation commutes with sorting, so the incumbent's
                # same-length prefix is exactly what any completion of this
                # child must match or beat
                inc_prefix = tuple(x >> pos for x in incumbent[0])
                if prefix > inc_prefix:
                    break
            dfs(pos - 1, nxt, remaining[:i] + remaining[i + 1:])

    dfs(n - 1, [0] * npts, cols)
    return incumbent[0]


def canonical_form(vs: VertexSet) -> VertexSet:
    """A distinguished representative of the set's symmetry orbit.

    Each member is tried as the point translated to the origin; for each
    translation the sorted mask tuple is minimized over all coordinate
    permutations. The overall minimum is the canonical form, so equal
    canonical forms exactly characterize isometric sets.
    """
    if not vs.members:
        return vs
    best: tuple[int, ...] | None = None
    for base in vs.members:
        translated = [p ^ base for p in vs.members]
        cand = _min_masks_over_permutations(translated, vs.dim)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return VertexSet(vs.dim, best)
