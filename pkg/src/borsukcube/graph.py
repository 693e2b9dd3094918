"""Distance graphs on cube vertices and the two trimming operators.

A distance graph joins exactly the vertex pairs at Hamming distance k.
Adjacency is stored as one integer bitmask per vertex, indexed by vertex
position, which keeps everything fast for |V| <= 1024.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .cube import DimensionError, VertexSet, check_dim, format_vertex, hamming_distance


class DistanceGraph:
    __slots__ = ("dim", "k", "vertices", "adjacency")

    def __init__(self, dim: int, k: int, vertices: Sequence[int],
                 adjacency: list[int]):
        self.dim = dim
        self.k = k
        self.vertices = tuple(vertices)
        self.adjacency = adjacency

    def __len__(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def neighbors(self, i: int):
        m = self.adjacency[i]
        while m:
            lsb = m & -m
            yield lsb.bit_length() - 1
            m ^= lsb

    def edges(self):
        for i in range(len(self.vertices)):
            m = self.adjacency[i] >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    yield (i, j)
                m >>= 1
                j += 1

    def subgraph(self, indices: Sequence[int]) -> "DistanceGraph":
        index_of = {v: i for i, v in enumerate(indices)}
        verts = [self.vertices[i] for i in indices]
        adj = [0] * len(indices)
        for new_i, old_i in enumerate(indices):
            m = self.adjacency[old_i]
            while m:
                lsb = m & -m
                old_j = lsb.bit_length() - 1
                m ^= lsb
                new_j = index_of.get(old_j)
                if new_j is not None:
                    adj[new_i] |= 1 << new_j
        return DistanceGraph(self.dim, self.k, verts, adj)


def build_distance_graph(vertices: VertexSet | Sequence[int], k: int,
                         dim: int | None = None) -> DistanceGraph:
    """Graph on the given vertices with edges exactly at distance k."""
    if isinstance(vertices, VertexSet):
        dim = vertices.dim
        verts = list(vertices.members)
    else:
        if dim is None:
            raise DimensionError("dim required for a raw vertex sequence")
        verts = list(vertices)
    check_dim(dim)
    if not 1 <= k <= dim:
        raise ValueError(f"threshold k must be in 1..{dim}, got {k}")
    n = len(verts)
    adj = [0] * n
    for i in range(n):
        vi = verts[i]
        for j in range(i + 1, n):
            if (vi ^ verts[j]).bit_count() == k:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return DistanceGraph(dim, k, verts, adj)


def trim(n: int, k: int, seeds: VertexSet | Iterable[int]) -> VertexSet:
    """All vertices of {0,1}^n within distance k of every seed."""
    if isinstance(seeds, VertexSet):
        if seeds.dim != n:
            raise DimensionError("seed set dimension mismatch")
        seed_list = list(seeds.members)
    else:
        seed_list = list(seeds)
    if not seed_list:
        raise ValueError("trim needs a nonempty seed set")
    check_dim(n)
    out = []
    for v in range(1 << n):
        for s in seed_list:
            if (v ^ s).bit_count() > k:
                break
        else:
            out.append(v)
    return VertexSet(n, out)


def trim2(candidates: VertexSet, k: int, assumptions: VertexSet,
          forbidden: "ForbiddenFamily") -> VertexSet:
    """Trim restricted to `candidates`, additionally dropping every vertex
    whose addition to the assumption set embeds a forbidden configuration.

    When the assumptions alone already embed a pattern, every vertex fails
    the forbidden clause and the result is empty."""
    if candidates.dim != assumptions.dim:
        raise DimensionError("candidate and assumption dimensions differ")
    if forbidden and forbidden.embeds_in(assumptions):
        return VertexSet(candidates.dim, ())
    base = list(assumptions.members)
    out = []
    for v in candidates.members:
        ok = True
        for s in base:
            if (v ^ s).bit_count() > k:
                ok = False
                break
        if ok and forbidden.embeds_with_vertex(assumptions, v):
            ok = False
        if ok:
            out.append(v)
    return VertexSet(candidates.dim, out)


class ForbiddenFamily:
    """A family of forbidden configurations, tested via per-pattern detectors.

    `detector(assumptions, v)` must report whether assumptions + v contains a
    copy of the pattern through v; `pair_detector(assumptions, v, w)` reports
    a copy through both v and w (used to discard edges before coloring).
    """

    def __init__(self, tags: Sequence[str],
                 detector: Callable[[str, VertexSet, int], bool],
                 pair_detector: Callable[[str, VertexSet, int, int], bool] | None = None,
                 contains_detector: Callable[[str, VertexSet], bool] | None = None):
        self.tags = tuple(tags)
        self._detector = detector
        self._pair_detector = pair_detector
        self._contains_detector = contains_detector

    def __bool__(self) -> bool:
        return bool(self.tags)

    def __repr__(self) -> str:
        return f"ForbiddenFamily({', '.join(self.tags) or 'empty'})"

    def embeds_with_vertex(self, assumptions: VertexSet, v: int) -> bool:
        return any(self._detector(tag, assumptions, v) for tag in self.tags)

    def embeds_with_pair(self, assumptions: VertexSet, v: int, w: int) -> bool:
        if self._pair_detector is None:
            return False
        return any(self._pair_detector(tag, assumptions, v, w) for tag in self.tags)

    def embeds_in(self, assumptions: VertexSet) -> bool:
        """Does the assumption set alone contain some forbidden pattern?"""
        if self._contains_detector is None:
            return False
        return any(self._contains_detector(tag, assumptions) for tag in self.tags)


EMPTY_FAMILY = ForbiddenFamily((), lambda tag, s, v: False)


def parity_bipartition(n: int, k: int) -> dict[int, int]:
    """Proper 2-coloring of G({0,1}^n; k) for odd k, by weight parity."""
    check_dim(n)
    if k % 2 == 0:
        raise ValueError("parity bipartition needs odd k")
    return {v: v.bit_count() & 1 for v in range(1 << n)}


def connected_components(g: DistanceGraph) -> list[VertexSet]:
    """Maximal connected parts, in order of their smallest vertex index."""
    n = len(g.vertices)
    seen = [False] * n
    comps: list[VertexSet] = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        part = [start]
        while stack:
            i = stack.pop()
            m = g.adjacency[i]
            while m:
                lsb = m & -m
                j = lsb.bit_length() - 1
                m ^= lsb
                if not seen[j]:
                    seen[j] = True
                    part.append(j)
                    stack.append(j)
        comps.append(VertexSet(g.dim, (g.vertices[i] for i in part)))
    return comps


def component_index_lists(g: DistanceGraph) -> list[list[int]]:
    """Connected components as sorted index lists into g.vertices."""
    n = len(g.vertices)
    seen = [False] * n
    out: list[list[int]] = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        part = [start]
        while stack:
            i = stack.pop()
            m = g.adjacency[i]
            while m:
                lsb = m & -m
                j = lsb.bit_length() - 1
                m ^= lsb
                if not seen[j]:
                    seen[j] = True
                    part.append(j)
                    stack.append(j)
        out.append(sorted(part))
    return out


def export_edge_list(g: DistanceGraph) -> str:
    """Text export: header then one "u v" bitstring pair per edge."""
    lines = [f"p hamming {g.dim} {g.k} {len(g.vertices)} {g.edge_count()}"]
    for i, j in g.edges():
        lines.append(format_vertex(g.vertices[i], g.dim) + " "
                     + format_vertex(g.vertices[j], g.dim))
    return "\n".join(lines) + "\n"


def diameter_at_most(vertices: Iterable[int], bound: int) -> bool:
    vs = list(vertices)
    return all(hamming_distance(a, b) <= bound
               for i, a in enumerate(vs) for b in vs[i + 1:])
