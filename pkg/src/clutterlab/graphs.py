"""Graphs with labelled edges, their cycle spaces, and cycle covers.

Vertices are ``1..V`` and edges are labelled ``1..m`` in list order.  Loops
and parallel edges are allowed; a loop is a cycle on its own and never a
bridge.  Edge sets are frozensets of labels; as GF(2) points, edge ``e`` is
coordinate ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _kernels
from .clutters import Clutter
from .errors import BridgeError, CapExceeded, PreconditionError
from .gf2 import BinarySpace, BitVector

COVER_RANK_CAP = 8


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise ValueError(f"edge {u}-{v} uses a vertex outside 1..{self.num_vertices}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> range:
        return range(1, self.m + 1)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e - 1]

    def degree_parity(self, edge_set: Iterable[int]) -> dict[int, int]:
        par = {v: 0 for v in range(1, self.num_vertices + 1)}
        for e in edge_set:
            u, v = self.edges[e - 1]
            if u != v:
                par[u] ^= 1
                par[v] ^= 1
        return par

    def is_cycle(self, edge_set: Iterable[int]) -> bool:
        """Even degree at every vertex (the empty set counts)."""
        return not any(self.degree_parity(edge_set).values())

    def to_point(self, edge_set: Iterable[int]) -> int:
        return BitVector.from_support(self.m, edge_set).value

    def from_point(self, p: int) -> frozenset[int]:
        return BitVector(self.m, p).support()

    def __str__(self) -> str:
        return f"Graph(V={self.num_vertices}, E={self.m})"


def cycle_space(g: Graph) -> BinarySpace:
    """Span of the fundamental cycles of a DFS spanning forest (lowest labels first)."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, g.num_vertices + 1)}
    for e, (u, v) in enumerate(g.edges, start=1):
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))
    for v in adj:
        adj[v].sort()
    parent: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for root in range(1, g.num_vertices + 1):
        if root in parent:
            continue
        parent[root], depth[root] = None, 0
        stack = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            step = next(it, None)
            if step is None:
                stack.pop()
                continue
            w, e = step
            if w not in parent:
                parent[w], depth[w] = (v, e), depth[v] + 1
                tree.add(e)
                stack.append((w, iter(adj[w])))

    def path_edges(u: int, v: int) -> set[int]:
        out: set[int] = set()
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            pu, eu = parent[u]
            out ^= {eu}
            u = pu
        return out

    basis = []
    for e, (u, v) in enumerate(g.edges, start=1):
        if e in tree:
            continue
        cyc = {e} if u == v else path_edges(u, v) | {e}
        basis.append(g.to_point(cyc))
    space = BinarySpace(g.m, tuple(basis))
    assert space.rank == g.m - g.num_vertices + _components(g), "cycle rank mismatch"
    return space


def _components(g: Graph) -> int:
    root = list(range(g.num_vertices + 1))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    count = g.num_vertices
    for u, v in g.edges:
        a, b = find(u), find(v)
        if a != b:
            root[a] = b
            count -= 1
    return count


def bridges(g: Graph) -> frozenset[int]:
    """Edges lying in no cycle: coordinates on which every cycle vanishes."""
    acc = 0
    for b in cycle_space(g).basis:
        acc |= b
    return frozenset(e for e in g.labels if not acc >> (g.m - e) & 1)


def cut(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    """``delta(X)``: edges with exactly one end in ``X``."""
    x = set(vertices)
    return frozenset(e for e, (u, v) in enumerate(g.edges, start=1) if (u in x) != (v in x))


def k_cycle_cover(g: Graph, k: int, cap_rank: int = COVER_RANK_CAP
                  ) -> tuple[frozenset[int], ...] | None:
    """Lexicographically first ``k`` cycles (nondecreasing) whose union is E."""
    if not 1 <= k <= 3:
        raise PreconditionError("k must be 1, 2 or 3")
    if k == 3:
        from .matroids import from_graph, three_cycle_cover

        cover = three_cycle_cover(from_graph(g), cap_rank=cap_rank)
        return None if cover is None else cover.cycles
    space = cycle_space(g)
    if space.rank > cap_rank:
        raise CapExceeded(f"cycle rank {space.rank} above cap {cap_rank}")
    pts = space.point_values()
    idx = _kernels.first_covering_tuple(pts, (1 << g.m) - 1, k)
    if idx is None:
        return None
    return tuple(g.from_point(pts[i]) for i in idx)


@dataclass(frozen=True)
class CycleCover:
    cycles: tuple[frozenset[int], ...]
    multiplicity: tuple[int, ...]   # multiplicity[e-1] = number of listed cycles using e


def verify_cycle_cover(g: Graph, cycles: Sequence[Iterable[int]], times: int | None = None) -> bool:
    """Each set is a cycle, and every edge is used ``times`` times (or at least once)."""
    counts = [0] * g.m
    for c in cycles:
        c = frozenset(c)
        if not g.is_cycle(c) or any(not 1 <= e <= g.m for e in c):
            return False
        for e in c:
            counts[e - 1] += 1
    if times is None:
        return all(counts)
    return all(x == times for x in counts)


def seven_cycle_four_cover(g: Graph, cap_rank: int = COVER_RANK_CAP) -> CycleCover:
    """Seven cycles using every edge exactly four times.

    Built from a 3-cycle cover ``C1, C2, C3``: the seven nonempty index sets
    ``T`` give the cycles ``sum_{t in T} C_t``, and an edge in ``r >= 1`` of
    the ``C_t`` lies in exactly half of the eight sums, never the empty one.
    """
    br = bridges(g)
    if br:
        raise BridgeError(min(br))
    three = k_cycle_cover(g, 3, cap_rank)
    assert three is not None, "bridgeless graph without a 3-cycle cover"
    cycles = []
    for t in range(1, 8):
        acc: frozenset[int] = frozenset()
        for j in range(3):
            if t >> j & 1:
                acc = acc ^ three[j]
        cycles.append(acc)
    mult = tuple(sum(1 for c in cycles if e in c) for e in g.labels)
    cover = CycleCover(tuple(cycles), mult)
    assert verify_cycle_cover(g, cover.cycles, 4)
    return cover


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def petersen() -> Graph:
    """Outer 5-cycle 1..5, spokes {i, i+5}, inner pentagram on 6..10."""
    outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6, 8), (7, 9), (8, 10), (9, 6), (10, 7)]
    return Graph(10, tuple(outer + spokes + inner))


def wagner() -> Graph:
    """Outer 8-cycle (edges 1..8, edge 8 = {8,1}) plus chords {i, i+4} as edges 9..12."""
    outer = [(i, i % 8 + 1) for i in range(1, 9)]
    chords = [(i, i + 4) for i in range(1, 5)]
    return Graph(8, tuple(outer + chords))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def k4() -> Graph:
    return complete_graph(4)


def k5() -> Graph:
    return complete_graph(5)


def k33() -> Graph:
    return Graph(6, tuple((u, v) for u in (1, 2, 3) for v in (4, 5, 6)))


def prism() -> Graph:
    """Triangles 1-2-3 and 4-5-6 joined by {i, i+3}."""
    return Graph(6, ((1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)))


def bowtie() -> Graph:
    """Two triangles sharing vertex 1."""
    return Graph(5, ((1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)))


def triangle() -> Graph:
    return Graph(3, ((1, 2), (2, 3), (3, 1)))


def path(m: int) -> Graph:
    return Graph(m + 1, tuple((i, i + 1) for i in range(1, m + 1)))


def single_loop() -> Graph:
    return Graph(1, ((1, 1),))


FIXTURES = {
    "petersen": petersen, "wagner": wagner, "k4": k4, "k5": k5, "k33": k33,
    "prism": prism, "bowtie": bowtie, "triangle": triangle, "loop": single_loop,
}


def t30() -> Clutter:
    """The cuboid of the cycle space of the Petersen graph (30 elements, 64 members)."""
    from .cuboids import ZeroOneSet, cuboid

    return cuboid(ZeroOneSet.from_space(cycle_space(petersen())))
