"""Binary matroids held by their cycle spaces.

A matroid has an ordered ground set of integer labels; coordinate ``i`` of
its cycle space is ``ground[i-1]``.  Cycles and cocycles are exposed as
frozensets of labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import _kernels
from .errors import CapExceeded, NotASum, PreconditionError
from .gf2 import BinarySpace, BitVector, intersect_coordinate_zero, kernel_combinations, orthogonal_complement, project
from .graphs import Graph, cut, cycle_space, wagner

COVER_RANK_CAP = 8
PG_MAX = 6


@dataclass(frozen=True)
class BinaryMatroid:
    ground: tuple[int, ...]
    cycles: BinarySpace

    def __post_init__(self):
        ground = tuple(self.ground)
        if len(set(ground)) != len(ground):
            raise ValueError("ground labels must be distinct")
        if self.cycles.width != len(ground):
            raise ValueError("cycle space width differs from ground size")
        object.__setattr__(self, "ground", ground)

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def rank(self) -> int:
        """Matroid rank, i.e. the dimension of the cocycle space."""
        return self.size - self.cycles.rank

    def cocycles(self) -> BinarySpace:
        return orthogonal_complement(self.cycles)

    def to_set(self, p: int) -> frozenset[int]:
        n = self.size
        return frozenset(self.ground[i] for i in range(n) if p >> (n - 1 - i) & 1)

    def to_point(self, labels: Iterable[int]) -> int:
        pos = {e: i for i, e in enumerate(self.ground)}
        n = self.size
        p = 0
        for e in labels:
            if e not in pos:
                raise PreconditionError(f"{e} is not an element")
            p |= 1 << (n - 1 - pos[e])
        return p

    def is_cycle(self, labels: Iterable[int]) -> bool:
        return self.cycles.contains(self.to_point(labels))

    def is_cocycle(self, labels: Iterable[int]) -> bool:
        p = self.to_point(labels)
        return all((p & b).bit_count() % 2 == 0 for b in self.cycles.basis)

    def cycle_sets(self, cap: int = 22) -> list[frozenset[int]]:
        return [self.to_set(p) for p in self.cycles.point_values(cap)]

    def representation(self) -> list[str]:
        """Rows of a 0/1 matrix whose GF(2) null space is the cycle space."""
        return [str(v) for v in self.cocycles().basis_vectors()]

    def column(self, e: int) -> int:
        """Column of ``e`` in :meth:`representation`, as an int over the rows."""
        i = self.ground.index(e)
        n = self.size
        rows = self.cocycles().basis
        return sum(1 << r for r, b in enumerate(rows) if b >> (n - 1 - i) & 1)

    def __str__(self) -> str:
        return f"BinaryMatroid(|E|={self.size}, rank={self.rank})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def from_graph(g: Graph) -> BinaryMatroid:
    return BinaryMatroid(tuple(g.labels), cycle_space(g))


def from_representation(rows: Sequence[Sequence[int] | str], labels: Sequence[int] | None = None
                        ) -> BinaryMatroid:
    """Cycle space = GF(2) null space of the matrix ``rows``."""
    vecs = [BitVector.from_string(r) if isinstance(r, str) else BitVector.from_bits(r) for r in rows]
    if not vecs:
        raise ValueError("representation needs at least one row (use width via labels)")
    n = vecs[0].width
    if any(v.width != n for v in vecs):
        raise ValueError("rows of different lengths")
    labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
    cocycles = BinarySpace(n, tuple(v.value for v in vecs))
    return BinaryMatroid(labels, orthogonal_complement(cocycles))


def from_cycle_basis(n: int, rows: Iterable[str], labels: Sequence[int] | None = None) -> BinaryMatroid:
    vecs = [BitVector.from_string(r) for r in rows]
    if any(v.width != n for v in vecs):
        raise ValueError(f"cycle rows must have length {n}")
    labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
    return BinaryMatroid(labels, BinarySpace(n, tuple(v.value for v in vecs)))


def pg_columns(ell: int) -> list[int]:
    """Identity columns first, then the other nonzero vectors in increasing order."""
    unit = [1 << (ell - 1 - i) for i in range(ell)]
    rest = [v for v in range(1, 1 << ell) if v not in unit]
    return unit + rest


def projective_geometry(ell: int) -> BinaryMatroid:
    """PG(ell-1, 2): columns are all nonzero vectors of length ``ell``."""
    if not 1 <= ell <= PG_MAX:
        raise PreconditionError(f"ell must lie in 1..{PG_MAX}")
    cols = pg_columns(ell)
    rows = ["".join(str(c >> (ell - 1 - r) & 1) for c in cols) for r in range(ell)]
    m = from_representation(rows)
    cocycles = m.cocycles()
    assert m.rank == ell
    assert len(cocycles) == 1 << ell
    assert all(p.bit_count() == 1 << (ell - 1) for p in cocycles.point_values() if p)
    return m


def fano() -> BinaryMatroid:
    """F7 = PG(2,2), columns 100, 010, 001, 011, 101, 110, 111."""
    return projective_geometry(3)


def wagner_dual() -> BinaryMatroid:
    return dual(from_graph(wagner()))


# ---------------------------------------------------------------------------
# derived matroids and elements
# ---------------------------------------------------------------------------


def dual(m: BinaryMatroid) -> BinaryMatroid:
    return BinaryMatroid(m.ground, m.cocycles())


def _minimal_supports(points: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for p in sorted((p for p in points if p), key=lambda x: (x.bit_count(), -x)):
        if not any(k & p == k for k in kept):
            kept.append(p)
    return kept


def circuits(m: BinaryMatroid, cap: int = 22) -> list[frozenset[int]]:
    """Minimal nonempty cycles, smallest first."""
    return [m.to_set(p) for p in _minimal_supports(m.cycles.point_values(cap))]


def cocircuits(m: BinaryMatroid, cap: int = 22) -> list[frozenset[int]]:
    return circuits(dual(m), cap)


def loops(m: BinaryMatroid) -> frozenset[int]:
    n = m.size
    return frozenset(e for i, e in enumerate(m.ground) if m.cycles.contains(1 << (n - 1 - i)))


def coloops(m: BinaryMatroid) -> frozenset[int]:
    """Elements in no cycle."""
    acc = 0
    for b in m.cycles.basis:
        acc |= b
    n = m.size
    return frozenset(e for i, e in enumerate(m.ground) if not acc >> (n - 1 - i) & 1)


def parallel_classes(m: BinaryMatroid) -> list[tuple[int, ...]]:
    """Classes of non-loop elements with equal representation columns, in ground order."""
    groups: dict[int, list[int]] = {}
    for e in m.ground:
        col = m.column(e)
        if col:
            groups.setdefault(col, []).append(e)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: m.ground.index(g[0]))


def is_simple(m: BinaryMatroid) -> bool:
    return all(len(c) > 2 for c in circuits(m))


def delete(m: BinaryMatroid, removed: Iterable[int]) -> BinaryMatroid:
    """``M \\ X``: cycles of M avoiding X."""
    x = set(removed)
    keep = [i + 1 for i, e in enumerate(m.ground) if e not in x]
    drop = [i + 1 for i, e in enumerate(m.ground) if e in x]
    space = project(intersect_coordinate_zero(m.cycles, drop), keep)
    return BinaryMatroid(tuple(m.ground[i - 1] for i in keep), space)


def contract(m: BinaryMatroid, removed: Iterable[int]) -> BinaryMatroid:
    """``M / X``: restrictions of the cycles of M to E - X."""
    x = set(removed)
    keep = [i + 1 for i, e in enumerate(m.ground) if e not in x]
    return BinaryMatroid(tuple(m.ground[i - 1] for i in keep), project(m.cycles, keep))


def simplify(m: BinaryMatroid) -> BinaryMatroid:
    """Delete loops and all but the first element of each parallel class."""
    keep = {cls[0] for cls in parallel_classes(m)}
    out = delete(m, [e for e in m.ground if e not in keep])
    assert is_simple(out)
    return out


def relabel(m: BinaryMatroid, mapping: Mapping[int, int]) -> BinaryMatroid:
    return BinaryMatroid(tuple(mapping.get(e, e) for e in m.ground), m.cycles)


def is_projective_geometry(m: BinaryMatroid) -> int | None:
    """``ell`` when the simple matroid ``m`` is PG(ell-1, 2), else ``None``."""
    if not is_simple(m):
        raise PreconditionError("is_projective_geometry needs a simple matroid")
    r = m.rank
    if r == 0 or m.size != (1 << r) - 1:
        return None
    cols = {m.column(e) for e in m.ground}
    # every two elements lie in a triangle: the sum of their columns is a column
    for a, b in itertools.combinations(sorted(cols), 2):
        if a ^ b not in cols:
            return None
    return r


# ---------------------------------------------------------------------------
# sums
# ---------------------------------------------------------------------------


def sum_kind(m1: BinaryMatroid, m2: BinaryMatroid) -> str:
    """``"1-sum"``, ``"2-sum"`` or ``"Y-sum"``; raises :class:`NotASum` otherwise."""
    x = set(m1.ground) & set(m2.ground)
    if not x:
        return "1-sum"
    if len(x) == 1:
        (e,) = x
        for m in (m1, m2):
            if e in loops(m) or e in coloops(m):
                raise NotASum(f"shared element {e} is a loop or coloop")
        return "2-sum"
    if len(x) == 3:
        for m in (m1, m2):
            if frozenset(x) not in set(cocircuits(m)):
                raise NotASum(f"{sorted(x)} is not a cocircuit of both summands")
            if any(c <= x for c in circuits(m)):
                raise NotASum(f"{sorted(x)} contains a circuit")
        return "Y-sum"
    raise NotASum(f"overlap of size {len(x)} matches no sum")


def matroid_sum(m1: BinaryMatroid, m2: BinaryMatroid) -> tuple[BinaryMatroid, str]:
    """``M1 (+) M2``: cycles ``C1 ^ C2`` contained in ``E1 ^ E2``."""
    kind = sum_kind(m1, m2)
    x = set(m1.ground) & set(m2.ground)
    ground = tuple(e for e in m1.ground if e not in x) + tuple(e for e in m2.ground if e not in x)
    n1, n2 = m1.size, m2.size
    width = n1 + n2
    # direct sum of the two cycle spaces; keys record the mismatch on X
    shared = sorted(x)
    vecs, keys = [], []
    for b in m1.cycles.basis:
        vecs.append(b << n2)
        keys.append(_restrict(m1, b, shared))
    for b in m2.cycles.basis:
        vecs.append(b)
        keys.append(_restrict(m2, b, shared))
    matched = kernel_combinations(keys, vecs)
    keep = [i + 1 for i, e in enumerate(m1.ground) if e not in x]
    keep += [n1 + i + 1 for i, e in enumerate(m2.ground) if e not in x]
    space = project(BinarySpace(width, tuple(matched)), keep)
    return BinaryMatroid(ground, space), kind


def _restrict(m: BinaryMatroid, p: int, labels: Sequence[int]) -> int:
    n = m.size
    out = 0
    for j, e in enumerate(labels):
        i = m.ground.index(e)
        if p >> (n - 1 - i) & 1:
            out |= 1 << j
    return out


# ---------------------------------------------------------------------------
# 3-cycle covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeCycleCover:
    cycles: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def __post_init__(self):
        cyc = tuple(frozenset(c) for c in self.cycles)
        if len(cyc) != 3:
            raise ValueError("a 3-cycle cover has exactly three cycles")
        object.__setattr__(self, "cycles", cyc)

    def __iter__(self):
        return iter(self.cycles)

    def __getitem__(self, j: int) -> frozenset[int]:
        return self.cycles[j]


def is_three_cycle_cover(m: BinaryMatroid, cover: ThreeCycleCover | Sequence[Iterable[int]]) -> bool:
    cycles = [frozenset(c) for c in cover]
    if len(cycles) != 3:
        return False
    ground = set(m.ground)
    if any(not c <= ground for c in cycles):
        return False
    return all(m.is_cycle(c) for c in cycles) and frozenset().union(*cycles) == ground


def three_cycle_cover(m: BinaryMatroid, cap_rank: int = COVER_RANK_CAP) -> ThreeCycleCover | None:
    """First nondecreasing triple of cycles, in lexicographic point order, covering E.

    ``None`` exactly when there is a coloop.
    """
    if coloops(m):
        return None
    if m.cycles.rank > cap_rank:
        raise CapExceeded(f"cycle rank {m.cycles.rank} above cap {cap_rank}")
    pts = m.cycles.point_values()
    idx = _kernels.first_covering_tuple(pts, (1 << m.size) - 1, 3)
    if idx is None:
        return None
    return ThreeCycleCover(tuple(m.to_set(pts[i]) for i in idx))


def compose_three_cycle_covers(m1: BinaryMatroid, cov1: ThreeCycleCover | Sequence[Iterable[int]],
                               m2: BinaryMatroid, cov2: ThreeCycleCover | Sequence[Iterable[int]],
                               kind: str | None = None) -> ThreeCycleCover:
    """A 3-cycle cover of ``M1 (+) M2`` from covers of the summands."""
    found = sum_kind(m1, m2)
    if kind is not None and kind != found:
        raise PreconditionError(f"summands form a {found}, not a {kind}")
    if not is_three_cycle_cover(m1, cov1) or not is_three_cycle_cover(m2, cov2):
        raise PreconditionError("input covers are not 3-cycle covers of their matroids")
    a, b = [frozenset(c) for c in cov1], [frozenset(c) for c in cov2]
    x = frozenset(m1.ground) & frozenset(m2.ground)
    if found == "2-sum":
        (e,) = x
        a, b = _align_two_sum(a, e), _align_two_sum(b, e)
    elif found == "Y-sum":
        a, b = _align_y_sum(a, b, x)
    out = ThreeCycleCover(tuple(p ^ q for p, q in zip(a, b)))
    total, _ = matroid_sum(m1, m2)
    assert is_three_cycle_cover(total, out), "composed cover failed verification"
    return out


def _align_two_sum(cover: list[frozenset[int]], e: int) -> list[frozenset[int]]:
    """Reorder so ``e`` lies in the first cycle, then clear it from the others."""
    first = next(j for j, c in enumerate(cover) if e in c)
    cover = [cover[first]] + [c for j, c in enumerate(cover) if j != first]
    return [cover[0]] + [c ^ cover[0] if e in c else c for c in cover[1:]]


def _align_y_sum(a: list[frozenset[int]], b: list[frozenset[int]], x: frozenset[int]):
    """Bring both covers to the pattern {e,f}, {e,g}, {} on X = {e,f,g}."""
    for e, f, g in itertools.permutations(sorted(x)):
        ef, eg, fg = frozenset({e, f}), frozenset({e, g}), frozenset({f, g})
        out = []
        for cover in (a, b):
            for order in itertools.permutations(range(3)):
                c1, c2, c3 = (cover[j] for j in order)
                if c1 & x == ef and c2 & x in (eg, fg):
                    break
            else:
                break
            if c2 & x == fg:
                c2 = c2 ^ c1
            for combo in (c3, c3 ^ c1, c3 ^ c2, c3 ^ c1 ^ c2):
                if not combo & x:
                    c3 = combo
                    break
            assert c1 & x == ef and c2 & x == eg and not c3 & x
            out.append([c1, c2, c3])
        if len(out) == 2:
            return out
    raise PreconditionError("covers meet the shared triad in an unexpected pattern")


def graph_cut_cycles(g: Graph, vertex_sets: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    """Cuts of ``g``; they are cycles of the dual of its graphic matroid."""
    return [cut(g, xs) for xs in vertex_sets]
