"""Sets of 0/1 points and their cuboids.

Point ``p`` of width ``n`` becomes the member of ``cuboid(S)`` containing
``2i-1`` when ``p_i = 1`` and ``2i`` when ``p_i = 0``.  Points are ints in
the :mod:`gf2` convention (coordinate 1 is the most significant bit).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import _dd, _kernels
from .clutters import Clutter
from .errors import CapExceeded, PreconditionError
from .gf2 import BinarySpace, BitVector

CUBE_IDEAL_CAP = 7
FACET_CAP = 6


@dataclass(frozen=True)
class ZeroOneSet:
    """A set of distinct points of ``{0,1}^width``, kept sorted."""

    width: int
    points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(sorted(set(self.points)))
        if any(p < 0 or p >> self.width for p in pts):
            raise ValueError(f"point does not fit in width {self.width}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "ZeroOneSet":
        vecs = [BitVector.from_string(r) for r in rows]
        if not vecs:
            raise ValueError("width unknown for an empty list")
        width = vecs[0].width
        if any(v.width != width for v in vecs):
            raise ValueError("points of different widths")
        return cls(width, tuple(v.value for v in vecs))

    @classmethod
    def from_space(cls, space: BinarySpace, cap: int = 22) -> "ZeroOneSet":
        return cls(space.width, tuple(space.point_values(cap)))

    @property
    def full_mask(self) -> int:
        return (1 << self.width) - 1

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        if isinstance(p, BitVector):
            p = p.value
        return p in set(self.points)

    def coordinate(self, p: int, i: int) -> int:
        """Value of 1-based coordinate ``i`` of point ``p``."""
        return p >> (self.width - i) & 1

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.width, p) for p in self.points]

    def strings(self) -> list[str]:
        return [str(v) for v in self.vectors()]

    def translate(self, shift: int) -> "ZeroOneSet":
        """Complement the coordinates in ``shift``."""
        return ZeroOneSet(self.width, tuple(p ^ shift for p in self.points))

    def is_binary_space(self) -> bool:
        if 0 not in self.points:
            return False
        space = BinarySpace(self.width, self.points)
        return len(space) == len(self.points)

    def __str__(self) -> str:
        return "{" + ", ".join(self.strings()) + "}"


def canonical_complementation(s: ZeroOneSet) -> tuple[ZeroOneSet, int]:
    """Flip coordinates so the lexicographically smallest point becomes 0.

    Returns the new set and the flip mask, which is that smallest point.
    """
    if not s.points:
        raise PreconditionError("empty set of points")
    shift = s.points[0]
    return s.translate(shift), shift


# ---------------------------------------------------------------------------
# cuboid correspondence
# ---------------------------------------------------------------------------


def cuboid_member(p: int, width: int) -> frozenset[int]:
    return frozenset(2 * i - 1 if p >> (width - i) & 1 else 2 * i for i in range(1, width + 1))


def cuboid(s: ZeroOneSet) -> Clutter:
    if not s.points:
        raise PreconditionError("cuboid of an empty set")
    return Clutter(2 * s.width, tuple(cuboid_member(p, s.width) for p in s.points))


class CuboidForm(NamedTuple):
    points: ZeroOneSet
    pairs: tuple[tuple[int, int], ...]   # coordinate i is read from pairs[i-1][0]

    def member_to_point(self, member: Iterable[int]) -> int:
        m = set(member)
        w = len(self.pairs)
        return sum(1 << (w - 1 - i) for i, (u, _) in enumerate(self.pairs) if u in m)

    def point_to_member(self, p: int) -> frozenset[int]:
        w = len(self.pairs)
        return frozenset(u if p >> (w - 1 - i) & 1 else v for i, (u, v) in enumerate(self.pairs))


def as_cuboid(c: Clutter) -> CuboidForm | None:
    """Recognize a cuboid up to relabelling.

    Elements ``u, v`` may be paired exactly when every member contains one of
    them, i.e. their member columns are complementary.  That relation pairs
    whole column classes, so matching each smallest unpaired element with the
    smallest compatible partner yields the lexicographically first pairing.
    """
    if not c.members or c.n % 2:
        return None
    allm = (1 << len(c.members)) - 1
    cols = {e: c.column(e) for e in c.ground}
    free = set(c.ground)
    pairs = []
    for u in c.ground:
        if u not in free:
            continue
        free.discard(u)
        want = cols[u] ^ allm
        v = next((w for w in sorted(free) if cols[w] == want), None)
        if v is None:
            return None
        free.discard(v)
        pairs.append((u, v))
    form = CuboidForm(ZeroOneSet(len(pairs), ()), tuple(pairs))
    pts = tuple(form.member_to_point(m) for m in c.members)
    form = CuboidForm(ZeroOneSet(len(pairs), pts), tuple(pairs))
    assert len(form.points) == len(c.members)
    return form


# ---------------------------------------------------------------------------
# agreement
# ---------------------------------------------------------------------------


def agree_on_coordinate(s: ZeroOneSet) -> tuple[int, int] | None:
    """Smallest coordinate on which all points agree, with the common value."""
    if not s.points:
        raise PreconditionError("empty set of points")
    acc_and, acc_or = s.full_mask, 0
    for p in s.points:
        acc_and &= p
        acc_or |= p
    for i in range(1, s.width + 1):
        bit = 1 << (s.width - i)
        if acc_and & bit:
            return i, 1
        if not acc_or & bit:
            return i, 0
    return None


def min_disagreeing_subset(s: ZeroOneSet, k: int) -> tuple[int, ...] | None:
    """Lexicographically first smallest subset of at most ``k`` points agreeing nowhere."""
    pts = list(s.points)
    for size in range(1, min(k, len(pts)) + 1):
        idx = _kernels.first_subset_and_or(pts, size, s.full_mask)
        if idx is not None:
            return tuple(pts[i] for i in idx)
    return None


# ---------------------------------------------------------------------------
# cube-idealness and facets
# ---------------------------------------------------------------------------


def cube_ideal_witness(s: ZeroOneSet):
    """A fractional vertex of Q(cuboid(S)), or ``None`` when S is cube-ideal."""
    from .exact_lp import fractional_vertex

    if s.width > CUBE_IDEAL_CAP:
        raise CapExceeded(f"width {s.width} above cube-ideal cap {CUBE_IDEAL_CAP}")
    return fractional_vertex(cuboid(s), cap_n=2 * CUBE_IDEAL_CAP)


def is_cube_ideal(s: ZeroOneSet) -> bool:
    return cube_ideal_witness(s) is None


@dataclass(frozen=True)
class FacetClass:
    """A facet of conv(S) with its recognized form.

    ``kind`` is ``lower_bound`` (x_i >= 0), ``upper_bound`` (x_i <= 1),
    ``generalized_set_covering`` (sum_I x_i + sum_J (1 - x_j) >= 1) or
    ``other``; ``inequality`` is a primitive integer pair ``(a, b)`` meaning
    ``a.x >= b``, and ``tight`` the points of S on the facet.
    """

    kind: str
    I: frozenset[int]
    J: frozenset[int]
    inequality: tuple[tuple[int, ...], int]
    tight: frozenset[int]

    def __str__(self) -> str:
        if self.kind == "lower_bound":
            return f"x{min(self.I)} >= 0"
        if self.kind == "upper_bound":
            return f"x{min(self.J)} <= 1"
        if self.kind == "generalized_set_covering":
            terms = [f"x{i}" for i in sorted(self.I)] + [f"(1-x{j})" for j in sorted(self.J)]
            return " + ".join(terms) + " >= 1"
        a, b = self.inequality
        return " + ".join(f"{c}*x{i}" for i, c in enumerate(a, start=1) if c) + f" >= {b}"


def _bits(p: int, width: int) -> tuple[int, ...]:
    return tuple(p >> (width - 1 - j) & 1 for j in range(width))


def _gsc_profile(s: ZeroOneSet, imask: int, jmask: int) -> frozenset[int] | None:
    """Tight points of the GSC inequality, or ``None`` if it is violated."""
    tight = []
    for p in s.points:
        hits = (p & imask).bit_count() + ((~p) & jmask).bit_count()
        if hits == 0:
            return None
        if hits == 1:
            tight.append(p)
    return frozenset(tight)


def _classify(s: ZeroOneSet, tight: frozenset[int], ineq) -> FacetClass:
    w = s.width
    for i in range(1, w + 1):
        bit = 1 << (w - i)
        if tight == frozenset(p for p in s.points if not p & bit):
            return FacetClass("lower_bound", frozenset({i}), frozenset(), ineq, tight)
    for i in range(1, w + 1):
        bit = 1 << (w - i)
        if tight == frozenset(p for p in s.points if p & bit):
            return FacetClass("upper_bound", frozenset(), frozenset({i}), ineq, tight)
    for signs in itertools.product((0, 1, 2), repeat=w):
        imask = sum(1 << (w - 1 - j) for j, t in enumerate(signs) if t == 1)
        jmask = sum(1 << (w - 1 - j) for j, t in enumerate(signs) if t == 2)
        if not imask | jmask:
            continue
        if _gsc_profile(s, imask, jmask) == tight:
            return FacetClass("generalized_set_covering",
                              frozenset(j + 1 for j, t in enumerate(signs) if t == 1),
                              frozenset(j + 1 for j, t in enumerate(signs) if t == 2), ineq, tight)
    return FacetClass("other", frozenset(), frozenset(), ineq, tight)


class HullDescription(NamedTuple):
    equations: tuple[tuple[tuple[int, ...], int], ...]   # a.x = b on the affine hull
    facets: tuple[FacetClass, ...]


def hull_description(s: ZeroOneSet) -> HullDescription:
    """Affine hull equations and classified facets of conv(S), exactly.

    Valid inequalities ``a.x >= b`` form the cone ``{(a, b) : a.p - b >= 0}``;
    its lineality space gives the equations and its extreme rays, except the
    trivial ``0 >= -1``, give the facets.
    """
    if not s.points:
        raise PreconditionError("empty set of points")
    if s.width > FACET_CAP:
        raise CapExceeded(f"width {s.width} above facet cap {FACET_CAP}")
    w = s.width
    rows = [_bits(p, w) + (-1,) for p in s.points]
    rays, lineality = _dd.extreme_rays(rows, w + 1)
    equations = tuple((r[:w], r[w]) for r in lineality)
    out = []
    for r in rays:
        a, b = r[:w], r[w]
        tight = frozenset(p for p, row in zip(s.points, rows) if _dd._dot(row, r) == 0)
        if not tight:
            continue
        out.append(_classify(s, tight, (a, b)))
    order = {"lower_bound": 0, "upper_bound": 1, "generalized_set_covering": 2, "other": 3}
    out.sort(key=lambda f: (order[f.kind], sorted(f.I), sorted(f.J), sorted(f.tight)))
    return HullDescription(equations, tuple(out))


def facets(s: ZeroOneSet) -> list[FacetClass]:
    return list(hull_description(s).facets)


def valid_gsc_inequalities(s: ZeroOneSet) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Every ``(I, J)`` whose generalized set covering inequality holds on S."""
    w = s.width
    out = []
    for signs in itertools.product((0, 1, 2), repeat=w):
        imask = sum(1 << (w - 1 - j) for j, t in enumerate(signs) if t == 1)
        jmask = sum(1 << (w - 1 - j) for j, t in enumerate(signs) if t == 2)
        if imask | jmask and _gsc_profile(s, imask, jmask) is not None:
            out.append((frozenset(j + 1 for j, t in enumerate(signs) if t == 1),
                        frozenset(j + 1 for j, t in enumerate(signs) if t == 2)))
    return out


def _minimal_pairs(system):
    return [(I, J) for I, J in system
            if not any((I2, J2) != (I, J) and I2 <= I and J2 <= J for I2, J2 in system)]


def _implied_by_gsc(s: ZeroOneSet, a: Sequence[int], b: int, system) -> bool:
    """Does ``0 <= x <= 1`` plus the GSC ``system`` imply ``a.x >= b``?

    Solved through the dual, which has one row per coordinate: maximize
    ``sum_g (1-|J_g|) y_g - sum_i z_i`` subject to
    ``sum_g y_g g_i - z_i <= a_i`` with ``y, z >= 0``.
    """
    from .exact_lp import LpProblem, solve_lp

    w = s.width
    cols = [tuple(1 if i + 1 in I else -1 if i + 1 in J else 0 for i in range(w))
            for I, J in system]
    obj = tuple(1 - len(J) for _, J in system) + (-1,) * w
    rows = tuple(tuple(col[i] for col in cols) + tuple(-1 if j == i else 0 for j in range(w))
                 for i in range(w))
    dual = LpProblem("max", obj, rows, ("<=",) * w, tuple(a))
    return solve_lp(dual).value >= b


def is_cube_ideal_by_facets(s: ZeroOneSet) -> bool:
    """Cube-idealness read off conv(S) directly.

    Every facet must be cut out by a bound or a GSC inequality.  When conv(S)
    is not full-dimensional, the affine hull equations must in addition follow
    from the bounds and valid GSC inequalities, which is checked by exact LP.
    """
    hull = hull_description(s)
    if any(f.kind == "other" for f in hull.facets):
        return False
    if not hull.equations:
        return True
    system = _minimal_pairs(valid_gsc_inequalities(s))
    for a, b in hull.equations:
        if not (_implied_by_gsc(s, a, b, system)
                and _implied_by_gsc(s, tuple(-x for x in a), -b, system)):
            return False
    return True


# ---------------------------------------------------------------------------
# duplicated coordinates
# ---------------------------------------------------------------------------


class CoordinateClasses(NamedTuple):
    points: ZeroOneSet
    classes: tuple[tuple[tuple[int, int], ...], ...]   # (coordinate, flipped) per class


def deduplicate_coordinates(s: ZeroOneSet) -> CoordinateClasses:
    """Keep the smallest coordinate of each class of equal or complementary columns."""
    w = s.width
    allp = (1 << len(s.points)) - 1

    def column(i: int) -> int:
        bit = 1 << (w - i)
        return sum(1 << k for k, p in enumerate(s.points) if p & bit)

    reps: dict[int, int] = {}
    groups: dict[int, list[tuple[int, int]]] = {}
    for i in range(1, w + 1):
        col = column(i)
        if col in reps:
            groups[reps[col]].append((i, 0))
        elif col ^ allp in reps:
            groups[reps[col ^ allp]].append((i, 1))
        else:
            reps[col] = i
            groups[i] = [(i, 0)]
    keep = sorted(groups)
    nw = len(keep)
    pts = []
    for p in s.points:
        pts.append(sum(1 << (nw - 1 - j) for j, i in enumerate(keep) if p >> (w - i) & 1))
    classes = tuple(tuple(groups[i]) for i in keep)
    return CoordinateClasses(ZeroOneSet(nw, tuple(pts)), classes)


def expand_point(p: int, width: int, classes: Sequence[Sequence[tuple[int, int]]],
                 full_width: int) -> int:
    """Lift a point of a deduplicated set back to the original coordinates."""
    out = 0
    for j, cls in enumerate(classes):
        bit = p >> (width - 1 - j) & 1
        for i, flipped in cls:
            if bit ^ flipped:
                out |= 1 << (full_width - i)
    return out
