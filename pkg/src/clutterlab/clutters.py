"""Clutters over {1..n} and their purely combinatorial operations.

Members are held as bitmasks internally (element ``e`` is bit ``e-1``) and
exposed as frozensets.  Every operation returns a new clutter.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from . import _kernels
from .errors import AntichainViolation, CapExceeded, PreconditionError

IDEAL_CHECK_CAP = 14


def _mask(member: Iterable[int]) -> int:
    m = 0
    for e in member:
        m |= 1 << (e - 1)
    return m


def _elements(mask: int) -> frozenset[int]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return frozenset(out)


def _sort_key(member: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(member))


def minimal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal masks, duplicates removed."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class Clutter:
    """An antichain of subsets of ``{1, ..., n}``.

    ``members`` is kept sorted by the sorted tuple of each member so equal
    clutters compare equal.
    """

    n: int
    members: tuple[frozenset[int], ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        members = tuple(sorted({frozenset(m) for m in self.members}, key=_sort_key))
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "masks", tuple(_mask(m) for m in members))

    @property
    def ground(self) -> range:
        return range(1, self.n + 1)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, member) -> bool:
        return frozenset(member) in set(self.members)

    def incidence_matrix(self) -> list[list[int]]:
        return [[1 if e in m else 0 for e in self.ground] for m in self.members]

    def column(self, e: int) -> int:
        """Bitmask over member indices of the members containing ``e``."""
        col = 0
        bit = 1 << (e - 1)
        for i, m in enumerate(self.masks):
            if m & bit:
                col |= 1 << i
        return col

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, sorted(m))) + "}" for m in self.members)
        return f"Clutter(n={self.n}, [{body}])"


def new_clutter(n: int, members: Iterable[Iterable[int]]) -> Clutter:
    """Validated constructor; raises on out-of-range elements or comparable members."""
    if n < 0:
        raise ValueError("ground size must be nonnegative")
    sets = []
    for m in members:
        s = frozenset(m)
        bad = [e for e in s if not (isinstance(e, int) and 1 <= e <= n)]
        if bad:
            raise ValueError(f"element(s) {sorted(bad, key=str)} outside 1..{n}")
        sets.append(s)
    uniq = sorted(set(sets), key=lambda s: (len(s), _sort_key(s)))
    for a, b in itertools.combinations(uniq, 2):
        if a < b:
            raise AntichainViolation(a, b)
    return Clutter(n, tuple(uniq))


def from_masks(n: int, masks: Iterable[int]) -> Clutter:
    """Build from masks that are already known to form an antichain."""
    return Clutter(n, tuple(_elements(m) for m in masks))


def q6() -> Clutter:
    return new_clutter(6, [{1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}])


# ---------------------------------------------------------------------------
# blocker, covers, packings
# ---------------------------------------------------------------------------


def blocker(c: Clutter) -> Clutter:
    """Clutter of minimal covers, by Berge's incremental transversal method.

    Conventions: ``blocker({}) = {{}}`` and ``blocker({{}}) = {}``.
    """
    transversals = [0]
    for m in sorted(c.masks, key=lambda x: (x.bit_count(), x)):
        nxt = []
        for t in transversals:
            if t & m:
                nxt.append(t)
            else:
                rest = m
                while rest:
                    low = rest & -rest
                    nxt.append(t | low)
                    rest ^= low
        transversals = minimal_masks(nxt)
    return from_masks(c.n, transversals)


def blocker_brute_force(c: Clutter) -> Clutter:
    """Exhaustive minimal-cover enumeration over all 2^n subsets (test oracle)."""
    if c.n > 16:
        raise CapExceeded("brute-force blocker limited to n <= 16")
    covers = [s for s in range(1 << c.n) if all(s & m for m in c.masks)]
    return from_masks(c.n, minimal_masks(covers))


def is_cover(c: Clutter, mask: int) -> bool:
    return all(mask & m for m in c.masks)


def minimum_cover(c: Clutter) -> frozenset[int] | None:
    """Lexicographically first cover of minimum size; ``None`` when no cover exists."""
    tau = covering_number(c)
    if tau == math.inf:
        return None
    for combo in itertools.combinations(c.ground, tau):
        if is_cover(c, _mask(combo)):
            return frozenset(combo)
    raise AssertionError("unreachable")  # pragma: no cover


def covering_number(c: Clutter) -> int | float:
    """Exact covering number; ``0`` for no members and ``inf`` when {} is a member."""
    if not c.masks:
        return 0
    if 0 in c.masks:
        return math.inf
    best = [c.n + 1]

    def search(chosen: int, size: int) -> None:
        if size >= best[0]:
            return
        uncovered = next((m for m in c.masks if not m & chosen), None)
        if uncovered is None:
            best[0] = size
            return
        if size + 1 >= best[0]:
            return
        rest = uncovered
        while rest:
            low = rest & -rest
            rest ^= low
            search(chosen | low, size + 1)

    search(0, 0)
    return best[0]


def minimum_covers_of_size_two(c: Clutter) -> list[frozenset[int]]:
    """All covers of cardinality two (meaningful when the covering number is 2)."""
    out = []
    for u, v in itertools.combinations(c.ground, 2):
        if is_cover(c, (1 << (u - 1)) | (1 << (v - 1))):
            out.append(frozenset((u, v)))
    return out


def packing_number(c: Clutter) -> int:
    """Maximum number of pairwise disjoint members."""
    if 0 in c.masks:
        raise PreconditionError("packing number undefined with an empty member")
    best = [0]

    def search(cands: list[int], count: int) -> None:
        if count + len(cands) <= best[0]:
            return
        if not cands:
            best[0] = count
            return
        head, tail = cands[0], cands[1:]
        search([x for x in tail if not x & head], count + 1)
        search(tail, count)

    search(list(c.masks), 0)
    tau = covering_number(c)
    assert best[0] <= tau, "weak duality violated"
    return best[0]


# ---------------------------------------------------------------------------
# minors and duplication
# ---------------------------------------------------------------------------


class Minor(NamedTuple):
    clutter: Clutter
    labels: tuple[int, ...]   # labels[i-1] is the original label of new element i


def minor(c: Clutter, delete: Iterable[int] = (), contract: Iterable[int] = ()) -> Minor:
    """``c \\ delete / contract`` relabelled onto ``1..n'`` in increasing order."""
    dele, con = frozenset(delete), frozenset(contract)
    if dele & con:
        raise PreconditionError(f"delete and contract overlap on {sorted(dele & con)}")
    for e in dele | con:
        if not 1 <= e <= c.n:
            raise PreconditionError(f"element {e} outside 1..{c.n}")
    dmask, cmask = _mask(dele), _mask(con)
    labels = tuple(e for e in c.ground if e not in dele and e not in con)
    raw = minimal_masks(m & ~cmask for m in c.masks if not m & dmask)
    pos = {old: new for new, old in enumerate(labels, start=1)}
    members = [frozenset(pos[e] for e in _elements(m)) for m in raw]
    return Minor(Clutter(len(labels), tuple(members)), labels)


def deletion_minor(c: Clutter, delete: Iterable[int]) -> Minor:
    return minor(c, delete, ())


def duplicate(c: Clutter, u: int) -> Clutter:
    """Add element ``n+1`` as a duplicate of ``u``."""
    if not 1 <= u <= c.n:
        raise PreconditionError(f"unknown element {u}")
    new = c.n + 1
    members = [m | {new} if u in m else m for m in c.members]
    return Clutter(new, tuple(members))


class Deduplication(NamedTuple):
    clutter: Clutter
    classes: tuple[tuple[int, ...], ...]   # classes[i-1] are the original labels of element i


def deduplicate(c: Clutter) -> Deduplication:
    """Collapse each class of duplicated elements onto its smallest label."""
    groups: dict[int, list[int]] = {}
    for e in c.ground:
        groups.setdefault(c.column(e), []).append(e)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
    reps = {g[0]: i for i, g in enumerate(classes, start=1)}
    members = [frozenset(reps[e] for e in m if e in reps) for m in c.members]
    return Deduplication(Clutter(len(classes), tuple(members)), tuple(classes))


def expand_member(member: Iterable[int], classes: tuple[tuple[int, ...], ...]) -> frozenset[int]:
    """Map a member of a deduplicated clutter back to the original labels."""
    out: set[int] = set()
    for e in member:
        out.update(classes[e - 1])
    return frozenset(out)


# ---------------------------------------------------------------------------
# intersecting, binary, tangled
# ---------------------------------------------------------------------------


def no_common_element(c: Clutter) -> bool:
    acc = c.full_mask
    for m in c.masks:
        acc &= m
    return acc == 0


def intersecting_witness(c: Clutter, k: int) -> tuple[frozenset[int], ...] | None:
    """First set of at most ``k`` members without a common element, if any."""
    size = min(k, len(c.masks))
    for s in range(1, size + 1):
        idx = _kernels.first_subset_and_or(list(c.masks), s)
        if idx is not None:
            return tuple(c.members[i] for i in idx)
    return None


def is_k_wise_intersecting(c: Clutter, k: int) -> bool:
    """Every ``<= k`` members share an element, yet no element is in all members."""
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if not c.masks or not no_common_element(c):
        return False
    size = min(k, len(c.masks))
    return _kernels.first_subset_and_or(list(c.masks), size) is None


def intersecting_profile(c: Clutter, ks=range(2, 6)) -> dict[int, bool]:
    return {k: is_k_wise_intersecting(c, k) for k in ks}


def nonbinary_witness(c: Clutter) -> tuple[frozenset[int], ...] | None:
    """Three members whose symmetric difference contains no member."""
    idx = _kernels.first_nonbinary_triple(list(c.masks))
    if idx is None:
        return None
    return tuple(c.members[i] for i in idx)


def is_binary(c: Clutter, cross_check: bool | None = None) -> bool:
    """Symmetric difference of any three members contains a member.

    Triples with a repeated member are trivially fine, so only distinct
    triples are scanned.  With ``cross_check`` (default: when ``n <= 12``)
    the answer is compared against the odd-intersection characterization.
    """
    result = nonbinary_witness(c) is None
    if cross_check is None:
        cross_check = c.n <= 12
    if cross_check:
        assert result == is_binary_by_blocker(c), "binary characterizations disagree"
    return result


def is_binary_by_blocker(c: Clutter) -> bool:
    """Every member meets every minimal cover in an odd number of elements."""
    b = blocker(c)
    return all((m & d).bit_count() % 2 == 1 for m in c.masks for d in b.masks)


def is_tangled(c: Clutter) -> bool:
    if covering_number(c) != 2:
        return False
    touched = 0
    for cov in minimum_covers_of_size_two(c):
        touched |= _mask(cov)
    return touched == c.full_mask


def minimal_tangled_deletion_minor(c: Clutter) -> tuple[Clutter, frozenset[int]]:
    """Delete elements in ascending order while the covering number stays >= 2.

    One pass suffices: deleting more elements never raises the covering
    number, so an element rejected early stays rejected.  The minor is on
    the kept elements relabelled increasingly (see ``minor``).
    """
    if covering_number(c) < 2:
        raise PreconditionError("covering number must be at least 2")
    deleted: set[int] = set()
    for e in c.ground:
        trial = deletion_minor(c, deleted | {e}).clutter
        if covering_number(trial) >= 2:
            deleted.add(e)
    result = deletion_minor(c, deleted).clutter
    assert is_tangled(result)
    return result, frozenset(deleted)


# ---------------------------------------------------------------------------
# colouring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Colouring:
    parts: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.parts)

    def is_proper(self, c: Clutter) -> bool:
        seen = set().union(*self.parts) if self.parts else set()
        if seen != set(c.ground) or sum(map(len, self.parts)) != c.n:
            return False
        return not any(m <= p for m in c.members for p in self.parts)


def proper_colouring(c: Clutter, k: int) -> Colouring | None:
    """First proper k-colouring found by symmetry-broken backtracking."""
    if k < 1:
        return None
    n = c.n
    # members grouped by their largest element: checked once that element is placed
    closing: dict[int, list[int]] = {}
    for m in c.masks:
        if m:
            closing.setdefault(m.bit_length(), []).append(m)
    if 0 in c.masks:
        return None
    parts = [0] * k
    assign = [0] * (n + 1)

    def place(e: int, used: int) -> bool:
        if e > n:
            return True
        for col in range(min(used + 1, k)):
            parts[col] |= 1 << (e - 1)
            if not any(m & parts[col] == m for m in closing.get(e, ())):
                assign[e] = col
                if place(e + 1, max(used, col + 1)):
                    return True
            parts[col] &= ~(1 << (e - 1))
        return False

    if not place(1, 0):
        return None
    return Colouring(tuple(_elements(p) for p in parts))


def chromatic_number(c: Clutter) -> tuple[int, Colouring]:
    """Smallest k with a proper k-colouring, and a witness colouring."""
    if any(len(m) <= 1 for m in c.members):
        raise PreconditionError("chromatic number needs every member to have size >= 2")
    for k in range(1, max(c.n, 1) + 1):
        col = proper_colouring(c, k)
        if col is not None:
            return k, col
    raise AssertionError("unreachable: singletons colouring is always proper")


def colouring_from_blocker_witness(c: Clutter, covers: tuple[frozenset[int], ...]) -> Colouring:
    """Turn minimal covers with empty common intersection into a proper colouring."""
    ground = frozenset(c.ground)
    parts = [ground - covers[0]]
    running = covers[0]
    for b in covers[1:]:
        parts.append(running - b)
        running = running & b
    return Colouring(tuple(parts))


# ---------------------------------------------------------------------------
# core
# ---------------------------------------------------------------------------


def core(c: Clutter, assume_ideal: bool = False) -> Clutter:
    """Members meeting every minimum cover exactly once (ideal tangled input).

    Idealness is verified exactly when ``n <= 14``; beyond that the caller
    must pass ``assume_ideal=True``.
    """
    if not is_tangled(c):
        raise PreconditionError("core needs a tangled clutter")
    if c.n <= IDEAL_CHECK_CAP:
        from .exact_lp import is_ideal

        if not is_ideal(c):
            raise PreconditionError("core needs an ideal clutter")
    elif not assume_ideal:
        raise CapExceeded(f"n={c.n} above idealness cap; pass assume_ideal=True")
    covers = [_mask(cov) for cov in minimum_covers_of_size_two(c)]
    members = [m for m, mask in zip(c.members, c.masks)
               if all((mask & cov).bit_count() == 1 for cov in covers)]
    result = Clutter(c.n, tuple(members))
    assert is_tangled(result), "core is not tangled"
    from .cuboids import as_cuboid

    assert as_cuboid(deduplicate(result).clutter) is not None, "core is not a duplicated cuboid"
    return result
