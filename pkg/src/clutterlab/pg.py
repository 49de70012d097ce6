"""Projective geometries inside clutters and binary spaces, and the
dyadic packings they carry.

``quarter_packing`` runs the whole pipeline: tangled deletion minor,
deduplication to a cuboid, a 3-cycle cover of the associated binary
matroid, the projective-geometry subspace of its span, and finally the
uniform packing on that geometry lifted back to the input clutter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .clutters import (Clutter, covering_number, deduplicate, expand_member, intersecting_witness,
                       is_binary, minimal_tangled_deletion_minor)
from .cuboids import (ZeroOneSet, as_cuboid, canonical_complementation, cuboid,
                      deduplicate_coordinates)
from .errors import CapExceeded, PreconditionError
from .exact_lp import VERTEX_CAP_MEMBERS, VERTEX_CAP_N, FractionalPacking, is_ideal
from .gf2 import BinarySpace, null_space, reduce, rref
from .matroids import BinaryMatroid, is_projective_geometry, projective_geometry, three_cycle_cover

PG_WIDTH_CAP = 20
EMBED_CANDIDATE_CAP = 1 << 16


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


def _agreed_coordinate(space: BinarySpace) -> int | None:
    acc = 0
    for b in space.basis:
        acc |= b
    for i in range(1, space.width + 1):
        if not acc >> (space.width - i) & 1:
            return i
    return None


def pg_order(space: BinarySpace) -> int | None:
    """``ell`` when the deduplicated space is the cocycle space of PG(ell-1, 2)."""
    if _agreed_coordinate(space) is not None or space.rank == 0:
        return None
    reduced = deduplicate_coordinates(ZeroOneSet.from_space(space)).points
    w, r = reduced.width, space.rank
    if len(reduced) != 1 << r or w != (1 << r) - 1:
        return None
    cocycles = BinarySpace(w, reduced.points)
    m = BinaryMatroid(tuple(range(1, w + 1)), BinarySpace(w, null_space(cocycles.basis, w)))
    return is_projective_geometry(m)


def pg_subspace(space: BinarySpace, width_cap: int = PG_WIDTH_CAP) -> BinarySpace:
    """A subspace that is a duplication of the cocycle space of a projective geometry.

    Start from a basis of the orthogonal complement and keep adding rows, in
    increasing order over {0,1}^n, that stay independent and keep every unit
    vector out of the row space.  The null space of the final rows is the
    answer.  A candidate rejected once stays rejected as the row space grows,
    so one pass reaches a maximal extension; a second pass certifies it.
    """
    n = space.width
    if n > width_cap:
        raise CapExceeded(f"width {n} above cap {width_cap}")
    bad = _agreed_coordinate(space)
    if bad is not None:
        raise PreconditionError(f"points agree on coordinate {bad}")
    rows = list(rref(null_space(space.basis, n)))
    units = [1 << (n - i) for i in range(1, n + 1)]
    start = 1
    while True:
        pivots = [b.bit_length() - 1 for b in rows]
        forbidden = [reduce(u, rows) for u in units]
        cand = _kernels.first_free_candidate(start, 1 << n, rows, pivots, forbidden)
        if cand < 0:
            break
        rows = list(rref(rows + [cand]))
        start = cand + 1
    pivots = [b.bit_length() - 1 for b in rows]
    forbidden = [reduce(u, rows) for u in units]
    assert _kernels.first_free_candidate(1, 1 << n, rows, pivots, forbidden) < 0, "not maximal"
    out = BinarySpace(n, null_space(rows, n))
    assert all(space.contains(b) for b in out.basis)
    assert _agreed_coordinate(out) is None
    assert pg_order(out) == out.rank, "subspace is not a duplicated projective geometry"
    return out


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Members of ``clutter`` forming a duplicated cuboid of cocycle(PG(ell-1, 2))."""

    clutter: Clutter
    members: tuple[frozenset[int], ...]
    classes: tuple[tuple[int, ...], ...]
    ell: int
    witness: tuple[frozenset[int], ...]   # ell + 1 members without a common element


def _pg_embedding(c: Clutter, idx: tuple[int, ...], ell: int) -> Embedding | None:
    members = [c.members[i] for i in idx]
    sub = Clutter(c.n, tuple(members))
    if frozenset().union(*members) != frozenset(c.ground):
        return None
    dd = deduplicate(sub)
    form = as_cuboid(dd.clutter)
    if form is None:
        return None
    pts, _ = canonical_complementation(form.points)
    if not pts.is_binary_space():
        return None
    space = BinarySpace(pts.width, pts.points)
    if space.rank != ell or pts.width != (1 << ell) - 1 or pg_order(space) != ell:
        return None
    witness = intersecting_witness(sub, ell + 1)
    assert witness is not None and len(witness) == ell + 1
    return Embedding(c, tuple(members), dd.classes, ell, witness)


def embeds_pg(c: Clutter, ell_max: int = 3, candidate_cap: int = EMBED_CANDIDATE_CAP
              ) -> Embedding | None:
    """Smallest ``ell <= ell_max`` such that ``c`` embeds PG(ell-1, 2)."""
    if not 1 <= ell_max <= 3:
        raise PreconditionError("ell_max must lie in 1..3")
    for ell in range(1, ell_max + 1):
        emb = _search(c, ell, candidate_cap)
        if emb is not None:
            return emb
    return None


def _search(c: Clutter, ell: int, candidate_cap: int) -> Embedding | None:
    masks = list(c.masks)
    full = c.full_mask
    size = 1 << ell
    if len(masks) < size:
        return None
    if ell == 1:
        for i, j in itertools.combinations(range(len(masks)), 2):
            if masks[i] & masks[j] == 0 and masks[i] | masks[j] == full:
                emb = _pg_embedding(c, (i, j), 1)
                if emb is not None:
                    return emb
        return None
    # every element lies in exactly half of the chosen members, and every
    # ell chosen members share an element
    half = size // 2
    n = c.n
    m_count = len(masks)
    suffix = [[0] * n for _ in range(m_count + 1)]
    for i in range(m_count - 1, -1, -1):
        row = suffix[i + 1][:]
        for e in range(n):
            if masks[i] >> e & 1:
                row[e] += 1
        suffix[i] = row
    counts = [0] * n
    chosen: list[int] = []
    checked = 0

    def dfs(start: int) -> Embedding | None:
        nonlocal checked
        if len(chosen) == size:
            checked += 1
            if checked > candidate_cap:
                raise CapExceeded(f"more than {candidate_cap} candidate subsets")
            return _pg_embedding(c, tuple(chosen), ell)
        left = size - len(chosen) - 1
        for i in range(start, m_count - left):
            m = masks[i]
            if any(not masks[j] & m for j in chosen):
                continue
            if ell == 3 and any(not masks[a] & masks[b] & m
                                for a, b in itertools.combinations(chosen, 2)):
                continue
            ok = True
            for e in range(n):
                k = counts[e] + (m >> e & 1)
                if k > half or k + min(suffix[i + 1][e], left) < half:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(i)
            for e in range(n):
                counts[e] += m >> e & 1
            found = dfs(i + 1)
            if found is not None:
                return found
            chosen.pop()
            for e in range(n):
                counts[e] -= m >> e & 1
        return None

    return dfs(0)


# ---------------------------------------------------------------------------
# packings
# ---------------------------------------------------------------------------


def pg_packing(k: int) -> FractionalPacking:
    """Uniform ``1/2^k`` packing of cuboid(cocycle(PG(k, 2))), value two."""
    if not 0 <= k <= 3:
        raise PreconditionError("k must lie in 0..3")
    m = projective_geometry(k + 1)
    c = cuboid(ZeroOneSet.from_space(m.cocycles()))
    w = Fraction(1, 1 << k)
    pk = FractionalPacking(c, {mem: w for mem in c.members}, {"geometry": f"PG({k},2)"})
    assert pk.value == 2 and pk.is_feasible()
    return pk


def quarter_packing(c: Clutter, assume_ideal: bool = False) -> FractionalPacking:
    """A value-two packing with weights in multiples of 1/4.

    Needs a binary ideal clutter with covering number at least two.
    Idealness is checked exactly within the vertex-enumeration caps; beyond
    them ``assume_ideal=True`` is required and recorded in the provenance.
    """
    tau = covering_number(c)
    if tau < 2:
        raise PreconditionError(f"covering number {tau} < 2")
    if not is_binary(c):
        raise PreconditionError("clutter is not binary")
    provenance: dict = {}
    if c.n <= VERTEX_CAP_N and len(c.members) <= VERTEX_CAP_MEMBERS:
        if not is_ideal(c):
            raise PreconditionError("clutter is not ideal")
        provenance["ideal"] = "verified"
    elif assume_ideal:
        provenance["ideal"] = "assumed"
    else:
        raise CapExceeded("clutter above the idealness caps; pass assume_ideal=True")

    minor, deleted = minimal_tangled_deletion_minor(c)
    kept = [e for e in c.ground if e not in deleted]
    dd = deduplicate(minor)
    form = as_cuboid(dd.clutter)
    assert form is not None, "binary tangled clutter is not a duplicated cuboid"
    pts, shift = canonical_complementation(form.points)
    assert pts.is_binary_space(), "binary cuboid without a binary space"
    space = BinarySpace(pts.width, pts.points)

    matroid = BinaryMatroid(tuple(range(1, pts.width + 1)), space)
    cover = three_cycle_cover(matroid)
    assert cover is not None, "points agree on a coordinate"
    gens = [matroid.to_point(cyc) for cyc in cover]
    sub = pg_subspace(BinarySpace(pts.width, tuple(gens)))
    ell = sub.rank
    weight = Fraction(1, 1 << (ell - 1))

    weights = {}
    for p in sub.point_values():
        member = expand_member(form.point_to_member(p ^ shift), dd.classes)
        original = frozenset(kept[e - 1] for e in member)
        assert original in c, "lifted member is not a member of the input"
        weights[original] = weight
    provenance.update({
        "deleted": sorted(deleted),
        "cover": [sorted(x) for x in cover],
        "geometry": f"PG({ell - 1},2)",
    })
    pk = FractionalPacking(c, weights, provenance)
    assert pk.value == 2 and pk.is_feasible() and 4 % pk.denominator == 0
    return pk
