"""Hot search loops over 64-bit masks.

Every kernel has a numba implementation and a pure-numpy one with the same
signature and the same (lexicographically first) result.  Set
``CLUTTERLAB_NUMBA=0`` before import to force the numpy path; numba is also
skipped silently when it cannot be imported.

Callers pass Python ints; anything wider than 64 bits goes through the
plain-Python fallbacks in the public wrappers at the bottom of this file.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    if os.environ.get("CLUTTERLAB_NUMBA", "1").strip().lower() in ("0", "false", "no", "off"):
        raise ImportError("disabled by CLUTTERLAB_NUMBA")
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False

WORD = 64
_U64_MASK = (1 << 64) - 1


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"


def _as_u64(values) -> np.ndarray:
    return np.array([int(v) & _U64_MASK for v in values], dtype=np.uint64)


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _np_first_covering_tuple(points, full, k):
    m = points.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    if m == 0:
        return out
    if k == 1:
        hit = np.nonzero(points == full)[0]
        if hit.size:
            out[0] = hit[0]
        return out
    if k == 2:
        for i in range(m):
            hit = np.nonzero((points[i:] | points[i]) == full)[0]
            if hit.size:
                out[0], out[1] = i, i + hit[0]
                return out
        return out
    for i in range(m):
        pi = points[i]
        for j in range(i, m):
            pij = pi | points[j]
            hit = np.nonzero((points[j:] | pij) == full)[0]
            if hit.size:
                out[0], out[1], out[2] = i, j, j + hit[0]
                return out
    return out


def _np_first_subset_and_or(masks, k, need_or):
    m = masks.shape[0]
    out = np.full(k, -1, dtype=np.int64)
    if k > m or k == 0:
        return out
    if k == 1:
        hit = np.nonzero((masks == 0) & ((masks & need_or) == need_or))[0]
        if hit.size:
            out[0] = hit[0]
        return out
    # Python loop over (k-1)-prefixes, vectorised last index.
    for prefix in itertools.combinations(range(m - 1), k - 1):
        last = prefix[-1]
        if last + 1 >= m:
            continue
        acc_and = np.uint64(_U64_MASK)
        acc_or = np.uint64(0)
        for p in prefix:
            acc_and &= masks[p]
            acc_or |= masks[p]
        tail = masks[last + 1:]
        ok = ((tail & acc_and) == 0) & (((tail | acc_or) & need_or) == need_or)
        hit = np.nonzero(ok)[0]
        if hit.size:
            out[: k - 1] = prefix
            out[k - 1] = last + 1 + hit[0]
            return out
    return out


def _np_first_nonbinary_triple(masks):
    m = masks.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for i in range(m):
        for j in range(i + 1, m):
            x = masks[j + 1:] ^ masks[i] ^ masks[j]
            if x.size == 0:
                continue
            # contains[t] is True when some member is a subset of x[t]
            contains = np.zeros(x.shape[0], dtype=np.bool_)
            for mem in masks:
                contains |= (mem & ~x) == 0
            bad = np.nonzero(~contains)[0]
            if bad.size:
                out[0], out[1], out[2] = i, j, j + 1 + bad[0]
                return out
    return out


def _np_adjacent_pairs(zeros, plus, minus, min_common):
    pairs = []
    if plus.size == 0 or minus.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    for a in plus:
        za = zeros[a]
        common = zeros[minus] & za
        counts = _np_popcount_rows(common)
        for pos in np.nonzero(counts >= min_common)[0]:
            b = minus[pos]
            z = common[pos]
            sup = np.all((zeros & z) == z, axis=1)
            sup[a] = False
            sup[b] = False
            if not sup.any():
                pairs.append((a, b))
    if not pairs:
        return np.zeros((0, 2), dtype=np.int64)
    return np.array(pairs, dtype=np.int64)


def _np_popcount_rows(words):
    total = np.zeros(words.shape[0], dtype=np.int64)
    for col in range(words.shape[1]):
        total += np.bitwise_count(words[:, col]).astype(np.int64)
    return total


def _np_reduce_all(values, basis, pivots):
    out = values.copy()
    for row, piv in zip(basis, pivots):
        sel = ((out >> np.uint64(piv)) & np.uint64(1)).astype(np.bool_)
        out[sel] ^= row
    return out


def _np_first_free_candidate(start, stop, basis, pivots, forbidden):
    step = 1 << 16
    for lo in range(start, stop, step):
        hi = min(stop, lo + step)
        cand = np.arange(lo, hi, dtype=np.uint64)
        red = _np_reduce_all(cand, basis, pivots)
        ok = (red != 0) & ~np.isin(red, forbidden)
        hit = np.nonzero(ok)[0]
        if hit.size:
            return lo + int(hit[0])
    return -1


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAS_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def _nb_first_covering_tuple(points, full, k):
        m = points.shape[0]
        out = np.full(3, -1, dtype=np.int64)
        if k == 1:
            for i in range(m):
                if points[i] == full:
                    out[0] = i
                    return out
            return out
        if k == 2:
            for i in range(m):
                for j in range(i, m):
                    if (points[i] | points[j]) == full:
                        out[0] = i
                        out[1] = j
                        return out
            return out
        for i in range(m):
            for j in range(i, m):
                pij = points[i] | points[j]
                for t in range(j, m):
                    if (pij | points[t]) == full:
                        out[0] = i
                        out[1] = j
                        out[2] = t
                        return out
        return out

    @_jit
    def _nb_first_subset_and_or(masks, k, need_or):
        m = masks.shape[0]
        out = np.full(k, -1, dtype=np.int64)
        if k > m or k == 0:
            return out
        idx = np.empty(k, dtype=np.int64)
        acc_and = np.empty(k + 1, dtype=np.uint64)
        acc_or = np.empty(k + 1, dtype=np.uint64)
        acc_and[0] = ~np.uint64(0)
        acc_or[0] = np.uint64(0)
        depth = 0
        idx[0] = 0
        while True:
            if idx[depth] > m - (k - depth):
                # exhausted this level
                if depth == 0:
                    return out
                depth -= 1
                idx[depth] += 1
                continue
            a = acc_and[depth] & masks[idx[depth]]
            o = acc_or[depth] | masks[idx[depth]]
            if depth == k - 1:
                if a == 0 and (o & need_or) == need_or:
                    for t in range(k):
                        out[t] = idx[t]
                    return out
                idx[depth] += 1
                continue
            acc_and[depth + 1] = a
            acc_or[depth + 1] = o
            depth += 1
            idx[depth] = idx[depth - 1] + 1

    @_jit
    def _nb_first_nonbinary_triple(masks):
        m = masks.shape[0]
        out = np.full(3, -1, dtype=np.int64)
        for i in range(m):
            for j in range(i + 1, m):
                xij = masks[i] ^ masks[j]
                for t in range(j + 1, m):
                    x = xij ^ masks[t]
                    found = False
                    for l in range(m):
                        if (masks[l] & ~x) == 0:
                            found = True
                            break
                    if not found:
                        out[0] = i
                        out[1] = j
                        out[2] = t
                        return out
        return out

    @_jit
    def _nb_popcount(x):
        c = 0
        while x:
            x &= x - np.uint64(1)
            c += 1
        return c

    @_jit
    def _nb_adjacent_pairs(zeros, plus, minus, min_common):
        nrays = zeros.shape[0]
        nwords = zeros.shape[1]
        cap = plus.shape[0] * minus.shape[0]
        result = np.empty((cap, 2), dtype=np.int64)
        count = 0
        common = np.empty(nwords, dtype=np.uint64)
        for ia in range(plus.shape[0]):
            a = plus[ia]
            for ib in range(minus.shape[0]):
                b = minus[ib]
                pop = 0
                for w in range(nwords):
                    common[w] = zeros[a, w] & zeros[b, w]
                    pop += _nb_popcount(common[w])
                if pop < min_common:
                    continue
                adjacent = True
                for r in range(nrays):
                    if r == a or r == b:
                        continue
                    contains = True
                    for w in range(nwords):
                        if (zeros[r, w] & common[w]) != common[w]:
                            contains = False
                            break
                    if contains:
                        adjacent = False
                        break
                if adjacent:
                    result[count, 0] = a
                    result[count, 1] = b
                    count += 1
        return result[:count]

    @_jit
    def _nb_first_free_candidate(start, stop, basis, pivots, forbidden):
        nb = basis.shape[0]
        nf = forbidden.shape[0]
        for c in range(start, stop):
            v = np.uint64(c)
            for r in range(nb):
                if (v >> np.uint64(pivots[r])) & np.uint64(1):
                    v ^= basis[r]
            if v == 0:
                continue
            bad = False
            for f in range(nf):
                if forbidden[f] == v:
                    bad = True
                    break
            if not bad:
                return c
        return -1

    first_covering_tuple_arr = _nb_first_covering_tuple
    first_subset_and_or_arr = _nb_first_subset_and_or
    first_nonbinary_triple_arr = _nb_first_nonbinary_triple
    adjacent_pairs_arr = _nb_adjacent_pairs
    first_free_candidate_arr = _nb_first_free_candidate
else:
    first_covering_tuple_arr = _np_first_covering_tuple
    first_subset_and_or_arr = _np_first_subset_and_or
    first_nonbinary_triple_arr = _np_first_nonbinary_triple
    adjacent_pairs_arr = _np_adjacent_pairs
    first_free_candidate_arr = _np_first_free_candidate


NUMPY_KERNELS = {
    "first_covering_tuple": _np_first_covering_tuple,
    "first_subset_and_or": _np_first_subset_and_or,
    "first_nonbinary_triple": _np_first_nonbinary_triple,
    "adjacent_pairs": _np_adjacent_pairs,
    "first_free_candidate": _np_first_free_candidate,
}

ACTIVE_KERNELS = {
    "first_covering_tuple": first_covering_tuple_arr,
    "first_subset_and_or": first_subset_and_or_arr,
    "first_nonbinary_triple": first_nonbinary_triple_arr,
    "adjacent_pairs": adjacent_pairs_arr,
    "first_free_candidate": first_free_candidate_arr,
}


def _fits(values) -> bool:
    return all(0 <= v <= _U64_MASK for v in values)


# ---------------------------------------------------------------------------
# public wrappers (Python ints in, Python ints out)
# ---------------------------------------------------------------------------


def first_covering_tuple(points: list[int], full: int, k: int) -> tuple[int, ...] | None:
    """First index tuple ``i1 <= ... <= ik`` whose OR equals ``full``."""
    if not 1 <= k <= 3:
        raise ValueError("k must be 1, 2 or 3")
    if not points:
        return None
    if _fits(points) and full <= _U64_MASK:
        res = first_covering_tuple_arr(_as_u64(points), np.uint64(full), k)
        if res[0] < 0:
            return None
        return tuple(int(x) for x in res[:k])
    for combo in itertools.combinations_with_replacement(range(len(points)), k):
        acc = 0
        for c in combo:
            acc |= points[c]
        if acc == full:
            return combo
    return None


def first_subset_and_or(masks: list[int], k: int, need_or: int = 0) -> tuple[int, ...] | None:
    """First ``k``-combination with empty AND and OR covering ``need_or``."""
    if k <= 0 or k > len(masks):
        return None
    if _fits(masks) and need_or <= _U64_MASK:
        res = first_subset_and_or_arr(_as_u64(masks), k, np.uint64(need_or))
        if res[0] < 0:
            return None
        return tuple(int(x) for x in res)
    for combo in itertools.combinations(range(len(masks)), k):
        acc_and = -1
        acc_or = 0
        for c in combo:
            acc_and &= masks[c]
            acc_or |= masks[c]
        if acc_and == 0 and acc_or & need_or == need_or:
            return combo
    return None


def first_nonbinary_triple(masks: list[int]) -> tuple[int, int, int] | None:
    """First triple ``i < j < t`` whose symmetric difference contains no mask."""
    if len(masks) < 3:
        return None
    if _fits(masks):
        res = first_nonbinary_triple_arr(_as_u64(masks))
        if res[0] < 0:
            return None
        return int(res[0]), int(res[1]), int(res[2])
    for i, j, t in itertools.combinations(range(len(masks)), 3):
        x = masks[i] ^ masks[j] ^ masks[t]
        if not any(m & ~x == 0 for m in masks):
            return i, j, t
    return None


def adjacent_pairs(zero_sets: list[int], plus: list[int], minus: list[int],
                   min_common: int) -> list[tuple[int, int]]:
    """Combinatorial adjacency test of the double description method.

    A pair ``(a, b)`` is returned when the common zero set has at least
    ``min_common`` elements and is contained in no other ray's zero set.
    """
    if not plus or not minus:
        return []
    nbits = max((z.bit_length() for z in zero_sets), default=1)
    nwords = max(1, -(-nbits // WORD))
    zeros = np.zeros((len(zero_sets), nwords), dtype=np.uint64)
    for r, z in enumerate(zero_sets):
        for w in range(nwords):
            zeros[r, w] = (z >> (WORD * w)) & _U64_MASK
    res = adjacent_pairs_arr(zeros, np.array(plus, dtype=np.int64),
                             np.array(minus, dtype=np.int64), int(min_common))
    return [(int(a), int(b)) for a, b in res]


def first_free_candidate(start: int, stop: int, basis: list[int], pivots: list[int],
                         forbidden: list[int]) -> int:
    """First ``c`` in ``[start, stop)`` whose reduction is nonzero and not forbidden.

    ``basis`` must be fully reduced with ``pivots[r]`` the bit index of row r's
    pivot.  Returns -1 when no candidate qualifies.
    """
    if start >= stop:
        return -1
    if stop - 1 <= _U64_MASK:
        forb = np.array(sorted(set(forbidden)), dtype=np.uint64)
        return int(first_free_candidate_arr(
            int(start), int(stop), _as_u64(basis),
            np.array(pivots, dtype=np.int64), forb))
    forb = set(forbidden)
    for c in range(start, stop):
        v = c
        for row, piv in zip(basis, pivots):
            if v >> piv & 1:
                v ^= row
        if v and v not in forb:
            return c
    return -1
