"""Double description method over the integers.

Computes the extreme rays of ``{z : A z >= 0}`` for an integer matrix ``A``,
modulo its lineality space.  Rays are primitive integer vectors; zero sets are
bitmasks over row indices.  The pairwise adjacency test is the hot loop and is
delegated to ``_kernels.adjacent_pairs``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from . import _kernels


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _integerize(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return _primitive([int(x * den) for x in v])


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


def rref_fraction(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence[int | Fraction]], ncols: int) -> int:
    if not rows:
        return 0
    return len(rref_fraction([[Fraction(x) for x in r] for r in rows], ncols)[1])


def null_space(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    if not rows:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    red, piv = rref_fraction([[Fraction(x) for x in r] for r in rows], ncols)
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        out.append(_integerize(v))
    return out


def _independent_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for i, r in enumerate(rows):
        trial = basis + [[Fraction(x) for x in r]]
        if len(rref_fraction(trial, ncols)[1]) > len(basis):
            basis = rref_fraction(trial, ncols)[0]
            chosen.append(i)
    return chosen


def extreme_rays(rows: Sequence[Sequence[int]], dim: int
                 ) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Extreme rays and a lineality basis of ``{z in Q^dim : row . z >= 0}``.

    Returns ``(rays, lineality)``.  Rays are primitive integer vectors taken
    in a complement of the lineality space, deduplicated and sorted.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    lineality = null_space(rows, dim)
    if not rows:
        return [], lineality
    first = _independent_rows(rows, dim)
    k = len(first)
    sub = [[Fraction(x) for x in rows[i]] for i in first]
    _, pcols = rref_fraction(sub, dim)
    # square system on the pivot columns: sub[:, pcols] g = e_j
    square = [[sub[i][c] for c in pcols] for i in range(k)]
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    for j in range(k):
        aug = [square[i] + [Fraction(1 if i == j else 0)] for i in range(k)]
        red, _ = rref_fraction(aug, k)
        g = [Fraction(0)] * dim
        for i, c in enumerate(pcols):
            g[c] = red[i][k]
        rays.append(_integerize(g))
        z = 0
        for i_pos, i in enumerate(first):
            if i_pos != j:
                z |= 1 << i
        zeros.append(z)

    done = set(first)
    for idx, a in enumerate(rows):
        if idx in done:
            continue
        done.add(idx)
        vals = [_dot(a, r) for r in rays]
        plus = [i for i, s in enumerate(vals) if s > 0]
        minus = [i for i, s in enumerate(vals) if s < 0]
        zero = [i for i, s in enumerate(vals) if s == 0]
        new_rays = [rays[i] for i in plus]
        new_zeros = [zeros[i] for i in plus]
        bit = 1 << idx
        for i in zero:
            new_rays.append(rays[i])
            new_zeros.append(zeros[i] | bit)
        if plus and minus:
            for p, q in _kernels.adjacent_pairs(zeros, plus, minus, k - 2):
                sp, sq = vals[p], vals[q]
                w = [sp * y - sq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(w))
                new_zeros.append((zeros[p] & zeros[q]) | bit)
        rays, zeros = new_rays, new_zeros
    uniq = sorted(set(rays))
    return uniq, lineality
