"""Seeded randomized property suites.

Each suite returns ``(instances, counterexamples)``.  The library is checked
against itself where the property is an equivalence between two library
routines, and against ``oracles`` wherever a brute-force answer is cheap.
"""

from __future__ import annotations

import random

import oracles
from clutterlab.clutters import (blocker, chromatic_number, colouring_from_blocker_witness,
                                 covering_number, duplicate, intersecting_witness, is_binary,
                                 is_binary_by_blocker, is_k_wise_intersecting, minor, new_clutter,
                                 packing_number)
from clutterlab.cuboids import (ZeroOneSet, agree_on_coordinate, cuboid, is_cube_ideal,
                                is_cube_ideal_by_facets, min_disagreeing_subset)
from clutterlab.exact_lp import is_ideal
from clutterlab.gf2 import BinarySpace
from clutterlab.graphs import Graph, bridges, cycle_space, k_cycle_cover
from clutterlab.matroids import BinaryMatroid, coloops, three_cycle_cover

SUITE_SIZE = 500


def _clutter(rng, n_max=8, max_members=10, density=None):
    n = rng.randint(1, n_max)
    d = density if density is not None else rng.choice([0.3, 0.45, 0.6])
    return new_clutter(n, oracles.random_clutter(rng, n, max_members, d))


def _binary_cuboid(rng, width_max=4):
    w = rng.randint(1, width_max)
    space = BinarySpace(w, tuple(rng.randrange(1 << w) for _ in range(rng.randint(1, w))))
    return cuboid(ZeroOneSet.from_space(space))


def _graph_cuboid(rng):
    v = rng.randint(2, 4)
    edges = oracles.random_graph(rng, v, rng.randint(1, 4))
    return cuboid(ZeroOneSet.from_space(cycle_space(Graph(v, tuple(edges)))))


def blocker_involution(seed=1):
    rng = random.Random(seed)
    bad = []
    for _ in range(SUITE_SIZE):
        c = _clutter(rng)
        b = blocker(c)
        if blocker(b) != c or set(b.members) != set(oracles.blocker(c.n, c.members)):
            bad.append(c)
    return SUITE_SIZE, bad


def packing_below_covering(seed=2):
    rng = random.Random(seed)
    bad = []
    for _ in range(SUITE_SIZE):
        c = _clutter(rng)
        nu, tau = packing_number(c), covering_number(c)
        if not nu <= tau or nu != oracles.nu(c.members) or tau != oracles.tau(c.n, c.members):
            bad.append(c)
    return SUITE_SIZE, bad


def chromatic_blocker_duality(seed=3):
    """chi(C) <= k exactly when b(C) is not k-wise intersecting, both directions constructive."""
    rng = random.Random(seed)
    bad = []
    count = 0
    while count < SUITE_SIZE:
        c = _clutter(rng, n_max=7, density=0.5)
        if any(len(m) < 2 for m in c.members):
            continue
        count += 1
        chi, col = chromatic_number(c)
        b = blocker(c)
        for k in (2, 3, 4):
            if (chi <= k) == is_k_wise_intersecting(b, k):
                bad.append((c, k))
            w = intersecting_witness(b, k)
            if w is not None:
                fromw = colouring_from_blocker_witness(c, w)
                if not (fromw.k <= k and fromw.is_proper(c)):
                    bad.append((c, k, "witness"))
            if chi <= k:
                # complements of the colour classes are covers whose minimal parts meet nowhere
                covers = [frozenset(c.ground) - part for part in col.parts]
                mins = [next(m for m in b.members if m <= cov) for cov in covers]
                if frozenset.intersection(*mins):
                    bad.append((c, k, "colouring"))
        if chi != oracles.chromatic_number(c.n, c.members):
            bad.append((c, "chi"))
    return count, bad


def binary_characterizations(seed=4):
    rng = random.Random(seed)
    bad = []
    for i in range(SUITE_SIZE):
        c = _binary_cuboid(rng) if i % 3 == 0 else _clutter(rng, n_max=7, max_members=8)
        a = is_binary(c, cross_check=False)
        if a != is_binary_by_blocker(c) or a != oracles.is_binary_by_odd_subfamilies(c.members):
            bad.append(c)
    return SUITE_SIZE, bad


def idealness_preserved(seed=5):
    """Blocker (both ways), minors and duplication of ideal clutters stay ideal."""
    rng = random.Random(seed)
    bad = []
    ideal_count = 0
    for i in range(SUITE_SIZE):
        kind = i % 3
        c = _graph_cuboid(rng) if kind == 0 else _clutter(rng, n_max=6, max_members=7)
        if c.n > 8:
            c = _clutter(rng, n_max=6, max_members=7)
        ideal = is_ideal(c)
        if i % 4 == 0 and c.n <= 6 and ideal != oracles.is_ideal(c.n, c.members):
            bad.append((c, "oracle"))
        if is_ideal(blocker(c)) != ideal:
            bad.append((c, "blocker"))
        u = rng.randint(1, c.n)
        if is_ideal(duplicate(c, u)) != ideal:
            bad.append((c, "duplicate"))
        if ideal:
            ideal_count += 1
            ground = list(c.ground)
            rng.shuffle(ground)
            k = rng.randint(1, c.n)
            m = minor(c, ground[:k // 2], ground[k // 2:k]).clutter
            if m.n and m.members and frozenset() not in m.members and not is_ideal(m):
                bad.append((c, "minor"))
    assert ideal_count >= SUITE_SIZE // 4, "too few ideal instances"
    return SUITE_SIZE, bad


def cuboid_k_wise(seed=6):
    rng = random.Random(seed)
    bad = []
    for _ in range(SUITE_SIZE):
        w = rng.randint(1, 5)
        s = ZeroOneSet(w, tuple(oracles.random_points(rng, w, 12)))
        c = cuboid(s)
        for k in (2, 3, 4):
            lhs = is_k_wise_intersecting(c, k)
            rhs = agree_on_coordinate(s) is None and min_disagreeing_subset(s, k) is None
            if lhs != rhs or lhs != oracles.is_k_wise_intersecting(c.members, k):
                bad.append((s, k))
    return SUITE_SIZE, bad


def graph_remarks(max_edges=6):
    """Bridges vs agreed coordinates, and k-cycle covers vs k+1 disagreeing points."""
    bad = []
    graphs = [g for g in oracles.all_small_graphs(max_edges) if g[1]]
    for nv, edges in graphs:
        g = Graph(nv, edges)
        s = ZeroOneSet.from_space(cycle_space(g))
        if (agree_on_coordinate(s) is not None) != bool(bridges(g)):
            bad.append((g, "bridge"))
        if bridges(g) != oracles.graph_bridges(nv, edges):
            bad.append((g, "oracle"))
        for k in (1, 2, 3):
            if (min_disagreeing_subset(s, k + 1) is not None) != (k_cycle_cover(g, k) is not None):
                bad.append((g, k))
    return len(graphs), bad


def matroid_remarks(max_width=6):
    """Coloops vs agreed coordinates, and k-cycle covers vs k+1 disagreeing points.

    Every cycle space of width at most ``max_width`` is visited, so every
    labelled binary matroid on that many elements (of any rank) is covered.
    """
    bad = []
    count = 0
    for w in range(1, max_width + 1):
        for rows in oracles.all_subspaces(w, w):
            count += 1
            space = BinarySpace(w, tuple(rows))
            m = BinaryMatroid(tuple(range(1, w + 1)), space)
            s = ZeroOneSet.from_space(space)
            if (agree_on_coordinate(s) is not None) != bool(coloops(m)):
                bad.append((rows, "coloop"))
            cyc = m.cycle_sets()
            best = oracles.min_union_cover(m.ground, cyc, 3)
            for k in (1, 2, 3):
                lhs = min_disagreeing_subset(s, k + 1) is not None
                if lhs != (best is not None and best <= k):
                    bad.append((rows, k))
            if (three_cycle_cover(m) is not None) != (best is not None):
                bad.append((rows, "three"))
    return count, bad


def cube_ideal_paths(seed=7):
    rng = random.Random(seed)
    bad = []
    for _ in range(SUITE_SIZE):
        w = rng.randint(1, 5)
        s = ZeroOneSet(w, tuple(oracles.random_points(rng, w, 1 << w)))
        a = is_cube_ideal(s)
        if a != is_cube_ideal_by_facets(s):
            bad.append(s)
    return SUITE_SIZE, bad


SUITES = {
    "blocker involution": blocker_involution,
    "nu <= tau": packing_below_covering,
    "chromatic/blocker duality": chromatic_blocker_duality,
    "binary characterizations": binary_characterizations,
    "idealness under blocker, minors, duplication": idealness_preserved,
    "cuboid k-wise equivalence": cuboid_k_wise,
    "graph cycle-space equivalences": graph_remarks,
    "matroid cycle-space equivalences": matroid_remarks,
    "cube-ideal vs facet classification": cube_ideal_paths,
}
