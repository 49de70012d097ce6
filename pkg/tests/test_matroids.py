import itertools
import random

import pytest

import oracles
from clutterlab.errors import NotASum, PreconditionError
from clutterlab.gf2 import BinarySpace
from clutterlab.graphs import Graph, cycle_space, k4, path, petersen, triangle, wagner
from clutterlab.matroids import (BinaryMatroid, ThreeCycleCover, circuits, cocircuits, coloops,
                                 compose_three_cycle_covers, contract, delete, dual, fano,
                                 from_graph, from_representation, graph_cut_cycles,
                                 is_projective_geometry, is_simple, is_three_cycle_cover, loops,
                                 matroid_sum, parallel_classes, projective_geometry, relabel,
                                 simplify, sum_kind, three_cycle_cover, wagner_dual)


def fs(*sets):
    return {frozenset(s) for s in sets}


def random_matroid(rng, n, max_rank=None):
    rows = [rng.randrange(1 << n) for _ in range(rng.randint(0, n))]
    return BinaryMatroid(tuple(range(1, n + 1)), BinarySpace(n, tuple(rows)))


def star_k4(offset):
    """K4 with edges relabelled so the star at vertex 4 uses labels 1, 2, 3."""
    g = k4()   # edges 12, 13, 14, 23, 24, 34; star of vertex 4 is edges 3, 5, 6
    m = from_graph(g)
    mapping = {3: 1, 5: 2, 6: 3, 1: offset + 1, 2: offset + 2, 4: offset + 3}
    return relabel(m, mapping)


def test_from_graph_examples():
    m = from_graph(k4())
    assert m.cycles.rank == 3 and len(m.cycle_sets()) == 8
    tree = from_graph(path(3))
    assert tree.cycle_sets() == [frozenset()] and coloops(tree) == {1, 2, 3}
    assert from_graph(petersen()).cycles.rank == 6


def test_from_representation_examples():
    # columns 100, 010, 001, 011, 101, 110, 111
    m = from_representation(["1000111", "0101011", "0011101"])
    assert m == fano()
    ident = from_representation(["100", "010", "001"])
    assert coloops(ident) == {1, 2, 3}


@pytest.mark.parametrize("seed", range(30))
def test_dual_involution_and_brute_force_circuits(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    m = random_matroid(rng, n)
    assert dual(dual(m)) == m
    cyc = [frozenset(i + 1 for i in range(n) if p >> (n - 1 - i) & 1)
           for p in range(1 << n) if m.cycles.contains(p)]
    want = [c for c in cyc if c and not any(d and d < c for d in cyc)]
    assert set(circuits(m)) == set(want)
    cocyc = [frozenset(i + 1 for i in range(n) if p >> (n - 1 - i) & 1)
             for p in range(1 << n)
             if all(len(c & frozenset(i + 1 for i in range(n) if p >> (n - 1 - i) & 1)) % 2 == 0
                    for c in cyc)]
    assert set(m.to_set(p) for p in m.cocycles().point_values()) == set(cocyc)
    assert loops(m) == {e for e in m.ground if frozenset({e}) in cyc}
    assert coloops(m) == set(m.ground) - frozenset().union(*cyc)


@pytest.mark.parametrize("seed", range(30))
def test_delete_contract_match_definitions(seed):
    rng = random.Random(500 + seed)
    n = rng.randint(2, 7)
    m = random_matroid(rng, n)
    x = frozenset(rng.sample(range(1, n + 1), rng.randint(1, n - 1)))
    cyc = m.cycle_sets()
    d = delete(m, x)
    assert set(d.cycle_sets()) == {c for c in cyc if not c & x}
    c = contract(m, x)
    assert set(c.cycle_sets()) == {k - x for k in cyc}
    # contraction and deletion are dual operations
    assert dual(contract(m, x)) == delete(dual(m), x)


def test_simplify_removes_parallel_element():
    g = Graph(3, ((1, 2), (1, 2), (2, 3), (3, 1), (3, 3)))
    m = from_graph(g)
    assert loops(m) == {5}
    assert parallel_classes(m) == [(1, 2), (3,), (4,)]
    s = simplify(m)
    assert s.ground == (1, 3, 4) and is_simple(s)


def test_fano_and_wagner_dual():
    f = fano()
    assert f.size == 7 and f.rank == 3 and not coloops(f)
    w = wagner_dual()
    assert w.size == 12
    assert w.cocycles() == cycle_space(wagner())


def test_projective_geometries():
    pg0 = projective_geometry(1)
    assert pg0.size == 1 and pg0.cocycles().point_values() == [0, 1]
    pg1 = projective_geometry(2)
    assert pg1.cycles == cycle_space(triangle())
    pg2 = projective_geometry(3)
    pts = pg2.cocycles().point_values()
    assert len(pts) == 8 and all(p.bit_count() == 4 for p in pts if p)
    with pytest.raises(PreconditionError):
        projective_geometry(0)


def test_is_projective_geometry():
    assert is_projective_geometry(fano()) == 3
    assert is_projective_geometry(from_graph(k4())) is None
    assert is_projective_geometry(projective_geometry(2)) == 2
    with pytest.raises(PreconditionError):
        is_projective_geometry(from_graph(Graph(2, ((1, 2), (1, 2), (1, 2)))))


def test_one_sum():
    f = relabel(fano(), {i: i + 6 for i in range(1, 8)})
    total, kind = matroid_sum(from_graph(k4()), f)
    assert kind == "1-sum" and total.size == 13
    assert total.cycles.rank == 3 + 4


def test_two_sum_of_triangles_is_a_square():
    t1 = from_graph(triangle())                                    # elements 1, 2, 3
    t2 = relabel(from_graph(triangle()), {1: 3, 2: 4, 3: 5})       # elements 3, 4, 5
    total, kind = matroid_sum(t1, t2)
    assert kind == "2-sum"
    assert total.ground == (1, 2, 4, 5)
    assert total.cycle_sets() == [frozenset(), frozenset({1, 2, 4, 5})]


def test_y_sum_of_two_k4():
    m1, m2 = star_k4(10), star_k4(20)
    assert sum_kind(m1, m2) == "Y-sum"
    total, kind = matroid_sum(m1, m2)
    assert kind == "Y-sum" and total.size == 6
    # brute force: cycles of the sum are C1 ^ C2 avoiding the shared triad
    x = {1, 2, 3}
    want = {a ^ b for a in m1.cycle_sets() for b in m2.cycle_sets() if not (a ^ b) & x}
    assert set(total.cycle_sets()) == want


def test_fano_has_no_triad_so_no_y_sum():
    assert all(len(c) == 4 for c in cocircuits(fano()))
    with pytest.raises(NotASum):
        sum_kind(fano(), relabel(fano(), {4: 14, 5: 15, 6: 16, 7: 17}))


def test_two_sum_rejects_coloop():
    p = from_graph(path(2))
    with pytest.raises(NotASum):
        sum_kind(p, relabel(from_graph(triangle()), {1: 2, 2: 8, 3: 9}))


def test_fano_cover_from_the_literature():
    assert is_three_cycle_cover(fano(), [set(), {1, 2, 3, 7}, {4, 5, 6}])
    cov = three_cycle_cover(fano())
    assert is_three_cycle_cover(fano(), cov)


def test_wagner_dual_cover_from_listed_cuts():
    cuts = graph_cut_cycles(wagner(), [{1, 6, 7, 8}, {1, 7}, {2, 4}])
    assert is_three_cycle_cover(wagner_dual(), cuts)
    assert is_three_cycle_cover(wagner_dual(), three_cycle_cover(wagner_dual()))


def test_three_cycle_cover_none_on_coloop():
    assert three_cycle_cover(from_graph(path(3))) is None


def test_compose_one_sum():
    m1 = from_graph(k4())
    m2 = relabel(fano(), {i: i + 6 for i in range(1, 8)})
    out = compose_three_cycle_covers(m1, three_cycle_cover(m1), m2, three_cycle_cover(m2), "1-sum")
    total, _ = matroid_sum(m1, m2)
    assert is_three_cycle_cover(total, out)


def test_compose_two_sum_fano_triangle():
    m1 = fano()
    m2 = relabel(from_graph(triangle()), {1: 7, 2: 8, 3: 9})
    cov1 = ThreeCycleCover((frozenset(), frozenset({1, 2, 3, 7}), frozenset({4, 5, 6})))
    out = compose_three_cycle_covers(m1, cov1, m2, three_cycle_cover(m2), "2-sum")
    total, _ = matroid_sum(m1, m2)
    assert is_three_cycle_cover(total, out)


def test_compose_y_sums():
    m1, m2 = star_k4(10), star_k4(20)
    out = compose_three_cycle_covers(m1, three_cycle_cover(m1), m2, three_cycle_cover(m2), "Y-sum")
    total, _ = matroid_sum(m1, m2)
    assert is_three_cycle_cover(total, out)
    # a Y-sum whose first summand is itself a 2-sum involving F7
    f = relabel(fano(), {1: 31, 2: 32, 3: 33, 4: 34, 5: 35, 6: 36, 7: 40})
    k = relabel(from_graph(k4()), {1: 40, 2: 41, 3: 1, 4: 42, 5: 2, 6: 3})
    # star of vertex 4 in K4 is edges 3, 5, 6, relabelled to 1, 2, 3 here
    left, kind = matroid_sum(f, k)
    assert kind == "2-sum"
    left_cov = compose_three_cycle_covers(f, three_cycle_cover(f), k, three_cycle_cover(k))
    right = star_k4(60)
    assert sum_kind(left, right) == "Y-sum"
    out = compose_three_cycle_covers(left, left_cov, right, three_cycle_cover(right))
    assert is_three_cycle_cover(matroid_sum(left, right)[0], out)


def test_compose_rejects_wrong_kind_and_bad_covers():
    m1 = from_graph(k4())
    m2 = relabel(from_graph(triangle()), {1: 7, 2: 8, 3: 9})
    with pytest.raises(PreconditionError):
        compose_three_cycle_covers(m1, three_cycle_cover(m1), m2, three_cycle_cover(m2), "2-sum")
    with pytest.raises(PreconditionError):
        compose_three_cycle_covers(m1, ThreeCycleCover((set(), set(), set())), m2,
                                   three_cycle_cover(m2))


@pytest.mark.parametrize("seed", range(20))
def test_three_cycle_cover_matches_brute_force(seed):
    rng = random.Random(900 + seed)
    n = rng.randint(1, 7)
    m = random_matroid(rng, n)
    cyc = m.cycle_sets()
    best = oracles.min_union_cover(m.ground, cyc, 3)
    cov = three_cycle_cover(m)
    assert (cov is None) == (best is None)
    if cov is not None:
        assert is_three_cycle_cover(m, cov)


def test_cycle_space_points_of_graph_match_oracle():
    for g in (k4(), triangle(), Graph(3, ((1, 2), (1, 2), (2, 3), (3, 3)))):
        m = from_graph(g)
        assert set(m.cycle_sets()) == set(oracles.graph_cycles(g.num_vertices, g.edges))


def test_relabel_preserves_cycles():
    m = relabel(fano(), {1: 100})
    assert m.ground[0] == 100 and m.is_cycle({100, 2, 3, 7})
    assert list(itertools.islice(m.cycle_sets(), 1)) == [frozenset()]


@pytest.mark.parametrize("seed", range(30))
def test_cover_equivalences_on_random_matroids_of_small_rank(seed):
    from clutterlab.cuboids import ZeroOneSet, agree_on_coordinate, min_disagreeing_subset

    rng = random.Random(9000 + seed)
    n = rng.randint(6, 9)
    # cocycle space of rank at most five, so at most 2^(n-r) cycles stay cheap
    cocycles = BinarySpace(n, tuple(rng.randrange(1 << n) for _ in range(rng.randint(1, 5))))
    m = BinaryMatroid(tuple(range(1, n + 1)), cocycles_to_cycles(cocycles))
    assert m.rank <= 5
    s = ZeroOneSet.from_space(m.cycles)
    assert (agree_on_coordinate(s) is not None) == bool(coloops(m))
    best = oracles.min_union_cover(m.ground, m.cycle_sets(), 3)
    for k in (1, 2, 3):
        assert (min_disagreeing_subset(s, k + 1) is not None) == (best is not None and best <= k)


def cocycles_to_cycles(space):
    from clutterlab.gf2 import orthogonal_complement
    return orthogonal_complement(space)


def composed_instances():
    f = relabel(fano(), {1: 31, 2: 32, 3: 33, 4: 34, 5: 35, 6: 36, 7: 40})
    k = relabel(from_graph(k4()), {1: 40, 2: 41, 3: 1, 4: 42, 5: 2, 6: 3})
    left = matroid_sum(f, k)[0]
    pairs = [
        (from_graph(k4()), relabel(fano(), {i: i + 6 for i in range(1, 8)})),
        (fano(), relabel(from_graph(triangle()), {1: 7, 2: 8, 3: 9})),
        (star_k4(10), star_k4(20)),
        (f, k),
        (left, star_k4(60)),
        (from_graph(path(2)), relabel(from_graph(triangle()), {1: 11, 2: 12, 3: 13})),
    ]
    rng = random.Random(77)
    while len(pairs) < 60:
        m1 = random_matroid(rng, rng.randint(1, 5))
        m2 = relabel(random_matroid(rng, rng.randint(1, 5)), {i: i + 10 for i in range(1, 6)})
        if rng.random() < 0.6:
            # share one element for a 2-sum
            m2 = relabel(m2, {m2.ground[0]: m1.ground[-1]})
        try:
            sum_kind(m1, m2)
        except NotASum:
            continue
        pairs.append((m1, m2))
    return pairs


def test_coloop_free_sum_has_coloop_free_summands():
    seen = set()
    for m1, m2 in composed_instances():
        total, kind = matroid_sum(m1, m2)
        seen.add(kind)
        if not coloops(total):
            assert not coloops(m1) and not coloops(m2)
    assert seen == {"1-sum", "2-sum", "Y-sum"}


@pytest.mark.parametrize("ell", [1, 2, 3])
@pytest.mark.parametrize("seed", range(5))
def test_projective_geometry_representation_is_unique(ell, seed):
    rng = random.Random(100 * ell + seed)
    base = projective_geometry(ell)
    rows = [int(r, 2) for r in base.representation()]
    n = base.size
    # random invertible row operations
    for _ in range(20):
        i, j = rng.sample(range(ell), 2) if ell > 1 else (0, 0)
        if i != j:
            rows[i] ^= rows[j]
    perm = list(range(n))
    rng.shuffle(perm)
    cols = ["".join(format(r, f"0{n}b")[perm[c]] for c in range(n)) for r in rows]
    # cols[r] is row r with column c taken from original column perm[c]
    m = from_representation(cols)
    assert is_projective_geometry(m) == ell
    back = relabel(m, {c + 1: base.ground[perm[c]] for c in range(n)})
    assert set(back.cycle_sets()) == set(base.cycle_sets())
