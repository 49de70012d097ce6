import random
from fractions import Fraction as F

import pytest

import oracles
from clutterlab.clutters import (covering_number, duplicate, is_binary, is_tangled, new_clutter,
                                 q6)
from clutterlab.cuboids import ZeroOneSet, cuboid, deduplicate_coordinates
from clutterlab.errors import CapExceeded, PreconditionError
from clutterlab.exact_lp import extract_small_subfamily, is_ideal
from clutterlab.gf2 import BinarySpace, null_space
from clutterlab.graphs import cycle_space, k4, petersen, t30
from clutterlab.matroids import (BinaryMatroid, from_graph, is_projective_geometry,
                                 projective_geometry, three_cycle_cover)
from clutterlab.pg import embeds_pg, pg_order, pg_packing, pg_subspace, quarter_packing

SINGLETONS = new_clutter(2, [{1}, {2}])


def check_pg_subspace(space, sub):
    assert all(space.contains(b) for b in sub.basis)
    acc = 0
    for b in sub.basis:
        acc |= b
    assert acc == (1 << space.width) - 1
    dd = deduplicate_coordinates(ZeroOneSet.from_space(sub)).points
    r = sub.rank
    assert len(dd) == 1 << r and dd.width == (1 << r) - 1
    cycles = BinarySpace(dd.width, null_space(BinarySpace(dd.width, dd.points).basis, dd.width))
    m = BinaryMatroid(tuple(range(1, dd.width + 1)), cycles)
    assert is_projective_geometry(m) == r


def test_pg_subspace_examples():
    pg1 = projective_geometry(2).cocycles()
    assert pg_subspace(pg1) == pg1
    one = BinarySpace.from_strings(["1"])
    assert pg_subspace(one) == one
    with pytest.raises(PreconditionError):
        pg_subspace(BinarySpace.from_strings(["10"]))
    with pytest.raises(CapExceeded):
        pg_subspace(BinarySpace.full(21))


def test_pg_subspace_of_petersen_cover_span():
    g = petersen()
    cover = three_cycle_cover(from_graph(g))
    space = BinarySpace(g.m, tuple(g.to_point(c) for c in cover))
    sub = pg_subspace(space)
    check_pg_subspace(space, sub)
    assert sub.rank == 3


@pytest.mark.parametrize("seed", range(40))
def test_pg_subspace_random(seed):
    rng = random.Random(seed)
    w = rng.randint(1, 9)
    while True:
        space = BinarySpace(w, tuple(rng.randrange(1, 1 << w) for _ in range(rng.randint(1, 4))))
        acc = 0
        for b in space.basis:
            acc |= b
        if acc == (1 << w) - 1:
            break
    check_pg_subspace(space, pg_subspace(space))


def test_pg_order():
    for ell in (1, 2, 3):
        assert pg_order(projective_geometry(ell).cocycles()) == ell
    assert pg_order(cycle_space(k4())) is None


def test_embeds_pg_examples():
    emb = embeds_pg(SINGLETONS)
    assert emb.ell == 1 and set(emb.members) == set(SINGLETONS.members)
    emb = embeds_pg(q6())
    assert emb.ell == 2 and set(emb.members) == set(q6().members)
    assert len(emb.witness) == 3 and not frozenset.intersection(*emb.witness)
    assert embeds_pg(new_clutter(3, [{1, 2}, {1, 3}, {2, 3}])) is None


def test_embeds_pg_t30():
    t = t30()
    assert embeds_pg(t, ell_max=2) is None
    emb = embeds_pg(t)
    assert emb.ell == 3 and len(emb.members) == 8
    assert len(emb.witness) == 4 and not frozenset.intersection(*emb.witness)
    assert all(m in t for m in emb.members)


def test_embeds_pg_validation():
    with pytest.raises(PreconditionError):
        embeds_pg(q6(), ell_max=4)


@pytest.mark.parametrize("k", range(4))
def test_pg_packing(k):
    pk = pg_packing(k)
    assert pk.value == 2 and pk.denominator == 1 << k and pk.is_feasible()
    assert len(pk.weights) == 1 << (k + 1)
    assert set(pk.weights.values()) == {F(1, 1 << k)}
    assert all(pk.load(e) == 1 for e in pk.clutter.ground)
    with pytest.raises(PreconditionError):
        pg_packing(4)


def check_quarter(c, pk):
    assert pk.value == 2 and pk.is_feasible() and 4 % pk.denominator == 0
    assert all(m in c for m in pk.support())
    sub = extract_small_subfamily(pk)
    assert len(sub) <= 5 and not frozenset.intersection(*sub)


def test_quarter_packing_examples():
    pk = quarter_packing(SINGLETONS)
    check_quarter(SINGLETONS, pk)
    assert pk.denominator == 1
    pk = quarter_packing(q6())
    check_quarter(q6(), pk)
    assert pk.denominator == 2
    with pytest.raises(PreconditionError):
        quarter_packing(new_clutter(1, [{1}]))
    with pytest.raises(PreconditionError):
        quarter_packing(new_clutter(3, [{1, 2}, {1, 3}, {2, 3}]))


def test_quarter_packing_t30():
    with pytest.raises(CapExceeded):
        quarter_packing(t30())
    pk = quarter_packing(t30(), assume_ideal=True)
    check_quarter(t30(), pk)
    assert len(pk.support()) == 8 and pk.denominator == 4
    assert pk.provenance["ideal"] == "assumed"


def test_quarter_packing_on_random_ideal_binary_clutters():
    rng = random.Random(17)
    done = 0
    while done < 40:
        w = rng.randint(1, 5)
        space = BinarySpace(w, tuple(rng.randrange(1 << w) for _ in range(rng.randint(1, 3))))
        c = cuboid(ZeroOneSet.from_space(space))
        if rng.random() < 0.5 and c.n < 13:
            c = duplicate(c, rng.randint(1, c.n))
        if covering_number(c) < 2 or not is_ideal(c):
            continue
        assert is_binary(c)
        pk = quarter_packing(c)
        check_quarter(c, pk)
        assert pk.provenance["ideal"] == "verified"
        done += 1


def test_every_ideal_binary_tangled_fixture_embeds_a_geometry():
    fixtures = [SINGLETONS, q6(), cuboid(ZeroOneSet.from_space(cycle_space(k4())))]
    fixtures += [cuboid(ZeroOneSet.from_space(projective_geometry(ell).cocycles()))
                 for ell in (1, 2)]
    for c in fixtures:
        assert is_binary(c) and is_tangled(c) and is_ideal(c)
        emb = embeds_pg(c)
        assert emb is not None and 1 <= emb.ell <= 3
    # the PG(2,2) cuboid embeds itself but is not ideal
    pg3 = cuboid(ZeroOneSet.from_space(projective_geometry(3).cocycles()))
    assert not is_ideal(pg3) and embeds_pg(pg3).ell == 3


def test_oracle_agreement_on_embedding_witness():
    emb = embeds_pg(t30())
    members = list(emb.members)
    assert not oracles.is_k_wise_intersecting(members, 4)
    assert oracles.is_k_wise_intersecting(members, 3)
