import random
from fractions import Fraction

import pytest

from corevote.games import Status, ntu_core_membership, tu_blocks, tu_core_membership, tu_core_nonempty
from corevote.model import ProfileError
from corevote.reductions import (
    BicliqueInstance,
    Rx3cInstance,
    SetCoverInstance,
    biclique_layout,
    gen_biclique_av_membership,
    gen_rx3c_core_nonempty,
    gen_rx3c_pav_membership,
    gen_setcover_cc_membership,
    has_biclique,
    has_exact_cover,
    has_set_cover,
    parse_biclique_json,
    parse_rx3c_json,
    parse_setcover_json,
    random_biclique,
    random_rx3c,
    random_setcover,
    source_to_json,
)
from corevote.scoring import grand_value, seat_cap

F = Fraction

# 0..5 split as {0,1,2},{3,4,5} plus four triples using each element twice more
WITH_COVER = Rx3cInstance(6, ({0, 1, 2}, {3, 4, 5}, {0, 1, 3}, {2, 4, 5}, {0, 2, 4}, {1, 3, 5}))
# no two triples are disjoint
WITHOUT_COVER = Rx3cInstance(6, ({0, 1, 2}, {0, 1, 3}, {0, 4, 5}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}))


def test_fixture_sources():
    assert has_exact_cover(WITH_COVER)
    assert not has_exact_cover(WITHOUT_COVER)


def test_rx3c_validation():
    with pytest.raises(ProfileError):
        Rx3cInstance(6, ({0, 1, 2},) * 6)
    with pytest.raises(ProfileError):
        Rx3cInstance(4, ())
    with pytest.raises(ProfileError):
        Rx3cInstance(3, ({0, 1}, {0, 1, 2}, {0, 1, 2}))


def test_rx3c_construction():
    inst = gen_rx3c_core_nonempty(WITH_COVER)
    assert (inst.m, inst.n, inst.k) == (6, 6, 2)
    assert inst.approvals[0] == frozenset({0, 2, 4})
    assert all(len(b) == 3 for b in inst.approvals)


def test_rx3c_core_nonempty_verdicts():
    yes = gen_rx3c_core_nonempty(WITH_COVER)
    assert tu_core_nonempty(yes, "cc").nonempty
    assert tu_core_membership(yes, "cc", [1] * 6).is_member
    assert tu_core_membership(yes, "pav", [1] * 6).is_member
    no = gen_rx3c_core_nonempty(WITHOUT_COVER)
    assert not tu_core_nonempty(no, "cc").nonempty
    assert not tu_core_nonempty(no, "pav").nonempty


def test_rx3c_pav_membership():
    inst, alpha = gen_rx3c_pav_membership(WITH_COVER)
    assert alpha == (F(1),) * 6
    assert tu_core_membership(inst, "pav", alpha).is_member
    inst, alpha = gen_rx3c_pav_membership(WITHOUT_COVER)
    assert tu_core_membership(inst, "pav", alpha).status is Status.INFEASIBLE
    single = Rx3cInstance(3, ({0, 1, 2},) * 3)
    inst, alpha = gen_rx3c_pav_membership(single)
    assert tu_core_membership(inst, "pav", alpha).is_member


@pytest.mark.parametrize("nh, h", [(2, 1), (3, 1), (4, 2), (5, 2)])
def test_biclique_counts(nh, h):
    src = BicliqueInstance(nh, frozenset(), h)
    inst, alpha = gen_biclique_av_membership(src)
    lay = biclique_layout(src)
    assert inst.n == inst.k * nh * nh
    assert inst.k == nh * nh + 1 + h and inst.m == nh + inst.k
    assert len(lay.full_voters) == lay.big_l * nh * nh - (nh - h)
    assert len(lay.empty_voters) == h * nh * nh - h
    assert sum(alpha) == grand_value(inst, "av")
    coalition = tuple(range(h)) + tuple(lay.empty_voters)
    assert seat_cap(inst, coalition) == h
    assert alpha[0] == h - F(1, nh)
    assert alpha[nh] == lay.big_l + h - lay.epsilon and lay.epsilon < 1


def test_biclique_validation():
    with pytest.raises(ProfileError):
        BicliqueInstance(3, frozenset(), 2)
    with pytest.raises(ProfileError):
        BicliqueInstance(2, frozenset({frozenset({0})}), 1)


def test_biclique_membership_small():
    edge = BicliqueInstance(2, frozenset({frozenset({0, 1})}), 1)
    inst, alpha = gen_biclique_av_membership(edge)
    verdict = tu_core_membership(inst, "av", alpha, override_guard=True)
    assert verdict.status is Status.BLOCKED
    # the coalition built from the biclique side plus the empty voters blocks
    lay = biclique_layout(edge)
    assert tu_blocks(inst, "av", alpha, (0,) + tuple(lay.empty_voters), override_guard=True) is not None
    lone = BicliqueInstance(2, frozenset(), 1)
    inst, alpha = gen_biclique_av_membership(lone)
    assert tu_core_membership(inst, "av", alpha, override_guard=True).is_member


def test_biclique_four_cycle():
    square = BicliqueInstance(4, frozenset(frozenset(e) for e in ((0, 1), (1, 2), (2, 3), (3, 0))), 2)
    path = BicliqueInstance(4, frozenset(frozenset(e) for e in ((0, 1), (1, 2), (2, 3))), 2)
    assert has_biclique(square) and not has_biclique(path)
    inst, alpha = gen_biclique_av_membership(square)
    assert tu_core_membership(inst, "av", alpha, override_guard=True).status is Status.BLOCKED


def test_setcover():
    yes = SetCoverInstance(3, ({0, 1}, {2}, {1}), 2)
    inst, alpha = gen_setcover_cc_membership(yes)
    assert (inst.m, inst.n, inst.k) == (3, 3, 2)
    assert ntu_core_membership(inst, "cc", alpha).is_member
    no = SetCoverInstance(3, ({0}, {1}, {2}), 2)
    assert has_set_cover(yes) and not has_set_cover(no)
    inst, alpha = gen_setcover_cc_membership(no)
    assert ntu_core_membership(inst, "cc", alpha).status is Status.INFEASIBLE
    tiny = SetCoverInstance(1, ({0},), 1)
    inst, alpha = gen_setcover_cc_membership(tiny)
    assert ntu_core_membership(inst, "cc", alpha).is_member
    with pytest.raises(ProfileError):
        SetCoverInstance(2, ({0}, set()), 1)
    with pytest.raises(ProfileError):
        SetCoverInstance(2, ({0},), 2)


def test_json_round_trip():
    rng = random.Random(3)
    src = random_rx3c(2, rng)
    assert parse_rx3c_json(source_to_json(src)) == src
    bic = random_biclique(4, 2, rng)
    assert parse_biclique_json(source_to_json(bic)) == bic
    sc = random_setcover(4, 3, 2, rng)
    assert parse_setcover_json(source_to_json(sc)) == sc
    with pytest.raises(ProfileError):
        parse_rx3c_json('{"triples": []}')


def test_random_rx3c_planting():
    rng = random.Random(5)
    for _ in range(10):
        assert has_exact_cover(random_rx3c(2, rng, planted_cover=True))
        assert not has_exact_cover(random_rx3c(2, rng, planted_cover=False))
