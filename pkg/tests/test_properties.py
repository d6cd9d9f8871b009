import random

import pytest
from hypothesis import given, settings, strategies as st

from lampkit.construction import s_n
from lampkit.lattice import chain, is_distributive
from lampkit.poset import Poset
from lampkit.properties import (
    BoundTooLarge, PROPERTIES, birkhoff_round_trip, check_all, downset_lattice, forbidden_marriage,
    jir_poset, min_failing, naturally_labeled_posets, p2, two_pendant_four_crown,
    two_pendant_four_crown_poset,
)
from lampkit.congruence import jir_con


def diamond():
    return Poset.from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def d8():
    # two maximal elements sharing both lower covers, which share a bottom:
    # the least failure of forbidden marriage that keeps the other five
    return Poset.from_covers(5, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)])


def test_r_has_56_downsets_and_fails_its_property():
    R = two_pendant_four_crown_poset()
    assert R.n == 10 and len(R.covers) == 12
    assert R.count_downsets() == 56
    assert downset_lattice(R).n == 56
    assert not two_pendant_four_crown(R)


def test_diamond_fails_forbidden_marriage():
    assert not forbidden_marriage(diamond())
    assert diamond().count_downsets() == 6


def test_chain_and_antichain_downsets():
    assert Poset.from_covers(5, [(k, k + 1) for k in range(4)]).count_downsets() == 6
    assert Poset.from_covers(4, []).count_downsets() == 16


def test_jir_of_s_n_satisfies_everything():
    for n in range(1, 4):
        _, J = jir_con(s_n(n))
        assert all(check_all(J).values())


@pytest.mark.parametrize("n,count", [(3, 7), (4, 40), (5, 357), (6, 4824)])
def test_naturally_labeled_counts(n, count):
    # labeled posets whose labelling is a linear extension
    assert sum(1 for _ in naturally_labeled_posets(n)) == count


def random_poset(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.35]
    return Poset.from_relation(n, pairs)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_birkhoff_round_trip(seed):
    P = random_poset(seed)
    D = downset_lattice(P)
    assert is_distributive(D)
    assert birkhoff_round_trip(P)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_properties_ignore_labelling(seed, rng):
    P = random_poset(seed)
    perm = list(range(P.n))
    rng.shuffle(perm)
    assert check_all(P) == check_all(P.relabel(perm))


def test_jir_poset_of_chain():
    J = jir_poset(chain(4))
    assert J.n == 3 and J.count_downsets() == 4


def test_min_failing_small():
    assert min_failing("p2", 3).lattice_size == 2
    assert min_failing("forbidden_marriage", 4).lattice_size == 6
    assert min_failing("two_pendant_four_crown", 5) is None
    with pytest.raises(BoundTooLarge):
        min_failing("p2", 7)


def test_d8_is_the_restricted_forbidden_marriage_minimum():
    P = d8()
    verdicts = check_all(P)
    assert not verdicts["forbidden_marriage"]
    assert all(v for k, v in verdicts.items() if k != "forbidden_marriage")
    assert P.count_downsets() == 8

    def others_hold(Q):
        v = check_all(Q)
        return v["forbidden_marriage"] or not all(x for k, x in v.items() if k != "forbidden_marriage")

    assert min_failing(others_hold, 5).lattice_size == 8


def test_p2_and_empty_poset():
    assert not p2(Poset.from_covers(1, []))
    with pytest.raises(ValueError):
        check_all(Poset.from_covers(0, []))
    assert set(PROPERTIES) == {"p2", "bipartite_maximal", "dioecious", "two_cover",
                               "forbidden_marriage", "two_pendant_four_crown"}
