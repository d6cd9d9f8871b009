import random

import pytest

from lampkit.congruence import (
    ConTooLarge, Congruence, EdgeCongruences, check_main_lemma, con_is_distributive, con_lattice,
    generated, identity, is_congruence, jir_con, join, principal_congruence,
)
from lampkit.construction import grid, s_n
from lampkit.lamps import LampSystem
from lampkit.lattice import chain
from lampkit.poset import Poset, isomorphism

from conftest import lattice

SMALL = ["grid 2 2", "grid 2 3", "grid 3 3", "grid 2 2; fork 0 0 1", "grid 2 2; fork 0 0 2"]


def set_partitions(n):
    """Restricted growth strings turned into least-element representatives."""

    def grow(prefix, blocks):
        if len(prefix) == n:
            first = {}
            for x, b in enumerate(prefix):
                first.setdefault(b, x)
            yield Congruence(tuple(first[b] for b in prefix))
            return
        for b in range(blocks + 1):
            yield from grow(prefix + [b], max(blocks, b + 1))

    yield from grow([], 0)


@pytest.mark.parametrize("text", SMALL)
def test_con_lattice_against_all_partitions(text):
    L = lattice(text)
    brute = {theta for theta in set_partitions(L.n) if is_congruence(L, theta)}
    assert set(con_lattice(L)) == brute


@pytest.mark.parametrize("text", SMALL)
def test_generated_is_least(text):
    L = lattice(text)
    cons = con_lattice(L)
    for a, b in L.edges():
        theta = principal_congruence(L, a, b)
        assert is_congruence(L, theta) and theta.same(a, b)
        assert theta == min((c for c in cons if c.same(a, b)), key=lambda c: -len(c.blocks()))
        assert all(theta <= c for c in cons if c.same(a, b))


def test_trivial_principal_congruences():
    L = s_n(2)
    assert principal_congruence(L, 3, 3) == identity(L)
    assert len(principal_congruence(L, L.bottom, L.top).blocks()) == 1


@pytest.mark.parametrize("k", range(2, 7))
def test_chain_congruences_are_boolean(k):
    assert len(con_lattice(chain(k))) == 2 ** (k - 1)


@pytest.mark.parametrize("a,b", [(2, 2), (2, 4), (3, 3)])
def test_grid_congruences_are_boolean(a, b):
    L = grid(a, b)
    members, J = jir_con(L)
    assert len(members) == a + b - 2 and not J.covers
    assert len(con_lattice(L)) == 2 ** (a + b - 2)


def test_generated_ignores_pair_order():
    L = lattice("grid 3 3; fork 0 1 1")
    rng = random.Random(7)
    edges = L.edges()
    for _ in range(20):
        pairs = rng.sample(edges, 3)
        want = generated(L, pairs)
        shuffled = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in pairs]
        rng.shuffle(shuffled)
        assert generated(L, shuffled) == want
        assert join(join(principal_congruence(L, *pairs[0]), principal_congruence(L, *pairs[1])),
                    principal_congruence(L, *pairs[2])) == want


def test_con_limit():
    with pytest.raises(ConTooLarge):
        con_lattice(grid(4, 4), limit=10)


def test_con_is_distributive():
    assert con_is_distributive(con_lattice(lattice("grid 2 3; fork 0 1 1")))


@pytest.mark.parametrize("n", range(1, 4))
def test_main_lemma_on_s_n(n):
    L = s_n(n)
    report = check_main_lemma(L)
    assert report.ok, report.diff()
    members, J = jir_con(L)
    V = Poset.from_covers(3, [(0, 1), (0, 2)])
    assert isomorphism(J, V) is not None


def test_main_lemma_six_steps():
    L = lattice("grid 2 2; " + "; ".join(["fork 0 0 1"] * 6))
    report = check_main_lemma(L)
    assert report.ok and report.lamps == 8 == report.jir


def test_main_lemma_negative_control():
    L = s_n(2)
    S = LampSystem(L)
    wrong = Poset.from_covers(len(S), [])
    report = check_main_lemma(L, S, lamp_order=wrong)
    assert not report.ok and report.problems


def test_edge_congruence_lookup_falls_back():
    L = s_n(1)
    E = EdgeCongruences.of(L)
    assert E.con(L.bottom, L.top) == principal_congruence(L, L.bottom, L.top)
