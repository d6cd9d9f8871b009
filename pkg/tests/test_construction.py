import pytest
from hypothesis import given, settings, strategies as st

from lampkit.construction import (
    BadCellAddress, CellNotDistributive, Recipe, Step, RankNonPositive, SingletonChain, build,
    cell_at, distributive_cells, enumerate_recipes, four_cells, fork_growth, grid, multifork,
    random_recipe, replay, s_n,
)
from lampkit.geometry import layout
from lampkit.lamps import lamps
from lampkit.lattice import is_distributive
from lampkit.verify import validate_slim_rectangular

from conftest import lattice


def test_grid_sizes():
    L = grid(2, 2)
    assert (L.n, len(L.covers)) == (4, 4)
    G = grid(3, 3)
    assert G.n == 9 and len(four_cells(G)) == 4
    assert len(distributive_cells(G)) == 4


@pytest.mark.parametrize("a,b", [(2, 3), (3, 4), (4, 4)])
def test_grid_cells_all_distributive(a, b):
    assert len(distributive_cells(grid(a, b))) == (a - 1) * (b - 1)


def test_singleton_chain():
    with pytest.raises(SingletonChain):
        grid(1, 3)


@pytest.mark.parametrize("n", range(1, 6))
def test_s_n_size(n):
    L = s_n(n)
    assert L.n == n * (n + 1) // 2 + 2 * n + 4
    assert validate_slim_rectangular(L).ok


def test_s1_shape():
    L = s_n(1)
    lay = layout(L)
    m = 4
    assert L.is_cover(m, L.top)
    assert lay.indices(m) == (1, 1)
    # the two lower-boundary edges of the grid were each subdivided once
    assert lay.width_left == lay.width_right == 2


def test_distributive_cells_oracle_on_s1():
    L = s_n(1)
    lay = layout(L)
    cells = distributive_cells(L, lay)
    for c in four_cells(L, lay):
        ideal = L.ideal(c.top)
        assert (c in cells) == is_distributive(L, ideal)
        # only ideals containing the precipitous edge [m, 1] fail
        assert (c in cells) == (c.top != L.top)


def test_non_distributive_cell_rejected():
    L = s_n(1)
    lay = layout(L)
    bad = next(c for c in four_cells(L, lay) if c not in distributive_cells(L, lay))
    with pytest.raises(CellNotDistributive):
        multifork(L, lay, bad, 1)


def test_rank_and_address_errors():
    with pytest.raises(RankNonPositive):
        build(Recipe(2, 2).then(0, 0, 0))
    L = grid(2, 2)
    with pytest.raises(BadCellAddress):
        cell_at(L, layout(L), 5, 5)


def test_replay_is_monotone_and_sublattice():
    recipe = Recipe(2, 3).then(0, 0, 1).then(0, 0, 2).then(1, 0, 1)
    tower = replay(recipe)
    assert [L.n for L in tower] == sorted({L.n for L in tower})
    for before, after, step in zip(tower, tower[1:], recipe.steps):
        lay = layout(before)
        assert after.n == before.n + fork_growth(step.l_index, step.r_index, step.rank)
        assert len(lamps(after)) == len(lamps(before)) + 1


def test_two_forks_build():
    L = lattice("grid 2 2; fork 0 0 1; fork 0 0 1")
    assert L.n in (10, 11)
    assert validate_slim_rectangular(L).ok


def test_grid_recipe_without_steps():
    assert sorted(build(Recipe(3, 3)).covers) == sorted(grid(3, 3).covers)


def test_enumerate_small():
    recipes = list(enumerate_recipes(12, 2, 1))
    grids = {(r.grid_a, r.grid_b) for r in recipes if not r.steps}
    assert {(2, 2), (2, 3), (3, 3), (3, 4)} <= grids
    assert any(r.steps for r in recipes)
    for r in recipes:
        assert validate_slim_rectangular(build(r)).ok


def test_enumerate_has_s1_once():
    with_internal = [r for r in enumerate_recipes(7, 1, 1)
                     if build(r).n == 7 and any(I.internal for I in lamps(build(r)))]
    assert [(r.grid_a, r.grid_b, r.steps) for r in with_internal] == [(2, 2, (Step(0, 0, 1),))]


def test_enumeration_is_deterministic():
    assert list(enumerate_recipes(16, 2, 2)) == list(enumerate_recipes(16, 2, 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_recipe_is_seeded(seed):
    r = random_recipe(seed, 30)
    assert r == random_recipe(seed, 30)
    assert build(r).n <= 30


def test_random_recipe_seed_7():
    assert random_recipe(7) == random_recipe(7)
