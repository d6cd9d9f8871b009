"""Slim rectangular lattices built from grids by multifork extensions.

Cells are addressed by the grid-embedding indices ``(l, r)`` of their bottom
element in the lattice the step is applied to, so a recipe only makes sense
when replayed in order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .geometry import Layout, Slope, classify_edge, layout
from .lattice import FiniteLattice, LatticeError, build_lattice, is_distributive


class ConstructionError(LatticeError):
    pass


class SingletonChain(ConstructionError):
    pass


class CellNotDistributive(ConstructionError):
    pass


class RankNonPositive(ConstructionError):
    pass


class BadCellAddress(ConstructionError):
    pass


class InternalError(ConstructionError):
    pass


@dataclass(frozen=True)
class FourCell:
    bottom: int
    left: int
    right: int
    top: int


@dataclass(frozen=True)
class Step:
    l_index: int
    r_index: int
    rank: int


@dataclass(frozen=True)
class Recipe:
    grid_a: int
    grid_b: int
    steps: tuple = ()

    def then(self, l_index: int, r_index: int, rank: int) -> "Recipe":
        return Recipe(self.grid_a, self.grid_b, self.steps + (Step(l_index, r_index, rank),))

    def __str__(self) -> str:
        from .io import format_recipe

        return format_recipe(self)


def canonical_lattice(covers, left_key) -> FiniteLattice:
    """Relabel a slim rectangular lattice given over arbitrary keys.

    Ids are assigned by sorting diagram points by ``(v, u)``.
    """
    keys = sorted({k for pair in covers for k in pair}, key=repr)
    tmp_id = {k: i for i, k in enumerate(keys)}
    tmp = build_lattice(
        [(tmp_id[a], tmp_id[b]) for a, b in covers], n=len(keys), left_corner=tmp_id[left_key]
    )
    lay = layout(tmp, check=False)
    order = sorted(range(tmp.n), key=lambda x: (lay.point(x)[1], lay.point(x)[0]))
    new_id = {old: i for i, old in enumerate(order)}
    return build_lattice(
        [(new_id[a], new_id[b]) for a, b in tmp.covers],
        n=tmp.n,
        left_corner=new_id[tmp_id[left_key]],
    )


def grid(a: int, b: int) -> FiniteLattice:
    """``C_a × C_b``; the a-chain factor is the lower-left boundary."""
    if a < 2 or b < 2:
        raise SingletonChain(f"grid({a}, {b}) needs two nonsingleton chains")
    covers = []
    for i in range(a):
        for j in range(b):
            if i + 1 < a:
                covers.append(((i, j), (i + 1, j)))
            if j + 1 < b:
                covers.append(((i, j), (i, j + 1)))
    return canonical_lattice(covers, left_key=(a - 1, 0))


def four_cells(L: FiniteLattice, lay: Layout | None = None) -> list[FourCell]:
    """All 4-cells, one per element with two upper covers."""
    lay = lay or layout(L)
    cells = []
    for x in range(L.n):
        ups = L.upper_covers[x]
        if len(ups) != 2:
            continue
        y1, y2 = sorted(ups, key=lambda y: -lay.l_index[y])
        top = L.join(y1, y2)
        if not (L.is_cover(y1, top) and L.is_cover(y2, top)) or len(L.interval(x, top)) != 4:
            raise InternalError(f"element {x} is not the bottom of a 4-cell")
        cells.append(FourCell(x, y1, y2, top))
    return cells


def ideal_is_normal(L: FiniteLattice, lay: Layout, q: int) -> bool:
    down = L.down[q]
    return all(
        classify_edge(lay, p, t).is_normal
        for p, t in L.covers
        if down >> t & 1
    )


def distributive_cells(
    L: FiniteLattice, lay: Layout | None = None, cross_check: bool = True
) -> list[FourCell]:
    """4-cells whose top has a distributive principal ideal.

    Computed from slopes; with ``cross_check`` each verdict is compared with
    a brute-force distributivity test of the ideal.
    """
    lay = lay or layout(L)
    out = []
    for cell in four_cells(L, lay):
        by_slope = ideal_is_normal(L, lay, cell.top)
        if cross_check and by_slope != is_distributive(L, L.ideal(cell.top)):
            raise InternalError(f"slope and order tests disagree on cell {cell}")
        if by_slope:
            out.append(cell)
    return out


def cell_at(L: FiniteLattice, lay: Layout, l_index: int, r_index: int) -> FourCell:
    x = lay.element_at(l_index, r_index)
    if x is None:
        raise BadCellAddress(f"no element at ({l_index}, {r_index})")
    for cell in four_cells(L, lay):
        if cell.bottom == x:
            return cell
    raise BadCellAddress(f"element at ({l_index}, {r_index}) is not the bottom of a 4-cell")


def multifork(
    L: FiniteLattice, lay: Layout | None, cell: FourCell, n: int, check: bool = True
) -> FiniteLattice:
    """Multifork extension of rank ``n`` at a distributive 4-cell.

    The cell's interior receives the triangle ``t[i, j]`` (``t[i, i]`` are the
    new tube feet, ``t[1, n]`` the new lamp's foot), and the two lower edges
    are subdivided by ``n`` new elements along their trajectories down to the
    lower boundary.
    """
    lay = lay or layout(L)
    if n < 1:
        raise RankNonPositive(f"rank must be positive, got {n}")
    if not ideal_is_normal(L, lay, cell.top):
        raise CellNotDistributive(f"cell with bottom {cell.bottom} is not distributive")
    i, j = lay.indices(cell.bottom)
    if lay.indices(cell.left) != (i + 1, j) or lay.indices(cell.right) != (i, j + 1):
        raise InternalError("distributive cell is not a unit square of the grid embedding")

    def at(l, r):
        x = lay.element_at(l, r)
        if x is None:
            raise InternalError(f"propagation left the lattice at ({l}, {r})")
        return x

    covers = {(("o", a), ("o", b)) for a, b in L.covers}
    q = ("o", cell.top)
    t = {(a, b): ("t", a, b) for a in range(1, n + 1) for b in range(a, n + 1)}
    for a in range(1, n + 1):
        covers.add((t[a, a], q))
        for b in range(a + 1, n + 1):
            covers.add((t[a, b], t[a, b - 1]))
            covers.add((t[a, b], t[a + 1, b]))

    # down-left: edges [(i, j-s), (i+1, j-s)] for s = 0..j
    for s in range(j + 1):
        bot, top = at(i, j - s), at(i + 1, j - s)
        if not L.is_cover(bot, top) or classify_edge(lay, bot, top) is not Slope.NORMAL_LEFT:
            raise InternalError("left trajectory is not a chain of unit edges")
        covers.discard((("o", bot), ("o", top)))
        chain = [("o", bot)] + [("u", s, k) for k in range(n, 0, -1)] + [("o", top)]
        covers.update(zip(chain, chain[1:]))
        for k in range(1, n + 1):
            above = t[1, k] if s == 0 else ("u", s - 1, k)
            covers.add((("u", s, k), above))
    # down-right: edges [(i-s, j), (i-s, j+1)] for s = 0..i
    for s in range(i + 1):
        bot, top = at(i - s, j), at(i - s, j + 1)
        if not L.is_cover(bot, top) or classify_edge(lay, bot, top) is not Slope.NORMAL_RIGHT:
            raise InternalError("right trajectory is not a chain of unit edges")
        covers.discard((("o", bot), ("o", top)))
        chain = [("o", bot)] + [("v", s, k) for k in range(n, 0, -1)] + [("o", top)]
        covers.update(zip(chain, chain[1:]))
        for k in range(1, n + 1):
            above = t[n - k + 1, n] if s == 0 else ("v", s - 1, k)
            covers.add((("v", s, k), above))

    new = canonical_lattice(covers, left_key=("o", lay.left_corner))
    if check:
        from .verify import check_multifork

        problems = check_multifork(L, lay, new, cell, n)
        if problems:
            raise InternalError("; ".join(problems))
    return new


def fork_growth(l_index: int, r_index: int, n: int) -> int:
    """Number of elements a rank-n fork at the cell with bottom (l, r) adds."""
    return n * (n + 1) // 2 + n * (l_index + r_index + 2)


def replay(recipe: Recipe, check: bool = True) -> list[FiniteLattice]:
    """The tower L_0, ..., L_k of a recipe."""
    L = grid(recipe.grid_a, recipe.grid_b)
    tower = [L]
    for step in recipe.steps:
        lay = layout(L)
        cell = cell_at(L, lay, step.l_index, step.r_index)
        L = multifork(L, lay, cell, step.rank, check=check)
        tower.append(L)
    return tower


def build(recipe: Recipe, check: bool = True) -> FiniteLattice:
    return replay(recipe, check=check)[-1]


def s_n(n: int) -> FiniteLattice:
    """The lattice S_n: a rank-n fork of the 2×2 grid."""
    return build(Recipe(2, 2, (Step(0, 0, n),)))


def enumerate_recipes(
    max_size: int, max_rank: int, max_steps: int, mirror: bool = False
) -> Iterator[Recipe]:
    """Recipes in canonical order whose lattices have at most ``max_size`` elements.

    Grids are ``a × b`` with ``a <= b`` unless ``mirror`` is set; forks are
    tried at every distributive cell in address order and every rank.
    """
    if max_size < 1 or max_rank < 1 or max_steps < 0:
        raise ValueError("bounds must be positive")
    for a in range(2, max_size // 2 + 1):
        for b in range(2 if mirror else a, max_size // a + 1):
            yield from _extend(Recipe(a, b), grid(a, b), max_size, max_rank, max_steps)


def _extend(recipe, L, max_size, max_rank, steps_left):
    yield recipe
    if steps_left == 0:
        return
    lay = layout(L)
    for cell in sorted(distributive_cells(L, lay, cross_check=False), key=lambda c: lay.indices(c.bottom)):
        l, r = lay.indices(cell.bottom)
        for n in range(1, max_rank + 1):
            if L.n + fork_growth(l, r, n) > max_size:
                break
            child = multifork(L, lay, cell, n, check=False)
            yield from _extend(recipe.then(l, r, n), child, max_size, max_rank, steps_left - 1)


def random_recipe(seed: int, max_size: int = 40, max_rank: int = 3, max_steps: int = 3) -> Recipe:
    rng = random.Random(seed)
    while True:
        a = rng.randint(2, max(2, min(6, max_size // 2)))
        b = rng.randint(2, max(2, min(6, max_size // a)))
        if a * b <= max_size:
            break
    recipe = Recipe(a, b)
    L = grid(a, b)
    for _ in range(rng.randint(0, max_steps)):
        lay = layout(L)
        options = []
        for cell in distributive_cells(L, lay, cross_check=False):
            l, r = lay.indices(cell.bottom)
            for n in range(1, max_rank + 1):
                if L.n + fork_growth(l, r, n) <= max_size:
                    options.append((l, r, n, cell))
        if not options:
            break
        options.sort(key=lambda o: o[:3])
        l, r, n, cell = rng.choice(options)
        L = multifork(L, lay, cell, n, check=False)
        recipe = recipe.then(l, r, n)
    return recipe
