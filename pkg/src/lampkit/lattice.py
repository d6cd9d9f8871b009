"""Finite lattices given by their covering relation.

Elements are the integers ``0..n-1``. Orders are stored as Python integer
bitsets: bit ``y`` of ``up[x]`` is set iff ``x <= y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class LatticeError(ValueError):
    pass


class NotALattice(LatticeError):
    pass


class NoBounds(LatticeError):
    pass


class CycleDetected(LatticeError):
    pass


class NotRectangular(LatticeError):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _transitive_closure(n: int, succ: Sequence[Iterable[int]]) -> list[int]:
    """Reflexive-transitive closure as bitsets; raises on cycles."""
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    order = [x for x in range(n) if indeg[x] == 0]
    for x in order:
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) != n:
        raise CycleDetected("the relation contains a directed cycle")
    up = [0] * n
    for x in reversed(order):
        mask = 1 << x
        for y in succ[x]:
            mask |= up[y]
        up[x] = mask
    return up


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """An immutable finite lattice.

    ``covers`` is the strict covering relation as ``(lower, upper)`` pairs.
    ``left_corner`` optionally fixes the diagram orientation of a slim
    rectangular lattice (which doubly irreducible element is drawn left).
    """

    n: int
    covers: frozenset
    labels: tuple = ()
    left_corner: int | None = None
    up: list = field(repr=False, default_factory=list)
    down: list = field(repr=False, default_factory=list)
    meet_table: list = field(repr=False, default_factory=list)
    join_table: list = field(repr=False, default_factory=list)
    upper_covers: tuple = field(repr=False, default=())
    lower_covers: tuple = field(repr=False, default=())
    bottom: int = 0
    top: int = 0

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet_all(self, xs: Iterable[int]) -> int:
        out = self.top
        for x in xs:
            out = self.meet_table[out][x]
        return out

    def join_all(self, xs: Iterable[int]) -> int:
        out = self.bottom
        for x in xs:
            out = self.join_table[out][x]
        return out

    def is_cover(self, x: int, y: int) -> bool:
        return (x, y) in self.covers

    def ideal(self, x: int) -> list[int]:
        return _bits(self.down[x])

    def filter(self, x: int) -> list[int]:
        return _bits(self.up[x])

    def interval(self, x: int, y: int) -> list[int]:
        return _bits(self.up[x] & self.down[y])

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.covers)

    def name(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, edges={len(self.covers)})"


def build_lattice(
    covers: Iterable[tuple[int, int]],
    n: int | None = None,
    labels: Sequence[str] = (),
    left_corner: int | None = None,
) -> FiniteLattice:
    """Validate ``covers`` as the order generators of a lattice on 0..n-1.

    Transitively implied pairs are dropped, so any generating relation of the
    order is accepted.
    """
    pairs = {(int(a), int(b)) for a, b in covers}
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=0)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair {(a, b)} references an element outside 0..{n - 1}")
        if a == b:
            raise CycleDetected(f"reflexive pair {(a, b)}")
    succ = [[] for _ in range(n)]
    for a, b in pairs:
        succ[a].append(b)
    up = _transitive_closure(n, succ)
    down = [0] * n
    for x in range(n):
        for y in _bits(up[x]):
            down[y] |= 1 << x

    full = (1 << n) - 1
    bottoms = [x for x in range(n) if up[x] == full]
    tops = [x for x in range(n) if down[x] == full]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NoBounds("the order has no unique least or greatest element")

    # strict covers: x < y with nothing strictly between
    cover_set = set()
    for a in range(n):
        above = up[a] & ~(1 << a)
        for b in _bits(above):
            between = above & down[b] & ~(1 << b)
            if not between:
                cover_set.add((a, b))

    by_down = {down[x]: x for x in range(n)}
    by_up = {up[x]: x for x in range(n)}
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        meet[x][x] = join[x][x] = x
        for y in range(x + 1, n):
            lower = down[x] & down[y]
            # the meet is the lower bound whose down-set is all lower bounds
            m = by_down.get(lower)
            j = by_up.get(up[x] & up[y])
            if m is None or j is None:
                raise NotALattice(
                    f"elements {x} and {y} lack a {'meet' if m is None else 'join'}"
                )
            meet[x][y] = meet[y][x] = m
            join[x][y] = join[y][x] = j

    uc = [[] for _ in range(n)]
    lc = [[] for _ in range(n)]
    for a, b in sorted(cover_set):
        uc[a].append(b)
        lc[b].append(a)
    return FiniteLattice(
        n=n,
        covers=frozenset(cover_set),
        labels=tuple(labels),
        left_corner=left_corner,
        up=up,
        down=down,
        meet_table=meet,
        join_table=join,
        upper_covers=tuple(tuple(c) for c in uc),
        lower_covers=tuple(tuple(c) for c in lc),
        bottom=bottoms[0],
        top=tops[0],
    )


def chain(k: int) -> FiniteLattice:
    """The k-element chain 0 < 1 < ... < k-1."""
    return build_lattice([(i, i + 1) for i in range(k - 1)], n=k)


# ---------------------------------------------------------------- irreducibles


@dataclass(frozen=True)
class IrreducibleSets:
    jir: frozenset
    mir: frozenset

    @property
    def doubly(self) -> frozenset:
        return self.jir & self.mir


def irreducibles(L: FiniteLattice) -> IrreducibleSets:
    jir = frozenset(x for x in range(L.n) if len(L.lower_covers[x]) == 1)
    mir = frozenset(x for x in range(L.n) if len(L.upper_covers[x]) == 1)
    return IrreducibleSets(jir, mir)


# ---------------------------------------------------------------- validation


def is_semimodular(L: FiniteLattice) -> bool:
    """Upper semimodularity in cover form: a∧b ≺ a implies b ≺ a∨b."""
    for a in range(L.n):
        for b in range(L.n):
            if L.is_cover(L.meet(a, b), a) and not L.is_cover(b, L.join(a, b)):
                return False
    return True


def width_at_most_two(L: FiniteLattice, elements: Iterable[int]) -> bool:
    xs = list(elements)
    for x, y, z in combinations(xs, 3):
        if not (L.leq(x, y) or L.leq(y, x)) and not (L.leq(x, z) or L.leq(z, x)) \
                and not (L.leq(y, z) or L.leq(z, y)):
            return False
    return True


def is_distributive(L: FiniteLattice, elements: Iterable[int] | None = None) -> bool:
    """Brute-force distributivity of L, or of the sublattice on ``elements``."""
    xs = list(range(L.n)) if elements is None else list(elements)
    meet, join = L.meet_table, L.join_table
    for x in xs:
        mx = meet[x]
        for y in xs:
            for z in xs:
                if mx[join[y][z]] != join[mx[y]][mx[z]]:
                    return False
    return True


def at_most_two_covers(L: FiniteLattice) -> bool:
    return all(
        1 <= len(L.upper_covers[x]) <= 2 for x in range(L.n) if x != L.top
    )


def corners(L: FiniteLattice) -> tuple[int, int]:
    """The two doubly irreducible elements of a slim rectangular lattice.

    Ordered (left, right) using ``L.left_corner`` when it is set, otherwise by id.
    """
    doubly = sorted(irreducibles(L).doubly)
    if len(doubly) != 2 or L.n < 4:
        raise NotRectangular(f"expected two doubly irreducible elements, found {len(doubly)}")
    a, b = doubly
    if L.join(a, b) != L.top or L.meet(a, b) != L.bottom:
        raise NotRectangular("the doubly irreducible elements are not complementary")
    if L.left_corner is not None:
        if L.left_corner not in doubly:
            raise NotRectangular("left_corner is not doubly irreducible")
        return (a, b) if L.left_corner == a else (b, a)
    return a, b


def is_rectangular(L: FiniteLattice) -> bool:
    try:
        corners(L)
    except NotRectangular:
        return False
    return True


def principal_chain(L: FiniteLattice, x: int, downward: bool = True) -> list[int]:
    """``↓x`` (or ``↑x``) sorted bottom-up; raises if it is not a chain."""
    xs = L.ideal(x) if downward else L.filter(x)
    xs.sort(key=lambda y: bin(L.down[y]).count("1"))
    for a, b in zip(xs, xs[1:]):
        if not L.leq(a, b):
            raise NotRectangular(f"{'ideal' if downward else 'filter'} of {x} is not a chain")
    return xs


def boundary_chains(L: FiniteLattice) -> tuple[list[int], list[int], list[int], list[int]]:
    """(↓c_l, ↓c_r, ↑c_l, ↑c_r), each bottom-up."""
    cl, cr = corners(L)
    lower_left = principal_chain(L, cl)
    lower_right = principal_chain(L, cr)
    upper_left = principal_chain(L, cl, downward=False)
    upper_right = principal_chain(L, cr, downward=False)
    jir = irreducibles(L).jir
    if set(lower_left) | set(lower_right) != jir | {L.bottom}:
        raise NotRectangular("lower boundary differs from Jir L ∪ {0}")
    return lower_left, lower_right, upper_left, upper_right
