"""Brute-force congruences of a finite lattice.

A congruence is stored as the tuple ``rep`` where ``rep[x]`` is the least
element of the block of x.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .lattice import FiniteLattice
from .poset import Poset


class ConTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Congruence:
    rep: tuple

    def same(self, x: int, y: int) -> bool:
        return self.rep[x] == self.rep[y]

    def blocks(self) -> list[list[int]]:
        out: dict = {}
        for x, r in enumerate(self.rep):
            out.setdefault(r, []).append(x)
        return list(out.values())

    def __le__(self, other: "Congruence") -> bool:
        o = other.rep
        return all(o[x] == o[r] for x, r in enumerate(self.rep))

    def __lt__(self, other: "Congruence") -> bool:
        return self != other and self <= other


def _canonical(parent: list[int]) -> tuple:
    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    least: dict = {}
    for x in range(len(parent)):
        least.setdefault(find(x), x)
    return tuple(least[find(x)] for x in range(len(parent)))


def identity(L: FiniteLattice) -> Congruence:
    return Congruence(tuple(range(L.n)))


def generated(L: FiniteLattice, pairs) -> Congruence:
    """The least congruence collapsing every pair in ``pairs``.

    Whenever two classes merge, the merging pair is pushed through all
    translations ``- ∧ z`` and ``- ∨ z``.
    """
    parent = list(range(L.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    meet, join = L.meet_table, L.join_table
    todo = deque(pairs)
    while todo:
        x, y = todo.popleft()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        mx, my, jx, jy = meet[x], meet[y], join[x], join[y]
        for z in range(L.n):
            if mx[z] != my[z]:
                todo.append((mx[z], my[z]))
            if jx[z] != jy[z]:
                todo.append((jx[z], jy[z]))
    return Congruence(_canonical(parent))


def principal_congruence(L: FiniteLattice, a: int, b: int) -> Congruence:
    return generated(L, [(a, b)])


def is_congruence(L: FiniteLattice, theta: Congruence) -> bool:
    """Direct compatibility test, used as an oracle."""
    for x in range(L.n):
        for y in range(x + 1, L.n):
            if not theta.same(x, y):
                continue
            for z in range(L.n):
                if not theta.same(L.meet(x, z), L.meet(y, z)) or not theta.same(L.join(x, z), L.join(y, z)):
                    return False
    return True


def join(a: Congruence, b: Congruence) -> Congruence:
    """Join in Con L: merge blocks of a that share a block of b.

    Roots are kept minimal, so every root is the least element of its block.
    """
    parent: dict = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent[x]
        return root

    for x, y in set(zip(a.rep, b.rep)):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    if not parent:
        return a
    return Congruence(tuple(find(r) for r in a.rep))


@dataclass
class EdgeCongruences:
    """Principal congruences of all edges and the poset they form."""

    L: FiniteLattice
    of_edge: dict = field(default_factory=dict)
    distinct: list = field(default_factory=list)

    @classmethod
    def of(cls, L: FiniteLattice) -> "EdgeCongruences":
        of_edge = {e: principal_congruence(L, *e) for e in L.edges()}
        distinct = sorted(set(of_edge.values()), key=lambda c: (-len(c.blocks()), c.rep))
        return cls(L, of_edge, distinct)

    def con(self, a: int, b: int) -> Congruence:
        e = (a, b)
        return self.of_edge[e] if e in self.of_edge else principal_congruence(self.L, a, b)

    def poset(self) -> Poset:
        k = len(self.distinct)
        up = [0] * k
        for i, a in enumerate(self.distinct):
            for j, b in enumerate(self.distinct):
                if a <= b:
                    up[i] |= 1 << j
        return Poset(k, up)


def jir_con(L: FiniteLattice, edges: EdgeCongruences | None = None) -> tuple[list, Poset]:
    """Join-irreducible congruences and their order.

    Every member is checked to differ from the join of the members strictly
    below it.
    """
    edges = edges or EdgeCongruences.of(L)
    members = edges.distinct
    bottom = identity(L)
    for c in members:
        acc = bottom
        for d in members:
            if d < c:
                acc = join(acc, d)
        if acc == c or c == bottom:
            raise AssertionError("an edge congruence is not join-irreducible")
    return members, edges.poset()


def con_lattice(L: FiniteLattice, generators: list | None = None, limit: int | None = None) -> list:
    """All congruences, as joins of principal edge congruences.

    Raises :class:`ConTooLarge` once more than ``limit`` are found.
    """
    if generators is None:
        generators = EdgeCongruences.of(L).distinct
    start = identity(L)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for theta in frontier:
            for g in generators:
                if g <= theta:
                    continue
                phi = join(theta, g)
                if phi not in seen:
                    seen.add(phi)
                    nxt.append(phi)
                    if limit is not None and len(seen) > limit:
                        raise ConTooLarge(f"Con L has more than {limit} elements")
        frontier = nxt
    return sorted(seen, key=lambda c: (-len(c.blocks()), c.rep))


def con_is_distributive(cons: list) -> bool:
    """Distributivity of the congruence lattice given as a list."""
    index = {c: i for i, c in enumerate(cons)}
    k = len(cons)
    leq = [[a <= b for b in cons] for a in cons]

    def meet(i, j):
        lower = [x for x in range(k) if leq[x][i] and leq[x][j]]
        return max(lower, key=lambda x: sum(leq[y][x] for y in range(k)))

    joins = [[index[join(a, b)] for b in cons] for a in cons]
    for x in range(k):
        for y in range(k):
            for z in range(y, k):
                if meet(x, joins[y][z]) != joins[meet(x, y)][meet(x, z)]:
                    return False
    return True


@dataclass
class MainLemmaReport:
    ok: bool
    lamps: int
    jir: int
    problems: list = field(default_factory=list)

    def diff(self) -> str:
        return "\n".join(self.problems)


def check_main_lemma(L: FiniteLattice, system=None, edges: EdgeCongruences | None = None,
                     lamp_order: Poset | None = None) -> MainLemmaReport:
    """φ: lamp ↦ con(foot, peak) against Jir(Con L), plus covers ⊆ ρ_alg.

    ``lamp_order`` replaces the computed lamp poset (for negative controls).
    """
    from .lamps import LampSystem

    system = system or LampSystem(L)
    edges = edges or EdgeCongruences.of(L)
    members, J = jir_con(L, edges)
    P = lamp_order or system.poset
    problems = []
    phi = [edges.con(I.foot, I.peak) for I in system.lamps]
    where = {c: i for i, c in enumerate(members)}
    if len(system.lamps) != len(members):
        problems.append(f"{len(system.lamps)} lamps but {len(members)} join-irreducible congruences")
    images = [where.get(c) for c in phi]
    for i, img in enumerate(images):
        if img is None:
            problems.append(f"con of lamp {i} is not join-irreducible")
    if len(set(images)) != len(images):
        problems.append("φ is not injective")
    if None not in images:
        for i in range(len(phi)):
            for j in range(len(phi)):
                if P.leq(i, j) != J.leq(images[i], images[j]):
                    problems.append(
                        f"lamps {i} <= {j} is {P.leq(i, j)} but con order says {J.leq(images[i], images[j])}"
                    )
    for i, j in sorted(P.covers):
        if (i, j) not in system.rho_alg:
            problems.append(f"lamp cover ({i}, {j}) is not in rho_alg")
    return MainLemmaReport(not problems, len(system.lamps), len(members), problems)
