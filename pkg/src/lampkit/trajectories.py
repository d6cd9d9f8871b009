"""Trajectories: classes of edges linked through opposite sides of 4-cells."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .construction import four_cells
from .geometry import Layout, layout as make_layout
from .lamps import LampSystem
from .lattice import FiniteLattice, LatticeError, irreducibles
from .poset import NotAntisymmetric, Poset


class TrajectoryError(LatticeError):
    pass


class TrajKind(enum.Enum):
    STRAIGHT = "straight"
    HAT = "hat"


@dataclass(frozen=True)
class Trajectory:
    edges: tuple
    top_edge: tuple
    kind: TrajKind

    @property
    def hat(self) -> bool:
        return self.kind is TrajKind.HAT


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def trajectories(L: FiniteLattice, lay: Layout | None = None) -> list[Trajectory]:
    """Trajectories sorted by their top edge."""
    lay = lay or make_layout(L)
    edges = L.edges()
    uf = _UnionFind(edges)
    for c in four_cells(L, lay):
        uf.union((c.bottom, c.left), (c.right, c.top))
        uf.union((c.bottom, c.right), (c.left, c.top))
    blocks: dict = {}
    for e in edges:
        blocks.setdefault(uf.find(e), []).append(e)
    mir = irreducibles(L).mir
    cl, cr = lay.left_corner, lay.right_corner

    def upper_boundary(e):
        return all(L.leq(cl, x) for x in e) or all(L.leq(cr, x) for x in e)

    out = []
    for block in blocks.values():
        tubes = [e for e in block if e[0] in mir]
        if len(tubes) != 1:
            raise TrajectoryError(f"trajectory {block} has {len(tubes)} neon tubes")
        kind = TrajKind.STRAIGHT if any(map(upper_boundary, block)) else TrajKind.HAT
        out.append(Trajectory(tuple(sorted(block)), tubes[0], kind))
    out.sort(key=lambda u: u.top_edge)
    return out


@dataclass
class TrajectoryAnalysis:
    """σ, τ and Θ on the trajectories of one lattice."""

    L: FiniteLattice
    lay: Layout
    trajs: list
    system: LampSystem
    lmp: list = field(default_factory=list)

    @classmethod
    def of(cls, L: FiniteLattice, lay: Layout | None = None, system: LampSystem | None = None):
        lay = lay or make_layout(L)
        system = system or LampSystem(L, lay)
        trajs = trajectories(L, lay)
        lmp = [system.lamp_of_tube(*u.top_edge) for u in trajs]
        return cls(L, lay, trajs, system, lmp)

    def sigma(self, a: int, b: int) -> bool:
        u, v = self.trajs[a], self.trajs[b]
        (pu, qu), (pv, qv) = u.top_edge, v.top_edge
        return u.hat and self.L.leq(qu, qv) and not self.L.leq(pu, pv)

    def tau(self) -> list[int]:
        """Reflexive-transitive closure of σ as bitsets (may contain cycles)."""
        k = len(self.trajs)
        reach = [1 << a for a in range(k)]
        for a in range(k):
            for b in range(k):
                if self.sigma(a, b):
                    reach[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for a in range(k):
                acc = reach[a]
                for b in range(k):
                    if acc >> b & 1:
                        acc |= reach[b]
                if acc != reach[a]:
                    reach[a] = acc
                    changed = True
        return reach

    def theta_blocks(self) -> list[list[int]]:
        reach = self.tau()
        k = len(self.trajs)
        seen = set()
        blocks = []
        for a in range(k):
            if a in seen:
                continue
            block = [b for b in range(k) if reach[a] >> b & 1 and reach[b] >> a & 1]
            seen.update(block)
            blocks.append(block)
        return blocks

    def quotient(self) -> tuple[Poset, list[list[int]]]:
        """The poset τ/Θ on Θ-blocks; raises if it is not antisymmetric."""
        reach = self.tau()
        blocks = self.theta_blocks()
        up = []
        for block in blocks:
            mask = 0
            for j, other in enumerate(blocks):
                if reach[block[0]] >> other[0] & 1:
                    mask |= 1 << j
            up.append(mask)
        for i in range(len(blocks)):
            for j in range(len(blocks)):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise NotAntisymmetric("τ/Θ is not antisymmetric")
        return Poset(len(blocks), up), blocks


def check_quotient_iso(L: FiniteLattice, lay: Layout | None = None,
                       system: LampSystem | None = None, edge_con=None) -> list[str]:
    """Problems with the Θ-block ↔ lamp correspondence; empty when it holds.

    ``edge_con`` optionally maps an edge to its principal congruence, used for
    the check that a trajectory's top edge generates its lamp's congruence.
    """
    T = TrajectoryAnalysis.of(L, lay, system)
    S = T.system
    problems = []
    try:
        Q, blocks = T.quotient()
    except NotAntisymmetric as exc:
        return [str(exc)]
    block_of = {a: i for i, block in enumerate(blocks) for a in block}
    for a in range(len(T.trajs)):
        for b in range(len(T.trajs)):
            same_block = block_of[a] == block_of[b]
            same_lamp = T.lmp[a] == T.lmp[b]
            if same_block != same_lamp:
                problems.append(f"trajectories {a}, {b}: same block {same_block}, same lamp {same_lamp}")
            below = Q.leq(block_of[a], block_of[b])
            lamp_below = S.poset.leq(T.lmp[a], T.lmp[b])
            if below != lamp_below:
                problems.append(f"trajectories {a}, {b}: τ/Θ gives {below}, lamp order gives {lamp_below}")
    for a, u in enumerate(T.trajs):
        if u.hat != S.lamps[T.lmp[a]].internal:
            problems.append(f"trajectory {a} is {u.kind.value} but its lamp is {S.lamps[T.lmp[a]].kind.value}")
    if len(blocks) != len(S.lamps):
        problems.append(f"{len(blocks)} Θ-blocks but {len(S.lamps)} lamps")
    if edge_con is not None:
        for a, u in enumerate(T.trajs):
            lamp = S.lamps[T.lmp[a]]
            if edge_con(*u.top_edge) != edge_con(lamp.foot, lamp.peak):
                problems.append(f"con(Top u) differs from con(Lmp u) for trajectory {a}")
    return problems
