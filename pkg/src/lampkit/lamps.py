"""Lamps of a slim rectangular lattice and the geometry they illuminate.

Regions are computed in the diagram plane ``(u, v)`` but built from the grid
indices ``(l, r)``, where normal-slope lines are ``l = const`` or
``r = const``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .geometry import (
    Layout, _param, cross, Region, Slope, classify_edge, interiors_meet, is_normal_direction,
    layout as make_layout, on_boundary, point_on_segment, region_subset,
    segment_clip, segment_intersect, segment_subset, to_plane,
)
from .lattice import FiniteLattice, LatticeError, irreducibles
from .poset import Poset


class LampError(LatticeError):
    pass


class CircOfBoundaryLamp(LampError):
    pass


class CovOfTop(LampError):
    pass


class Kind(enum.Enum):
    BOUNDARY_LEFT = "boundary-left"
    BOUNDARY_RIGHT = "boundary-right"
    INTERNAL = "internal"


@dataclass(frozen=True)
class Lamp:
    peak: int
    foot: int
    tubes: tuple  # tube feet, left to right
    kind: Kind

    @property
    def internal(self) -> bool:
        return self.kind is Kind.INTERNAL

    @property
    def boundary(self) -> bool:
        return not self.internal


class Illumination(enum.Enum):
    """From which side a lamp lights a point.

    ``LEFT``: only the up-left ray ``(x - t, y + t)`` meets a tube, so the
    point lies in RightLit. ``RIGHT``: only the up-right ray does, so the
    point lies in LeftLit.
    """

    NONE = "none"
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


RELATIONS = (
    "rho_B", "rho_C", "rho_alg", "half_rho_B", "half_rho_C",
    "rho_foot", "rho_int_foot", "rho_int0_foot",
)


def side_of(lay: Layout, x: int) -> Kind:
    L = lay.lattice
    if L.leq(x, lay.left_corner) or L.leq(lay.left_corner, x):
        return Kind.BOUNDARY_LEFT
    if L.leq(x, lay.right_corner) or L.leq(lay.right_corner, x):
        return Kind.BOUNDARY_RIGHT
    return Kind.INTERNAL


def lamps(L: FiniteLattice, lay: Layout | None = None) -> list[Lamp]:
    """All lamps, sorted by (peak, foot)."""
    lay = lay or make_layout(L)
    mir = irreducibles(L).mir
    out = []
    internal_tubes: dict[int, list[int]] = {}
    for p, q in sorted(L.covers):
        if p not in mir:
            continue
        kind = side_of(lay, p)
        if kind is Kind.INTERNAL:
            internal_tubes.setdefault(q, []).append(p)
        else:
            out.append(Lamp(q, p, (p,), kind))
    for q, feet in internal_tubes.items():
        feet.sort(key=lambda p: lay.point(p)[0])
        out.append(Lamp(q, L.meet_all(feet), tuple(feet), Kind.INTERNAL))
    out.sort(key=lambda I: (I.peak, I.foot))
    return out


def cov(L: FiniteLattice, u: int) -> int:
    """Join of all upper covers of u."""
    if u == L.top:
        raise CovOfTop("cov is undefined at the top element")
    return L.join_all(L.upper_covers[u])


def lift(L: FiniteLattice, x: int) -> int:
    mir = irreducibles(L).mir
    while x != L.top:
        c = cov(L, x)
        if any(y in mir for y in L.lower_covers[c]):
            return c
        x = c
    return L.top


# ---------------------------------------------------------------- regions


def _chain_by_extreme_covers(L: FiniteLattice, lay: Layout, a: int, b: int, leftmost: bool) -> list[int]:
    def leftness(x, y):
        dl = lay.l_index[y] - lay.l_index[x]
        dr = lay.r_index[y] - lay.r_index[x]
        return Fraction(dl, dl + dr)

    path = [a]
    x = a
    while x != b:
        options = [y for y in L.upper_covers[x] if L.leq(y, b)]
        pick = max if leftmost else min
        x = pick(options, key=lambda y: leftness(x, y))
        path.append(x)
    return path


def interval_region(L: FiniteLattice, lay: Layout, a: int, b: int) -> Region:
    """The planar region enclosed by the boundary chains of [a, b]."""
    left = _chain_by_extreme_covers(L, lay, a, b, leftmost=True)
    right = _chain_by_extreme_covers(L, lay, a, b, leftmost=False)
    cycle = left + right[-2:0:-1]
    return Region.from_points([lay.point(x) for x in cycle])


@dataclass(frozen=True)
class LampRegions:
    body: Region
    circ_region: Region | None
    lroof: tuple
    rroof: tuple
    lfloor: tuple
    rfloor: tuple
    lit: Region
    leftlit: Region
    rightlit: Region

    @property
    def circ(self) -> Region:
        if self.circ_region is None:
            raise CircOfBoundaryLamp("CircR is defined for internal lamps only")
        return self.circ_region

    @property
    def floor(self) -> tuple:
        return (self.lfloor, self.rfloor)

    def in_lit_open(self, pt) -> bool:
        """Membership in Lit minus Floor."""
        return self.lit.contains(pt) and not any(point_on_segment(pt, s) for s in self.floor)


def circ_bottom(L: FiniteLattice, lay: Layout, q: int) -> int:
    lows = sorted(L.lower_covers[q], key=lambda x: lay.point(x)[0])
    return L.meet(lows[0], lows[-1])


def _rect(l0, r0, l1, r1) -> tuple:
    return (to_plane(l0, r0), to_plane(l1, r0), to_plane(l1, r1), to_plane(l0, r1))


def regions(L: FiniteLattice, lay: Layout, I: Lamp) -> LampRegions:
    lp, rp = lay.indices(I.foot)
    lq, rq = lay.indices(I.peak)
    body = interval_region(L, lay, I.foot, I.peak)
    circ = None
    if I.internal:
        circ = interval_region(L, lay, circ_bottom(L, lay, I.peak), I.peak)

    lroof = (to_plane(lq, 0), to_plane(lq, rq))
    rroof = (to_plane(0, rq), to_plane(lq, rq))
    lfloor = (to_plane(lp, 0), to_plane(lp, rp))
    rfloor = (to_plane(0, rp), to_plane(lp, rp))

    # Lit is bounded by the roof, the floor and the lower boundary chains
    if lp < lq and rp < rq:
        lit = Region.from_points([
            to_plane(lp, 0), to_plane(lq, 0), to_plane(lq, rq),
            to_plane(0, rq), to_plane(0, rp), to_plane(lp, rp),
        ])
    elif lp == lq:
        lit = Region(polygon=_rect(0, rp, lq, rq), segments=(lfloor,) if rp > 0 else ())
    else:
        lit = Region(polygon=_rect(lp, 0, lq, rq), segments=(rfloor,) if lp > 0 else ())

    # one-sided light: shadows of the extreme tubes
    l_first, r_first = lay.indices(I.tubes[0])
    l_last, r_last = lay.indices(I.tubes[-1])
    leftlit = Region.from_points([to_plane(l_last, 0), to_plane(lq, 0), to_plane(lq, rq), to_plane(l_last, r_last)])
    rightlit = Region.from_points([to_plane(0, r_first), to_plane(l_first, r_first), to_plane(lq, rq), to_plane(0, rq)])
    return LampRegions(body, circ, lroof, rroof, lfloor, rfloor, lit, leftlit, rightlit)


def illuminated(L: FiniteLattice, lay: Layout, I: Lamp, pt) -> Illumination:
    """Ray test: does the half-line from pt at 45° upward meet a tube of I?"""
    reach = 2 * (lay.width_left + lay.width_right) + 2
    up_left = (pt, (pt[0] - reach, pt[1] + reach))    # (x - t, y + t)
    up_right = (pt, (pt[0] + reach, pt[1] + reach))   # (x + t, y + t)
    tubes = [(lay.point(p), lay.point(I.peak)) for p in I.tubes]
    from_left = any(segment_intersect(up_left, t) is not None for t in tubes)
    from_right = any(segment_intersect(up_right, t) is not None for t in tubes)
    if from_left and from_right:
        return Illumination.BOTH
    if from_left:
        return Illumination.LEFT
    if from_right:
        return Illumination.RIGHT
    return Illumination.NONE


# ---------------------------------------------------------------- analysis


class LampSystem:
    """Lamps of one lattice with cached regions, relations and poset."""

    def __init__(self, L: FiniteLattice, lay: Layout | None = None):
        self.L = L
        self.lay = lay or make_layout(L)
        self.lamps = lamps(L, self.lay)
        self.index = {I: i for i, I in enumerate(self.lamps)}

    def __len__(self) -> int:
        return len(self.lamps)

    @cached_property
    def regions(self) -> list[LampRegions]:
        return [regions(self.L, self.lay, I) for I in self.lamps]

    def lamp_of_tube(self, p: int, q: int) -> int:
        for i, I in enumerate(self.lamps):
            if I.peak == q and p in I.tubes:
                return i
        raise LampError(f"edge ({p}, {q}) is not a neon tube")

    # -- the eight relations

    def relation(self, i: int, j: int, kind: str, literal: bool = False) -> bool:
        """Whether (lamp i, lamp j) is in the named relation.

        Unless ``literal``, every relation also requires that lamp i is
        internal and differs from lamp j, the stipulation under which all
        eight coincide.
        """
        I, J = self.lamps[i], self.lamps[j]
        if not literal and (not I.internal or i == j):
            return False
        RI, RJ = self.regions[i], self.regions[j]
        L = self.L
        foot_pt = self.lay.point(I.foot)
        if kind == "rho_alg":
            return L.leq(I.peak, J.peak) and not L.leq(I.foot, J.foot)
        if kind == "rho_int_foot":
            return i != j and RJ.lit.interior_contains(foot_pt)
        if kind == "rho_int0_foot":
            return RJ.in_lit_open(foot_pt)
        # remaining items state both conditions explicitly
        if not I.internal or i == j:
            return False
        if kind == "rho_B":
            return region_subset(RI.body, RJ.lit)
        if kind == "rho_C":
            return region_subset(RI.circ, RJ.lit)
        if kind == "half_rho_B":
            return region_subset(RI.body, RJ.leftlit) or region_subset(RI.body, RJ.rightlit)
        if kind == "half_rho_C":
            return region_subset(RI.circ, RJ.leftlit) or region_subset(RI.circ, RJ.rightlit)
        if kind == "rho_foot":
            return RJ.lit.contains(foot_pt)
        raise ValueError(f"unknown relation {kind!r}")

    def relation_pairs(self, kind: str, literal: bool = False) -> frozenset:
        k = len(self.lamps)
        return frozenset((i, j) for i in range(k) for j in range(k) if self.relation(i, j, kind, literal))

    @cached_property
    def rho_alg(self) -> frozenset:
        return self.relation_pairs("rho_alg")

    @cached_property
    def poset(self) -> Poset:
        """Reflexive-transitive closure of rho_alg; raises NotAntisymmetric."""
        names = [f"[{I.foot},{I.peak}]" for I in self.lamps]
        return Poset.from_relation(len(self.lamps), self.rho_alg, names)

    def foot_on_roof(self, i: int, j: int) -> bool:
        """Foot of internal lamp i sits on a roof of Lit J (Peak J included)."""
        if not self.lamps[i].internal or i == j:
            return False
        pt = self.lay.point(self.lamps[i].foot)
        R = self.regions[j]
        return point_on_segment(pt, R.lroof) or point_on_segment(pt, R.rroof)

    def roof_pairs(self) -> frozenset:
        k = len(self.lamps)
        return frozenset((i, j) for i in range(k) for j in range(k) if self.foot_on_roof(i, j))

    # -- section-three notions

    def independent(self, i: int, j: int) -> bool:
        I, J = self.lamps[i], self.lamps[j]
        return self.L.leq(I.peak, J.foot) or self.L.leq(J.peak, I.foot)

    @cached_property
    def lit_cells(self) -> list[frozenset]:
        """Unit grid cells (by lower-left index) covered by each Lit set."""
        out = []
        for I in self.lamps:
            lp, rp = self.lay.indices(I.foot)
            lq, rq = self.lay.indices(I.peak)
            cells = {(l, r) for l in range(lp, lq) for r in range(rq)}
            cells |= {(l, r) for l in range(lq) for r in range(rp, rq)}
            out.append(frozenset(cells))
        return out

    def lits_overlap(self, i: int, j: int, exact: bool = False) -> bool:
        """Positive-area overlap of two Lit sets.

        Lit sets are unions of grid cells, so comparing cells is exact;
        ``exact`` switches to the polygon arrangement test instead.
        """
        if exact:
            return interiors_meet(self.regions[i].lit, self.regions[j].lit)
        return not self.lit_cells[i].isdisjoint(self.lit_cells[j])

    def sufficiently_disjoint(self, i: int, j: int) -> bool:
        """Every positive-length segment inside both Lit sets has normal slope."""
        A, B = self.regions[i].lit, self.regions[j].lit
        if self.lits_overlap(i, j):
            return False
        for a, b in A.boundary_segments() + B.boundary_segments():
            if a != b and not is_normal_direction(a, b):
                if _shared_positive_part(a, b, A, B):
                    return False
        return True

    def separatory(self, i: int, j: int) -> bool:
        Ri, Rj = self.regions[i], self.regions[j]
        for a, b in ((Ri, Rj), (Rj, Ri)):
            if left_of(a.lroof, b.lroof) and left_of(b.lroof, a.lfloor) and left_of(a.lfloor, b.lfloor):
                return True
            if left_of(a.rroof, b.rroof) and left_of(b.rroof, a.rfloor) and left_of(a.rfloor, b.rfloor):
                return True
        return False

    def floor_aligned(self, i: int, j: int) -> bool:
        Ri, Rj = self.regions[i], self.regions[j]
        return same_line(Ri.lfloor, Rj.lfloor) or same_line(Ri.rfloor, Rj.rfloor)

    def chain_part(self, region: Region, side: Kind) -> list[tuple]:
        """Where region meets the lower left or lower right boundary chain.

        Positions are chain heights measured from 0, in units of
        lower-boundary edges; the result is a sorted list of closed intervals.
        """
        A, B = self.lay.width_left, self.lay.width_right
        if side is Kind.BOUNDARY_RIGHT:
            seg, length = (to_plane(0, 0), to_plane(0, B)), B
        else:
            seg, length = (to_plane(0, 0), to_plane(A, 0)), A
        return merge_intervals((a * length, b * length) for a, b in segment_clip(seg, region))

    def E(self, z: int) -> list[tuple]:
        """Lit Z met with the opposite lower boundary chain, for a boundary lamp Z."""
        Z = self.lamps[z]
        if Z.internal:
            raise LampError("E is defined for boundary lamps")
        return self.chain_part(self.regions[z].lit, _opposite(Z.kind))

    def F(self, z: int) -> list[tuple]:
        Z = self.lamps[z]
        E = self.E(z)
        found = []
        for u in range(len(self.lamps)):
            if self.relation(u, z, "rho_C"):
                found += intersect_intervals(E, self.chain_part(self.regions[u].lit, _opposite(Z.kind)))
        return merge_intervals(found)

    def no_gap(self, z: int) -> bool:
        """F(Z) is empty or one closed interval reaching the top of E(Z)."""
        F = self.F(z)
        if not F:
            return True
        E = self.E(z)
        return len(F) == 1 and F[0][1] == E[-1][1]

    def lower_covers_independent(self, z: int) -> bool:
        lows = self.poset.lower_covers(z)
        return all(self.independent(a, b) for a in lows for b in lows if a < b)


def _opposite(kind: Kind) -> Kind:
    return Kind.BOUNDARY_RIGHT if kind is Kind.BOUNDARY_LEFT else Kind.BOUNDARY_LEFT


def merge_intervals(intervals) -> list[tuple]:
    out = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def intersect_intervals(xs, ys) -> list[tuple]:
    out = []
    for a, b in xs:
        for c, d in ys:
            lo, hi = max(a, c), min(b, d)
            if lo <= hi:
                out.append((lo, hi))
    return merge_intervals(out)


def _shared_positive_part(a, b, A: Region, B: Region) -> bool:
    ts = {Fraction(0), Fraction(1)}
    seg = (a, b)
    for other in A.boundary_segments() + B.boundary_segments():
        hit = segment_intersect(seg, other)
        if hit is None:
            continue
        for p in (hit if isinstance(hit[0], tuple) else (hit,)):
            ts.add(_param(seg, p))
    ts = sorted(ts)
    for s, t in zip(ts, ts[1:]):
        m = (s + t) / 2
        pt = (a[0] + m * (b[0] - a[0]), a[1] + m * (b[1] - a[1]))
        if A.contains(pt) and B.contains(pt):
            return True
    return False


def _x_intercept(seg) -> Fraction:
    (x0, y0), (x1, y1) = seg
    return Fraction(x0) - Fraction(y0) * (x1 - x0) / (y1 - y0)


def left_of(s1, s2) -> bool:
    """``s1 λ s2`` for parallel non-horizontal segments of positive length."""
    (a, b), (c, d) = s1, s2
    if a == b or c == d:
        return False
    if (b[0] - a[0]) * (d[1] - c[1]) != (b[1] - a[1]) * (d[0] - c[0]) or a[1] == b[1]:
        return False
    return _x_intercept(s1) < _x_intercept(s2)


def same_line(s1, s2) -> bool:
    """Both segments have positive length and lie on one line."""
    (a, b), (c, d) = s1, s2
    if a == b or c == d:
        return False
    return cross(a, b, c) == 0 and cross(a, b, d) == 0
