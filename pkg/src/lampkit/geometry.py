"""Diagram coordinates and exact planar predicates.

The diagram of a slim rectangular lattice is fixed by its grid embedding:
each element ``x`` gets ``l(x)``, the height of ``x ∧ c_l`` in the chain
``↓c_l``, and ``r(x)``, the height of ``x ∧ c_r`` in ``↓c_r``. It is drawn at
``(u, v) = (r - l, r + l)``, so edges of normal slope run along ``(±1, 1)``
and every lower-boundary edge has the same length.

All predicates work on integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import FiniteLattice, boundary_chains, corners, irreducibles

Point = tuple  # (x, y) with int or Fraction entries


class GeometryError(ValueError):
    pass


class BetaViolation(GeometryError):
    pass


class DegeneratePolygon(GeometryError):
    pass


class NotACover(GeometryError):
    pass


class Slope(enum.Enum):
    NORMAL_LEFT = "normal-left"      # direction (-1, 1): only l grows
    NORMAL_RIGHT = "normal-right"    # direction (1, 1): only r grows
    PRECIPITOUS = "precipitous"      # both indices grow

    @property
    def is_normal(self) -> bool:
        return self is not Slope.PRECIPITOUS


def to_plane(l, r) -> Point:
    return (r - l, r + l)


def to_indices(pt: Point) -> tuple:
    u, v = pt
    return (Fraction(v - u, 2), Fraction(v + u, 2))


@dataclass(frozen=True)
class Layout:
    lattice: FiniteLattice
    left_corner: int
    right_corner: int
    l_index: tuple
    r_index: tuple

    def point(self, x: int) -> Point:
        return to_plane(self.l_index[x], self.r_index[x])

    def indices(self, x: int) -> tuple[int, int]:
        return self.l_index[x], self.r_index[x]

    @property
    def width_left(self) -> int:
        return self.l_index[self.left_corner]

    @property
    def width_right(self) -> int:
        return self.r_index[self.right_corner]

    def element_at(self, l: int, r: int) -> int | None:
        return self._where().get((l, r))

    def _where(self) -> dict:
        cache = self.__dict__.get("_where_cache")
        if cache is None:
            cache = {(self.l_index[x], self.r_index[x]): x for x in range(self.lattice.n)}
            object.__setattr__(self, "_where_cache", cache)
        return cache

    def rectangle(self) -> "Region":
        """The full geometric rectangle."""
        A, B = self.width_left, self.width_right
        return Region(polygon=(to_plane(0, 0), to_plane(0, B), to_plane(A, B), to_plane(A, 0)))


def grid_indices(L: FiniteLattice) -> tuple[int, int, tuple, tuple]:
    cl, cr = corners(L)
    lower_left, lower_right, _, _ = boundary_chains(L)
    pos_l = {x: i for i, x in enumerate(lower_left)}
    pos_r = {x: i for i, x in enumerate(lower_right)}
    l_index = tuple(pos_l[L.meet(x, cl)] for x in range(L.n))
    r_index = tuple(pos_r[L.meet(x, cr)] for x in range(L.n))
    return cl, cr, l_index, r_index


def layout(L: FiniteLattice, check: bool = True) -> Layout:
    """Grid-embedding layout; with ``check`` the β-property is asserted."""
    cl, cr, l_index, r_index = grid_indices(L)
    lay = Layout(L, cl, cr, l_index, r_index)
    if len(set(zip(l_index, r_index))) != L.n:
        raise BetaViolation("grid embedding is not injective")
    if check:
        check_beta(lay)
    return lay


def classify_edge(lay: Layout, p: int, q: int) -> Slope:
    if not lay.lattice.is_cover(p, q):
        raise NotACover(f"({p}, {q}) is not an edge")
    dl = lay.l_index[q] - lay.l_index[p]
    dr = lay.r_index[q] - lay.r_index[p]
    if dl < 0 or dr < 0 or dl == dr == 0:
        raise BetaViolation(f"edge ({p}, {q}) is not monotone in the grid embedding")
    if dr == 0:
        return Slope.NORMAL_LEFT
    if dl == 0:
        return Slope.NORMAL_RIGHT
    return Slope.PRECIPITOUS


def on_boundary(lay: Layout, x: int) -> bool:
    """Is x on the left or right boundary chain?"""
    L = lay.lattice
    return (
        L.leq(x, lay.left_corner) or L.leq(lay.left_corner, x)
        or L.leq(x, lay.right_corner) or L.leq(lay.right_corner, x)
    )


def check_beta(lay: Layout) -> None:
    """An edge [p, q] is precipitous iff p ∈ Mir L lies off the boundary."""
    L = lay.lattice
    mir = irreducibles(L).mir
    for p, q in L.covers:
        steep = classify_edge(lay, p, q) is Slope.PRECIPITOUS
        expected = p in mir and not on_boundary(lay, p)
        if steep != expected:
            raise BetaViolation(f"edge ({p}, {q}) breaks the β-property")


# ---------------------------------------------------------------- primitives


def cross(o: Point, a: Point, b: Point):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _between(a, b, c) -> bool:
    return min(a, b) <= c <= max(a, b)


def point_on_segment(pt: Point, seg: Sequence[Point]) -> bool:
    a, b = seg
    return cross(a, b, pt) == 0 and _between(a[0], b[0], pt[0]) and _between(a[1], b[1], pt[1])


def _param(seg, pt) -> Fraction:
    a, b = seg
    if a[0] != b[0]:
        return Fraction(pt[0] - a[0]) / (b[0] - a[0])
    return Fraction(pt[1] - a[1]) / (b[1] - a[1])


def _lerp(seg, t) -> Point:
    a, b = seg
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def segment_intersect(s1: Sequence[Point], s2: Sequence[Point]):
    """Intersection of two closed segments.

    Returns ``None``, a point, or an overlapping segment ``(p, q)`` for
    collinear overlaps of positive length. Zero-length inputs are allowed.
    """
    a, b = s1
    c, d = s2
    if a == b:
        return a if point_on_segment(a, s2) else None
    if c == d:
        return c if point_on_segment(c, s1) else None
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    if d1 == 0 and d2 == 0:
        # collinear: clip by parameter along s1
        t0, t1 = sorted((_param(s1, c), _param(s1, d)))
        lo, hi = max(t0, Fraction(0)), min(t1, Fraction(1))
        if lo > hi:
            return None
        if lo == hi:
            return _lerp(s1, lo)
        return (_lerp(s1, lo), _lerp(s1, hi))
    if (d1 > 0) == (d2 > 0) and d1 != 0 and d2 != 0:
        return None
    if (d3 > 0) == (d4 > 0) and d3 != 0 and d4 != 0:
        return None
    t = Fraction(d1) / (d1 - d2)
    return _lerp(s1, t)


def segments_cross_improperly(s1, s2) -> bool:
    """True if the segments meet anywhere except at a shared endpoint."""
    hit = segment_intersect(s1, s2)
    if hit is None:
        return False
    if isinstance(hit[0], tuple):
        return True
    shared = set(map(_norm, s1)) & set(map(_norm, s2))
    return _norm(hit) not in shared


def _norm(pt: Point) -> tuple:
    return (Fraction(pt[0]), Fraction(pt[1]))


def polygon_area2(poly: Sequence[Point]):
    """Twice the signed area."""
    total = 0
    for i in range(len(poly)):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % len(poly)]
        total += x1 * y2 - x2 * y1
    return total


def polygon_edges(poly: Sequence[Point]) -> list[tuple[Point, Point]]:
    return [(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))]


def point_in_polygon(pt: Point, poly: Sequence[Point]) -> str:
    """``'interior'``, ``'boundary'`` or ``'outside'`` for a simple polygon."""
    if len(poly) < 3 or polygon_area2(poly) == 0:
        raise DegeneratePolygon("polygon needs three vertices and positive area")
    for e in polygon_edges(poly):
        if point_on_segment(pt, e):
            return "boundary"
    x, y = pt
    inside = False
    for (x1, y1), (x2, y2) in polygon_edges(poly):
        if (y1 > y) != (y2 > y):
            # the crossing lies right of pt iff this has the sign of y2 - y1
            num = (x1 - x) * (y2 - y1) + (y - y1) * (x2 - x1)
            if (num > 0) == (y2 > y1) and num != 0:
                inside = not inside
    return "interior" if inside else "outside"


def simplify_polygon(poly: Sequence[Point]) -> tuple:
    """Drop repeated and collinear vertices."""
    pts = []
    for p in poly:
        if not pts or _norm(pts[-1]) != _norm(p):
            pts.append(p)
    if len(pts) > 1 and _norm(pts[0]) == _norm(pts[-1]):
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if cross(a, b, c) == 0:
                del pts[i]
                changed = True
                break
    return tuple(pts)


@dataclass(frozen=True)
class Region:
    """A closed planar set: an optional simple polygon plus extra segments.

    The polygon carries all of the area; segments hang off it or stand alone
    (regions of zero area, such as the body of a one-tube lamp).
    """

    polygon: tuple | None = None
    segments: tuple = ()

    def __post_init__(self):
        if self.polygon is not None:
            if len(self.polygon) < 3 or polygon_area2(self.polygon) == 0:
                raise DegeneratePolygon(f"degenerate polygon {self.polygon}")

    @staticmethod
    def from_points(points: Sequence[Point]) -> "Region":
        """Region spanned by a closed vertex cycle that may be degenerate."""
        if not points:
            raise DegeneratePolygon("empty point list")
        first = points[0]
        if all(cross(first, p, q) == 0 for p in points for q in points):
            ordered = sorted(set(map(_norm, points)))
            return Region(segments=((ordered[0], ordered[-1]),))
        return Region(polygon=simplify_polygon(points))

    @property
    def area2(self):
        return abs(polygon_area2(self.polygon)) if self.polygon else 0

    def boundary_segments(self) -> list:
        out = list(self.segments)
        if self.polygon:
            out.extend(polygon_edges(self.polygon))
        return out

    def vertices(self) -> list:
        out = list(self.polygon or ())
        for a, b in self.segments:
            out.extend((a, b))
        return out

    def contains(self, pt: Point) -> bool:
        if self.polygon and point_in_polygon(pt, self.polygon) != "outside":
            return True
        return any(point_on_segment(pt, s) for s in self.segments)

    def interior_contains(self, pt: Point) -> bool:
        return bool(self.polygon) and point_in_polygon(pt, self.polygon) == "interior"


def _box(points) -> tuple:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), max(xs), min(ys), max(ys)


def _boxes_meet(b1, b2) -> bool:
    return b1[0] <= b2[1] and b2[0] <= b1[1] and b1[2] <= b2[3] and b2[2] <= b1[3]


def _box_inside(inner, outer) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1] and outer[2] <= inner[2] and inner[3] <= outer[3]


def segment_subset(seg: Sequence[Point], region: Region) -> bool:
    """Is the closed segment inside the closed region?"""
    a, b = seg
    if _norm(a) == _norm(b):
        return region.contains(a)
    ts = {Fraction(0), Fraction(1)}
    box = _box((a, b))
    for other in region.boundary_segments():
        if not _boxes_meet(box, _box(other)):
            continue
        hit = segment_intersect(seg, other)
        if hit is None:
            continue
        pts = hit if isinstance(hit[0], tuple) else (hit,)
        for p in pts:
            ts.add(_param(seg, p))
    ts = sorted(ts)
    probes = list(ts) + [(s + t) / 2 for s, t in zip(ts, ts[1:])]
    return all(region.contains(_lerp(seg, t)) for t in probes)


def polygon_subset(P: Sequence[Point], Q: Sequence[Point]) -> bool:
    """Closed simple polygon P inside closed simple polygon Q."""
    return region_subset(Region(polygon=tuple(P)), Region(polygon=tuple(Q)))


def region_subset(A: Region, B: Region) -> bool:
    """Exact closed-set inclusion ``A ⊆ B``.

    Positive-area parts of A can only be covered by B's polygon; since that
    polygon is simple, it suffices to check A's polygon boundary.
    """
    if not _box_inside(_box(A.vertices()), _box(B.vertices())):
        return False
    if A.polygon:
        if not B.polygon:
            return False
        area_part = Region(polygon=B.polygon)
        if not all(segment_subset(e, area_part) for e in polygon_edges(A.polygon)):
            return False
    return all(segment_subset(s, B) for s in A.segments)


def is_normal_direction(a: Point, b: Point) -> bool:
    dx, dy = b[0] - a[0], b[1] - a[1]
    return dx == dy or dx == -dy


# ---------------------------------------------------------------- arrangement


def _line(a: Point, b: Point) -> tuple:
    # coefficients of  p*x + q*y = c
    p = b[1] - a[1]
    q = a[0] - b[0]
    return (Fraction(p), Fraction(q), Fraction(p * a[0] + q * a[1]))


def arrangement_samples(segments: Iterable[Sequence[Point]]) -> list[Point]:
    """One probe point in every face, edge and vertex of the line arrangement.

    Lines support every given segment; degenerate segments and endpoints get
    an axis-parallel pair of lines so that membership in any closed region
    bounded by these segments is constant on each open cell.
    """
    lines = set()
    for a, b in segments:
        if _norm(a) != _norm(b):
            lines.add(_line(a, b))
        for p in (a, b):
            lines.add((Fraction(1), Fraction(0), Fraction(p[0])))
            lines.add((Fraction(0), Fraction(1), Fraction(p[1])))
    lines = list(lines)
    verticals = [ln for ln in lines if ln[1] == 0]
    slanted = [ln for ln in lines if ln[1] != 0]
    xs = {ln[2] / ln[0] for ln in verticals}
    for i in range(len(lines)):
        p1, q1, c1 = lines[i]
        for j in range(i + 1, len(lines)):
            p2, q2, c2 = lines[j]
            det = p1 * q2 - p2 * q1
            if det != 0:
                xs.add((c1 * q2 - c2 * q1) / det)
    xs = sorted(xs)
    if not xs:
        xs = [Fraction(0)]
    sample_xs = [xs[0] - 1] + xs + [(s + t) / 2 for s, t in zip(xs, xs[1:])] + [xs[-1] + 1]
    out = []
    for x in sample_xs:
        ys = sorted({(c - p * x) / q for p, q, c in slanted}) or [Fraction(0)]
        probes = [ys[0] - 1] + ys + [(s + t) / 2 for s, t in zip(ys, ys[1:])] + [ys[-1] + 1]
        out.extend((x, y) for y in probes)
    return out


def region_subset_bruteforce(A: Region, B: Region) -> bool:
    """Independent oracle for :func:`region_subset` by arrangement probing."""
    probes = arrangement_samples(A.boundary_segments() + B.boundary_segments())
    return all(B.contains(p) for p in probes if A.contains(p))


def interiors_meet(A: Region, B: Region) -> bool:
    """Do A and B share an open set (positive-area overlap)?"""
    if not A.polygon or not B.polygon:
        return False
    probes = arrangement_samples(A.boundary_segments() + B.boundary_segments())
    return any(A.interior_contains(p) and B.interior_contains(p) for p in probes)


def segment_clip(seg: Sequence[Point], region: Region) -> list[tuple]:
    """Parameter intervals ``(t0, t1)`` of the closed segment lying in region.

    Intervals are closed, disjoint, sorted, and may be single points.
    """
    ts = {Fraction(0), Fraction(1)}
    box = _box(seg)
    for other in region.boundary_segments():
        if not _boxes_meet(box, _box(other)):
            continue
        hit = segment_intersect(seg, other)
        if hit is None:
            continue
        for p in (hit if isinstance(hit[0], tuple) else (hit,)):
            ts.add(_param(seg, p))
    ts = sorted(ts)
    samples = [ts[0]]
    for s, t in zip(ts, ts[1:]):
        samples += [(s + t) / 2, t]
    out = []
    run = None
    for t in samples:
        if region.contains(_lerp(seg, t)):
            run = (run[0], t) if run else (t, t)
        elif run:
            out.append(run)
            run = None
    if run:
        out.append(run)
    return out
