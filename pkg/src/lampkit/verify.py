"""Structural validation and the per-lattice verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .congruence import ConTooLarge, EdgeCongruences, check_main_lemma, con_lattice
from .geometry import (
    BetaViolation, Layout, Region, Slope, classify_edge, layout as make_layout,
    polygon_area2, region_subset, segments_cross_improperly, simplify_polygon, to_indices,
    to_plane,
)
from .lamps import Illumination, Kind, LampSystem, RELATIONS, circ_bottom, illuminated, lift
from .lattice import (
    FiniteLattice, NotRectangular, at_most_two_covers, boundary_chains, corners,
    irreducibles, is_distributive, is_semimodular, width_at_most_two,
)
from .poset import NotAntisymmetric, isomorphism
from .properties import PROPERTIES, jir_poset

CON_LIMIT = 4096


# ---------------------------------------------------------------- validation


@dataclass(frozen=True)
class ValidationReport:
    semimodular: bool
    slim: bool
    planar: bool
    rectangular: bool
    at_most_two_covers: bool

    @property
    def ok(self) -> bool:
        return all(vars(self).values())

    def failed(self) -> list[str]:
        return [k for k, v in vars(self).items() if not v]


def is_planar(L: FiniteLattice, lay: Layout) -> bool:
    segs = [(lay.point(p), lay.point(q)) for p, q in L.edges()]
    boxes = [(min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])) for a, b in segs]

    def near(i, j):
        (x0, x1, y0, y1), (u0, u1, v0, v1) = boxes[i], boxes[j]
        return x0 <= u1 and u0 <= x1 and y0 <= v1 and v0 <= y1

    return not any(near(i, j) and segments_cross_improperly(segs[i], segs[j])
                   for i, j in combinations(range(len(segs)), 2))


def validate_slim_rectangular(L: FiniteLattice, lay: Layout | None = None) -> ValidationReport:
    """Independent verdicts; never raises."""
    try:
        corners(L)
        rectangular = L.n >= 4
    except NotRectangular:
        rectangular = False
    if lay is None:
        try:
            lay = make_layout(L, check=False)
        except (NotRectangular, BetaViolation, KeyError):
            lay = None
    return ValidationReport(
        semimodular=is_semimodular(L),
        slim=width_at_most_two(L, irreducibles(L).jir),
        planar=lay is not None and is_planar(L, lay),
        rectangular=rectangular,
        at_most_two_covers=at_most_two_covers(L),
    )


# ---------------------------------------------------------------- multifork


def _stretch(t, at: int, n: int):
    if t <= at:
        return t
    if t >= at + 1:
        return t + n
    return at + (t - at) * (n + 1)


def stretch_point(pt, i: int, j: int, n: int):
    l, r = to_indices(pt)
    return to_plane(_stretch(l, i, n), _stretch(r, j, n))


def stretch_region(region: Region, i: int, j: int, n: int) -> Region:
    def f(pt):
        return stretch_point(pt, i, j, n)

    polygon = tuple(map(f, region.polygon)) if region.polygon else None
    return Region(polygon=polygon, segments=tuple((f(a), f(b)) for a, b in region.segments))


def _canonical_region(R: Region) -> tuple:
    poly = None
    if R.polygon:
        poly = list(simplify_polygon(R.polygon))
        if polygon_area2(poly) < 0:
            poly.reverse()
        k = poly.index(min(poly))
        poly = tuple(poly[k:] + poly[:k])
    return poly, frozenset(tuple(sorted(s)) for s in R.segments)


def same_region(A: Region, B: Region) -> bool:
    if _canonical_region(A) == _canonical_region(B):
        return True
    return region_subset(A, B) and region_subset(B, A)


def check_multifork(L: FiniteLattice, lay: Layout, new: FiniteLattice, cell, n: int) -> list[str]:
    """Postconditions of a multifork step; returns problem descriptions."""
    problems = []
    i, j = lay.indices(cell.bottom)
    try:
        new_lay = make_layout(new)
    except (BetaViolation, NotRectangular) as exc:
        return [f"new lattice has no valid layout: {exc}"]

    def image_of(x):
        l, r = lay.indices(x)
        return new_lay.element_at(_stretch(l, i, n), _stretch(r, j, n))

    image = [image_of(x) for x in range(L.n)]
    if None in image or len(set(image)) != L.n:
        return ["old elements do not embed at their stretched coordinates"]
    for x in range(L.n):
        for y in range(x + 1, L.n):
            if new.meet(image[x], image[y]) != image[L.meet(x, y)] or \
                    new.join(image[x], image[y]) != image[L.join(x, y)]:
                problems.append(f"(a) meet or join of {x}, {y} changed")
    verdicts = validate_slim_rectangular(new, new_lay)
    if not verdicts.ok:
        problems.append(f"(b) validation failed: {verdicts.failed()}")

    old = LampSystem(L, lay)
    fresh = LampSystem(new, new_lay)
    mapped = {}
    for a, I in enumerate(old.lamps):
        key = (image[I.peak], image[I.foot], tuple(image[p] for p in I.tubes), I.kind)
        mapped[key] = a
    extra = []
    for b, K in enumerate(fresh.lamps):
        key = (K.peak, K.foot, K.tubes, K.kind)
        if key in mapped:
            a = mapped.pop(key)
            old_lit = stretch_region(old.regions[a].lit, i, j, n)
            if not same_region(old_lit, fresh.regions[b].lit):
                problems.append(f"(e) Lit of lamp {a} changed")
        else:
            extra.append(b)
    if mapped:
        problems.append(f"(c) {len(mapped)} old lamps disappeared")
    if len(extra) != 1:
        problems.append(f"(c) expected one new lamp, found {len(extra)}")
    else:
        K = fresh.lamps[extra[0]]
        if not K.internal or len(K.tubes) != n or K.peak != image[cell.top]:
            problems.append("(c) the new lamp is not an internal lamp with n tubes at the cell top")
        else:
            cell_region = Region.from_points([new_lay.point(image[x]) for x in
                                              (cell.bottom, cell.left, cell.top, cell.right)])
            if not same_region(fresh.regions[extra[0]].circ, cell_region):
                problems.append("(d) CircR of the new lamp is not the replaced cell")

    for p, q in L.edges():
        a, b = new_lay.point(image[p]), new_lay.point(image[q])
        on_seg = [x for x in new.interval(image[p], image[q])
                  if Region(segments=((a, b),)).contains(new_lay.point(x))]
        on_seg.sort(key=lambda x: new_lay.point(x)[1])
        if not all(new.is_cover(s, t) for s, t in zip(on_seg, on_seg[1:])):
            problems.append(f"edge ({p}, {q}) is no longer covered by edges")
    return problems


# ---------------------------------------------------------------- suite


CHECKS = (
    "construction", "validation", "boundary", "tables", "distributive_cells", "lamps", "regions",
    "lift", "illumination", "relations", "lamp_poset", "main_lemma", "birkhoff",
    "trajectories", "separatory", "floor_aligned", "no_gap", "sufficiently_disjoint",
    "properties",
)


@dataclass
class LatticeReport:
    label: str
    n: int
    edges: int
    lamps: int
    problems: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.problems.values())

    def failed(self) -> list[str]:
        return [k for k in CHECKS if self.problems.get(k)]

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL " + ",".join(self.failed())
        extras = " ".join(f"{k}={v}" for k, v in sorted(self.notes.items()))
        return f"{self.label}\tn={self.n} edges={self.edges} lamps={self.lamps}\t{status}\t{extras}".rstrip()


def _bounds_oracle(L: FiniteLattice) -> list[str]:
    """Meet and join tables against bounds read off the order bitsets."""
    out = []
    for x in range(L.n):
        for y in range(L.n):
            lower = L.down[x] & L.down[y]
            upper = L.up[x] & L.up[y]
            glb = [z for z in range(L.n) if lower >> z & 1 and L.down[z] & lower == lower]
            lub = [z for z in range(L.n) if upper >> z & 1 and L.up[z] & upper == upper]
            if glb != [L.meet(x, y)] or lub != [L.join(x, y)]:
                out.append(f"tables disagree at ({x}, {y})")
    return out


def check_lamps(S: LampSystem) -> list[str]:
    L, lay = S.L, S.lay
    out = []
    mir = irreducibles(L).mir
    tubes = [(p, I.peak) for I in S.lamps for p in I.tubes]
    if sorted(tubes) != sorted((p, q) for p, q in L.covers if p in mir):
        out.append("tubes are not exactly the edges with a meet-irreducible foot")
    peaks = [I.peak for I in S.lamps if I.internal]
    if len(peaks) != len(set(peaks)):
        out.append("two internal lamps share a peak")
    for k, I in enumerate(S.lamps):
        if I.foot != L.meet_all(I.tubes):
            out.append(f"lamp {k}: foot is not the meet of its tube feet")
        if I.boundary and len(I.tubes) != 1:
            out.append(f"boundary lamp {k} has {len(I.tubes)} tubes")
        if I.internal and any(classify_edge(lay, p, I.peak) is not Slope.PRECIPITOUS for p in I.tubes):
            out.append(f"internal lamp {k} has a tube of normal slope")
        body = S.regions[k].body
        lowest = min(body.vertices(), key=lambda pt: pt[1])
        if lowest != lay.point(I.foot):
            out.append(f"lamp {k}: body bottom vertex is not the foot")
    return out


def check_regions(S: LampSystem) -> list[str]:
    L, lay = S.L, S.lay
    out = []
    for k, I in enumerate(S.lamps):
        R = S.regions[k]
        if (len(I.tubes) == 1) != (R.body.polygon is None):
            out.append(f"lamp {k}: body is a segment iff one tube fails")
        if R.body.polygon is not None:
            poly = R.body.polygon
            top = lay.point(I.peak)
            if len(poly) != 4 or top not in poly:
                out.append(f"lamp {k}: body is not a quadrangle under its peak")
            else:
                at = poly.index(top)
                up_edges = [(poly[at - 1], top), (poly[(at + 1) % 4], top)]
                low_edges = [(poly[at - 2], poly[at - 1]), (poly[at - 2], poly[(at + 1) % 4])]
                if any(_direction_normal(a, b) for a, b in up_edges) or \
                        not all(_direction_normal(a, b) for a, b in low_edges):
                    out.append(f"lamp {k}: body edges have the wrong slopes")
        if I.internal:
            bottom = circ_bottom(L, lay, I.peak)
            verts = R.circ.vertices()
            if max(verts, key=lambda p: p[1]) != lay.point(I.peak) or \
                    min(verts, key=lambda p: p[1]) != lay.point(bottom):
                out.append(f"lamp {k}: CircR corners are wrong")
        collinear = _collinear(R.lroof, R.lfloor)
        if collinear != (I.kind is Kind.BOUNDARY_LEFT):
            out.append(f"lamp {k}: LRoof and LFloor collinear={collinear} for {I.kind.value}")
        positive = R.leftlit.area2 > 0 and R.rightlit.area2 > 0
        if positive != I.internal:
            out.append(f"lamp {k}: LeftLit/RightLit positive area={positive} for {I.kind.value}")
    return out


def _direction_normal(a, b) -> bool:
    return abs(b[0] - a[0]) == abs(b[1] - a[1])


def _collinear(s1, s2) -> bool:
    from .geometry import cross

    pts = [p for s in (s1, s2) for p in s]
    base = [p for p in pts if p != pts[0]]
    if not base:
        return True
    return all(cross(pts[0], base[0], p) == 0 for p in pts)


def check_illumination(S: LampSystem) -> list[str]:
    L, lay = S.L, S.lay
    points = {lay.point(x) for x in range(L.n)}
    for R in S.regions:
        for region in (R.body, R.circ_region, R.lit, R.leftlit, R.rightlit):
            if region is not None:
                points.update(region.vertices())
    out = []
    for k, I in enumerate(S.lamps):
        R = S.regions[k]
        for pt in sorted(points):
            how = illuminated(L, lay, I, pt)
            from_left = how in (Illumination.LEFT, Illumination.BOTH)
            from_right = how in (Illumination.RIGHT, Illumination.BOTH)
            if from_right != R.leftlit.contains(pt) or from_left != R.rightlit.contains(pt) or \
                    (from_left or from_right) != R.lit.contains(pt):
                out.append(f"lamp {k}: ray test and polygons disagree at {pt}")
    return out


FOOT_RELATIONS = ("rho_foot", "rho_int0_foot")


def check_relations(S: LampSystem, notes: dict | None = None) -> list[str]:
    """All eight relations against rho_alg.

    The two closed-foot relations may also hold on pairs whose foot lies on a
    roof of Lit J; those pairs are tallied in ``notes["roof_pairs"]`` and
    every other discrepancy is a problem.
    """
    ref = S.rho_alg
    roof = S.roof_pairs()
    out = []
    for kind in RELATIONS:
        diff = S.relation_pairs(kind) ^ ref
        if kind in FOOT_RELATIONS:
            if notes is not None and diff:
                notes["roof_pairs"] = len(diff & roof)
            diff -= roof
        if diff:
            out.append(f"{kind} differs from rho_alg: {sorted(diff)}")
    return out


def check_lamp_poset(S: LampSystem) -> list[str]:
    try:
        P = S.poset
    except NotAntisymmetric as exc:
        return [str(exc)]
    out = []
    for a, b in P.covers:
        if (a, b) not in S.rho_alg:
            out.append(f"cover ({a}, {b}) not in rho_alg")
    maximal = set(P.maximal())
    boundary = {k for k, I in enumerate(S.lamps) if I.boundary}
    if maximal != boundary:
        out.append("maximal lamps differ from boundary lamps")
    for a in range(P.n):
        for b in range(P.n):
            if P.leq(a, b) and not S.L.leq(S.lamps[a].peak, S.lamps[b].peak):
                out.append(f"peaks not monotone for ({a}, {b})")
    return out


def verify_lattice(L: FiniteLattice, label: str = "", con_limit: int = CON_LIMIT) -> LatticeReport:
    """Run every check on one lattice; exceptions become problems."""
    rep = LatticeReport(label, L.n, len(L.covers), 0)
    P = rep.problems

    def run(name, fn):
        try:
            P[name] = list(fn())
        except Exception as exc:  # a crash is a failed check, not a crashed sweep
            P[name] = [f"{type(exc).__name__}: {exc}"]

    run("validation", lambda: [f"not {v}" for v in validate_slim_rectangular(L).failed()])
    if P["validation"]:
        return rep

    def boundary():
        out = []
        try:
            _, _, upper_left, upper_right = boundary_chains(L)
        except NotRectangular as exc:
            return [str(exc)]
        mir = irreducibles(L).mir
        if not set(upper_left) | set(upper_right) <= mir | {L.top}:
            out.append("upper boundary is not inside Mir L ∪ {1}")
        return out

    run("boundary", boundary)
    if L.n <= 40:
        run("tables", lambda: _bounds_oracle(L))
    lay = make_layout(L)

    def cells():
        from .construction import distributive_cells
        distributive_cells(L, lay, cross_check=True)
        return []

    run("distributive_cells", cells)
    S = LampSystem(L, lay)
    rep.lamps = len(S.lamps)
    run("lamps", lambda: check_lamps(S))
    run("regions", lambda: check_regions(S))
    run("lift", lambda: [f"lift(foot) != peak for lamp {k}" for k, I in enumerate(S.lamps)
                         if lift(L, I.foot) != I.peak])
    run("illumination", lambda: check_illumination(S))
    run("relations", lambda: check_relations(S, rep.notes))
    run("lamp_poset", lambda: check_lamp_poset(S))
    edges = EdgeCongruences.of(L)

    def main_lemma():
        report = check_main_lemma(L, S, edges)
        return report.problems

    run("main_lemma", main_lemma)

    def birkhoff():
        from .congruence import jir_con
        members, J = jir_con(L, edges)
        downsets = J.count_downsets()
        rep.notes["con"] = downsets
        if downsets > con_limit:
            rep.notes["birkhoff"] = "skipped"
            return []
        try:
            cons = con_lattice(L, members, limit=con_limit)
        except ConTooLarge:
            return [f"Con L exceeds {con_limit} while Jir(Con L) has {downsets} down-sets"]
        if len(cons) != downsets:
            return [f"|Con L| = {len(cons)} but Jir(Con L) has {downsets} down-sets"]
        return []

    run("birkhoff", birkhoff)

    def traj():
        from .trajectories import TrajectoryAnalysis, check_quotient_iso
        out = check_quotient_iso(L, lay, S, edge_con=lambda a, b: edges.con(a, b))
        T = TrajectoryAnalysis.of(L, lay, S)
        if sum(len(u.edges) for u in T.trajs) != len(L.covers):
            out.append("trajectories do not partition the edges")
        Q, _ = T.quotient()
        rep.notes["jir_L_reading"] = isomorphism(jir_poset(L), Q) is not None
        return out

    run("trajectories", traj)
    k = len(S.lamps)
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    run("separatory", lambda: [f"lamps {a}, {b} are separatory" for a, b in pairs if S.separatory(a, b)])

    def floor_aligned():
        bad = [(a, b) for a, b in pairs if S.floor_aligned(a, b)]
        boundary_pairs = [(a, b) for a, b in bad if S.lamps[a].boundary and S.lamps[b].boundary]
        rep.notes["floor_aligned_boundary_pairs"] = len(boundary_pairs)
        return [f"lamps {a}, {b} are floor-aligned" for a, b in bad if (a, b) not in boundary_pairs]

    run("floor_aligned", floor_aligned)

    def no_gap():
        out = []
        for z, Z in enumerate(S.lamps):
            if Z.boundary:
                if not S.no_gap(z):
                    out.append(f"gap in F(Z) for lamp {z}")
                if not S.lower_covers_independent(z):
                    out.append(f"lower covers of lamp {z} are not pairwise independent")
        return out

    run("no_gap", no_gap)
    run("sufficiently_disjoint", lambda: [
        f"independent lamps {a}, {b} are not sufficiently disjoint"
        for a, b in pairs if S.independent(a, b) and not S.sufficiently_disjoint(a, b)])

    def props():
        from .congruence import jir_con
        _, J = jir_con(L, edges)
        return [f"Jir(Con L) fails {name}" for name, ok in
                ((name, check(J)) for name, check in PROPERTIES.items()) if not ok]

    run("properties", props)
    return rep


def verify_recipe(recipe, con_limit: int = CON_LIMIT) -> LatticeReport:
    """Build a recipe with every multifork postcondition on, then verify it."""
    from .construction import build
    from .io import inline_recipe

    label = inline_recipe(recipe)
    try:
        L = build(recipe, check=True)
    except Exception as exc:  # reported against the recipe that produced it
        rep = LatticeReport(label, 0, 0, 0)
        rep.problems["construction"] = [f"{type(exc).__name__}: {exc}"]
        return rep
    return verify_lattice(L, label, con_limit)
