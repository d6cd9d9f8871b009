from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lampkit.construction import grid, s_n
from lampkit.geometry import (
    DegeneratePolygon, NotACover, Region, Slope, classify_edge, layout, point_in_polygon,
    polygon_subset, region_subset, region_subset_bruteforce, segment_clip, segment_intersect,
)
from lampkit.lamps import LampSystem
from lampkit.lattice import irreducibles

SQUARE = ((0, 0), (2, 0), (2, 2), (0, 2))


def test_square_inside_itself():
    assert polygon_subset(SQUARE, SQUARE)


def test_diagonals_cross_once():
    assert segment_intersect(((0, 0), (2, 2)), ((0, 2), (2, 0))) == (1, 1)


def test_collinear_overlap_and_miss():
    assert segment_intersect(((0, 0), (4, 0)), ((2, 0), (6, 0))) == ((2, 0), (4, 0))
    assert segment_intersect(((0, 0), (1, 0)), ((2, 0), (3, 0))) is None
    assert segment_intersect(((0, 0), (1, 1)), ((1, 1), (2, 0))) == (1, 1)


def test_point_in_polygon_three_ways():
    assert point_in_polygon((1, 1), SQUARE) == "interior"
    assert point_in_polygon((2, 1), SQUARE) == "boundary"
    assert point_in_polygon((3, 1), SQUARE) == "outside"
    assert point_in_polygon((Fraction(1, 3), Fraction(5, 3)), SQUARE) == "interior"


def test_degenerate_polygon():
    with pytest.raises(DegeneratePolygon):
        point_in_polygon((0, 0), ((0, 0), (1, 1), (2, 2)))


def test_segment_clip_runs():
    region = Region(polygon=SQUARE)
    assert segment_clip(((-1, 1), (3, 1)), region) == [(Fraction(1, 4), Fraction(3, 4))]
    assert segment_clip(((3, 0), (3, 2)), region) == []


def test_grid_edges_have_normal_slopes():
    L = grid(3, 4)
    lay = layout(L)
    assert all(classify_edge(lay, p, q).is_normal for p, q in L.covers)


def test_s1_slopes():
    L = s_n(1)
    lay = layout(L)
    m, top = 4, L.top
    assert classify_edge(lay, m, top) is Slope.PRECIPITOUS
    assert lay.point(top)[1] - lay.point(m)[1] == 2 and lay.point(top)[0] == lay.point(m)[0]
    cl = lay.left_corner
    assert classify_edge(lay, cl, top) is Slope.NORMAL_RIGHT
    with pytest.raises(NotACover):
        classify_edge(lay, L.bottom, top)


def test_interior_tubes_are_precipitous():
    L = s_n(3)
    lay = layout(L)
    mir = irreducibles(L).mir
    S = LampSystem(L, lay)
    for I in S.lamps:
        for p in I.tubes:
            slope = classify_edge(lay, p, I.peak)
            assert (slope is Slope.PRECIPITOUS) == I.internal
            assert p in mir


def test_body_inside_boundary_lit_of_s1():
    S = LampSystem(s_n(1))
    internal = next(k for k, I in enumerate(S.lamps) if I.internal)
    left = next(k for k, I in enumerate(S.lamps) if I.kind.value == "boundary-left")
    assert region_subset(S.regions[internal].body, S.regions[left].lit)


coords = st.integers(-3, 3)


@st.composite
def convex_quads(draw):
    """Axis-aligned or diamond rectangles, the shapes the lattice regions are made of."""
    x, y = draw(coords), draw(coords)
    w, h = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    if draw(st.booleans()):
        return Region(polygon=((x, y), (x + w, y), (x + w, y + h), (x, y + h)))
    return Region(polygon=((x, y), (x + w, y + w), (x + w - h, y + w + h), (x - h, y + h)))


@settings(max_examples=120, deadline=None)
@given(convex_quads(), convex_quads())
def test_region_subset_matches_arrangement_oracle(A, B):
    assert region_subset(A, B) == region_subset_bruteforce(A, B)


def test_region_subset_with_segments():
    seg = Region(segments=(((0, 0), (2, 2)),))
    assert region_subset(seg, Region(polygon=SQUARE))
    assert not region_subset(Region(segments=(((0, 0), (3, 3)),)), Region(polygon=SQUARE))
    assert region_subset_bruteforce(seg, Region(polygon=SQUARE))
