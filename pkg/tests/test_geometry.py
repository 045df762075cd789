"""Polygon measures, shape builders, containment, crossing detection."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from alphacheeger import (
    PolyShape,
    build_cut_corner_rectangle,
    build_topped_substrip,
    contains_points,
    cut_corner_area,
    cut_corner_perimeter,
    measure,
    regular_polygon,
    scale_shape,
    stadium_area,
    stadium_perimeter,
    translate_shape,
)
from alphacheeger.geometry import first_segment_intersection, polyline_is_simple

SQUARE = PolyShape(np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]))


def test_measure_square():
    area, perim = measure(SQUARE)
    assert area == pytest.approx(4.0, abs=1e-15)
    assert perim == pytest.approx(8.0, abs=1e-15)


def test_measure_square_with_hole():
    hole = np.array([[0.5, 0.5], [1.5, 0.5], [1.5, 1.5], [0.5, 1.5]])
    shape = PolyShape(SQUARE.vertices, holes=(hole,))
    area, perim = measure(shape)
    assert area == pytest.approx(3.0, abs=1e-14)
    assert perim == pytest.approx(12.0, abs=1e-14)


def test_measure_rejects_clockwise_outer_loop():
    with pytest.raises(ValueError):
        measure(PolyShape(SQUARE.vertices[::-1]))


def test_regular_polygon_approaches_the_disk():
    area, perim = measure(regular_polygon(10_000))
    assert area == pytest.approx(math.pi, rel=1e-7)
    assert perim == pytest.approx(2 * math.pi, rel=1e-7)
    with pytest.raises(ValueError):
        regular_polygon(2)


def _convergence_order(errors, resolutions):
    return math.log(errors[0] / errors[-1]) / math.log(resolutions[-1] / resolutions[0])


@pytest.mark.parametrize("builder,exact", [
    (lambda n: build_cut_corner_rectangle(4.0, 0.7, n),
     (cut_corner_area(4.0, 0.7), cut_corner_perimeter(4.0, 0.7))),
    (lambda n: build_topped_substrip(2.0, n),
     (stadium_area(2.0), stadium_perimeter(2.0))),
])
def test_builder_convergence_is_second_order(builder, exact):
    resolutions = (100, 1000, 10_000)
    area_err, perim_err = [], []
    for n in resolutions:
        area, perim = measure(builder(n))
        area_err.append(abs(area - exact[0]))
        perim_err.append(abs(perim - exact[1]))
    assert _convergence_order(area_err, resolutions) >= 1.9
    assert _convergence_order(perim_err, resolutions) >= 1.9
    # and the finest resolution is already deep in closed-form agreement
    assert area_err[-1] <= 1e-7 * exact[0]
    assert perim_err[-1] <= 1e-7 * exact[1]


@given(st.floats(min_value=-10.0, max_value=10.0),
       st.floats(min_value=-10.0, max_value=10.0))
def test_translation_leaves_measures_unchanged(dx, dy):
    shape = build_cut_corner_rectangle(5.0, 0.5, 400)
    area, perim = measure(shape)
    area_t, perim_t = measure(translate_shape(shape, dx, dy))
    assert area_t == pytest.approx(area, rel=1e-12)
    assert perim_t == pytest.approx(perim, rel=1e-12)


@given(st.floats(min_value=0.1, max_value=10.0))
def test_scaling_law_on_measures(t):
    shape = build_topped_substrip(1.3, 400)
    area, perim = measure(shape)
    area_s, perim_s = measure(scale_shape(shape, t))
    assert area_s == pytest.approx(t * t * area, rel=1e-12)
    assert perim_s == pytest.approx(t * perim, rel=1e-12)


def test_cut_corner_builder_validates_radius():
    with pytest.raises(ValueError):
        build_cut_corner_rectangle(4.0, 0.0, 100)
    with pytest.raises(ValueError):
        build_cut_corner_rectangle(4.0, 1.2, 100)
    with pytest.raises(ValueError):
        build_cut_corner_rectangle(2.0, 1.0 + 1e-6, 100)


def test_cut_corner_builder_full_radius_is_a_stadium():
    # t = 1 rounds the corners completely: same shape as the capped
    # substrip of length L - 2
    area, perim = measure(build_cut_corner_rectangle(5.0, 1.0, 2000))
    area_s, perim_s = measure(build_topped_substrip(3.0, 2000))
    assert area == pytest.approx(area_s, rel=1e-6)
    assert perim == pytest.approx(perim_s, rel=1e-6)


def test_contains_points_square_and_hole():
    hole = np.array([[0.5, 0.5], [1.5, 0.5], [1.5, 1.5], [0.5, 1.5]])
    shape = PolyShape(SQUARE.vertices, holes=(hole,))
    pts = np.array([
        [0.25, 0.25],   # in the solid part
        [1.0, 1.0],     # inside the hole
        [3.0, 1.0],     # outside
        [2.0 + 1e-12, 1.9],  # a hair outside the right edge
    ])
    assert contains_points(shape, pts).tolist() == [True, False, False, False]
    # with slack the near-boundary point is reclaimed
    assert contains_points(shape, pts, tol=1e-9).tolist() == [True, False, False, True]
    with pytest.raises(ValueError):
        contains_points(shape, np.zeros(3))


def test_contains_points_matches_disk_geometry():
    disk = regular_polygon(512)
    rng = np.random.Generator(np.random.Philox(5))
    pts = rng.uniform(-1.2, 1.2, size=(2000, 2))
    radii = np.hypot(pts[:, 0], pts[:, 1])
    clear = np.abs(radii - 1.0) > 1e-2  # keep away from the polygonized rim
    got = contains_points(disk, pts[clear])
    assert np.array_equal(got, radii[clear] < 1.0)


def test_first_segment_intersection_detects_a_bowtie():
    bowtie = np.array([[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 2.0]])
    pair = first_segment_intersection(bowtie, closed_a=True)
    assert pair == (0, 2)
    assert not polyline_is_simple(bowtie, closed=True)
    assert polyline_is_simple(SQUARE.vertices, closed=True)


def test_first_segment_intersection_between_paths():
    a = np.array([[0.0, 0.0], [4.0, 0.0]])
    b = np.array([[2.0, -1.0], [2.0, 1.0]])
    assert first_segment_intersection(a, b) == (0, 0)
    c = np.array([[0.0, 1.0], [4.0, 1.0]])
    assert first_segment_intersection(a, c) is None


def test_polyshape_requires_planar_loop():
    with pytest.raises(ValueError):
        PolyShape(np.array([[0.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        PolyShape(np.zeros((4, 3)))
