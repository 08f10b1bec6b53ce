from __future__ import annotations

import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import euclid, location, polygon
from polyudg.exact_field import QuadExt
from polyudg.polygon_metric import (
    Location,
    Metric,
    Point4,
    SidePoint,
    check_vertex_closure,
    classify_point,
    embed_float,
    locate_on_boundary,
    orbit,
    orbit_list,
    polygon_vertices,
    rotate_step,
    side_point,
)

METRICS = list(Metric)
coords = st.integers(min_value=-40, max_value=40)


def rand_point(rng: random.Random, metric: Metric, lo: int = -30, hi: int = 30) -> Point4:
    return Point4.of(metric, *(F(rng.randint(lo, hi), rng.choice((1, 1, 2, 4))) for _ in range(4)))


def rot(p: Point4, k: int) -> Point4:
    for _ in range(k):
        p = rotate_step(p)
    return p


# ---- vertices -----------------------------------------------------------------

def test_vertex_examples():
    assert [v.t for v in polygon_vertices(Metric.OCTAGON)[:4]] == [
        (4, 0, 0, 0), (0, 2, 0, 2), (0, 0, 4, 0), (0, -2, 0, 2)]
    assert [v.t for v in polygon_vertices(Metric.DECAGON)[:3]] == [(-2, 2, 0, 0), (2, 0, 2, 0), (3, -1, 1, 1)]
    dod = {v.t for v in polygon_vertices(Metric.DODECAGON)}
    assert {(12, 0, 0, 0), (0, 6, 6, 0), (6, 0, 0, 6), (0, 0, 12, 0)} <= dod


@pytest.mark.parametrize("metric", METRICS)
def test_vertices_match_trigonometry(metric):
    verts = polygon_vertices(metric)
    assert len(verts) == metric.n_vertices
    for v, (x, y) in zip(verts, polygon(metric)):
        ex, ey = euclid(v)
        assert abs(ex - x) < 1e-40 and abs(ey - y) < 1e-40
        assert classify_point(v) is Location.BOUNDARY


@pytest.mark.parametrize("metric", METRICS)
def test_vertex_closure_check(metric):
    check_vertex_closure(metric)


# ---- rotations ----------------------------------------------------------------

def test_rotation_examples():
    assert rotate_step(Point4.of("octagon", 4, 0, 0, 0)).t == (0, 2, 0, 2)
    assert rotate_step(Point4.of("decagon", 9, -3, 3, -1)).t == (6, -2, -2, 2)
    assert rotate_step(Point4.of("dodecagon", 12, 0, 0, 0)).t == (6, 0, 0, 6)
    for m in METRICS:
        assert rotate_step(Point4.origin(m)).is_origin()


@pytest.mark.parametrize("metric", METRICS)
def test_rotation_closure(metric):
    rng = random.Random(7)
    n = metric.orbit_size
    for _ in range(1000):
        p = rand_point(rng, metric)
        assert rot(p, n) == p
        assert rot(p, n // 2) == -p


@pytest.mark.parametrize("metric", METRICS)
def test_rotation_is_euclidean_rotation(metric):
    rng = random.Random(3)
    angle = mpmath.pi / {Metric.OCTAGON: 4, Metric.DECAGON: 5, Metric.DODECAGON: 3}[metric]
    for _ in range(200):
        p = rand_point(rng, metric)
        x, y = euclid(p)
        rx, ry = euclid(rotate_step(p))
        assert abs(rx - (x * mpmath.cos(angle) - y * mpmath.sin(angle))) < 1e-35
        assert abs(ry - (x * mpmath.sin(angle) + y * mpmath.cos(angle))) < 1e-35


def _decagon_printed(a, b, c, d):
    """Closed forms for two, three and four steps as printed in the source tables."""
    p3 = ((-a + 5 * b - 5 * c + 5 * d) / 4, (a - b + c - 5 * d) / 4, (3 * a + 5 * b - c + 5 * d) / 4, (a + 3 * b + c - d) / 4)
    p4 = ((a - 5 * b - 5 * c + 5 * d) / 4, (a + b + c - 5 * d) / 4, (3 * a + 5 * b + c - 5 * d) / 4, (a + 3 * b - c + d) / 4)
    p5 = ((-a - 5 * b + 5 * c - 15 * d) / 4, (-a - b - 3 * c + 5 * d) / 4, (a + 5 * b - c - 5 * d) / 4, (a + b - c - d) / 4)
    return p3, p4, p5


def _p4_corrected(a, b, c, d):
    # the printed second component carries +a where the rotation gives -a
    return ((a - 5 * b - 5 * c + 5 * d) / 4, (-a + b + c - 5 * d) / 4, (3 * a + 5 * b + c - 5 * d) / 4, (a + 3 * b - c + d) / 4)


def test_decagon_closed_forms():
    rng = random.Random(11)
    printed_p4_hits = 0
    for _ in range(1000):
        t = tuple(F(rng.randint(-60, 60)) for _ in range(4))
        p = Point4(Metric.DECAGON, t)
        p3, p4, p5 = _decagon_printed(*t)
        assert rot(p, 2).t == p3
        assert rot(p, 4).t == p5
        assert rot(p, 3).t == _p4_corrected(*t)
        printed_p4_hits += rot(p, 3).t == p4
    # the printed p4 only agrees where a = 0
    assert printed_p4_hits < 20


def test_printed_p4_is_not_a_rotation():
    # independent of rotate_step: rotate a1 by 3*pi/5 in the Euclidean plane
    a1 = Point4.of("decagon", -2, 2, 0, 0)
    x, y = euclid(a1)
    th = 3 * mpmath.pi / 5
    want = (x * mpmath.cos(th) - y * mpmath.sin(th), x * mpmath.sin(th) + y * mpmath.cos(th))
    corrected = euclid(Point4(Metric.DECAGON, _p4_corrected(*a1.t)))
    printed = euclid(Point4(Metric.DECAGON, _decagon_printed(*a1.t)[1]))
    assert abs(corrected[0] - want[0]) + abs(corrected[1] - want[1]) < 1e-40
    assert abs(printed[0] - want[0]) + abs(printed[1] - want[1]) > 0.5


def test_octagon_and_dodecagon_closed_forms():
    rng = random.Random(5)
    for _ in range(300):
        a, b, c, d = (F(rng.randint(-50, 50)) for _ in range(4))
        p = Point4(Metric.OCTAGON, (a, b, c, d))
        assert rot(p, 2).t == (-c, -d, a, b)
        assert rot(p, 3).t == (-b - d, -(a + c) / 2, b - d, (a - c) / 2)
        q = Point4(Metric.DODECAGON, (a, b, c, d))
        assert rot(q, 2).t == ((-a - 3 * d) / 2, (-b - c) / 2, (3 * b - c) / 2, (a - d) / 2)


# ---- orbits -------------------------------------------------------------------

def test_orbit_examples():
    assert orbit(Point4.of("octagon", 4, 0, 0, 0)) == frozenset(polygon_vertices(Metric.OCTAGON))
    for m in METRICS:
        assert orbit(Point4.origin(m)) == {Point4.origin(m)}
    d1 = orbit_list(Point4.of("decagon", -20, 10, -4, 2))
    assert len(set(d1)) == 10
    assert [p.t for p in d1[:2]] == [(-20, 10, -4, 2), (-5, 3, 9, -3)]


@pytest.mark.parametrize("metric", METRICS)
@settings(max_examples=60, deadline=None)
@given(a=coords, b=coords, c=coords, d=coords)
def test_orbit_size_divides(metric, a, b, c, d):
    assert metric.orbit_size % len(orbit(Point4.of(metric, a, b, c, d))) == 0


# ---- side points and classification ---------------------------------------------

def test_side_point_examples():
    r2, r3 = QuadExt(0, 1, 2), QuadExt(0, 1, 3)
    assert side_point(Metric.OCTAGON, SidePoint(0, F(1, 2))).t == (2, 1, 0, 1)
    assert side_point(Metric.OCTAGON, SidePoint(0, r2 - 1)).t == (12, -6, 4, -2)
    assert side_point(Metric.DODECAGON, SidePoint(1, r3 / 6)).t == (-3, 7, 9, -1)
    for m in METRICS:
        for k, v in enumerate(polygon_vertices(m)):
            assert side_point(m, SidePoint(k, 0)) == v
    with pytest.raises(ValueError):
        side_point(Metric.OCTAGON, SidePoint(0, F(3, 2)))
    with pytest.raises(ValueError):
        side_point(Metric.OCTAGON, SidePoint(0, -r2 + 1 - 1))


def test_classify_examples():
    assert classify_point(Point4.origin(Metric.OCTAGON)) is Location.INSIDE
    assert classify_point(Point4.of("octagon", 4, 0, 0, 0)) is Location.BOUNDARY
    assert classify_point(Point4.of("octagon", 4, 2, 0, 2)) is Location.OUTSIDE
    assert classify_point(Point4.of("octagon", 8, -3, 2, -1)) is Location.BOUNDARY
    assert classify_point(Point4.of("dodecagon", -9, 9, 15, -3)) is Location.BOUNDARY


@pytest.mark.parametrize("metric", METRICS)
def test_side_points_are_boundary(metric):
    rng = random.Random(17)
    for _ in range(100):
        t = F(rng.randint(0, 1000), 1000)
        k = rng.randrange(metric.n_vertices)
        p = side_point(metric, SidePoint(k, t))
        assert classify_point(p) is Location.BOUNDARY
        loc = locate_on_boundary(p)
        assert side_point(metric, loc) == p


@pytest.mark.parametrize("metric", METRICS)
def test_classify_agrees_with_gauge_oracle(metric):
    rng = random.Random(23)
    pts = [rand_point(rng, metric, -15, 15) for _ in range(300)]
    pts += [side_point(metric, SidePoint(rng.randrange(metric.n_vertices), F(rng.randint(0, 7), 7))) for _ in range(100)]
    for p in pts:
        assert classify_point(p).value == location(p), p


@pytest.mark.parametrize("metric", METRICS)
def test_classify_invariant_under_symmetry(metric):
    rng = random.Random(29)
    for _ in range(300):
        p = rand_point(rng, metric, -12, 12)
        loc = classify_point(p)
        assert classify_point(rotate_step(p)) is loc
        assert classify_point(-p) is loc


# ---- misc ---------------------------------------------------------------------

def test_embed_float():
    assert embed_float(Point4.of("octagon", 4, 0, 0, 0)) == (4.0, 0.0)
    x, y = embed_float(Point4.of("octagon", 0, 2, 0, 2))
    assert math.isclose(x, 2 * math.sqrt(2)) and math.isclose(y, 2 * math.sqrt(2))
    assert embed_float(Point4.of("decagon", -2, 2, 0, 0), precision=9) == (2.0, 0.0)


def test_point_json_round_trip():
    p = Point4.of("decagon", F(1, 2), -3, F(-5, 4), 0)
    obj = p.to_json()
    assert obj == {"metric": "decagon", "t": ["1/2", "-3", "-5/4", "0"]}
    assert Point4.from_json(obj) == p


def test_mixed_metrics_rejected():
    with pytest.raises(ValueError):
        Point4.of("octagon", 1, 0, 0, 0) + Point4.of("decagon", 1, 0, 0, 0)
