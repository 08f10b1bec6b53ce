"""Regular octagon, decagon and dodecagon metrics.

A plane point is encoded as a 4-tuple ``(a, b, c, d)`` of rationals:

* octagon:    ``(a + b*sqrt2, c + d*sqrt2)``
* dodecagon:  ``(a + b*sqrt3, c + d*sqrt3)``
* decagon:    ``((a + b*sqrt5)*cos(pi/5), (c + d*sqrt5)*sin(pi/5))``

For the decagon the factors cos(pi/5) and sin(pi/5) are positive and common
to every x (resp. y) coordinate, so every orientation and betweenness test
can be run on the bracketed Q(sqrt5) coefficients alone.  This lets all
three metrics share one predicate kernel and keeps sin(pi/5), a nested
radical, out of the arithmetic entirely.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exact_field import QuadExt, as_rational, rational_to_str, sign_of


class Metric(enum.Enum):
    OCTAGON = "octagon"
    DECAGON = "decagon"
    DODECAGON = "dodecagon"

    @property
    def radicand(self) -> int:
        return _RADICAND[self]

    @property
    def n_vertices(self) -> int:
        return _NVERT[self]

    @property
    def orbit_size(self) -> int:
        """Size of a generic orbit; the dodecagon deliberately uses hexagonal orbits."""
        return _ORBIT[self]

    @property
    def rotation_step(self) -> float:
        return 2 * math.pi / self.orbit_size

    @classmethod
    def parse(cls, name: str | Metric) -> Metric:
        if isinstance(name, Metric):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown metric {name!r}; expected octagon, decagon or dodecagon") from None


_RADICAND = {Metric.OCTAGON: 2, Metric.DECAGON: 5, Metric.DODECAGON: 3}
_NVERT = {Metric.OCTAGON: 8, Metric.DECAGON: 10, Metric.DODECAGON: 12}
_ORBIT = {Metric.OCTAGON: 8, Metric.DECAGON: 10, Metric.DODECAGON: 6}


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Point4:
    metric: Metric
    t: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if len(self.t) != 4:
            raise ValueError("a point needs exactly four coordinates")
        if not all(type(c) is Fraction for c in self.t):
            object.__setattr__(self, "t", tuple(as_rational(c) for c in self.t))

    @classmethod
    def of(cls, metric: Metric | str, *coords) -> Point4:
        if len(coords) == 1:
            coords = tuple(coords[0])
        return cls(Metric.parse(metric), tuple(as_rational(c) for c in coords))

    @classmethod
    def origin(cls, metric: Metric) -> Point4:
        return cls(metric, (Fraction(0),) * 4)

    @property
    def x(self) -> QuadExt:
        """x-coordinate (decagon: the coefficient of cos(pi/5))."""
        return QuadExt(self.t[0], self.t[1], self.metric.radicand)

    @property
    def y(self) -> QuadExt:
        """y-coordinate (decagon: the coefficient of sin(pi/5))."""
        return QuadExt(self.t[2], self.t[3], self.metric.radicand)

    @classmethod
    def from_xy(cls, metric: Metric, x: QuadExt, y: QuadExt) -> Point4:
        return cls(metric, (x.a, x.b, y.a, y.b))

    def _same(self, other: Point4) -> None:
        if other.metric is not self.metric:
            raise ValueError(f"cannot combine {self.metric.value} and {other.metric.value} points")

    def __add__(self, other: Point4) -> Point4:
        self._same(other)
        return Point4(self.metric, tuple(u + v for u, v in zip(self.t, other.t)))

    def __sub__(self, other: Point4) -> Point4:
        self._same(other)
        return Point4(self.metric, tuple(u - v for u, v in zip(self.t, other.t)))

    def __neg__(self) -> Point4:
        return Point4(self.metric, tuple(-u for u in self.t))

    def scale(self, k: int | Fraction) -> Point4:
        return Point4(self.metric, tuple(u * k for u in self.t))

    def is_origin(self) -> bool:
        return not any(self.t)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.t)

    def key(self) -> tuple[Fraction, ...]:
        return self.t

    def to_json(self) -> dict:
        return {"metric": self.metric.value, "t": [rational_to_str(c) for c in self.t]}

    @classmethod
    def from_json(cls, obj: dict) -> Point4:
        return cls.of(obj["metric"], *obj["t"])

    def __repr__(self) -> str:
        return f"Point4({self.metric.value}, ({', '.join(rational_to_str(c) for c in self.t)}))"


def _rot_octagon(a, b, c, d):
    return (b - d, (a - c) / 2, b + d, (a + c) / 2)


def _rot_decagon(a, b, c, d):
    return (
        (a + 5 * b + 5 * c - 15 * d) / 4,
        (a + b - 3 * c + 5 * d) / 4,
        (a + 5 * b + c + 5 * d) / 4,
        (a + b + c + d) / 4,
    )


def _rot_dodecagon(a, b, c, d):
    return ((a - 3 * d) / 2, (b - c) / 2, (3 * b + c) / 2, (a + d) / 2)


_ROTATIONS = {
    Metric.OCTAGON: _rot_octagon,
    Metric.DECAGON: _rot_decagon,
    Metric.DODECAGON: _rot_dodecagon,
}


def rotate_step(p: Point4) -> Point4:
    """Rotate counterclockwise by one orbit step (pi/4, pi/5 or pi/3)."""
    return Point4(p.metric, _ROTATIONS[p.metric](*p.t))


def orbit_list(p: Point4) -> list[Point4]:
    """``[r^0 p, r^1 p, ..., -r^0 p, -r^1 p, ...]`` before deduplication."""
    half = p.metric.orbit_size // 2
    rots = [p]
    for _ in range(half - 1):
        rots.append(rotate_step(rots[-1]))
    return rots + [-q for q in rots]


def orbit(p: Point4) -> frozenset[Point4]:
    return frozenset(orbit_list(p))


_VERTEX_DATA = {
    Metric.OCTAGON: [(4, 0, 0, 0), (0, 2, 0, 2), (0, 0, 4, 0), (0, -2, 0, 2)],
    Metric.DECAGON: [(-2, 2, 0, 0), (2, 0, 2, 0), (3, -1, 1, 1), (-3, 1, 1, 1), (-2, 0, 2, 0)],
    Metric.DODECAGON: [(12, 0, 0, 0), (0, 6, 6, 0), (6, 0, 0, 6), (0, 0, 12, 0), (-6, 0, 0, 6), (0, -6, 6, 0)],
}


@lru_cache(maxsize=None)
def polygon_vertices(metric: Metric) -> tuple[Point4, ...]:
    """Counterclockwise vertex list of the unit polygon, starting on the positive x-axis."""
    half = [Point4.of(metric, *v) for v in _VERTEX_DATA[metric]]
    return tuple(half + [-v for v in half])


def check_vertex_closure(metric: Metric) -> None:
    """Cross-check the hardcoded polygon against the rotation maps.

    Raises AssertionError if the two sources disagree.
    """
    verts = polygon_vertices(metric)
    n = len(verts)
    if metric is Metric.DODECAGON:
        # hexagonal step skips a vertex: a_k -> a_{k+2}
        expected = {rotate_step(v): verts[(i + 2) % n] for i, v in enumerate(verts)}
    else:
        expected = {rotate_step(v): verts[(i + 1) % n] for i, v in enumerate(verts)}
    for got, want in expected.items():
        if got != want:
            raise AssertionError(f"{metric.value} vertex table disagrees with rotation: {got} != {want}")


@dataclass(frozen=True)
class SidePoint:
    """Point dividing side ``v_k v_{k+1}`` at ratio ``t`` measured from ``v_k``."""

    side: int
    t: QuadExt | Fraction | int

    def ratio(self, metric: Metric) -> QuadExt:
        t = self.t
        if isinstance(t, QuadExt):
            if t.d != metric.radicand:
                raise ValueError(f"ratio {t} is not in the field of the {metric.value} metric")
            return t
        return QuadExt(as_rational(t), 0, metric.radicand)


def side_point(metric: Metric, sp: SidePoint) -> Point4:
    t = sp.ratio(metric)
    if t.sign() < 0 or (t - 1).sign() > 0:
        raise ValueError(f"side ratio {t} is outside [0, 1]")
    verts = polygon_vertices(metric)
    v0 = verts[sp.side % len(verts)]
    v1 = verts[(sp.side + 1) % len(verts)]
    x = v0.x + t * (v1.x - v0.x)
    y = v0.y + t * (v1.y - v0.y)
    return Point4.from_xy(metric, x, y)


def _int_sides(metric: Metric):
    """Integer side data ``(vx, vy, ex, ey)`` per side, each entry a (p, q) pair.

    All polygon vertices are integral in their encodings, so the kernel below
    never needs a denominator.
    """
    verts = polygon_vertices(metric)
    out = []
    n = len(verts)
    for k in range(n):
        v0, v1 = verts[k].t, verts[(k + 1) % n].t
        v = tuple(int(c) for c in v0)
        e = tuple(int(c1 - c0) for c0, c1 in zip(v0, v1))
        out.append((v, e))
    return out


_SIDES = {m: _int_sides(m) for m in Metric}


def _between(lo_p: int, lo_q: int, hi_p: int, hi_q: int, p: int, q: int, d: int) -> bool:
    """Closed betweenness of p+q*sqrt(d) w.r.t. the two endpoints (either order)."""
    s1 = sign_of(p - lo_p, q - lo_q, d)
    s2 = sign_of(hi_p - p, hi_q - q, d)
    return s1 * s2 >= 0


def classify_scaled(metric: Metric, t: Sequence[int], scale: int = 1) -> Location:
    """Classify the point ``t / scale`` (t integral, scale > 0) against the polygon."""
    d = metric.radicand
    a, b, c, dd = t
    on_side = False
    for (va, vb, vc, vd), (ea, eb, ec, ed) in _SIDES[metric]:
        # w = t - scale*v ; cross(e, w) = ex*wy - ey*wx in Q(sqrt d)
        wa, wb, wc, wd = a - scale * va, b - scale * vb, c - scale * vc, dd - scale * vd
        cp = ea * wc + d * eb * wd - (ec * wa + d * ed * wb)
        cq = ea * wd + eb * wc - (ec * wb + ed * wa)
        s = sign_of(cp, cq, d)
        if s < 0:
            return Location.OUTSIDE
        if s == 0 and not on_side:
            # collinear with the side; require coordinatewise betweenness
            xa0, xb0 = scale * va, scale * vb
            ya0, yb0 = scale * vc, scale * vd
            if _between(xa0, xb0, xa0 + scale * ea, xb0 + scale * eb, a, b, d) and _between(
                ya0, yb0, ya0 + scale * ec, yb0 + scale * ed, c, dd, d
            ):
                on_side = True
    return Location.BOUNDARY if on_side else Location.INSIDE


def integer_scaled(p: Point4) -> tuple[tuple[int, int, int, int], int]:
    scale = math.lcm(*(c.denominator for c in p.t))
    return tuple(int(c * scale) for c in p.t), scale


def classify_point(p: Point4) -> Location:
    t, scale = integer_scaled(p)
    return classify_scaled(p.metric, t, scale)


def is_unit(p: Point4) -> bool:
    return classify_point(p) is Location.BOUNDARY


_SQRT = {2: math.sqrt(2), 3: math.sqrt(3), 5: math.sqrt(5)}
_COS36 = (1 + math.sqrt(5)) / 4
_SIN36 = math.sqrt(10 - 2 * math.sqrt(5)) / 4


def embed_float(p: Point4, precision: int | None = None) -> tuple[float, float]:
    """Euclidean coordinates as floats.

    Untrusted: used only for drawing, never for any predicate.
    ``precision`` rounds to that many decimal places.
    """
    r = _SQRT[p.metric.radicand]
    a, b, c, d = (float(v) for v in p.t)
    x, y = a + b * r, c + d * r
    if p.metric is Metric.DECAGON:
        x, y = x * _COS36, y * _SIN36
    if precision is not None:
        x, y = round(x, precision), round(y, precision)
    return x + 0.0, y + 0.0


def sort_points(points: Iterable[Point4]) -> list[Point4]:
    return sorted(points, key=Point4.key)


def locate_on_boundary(p: Point4) -> SidePoint | None:
    """Side index and ratio of a boundary point, using half-open sides ``[v_k, v_{k+1})``."""
    if classify_point(p) is not Location.BOUNDARY:
        return None
    verts = polygon_vertices(p.metric)
    n = len(verts)
    px, py = p.x, p.y
    for k in range(n):
        v0, v1 = verts[k], verts[(k + 1) % n]
        ex, ey = v1.x - v0.x, v1.y - v0.y
        if (ex * (py - v0.y) - ey * (px - v0.x)).sign() != 0:
            continue
        t = (px - v0.x) / ex if ex else (py - v0.y) / ey
        if t.sign() >= 0 and (t - 1).sign() < 0:
            return SidePoint(k, t)
    raise AssertionError(f"boundary point {p} not found on any side")  # unreachable for convex polygons
