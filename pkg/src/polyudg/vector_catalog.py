"""Named orbits of generating and accidental unit vectors for each metric."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exact_field import QuadExt
from .polygon_metric import (
    Location,
    Metric,
    Point4,
    SidePoint,
    classify_point,
    orbit_list,
    side_point,
)


class Role(enum.Enum):
    GENERATING = "generating"
    ACCIDENTAL = "accidental"


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class NamedOrbit:
    name: str
    metric: Metric
    seed: Point4
    definition: SidePoint
    role: Role
    ordered: tuple[Point4, ...] = field(repr=False)

    @property
    def members(self) -> frozenset[Point4]:
        return frozenset(self.ordered)

    def label(self, v: Point4) -> str:
        """Name of a member in subscript style, e.g. ``d3`` or ``-a2``."""
        half = len(self.ordered) // 2
        idx = self.ordered.index(v)
        letter = self.name.rstrip("0123456789")
        return f"{'-' if idx >= half else ''}{letter}{idx % half + 1}"


@dataclass(frozen=True)
class VectorCatalog:
    metric: Metric
    orbits: tuple[NamedOrbit, ...]

    def __post_init__(self) -> None:
        lookup = {}
        for orb in self.orbits:
            for v in orb.ordered:
                lookup.setdefault(v, orb)
        object.__setattr__(self, "_lookup", lookup)

    @property
    def generating(self) -> tuple[NamedOrbit, ...]:
        return tuple(o for o in self.orbits if o.role is Role.GENERATING)

    @property
    def accidental(self) -> tuple[NamedOrbit, ...]:
        return tuple(o for o in self.orbits if o.role is Role.ACCIDENTAL)

    @property
    def U(self) -> frozenset[Point4]:
        return frozenset(v for o in self.generating for v in o.ordered)

    @property
    def V(self) -> frozenset[Point4]:
        return frozenset(v for o in self.accidental for v in o.ordered)

    @property
    def W(self) -> frozenset[Point4]:
        return self.U | self.V

    @property
    def names(self) -> list[str]:
        return [o.name for o in self.orbits]

    def __getitem__(self, name: str) -> NamedOrbit:
        for o in self.orbits:
            if o.name == name:
                return o
        raise KeyError(name)

    def orbit_of(self, v: Point4) -> NamedOrbit | None:
        return self._lookup.get(v)

    def generating_only(self) -> VectorCatalog:
        return VectorCatalog(self.metric, self.generating)

    def to_json(self) -> dict:
        return {
            "metric": self.metric.value,
            "orbits": [
                {
                    "name": o.name,
                    "role": o.role.value,
                    "seed": o.seed.to_json()["t"],
                    "side": o.definition.side,
                    "ratio": o.definition.ratio(self.metric).to_json(),
                    "members": [v.to_json()["t"] for v in o.ordered],
                }
                for o in self.orbits
            ],
            "sizes": {"U": len(self.U), "V": len(self.V), "W": len(self.W)},
        }


def orbit_of(cat: VectorCatalog, v: Point4) -> NamedOrbit | None:
    return cat.orbit_of(v)


def _r(a, b=0) -> tuple:
    return (Fraction(a), Fraction(b))


G, A = Role.GENERATING, Role.ACCIDENTAL

# name, role, side, ratio (a, b) meaning a + b*sqrt(d), printed seed
_DATA: dict[Metric, list[tuple]] = {
    Metric.OCTAGON: [
        ("a1", G, 0, _r(0), (4, 0, 0, 0)),
        ("b1", G, 0, _r(Fraction(1, 2)), (2, 1, 0, 1)),
        ("c1", G, 0, _r(1, Fraction(-1, 2)), (-2, 4, -2, 2)),
        ("d1", G, 0, _r(0, Fraction(1, 2)), (6, -2, 2, 0)),
        ("e1", A, 0, _r(-1, 1), (12, -6, 4, -2)),
        ("f1", A, 0, _r(2, -1), (-8, 8, -4, 4)),
        ("g1", A, 0, _r(Fraction(3, 2), -1), (-6, 7, -4, 3)),
        ("h1", A, 0, _r(Fraction(-1, 2), 1), (10, -5, 4, -1)),
        ("i1", A, 0, _r(Fraction(-1, 2), Fraction(1, 2)), (8, -3, 2, -1)),
        ("j1", A, 0, _r(Fraction(3, 2), Fraction(-1, 2)), (-4, 5, -2, 3)),
    ],
    Metric.DECAGON: [
        ("a1", G, 0, _r(0), (-2, 2, 0, 0)),
        ("b1", G, 0, _r(Fraction(3, 2), Fraction(-1, 2)), (9, -3, 3, -1)),
        ("c1", G, 0, _r(Fraction(-1, 2), Fraction(1, 2)), (-9, 5, -1, 1)),
        ("d1", A, 0, _r(-2, 1), (-20, 10, -4, 2)),
        ("e1", A, 0, _r(3, -1), (20, -8, 6, -2)),
    ],
    Metric.DODECAGON: [
        ("a2", G, 0, _r(1), (0, 6, 6, 0)),
        ("b1", G, 0, _r(Fraction(2, 3), Fraction(-1, 3)), (-2, 8, 4, -2)),
        ("c1", G, 0, _r(Fraction(5, 6), Fraction(-1, 3)), (-4, 9, 5, -2)),
        ("d1", G, 0, _r(1, Fraction(-1, 3)), (-6, 10, 6, -2)),
        ("e1", G, 0, _r(Fraction(4, 3), Fraction(-1, 3)), (-10, 12, 8, -2)),
        ("f1", G, 1, _r(0, Fraction(1, 6)), (-3, 7, 9, -1)),
        ("g1", G, 1, _r(0, Fraction(1, 3)), (-6, 8, 12, -2)),
        ("h1", A, 0, _r(Fraction(7, 6), Fraction(-2, 3)), (-14, 15, 7, -4)),
        ("i1", A, 0, _r(Fraction(4, 3), Fraction(-2, 3)), (-16, 16, 8, -4)),
        ("j1", A, 0, _r(Fraction(1, 3)), (8, 2, 2, 0)),
        ("k1", A, 0, _r(Fraction(1, 2)), (6, 3, 3, 0)),
        ("l1", A, 0, _r(Fraction(5, 3), Fraction(-2, 3)), (-20, 18, 10, -4)),
        ("m1", A, 0, _r(Fraction(7, 6), Fraction(-1, 3)), (-8, 11, 7, -2)),
        ("n1", A, 0, _r(Fraction(2, 3)), (4, 4, 4, 0)),
        ("p1", A, 0, _r(Fraction(5, 6)), (2, 5, 5, 0)),
        ("q1", A, 0, _r(Fraction(3, 2), Fraction(-1, 3)), (-12, 13, 9, -2)),
        ("r1", A, 1, _r(0, Fraction(1, 2)), (-9, 9, 15, -3)),
    ],
}

# Orbit members as listed explicitly in the source tables (rotation order).
PRINTED_MEMBERS: dict[Metric, dict[str, list[tuple]]] = {
    Metric.OCTAGON: {
        "a1": [(4, 0, 0, 0), (0, 2, 0, 2), (0, 0, 4, 0), (0, -2, 0, 2),
               (-4, 0, 0, 0), (0, -2, 0, -2), (0, 0, -4, 0), (0, 2, 0, -2)],
        "b1": [(2, 1, 0, 1), (0, 1, 2, 1), (0, -1, 2, 1), (-2, -1, 0, 1),
               (-2, -1, 0, -1), (0, -1, -2, -1), (0, 1, -2, -1), (2, 1, 0, -1)],
        "c1": [(-2, 4, -2, 2), (2, 0, 6, -2), (2, -2, -2, 4), (-6, 2, 2, 0),
               (2, -4, 2, -2), (-2, 0, -6, 2), (-2, 2, 2, -4), (6, -2, -2, 0)],
        "d1": [(6, -2, 2, 0), (-2, 2, -2, 4), (-2, 0, 6, -2), (2, -4, -2, 2),
               (-6, 2, -2, 0), (2, -2, 2, -4), (2, 0, -6, 2), (-2, 4, 2, -2)],
    },
    Metric.DECAGON: {
        "a1": [(-2, 2, 0, 0), (2, 0, 2, 0), (3, -1, 1, 1), (-3, 1, 1, 1), (-2, 0, 2, 0)],
        "b1": [(9, -3, 3, -1), (6, -2, -2, 2), (-11, 5, 1, 1), (1, -1, 5, -1), (9, -5, -1, 1)],
        "c1": [(-9, 5, -1, 1), (-1, 1, 5, -1), (11, -5, 1, 1), (-6, 2, -2, 2), (-9, 3, 3, -1)],
        "d1": [(-20, 10, -4, 2), (-5, 3, 9, -3), (25, -11, 1, 1), (-10, 4, -6, 4), (-20, 8, 6, -2)],
        "e1": [(20, -8, 6, -2), (10, -4, -6, 4), (-25, 11, 1, 1), (5, -3, 9, -3), (20, -10, -4, 2)],
    },
    Metric.DODECAGON: {},
}

EXPECTED_SIZES = {
    Metric.OCTAGON: (32, 48),
    Metric.DECAGON: (30, 20),
    Metric.DODECAGON: (42, 60),
}


def _build_orbit(metric: Metric, row: tuple) -> NamedOrbit:
    name, role, side, (ra, rb), seed_t = row
    definition = SidePoint(side, QuadExt(ra, rb, metric.radicand))
    seed = Point4.of(metric, *seed_t)
    try:
        computed = side_point(metric, definition)
    except ValueError as exc:
        raise CatalogError(f"{metric.value} orbit {name}: {exc}") from None
    if computed != seed:
        raise CatalogError(f"{metric.value} orbit {name}: ratio gives {computed}, table says {seed}")
    ordered = tuple(orbit_list(seed))
    return NamedOrbit(name, metric, seed, definition, role, ordered)


def validate_orbits(metric: Metric, orbits: Iterable[NamedOrbit], expect_sizes: bool = True) -> None:
    orbits = list(orbits)
    seen: dict[Point4, str] = {}
    for o in orbits:
        if len(set(o.ordered)) != metric.orbit_size:
            raise CatalogError(f"{metric.value} orbit {o.name} is degenerate ({len(set(o.ordered))} members)")
        for v in o.ordered:
            if not v.is_integral():
                raise CatalogError(f"{metric.value} orbit {o.name}: non-integral member {v}")
            if classify_point(v) is not Location.BOUNDARY:
                raise CatalogError(f"{metric.value} orbit {o.name}: member {v} is not a unit vector")
            if v in seen:
                raise CatalogError(f"{metric.value} orbits {seen[v]} and {o.name} overlap at {v}")
            seen[v] = o.name
        printed = PRINTED_MEMBERS[metric].get(o.name)
        if printed is not None:
            got = [v.t for v in o.ordered[: len(printed)]]
            want = [tuple(Fraction(c) for c in p) for p in printed]
            if got != want:
                raise CatalogError(f"{metric.value} orbit {o.name}: members disagree with the printed list")
    if expect_sizes:
        nu = sum(len(o.ordered) for o in orbits if o.role is Role.GENERATING)
        nv = sum(len(o.ordered) for o in orbits if o.role is Role.ACCIDENTAL)
        if (nu, nv) != EXPECTED_SIZES[metric]:
            raise CatalogError(f"{metric.value} catalog has |U|={nu}, |V|={nv}; expected {EXPECTED_SIZES[metric]}")


@lru_cache(maxsize=None)
def catalog(metric: Metric | str) -> VectorCatalog:
    """The validated vector catalog of a metric.

    Raises CatalogError naming the offending orbit if any check fails.
    """
    metric = Metric.parse(metric)
    orbits = tuple(_build_orbit(metric, row) for row in _DATA[metric])
    validate_orbits(metric, orbits)
    return VectorCatalog(metric, orbits)
