"""Seed lists for the three small 5-chromatic graphs.

Set ``POLY_SEED_DIR`` to a directory holding ``g120.json``, ``g121.json`` or
``g295.json`` to replace the compiled-in lists; each file looks like
``{"metric": "octagon", "seeds": [["a", "b", "c", "d"], ...]}``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .polygon_metric import Metric, Point4

SEED_DIR_ENV = "POLY_SEED_DIR"


@dataclass(frozen=True)
class SeedList:
    metric: Metric
    points: tuple[Point4, ...]

    def __post_init__(self) -> None:
        if len(set(self.points)) != len(self.points):
            raise ValueError("seed points must be distinct")
        for p in self.points:
            if p.metric is not self.metric:
                raise ValueError(f"seed {p} does not belong to the {self.metric.value} metric")

    @classmethod
    def of(cls, metric: Metric | str, rows) -> SeedList:
        metric = Metric.parse(metric)
        return cls(metric, tuple(Point4.of(metric, *r) for r in rows))

    def to_json(self) -> dict:
        return {"metric": self.metric.value, "seeds": [p.to_json()["t"] for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> SeedList:
        return cls.of(obj["metric"], obj["seeds"])

    @classmethod
    def load(cls, path: str | Path) -> SeedList:
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


G120_SEEDS = [
    (-4, 4, 0, 0), (-4, 5, 2, -1), (-2, 2, 6, -4), (-2, 3, -4, 3), (-2, 4, -2, 2),
    (0, 1, 2, -1), (0, 2, 4, -2), (2, -1, -4, 3), (2, 0, -2, 2), (2, 1, 0, 1),
    (2, 2, 2, 0), (4, 0, -4, 4), (4, 0, 0, 0), (6, -2, 2, 0), (6, -1, 0, 1),
]

G121_SEEDS = [
    (0, 0, 0, 0), (-9, 5, -1, 1), (-8, 4, 0, 0), (-6, 4, 2, 0), (-5, 3, 3, -1),
    (-3, 3, -1, 1), (-2, 2, 0, 0), (1, 1, 3, -1), (5, -1, -1, 1),
    (6, -2, 0, 0), (8, -2, 2, 0), (9, -3, 3, -1), (14, -6, 0, 0),
]

G295_SEEDS = [
    (0, 0, 0, 0), (-12, 16, 0, 0), (-12, 16, 24, -4), (-12, 18, 6, 0), (-12, 18, 18, -4),
    (-12, 20, 0, 0), (-9, 14, 24, -5), (-9, 16, 6, -1), (-8, 10, -2, 4), (-8, 10, 10, -4),
    (-8, 12, 4, 0), (-6, 6, 6, -2), (-6, 7, 3, 0), (-6, 8, 0, 2), (-6, 8, 12, -6),
    (-6, 8, 12, -2), (-6, 9, 9, 0), (-6, 10, 6, -2), (-6, 10, 18, -2), (-6, 12, 0, 2),
    (-6, 12, 12, -2), (-6, 14, 6, -2), (-6, 14, 18, -2), (-6, 16, 12, -2), (-5, 7, 1, 1),
    (-5, 9, 7, -3), (-5, 15, 13, -3), (-4, 4, -4, 4), (-4, 6, 2, 0), (-4, 9, 17, -2),
    (-4, 12, 8, 0), (-3, 6, 12, -3), (-3, 7, 9, -1), (-3, 8, 6, -3), (-3, 8, 6, 1),
    (-2, 4, 4, -2), (-2, 4, 4, 2), (-2, 8, 4, -2), (-2, 8, 16, -2), (0, 1, -3, 2),
    (0, 2, -6, 4), (0, 4, 0, 0), (0, 4, 12, -4), (0, 5, 9, -2), (0, 6, 6, 0), (0, 8, 24, -4),
    (2, 8, 8, -2), (2, 8, 20, -2), (4, 0, 4, 0), (6, -2, 6, -2),
]

_BUILTIN = {
    "g120": (Metric.OCTAGON, G120_SEEDS),
    "g121": (Metric.DECAGON, G121_SEEDS),
    "g295": (Metric.DODECAGON, G295_SEEDS),
}


def seed_list(name: str) -> SeedList:
    """Seed list by construction name, honouring ``POLY_SEED_DIR``."""
    name = name.lower()
    if name not in _BUILTIN:
        raise KeyError(f"no seed list named {name!r}")
    override = os.environ.get(SEED_DIR_ENV)
    if override:
        path = Path(override) / f"{name}.json"
        if path.is_file():
            seeds = SeedList.load(path)
            if seeds.metric is not _BUILTIN[name][0]:
                raise ValueError(f"{path}: {name} seeds must use the {_BUILTIN[name][0].value} metric")
            return seeds
    metric, rows = _BUILTIN[name]
    return SeedList.of(metric, rows)


def seed_metric(name: str) -> Metric:
    return _BUILTIN[name.lower()][0]
