"""Unit-distance graphs from Minkowski sums and orbit closures."""

from __future__ import annotations

import enum
import hashlib
import json
import math
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .polygon_metric import (
    Location,
    Metric,
    Point4,
    classify_scaled,
    locate_on_boundary,
    orbit,
    sort_points,
)
from .seeds import SeedList
from .vector_catalog import VectorCatalog, catalog

UNCATALOGED = "UNCATALOGED"


class EdgeMode(enum.Enum):
    CATALOG_U = "catalog-u"
    CATALOG_W = "catalog-w"
    FULL = "full"


@dataclass(frozen=True)
class UnitGraph:
    metric: Metric
    vertices: tuple[Point4, ...]
    edges: tuple[tuple[int, int, str], ...]
    provenance: str = ""
    index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise ValueError("duplicate vertices")
        seen = set()
        for i, j, _ in self.edges:
            if not (0 <= i < j < len(self.vertices)):
                raise ValueError(f"bad edge ({i}, {j})")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
        object.__setattr__(self, "index", index)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]

    def induced(self, keep: Iterable[int], provenance: str | None = None) -> UnitGraph:
        """Induced subgraph on ``keep``; vertices stay in their relative order."""
        keep = sorted(set(keep))
        remap = {old: new for new, old in enumerate(keep)}
        edges = tuple(
            (remap[i], remap[j], lab) for i, j, lab in self.edges if i in remap and j in remap
        )
        return UnitGraph(
            self.metric,
            tuple(self.vertices[i] for i in keep),
            edges,
            provenance if provenance is not None else f"induced subgraph of [{self.provenance}]",
        )

    def filter_edges(self, labels: set[str]) -> UnitGraph:
        return UnitGraph(
            self.metric,
            self.vertices,
            tuple(e for e in self.edges if e[2] in labels),
            self.provenance,
        )

    def canonical_hash(self) -> str:
        payload = json.dumps(
            {"metric": self.metric.value, "vertices": [v.to_json()["t"] for v in self.vertices], "edges": [list(e) for e in self.edges]},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_json(self) -> dict:
        return {
            "metric": self.metric.value,
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [[i, j, lab] for i, j, lab in self.edges],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> UnitGraph:
        metric = Metric.parse(obj["metric"])
        vertices = tuple(Point4.from_json(v) for v in obj["vertices"])
        edges = tuple((int(i), int(j), str(lab)) for i, j, lab in obj["edges"])
        return cls(metric, vertices, edges, obj.get("provenance", ""))

    def to_dimacs(self) -> str:
        lines = [f"c {self.provenance}" if self.provenance else "c unit-distance graph", f"p edge {self.n} {self.m}"]
        lines += [f"e {i + 1} {j + 1}" for i, j, _ in self.edges]
        return "\n".join(lines) + "\n"


def minkowski_sum(A: Iterable[Point4], B: Iterable[Point4]) -> frozenset[Point4]:
    B = list(B)
    return frozenset(x + y for x in A for y in B)


def orbit_closure(seeds: SeedList | Iterable[Point4]) -> frozenset[Point4]:
    points = seeds.points if isinstance(seeds, SeedList) else seeds
    out: set[Point4] = set()
    for p in points:
        out |= orbit(p)
    return frozenset(out)


def _scaled(vertices: Sequence[Point4]) -> tuple[list[tuple[int, ...]], int]:
    scale = math.lcm(1, *(c.denominator for v in vertices for c in v.t))
    return [tuple(int(c * scale) for c in v.t) for v in vertices], scale


class _EdgeOracle:
    """Caches the verdict for each distinct difference vector."""

    def __init__(self, metric: Metric, cat: VectorCatalog, mode: EdgeMode, scale: int) -> None:
        self.metric, self.cat, self.mode, self.scale = metric, cat, mode, scale
        allowed = cat.U if mode is EdgeMode.CATALOG_U else cat.W
        self.table: dict[tuple[int, ...], str | None] = {}
        if mode is not EdgeMode.FULL:
            for v in allowed:
                self.table[tuple(int(c * scale) for c in v.t)] = cat.orbit_of(v).name

    def label(self, diff: tuple[int, ...]) -> str | None:
        table = self.table
        if diff in table:
            return table[diff]
        if self.mode is not EdgeMode.FULL:
            return None
        lab = None
        if classify_scaled(self.metric, diff, self.scale) is Location.BOUNDARY:
            p = Point4(self.metric, tuple(Fraction(c, self.scale) for c in diff))
            orb = self.cat.orbit_of(p)
            lab = orb.name if orb is not None else UNCATALOGED
        table[diff] = lab
        table[tuple(-c for c in diff)] = lab
        return lab


def _edge_rows(args) -> list[tuple[int, int, str]]:
    metric, cat, mode, scale, pts, rows = args
    oracle = _EdgeOracle(metric, cat, mode, scale)
    out = []
    n = len(pts)
    for i in rows:
        a0, a1, a2, a3 = pts[i]
        for j in range(i + 1, n):
            b = pts[j]
            lab = oracle.label((a0 - b[0], a1 - b[1], a2 - b[2], a3 - b[3]))
            if lab is not None:
                out.append((i, j, lab))
    return out


def build_graph(
    vertices: Iterable[Point4],
    mode: EdgeMode | str = EdgeMode.FULL,
    cat: VectorCatalog | None = None,
    provenance: str = "",
    workers: int = 1,
) -> UnitGraph:
    """Join every pair of vertices whose difference is a unit vector.

    ``catalog-u`` / ``catalog-w`` only accept differences in U (resp. U and V);
    ``full`` tests the polygon boundary exactly and labels each edge with its
    catalog orbit, or ``UNCATALOGED``.
    """
    mode = EdgeMode(mode)
    verts = sort_points(set(vertices))
    if not verts:
        raise ValueError("a graph needs at least one vertex")
    metric = verts[0].metric
    if any(v.metric is not metric for v in verts):
        raise ValueError("all vertices must share one metric")
    cat = cat if cat is not None else catalog(metric)
    pts, scale = _scaled(verts)
    n = len(pts)
    if workers > 1 and n > 64:
        chunks = [list(range(k, n, workers)) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_edge_rows, [(metric, cat, mode, scale, pts, rows) for rows in chunks])
            edges = sorted(e for part in parts for e in part)
    else:
        edges = _edge_rows((metric, cat, mode, scale, pts, range(n)))
    return UnitGraph(metric, tuple(verts), tuple(edges), provenance)


def brute_force_edges(vertices: Sequence[Point4]) -> set[tuple[Point4, Point4]]:
    """Reference pair scan straight through ``classify_point``; slow but simple."""
    from .polygon_metric import classify_point

    out = set()
    verts = list(vertices)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if classify_point(u - v) is Location.BOUNDARY:
                out.add(frozenset((u, v)))
    return out


def orbit_representative(v: Point4) -> Point4:
    """The orbit member met first going counterclockwise from the positive x-axis."""
    best = None
    for w in orbit(v):
        sp = locate_on_boundary(w)
        key = (sp.side, sp.t)
        if best is None or key[0] < best[0][0] or (key[0] == best[0][0] and key[1] < best[0][1]):
            best = (key, w)
    return best[1]


def find_accidental(vertices: Iterable[Point4], cat: VectorCatalog) -> frozenset[Point4]:
    """Unit differences outside ``cat.U``, one representative per orbit."""
    g = build_graph(vertices, EdgeMode.FULL, cat.generating_only())
    reps = set()
    seen = set()
    for i, j, lab in g.edges:
        if lab != UNCATALOGED:
            continue
        diff = g.vertices[j] - g.vertices[i]
        if diff in seen:
            continue
        orb = orbit(diff)
        seen |= orb
        reps.add(orbit_representative(diff))
    return frozenset(reps)


def edge_distribution(g: UnitGraph, cat: VectorCatalog | None = None) -> "OrderedDict[str, int]":
    cat = cat if cat is not None else catalog(g.metric)
    dist: OrderedDict[str, int] = OrderedDict((name, 0) for name in cat.names)
    dist[UNCATALOGED] = 0
    for _, _, lab in g.edges:
        dist[lab if lab in dist else UNCATALOGED] += 1
    return dist


def relabel(g: UnitGraph, cat: VectorCatalog) -> UnitGraph:
    """Recompute edge labels of ``g`` against ``cat``."""
    edges = []
    for i, j, _ in g.edges:
        orb = cat.orbit_of(g.vertices[j] - g.vertices[i])
        edges.append((i, j, orb.name if orb is not None else UNCATALOGED))
    return UnitGraph(g.metric, g.vertices, tuple(edges), g.provenance)


def vertex_permutation(g: UnitGraph, f) -> list[int] | None:
    """Index permutation induced by a point map ``f``; None if f leaves the vertex set."""
    perm = []
    for v in g.vertices:
        w = g.index.get(f(v))
        if w is None:
            return None
        perm.append(w)
    return perm
