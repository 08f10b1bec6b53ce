"""Moser spindles, small k-chromatic subgraphs and vertex-critical shrinking."""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass
from itertools import combinations

from .chromatic import DEFAULT_TIMEOUT, Verdict, k_colorable
from .graph_builder import EdgeMode, UnitGraph, build_graph
from .polygon_metric import Location, Metric, Point4, classify_point
from .vector_catalog import catalog

# Spindle vertex roles: o, p, q, p+q, r, s, r+s
SPINDLE_ROLES = ("o", "p", "q", "p+q", "r", "s", "r+s")
SPINDLE_EDGES = (
    (0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
    (0, 4), (0, 5), (4, 5), (4, 6), (5, 6),
    (3, 6),
)
SPINDLE_AUTOMORPHISMS = 8


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Spindle:
    points: tuple[Point4, ...]
    graph: UnitGraph
    # role pair -> (difference, orbit label)
    differences: tuple[tuple[str, str, Point4, str | None], ...]


def octagon_spindle() -> Spindle:
    """The Moser spindle o, a1, c2, a1+c2 / a3, d1, a3+d1 in the octagon metric."""
    cat = catalog(Metric.OCTAGON)
    o = Point4.origin(Metric.OCTAGON)
    a1, a3 = cat["a1"].ordered[0], cat["a1"].ordered[2]
    c2, d1 = cat["c1"].ordered[1], cat["d1"].ordered[0]
    pts = (o, a1, c2, a1 + c2, a3, d1, a3 + d1)
    diffs = []
    for i, j in SPINDLE_EDGES:
        diff = pts[j] - pts[i]
        if classify_point(diff) is not Location.BOUNDARY:
            raise AssertionError(f"spindle edge {SPINDLE_ROLES[i]}-{SPINDLE_ROLES[j]} is not a unit edge")
        orb = cat.orbit_of(diff)
        diffs.append((SPINDLE_ROLES[i], SPINDLE_ROLES[j], diff, orb.label(diff) if orb else None))
    g = build_graph(pts, EdgeMode.FULL, provenance="octagon Moser spindle")
    return Spindle(pts, g, tuple(diffs))


def spindle_embeddings(adj: list[set[int]]):
    """Yield each spindle copy once, as ``(o, (x1, y1, z1), (x2, y2, z2))``.

    ``o`` is the degree-4 hub, ``{x, y}`` a rhombus' side pair and ``z`` its
    far apex; apexes of the two rhombi are adjacent.
    """
    n = len(adj)
    for o in range(n):
        diamonds = []
        for x, y in combinations(sorted(adj[o]), 2):
            if y not in adj[x]:
                continue
            for z in adj[x] & adj[y]:
                if z != o:
                    diamonds.append((x, y, z))
        for (d1, d2) in combinations(diamonds, 2):
            if d2[2] not in adj[d1[2]]:
                continue
            if len({o, *d1, *d2}) == 7:
                yield o, d1, d2


@dataclass(frozen=True)
class SpindleCount:
    subsets: int
    copies: int

    def matching(self, expected: int) -> str | None:
        if self.subsets == expected:
            return "vertex-subsets"
        if self.copies == expected:
            return "subgraph-copies"
        return None


def spindle_census(g) -> SpindleCount:
    """Both counting conventions: distinct 7-vertex sets, and distinct subgraph copies."""
    adj = [set(a) for a in g.adjacency] if hasattr(g, "adjacency") else _adj_sets(g)
    subsets = set()
    copies = 0
    for o, d1, d2 in spindle_embeddings(adj):
        copies += 1
        subsets.add(frozenset((o, *d1, *d2)))
    return SpindleCount(len(subsets), copies)


def _adj_sets(g) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for i, j in g.edge_pairs():
        adj[i].add(j)
        adj[j].add(i)
    return adj


def count_spindles(g) -> int:
    """Number of 7-vertex subsets whose induced subgraph contains a spanning Moser spindle."""
    return spindle_census(g).subsets


class SearchStatus(enum.Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class SubgraphWitness:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    chi: int
    subgraph: UnitGraph | None = None

    def to_json(self) -> dict:
        out = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges], "chi": self.chi}
        if self.subgraph is not None:
            out["graph"] = self.subgraph.to_json()
        return out


@dataclass
class SearchResult:
    status: SearchStatus
    witness: SubgraphWitness | None
    distinct_found: int
    attempts: int
    elapsed: float


def _peel(adj: list[set[int]], keep: set[int], min_deg: int) -> set[int]:
    """Largest subset of ``keep`` in which every vertex has >= min_deg neighbours."""
    keep = set(keep)
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            if len(adj[v] & keep) < min_deg:
                keep.discard(v)
                changed = True
    return keep


def _components(adj: list[set[int]], keep: set[int]) -> list[set[int]]:
    comps, todo = [], set(keep)
    while todo:
        stack = [todo.pop()]
        comp = set(stack)
        while stack:
            v = stack.pop()
            for u in adj[v] & todo:
                todo.discard(u)
                comp.add(u)
                stack.append(u)
        comps.append(comp)
    return comps


def _chi_at_least(g, k: int, timeout: float | None) -> Verdict:
    """UNSAT means chi(g) >= k."""
    if k <= 1:
        return Verdict.UNSAT if g.n > 0 else Verdict.SAT
    return k_colorable(g, k - 1, timeout=timeout).verdict


def _shrink_indices(g: UnitGraph, k: int, order: list[int], timeout: float | None, deadline: float | None) -> list[int] | None:
    """One deletion pass in ``order``; the survivors still need k colours."""
    adj = [set(a) for a in g.adjacency]
    keep = set(range(g.n))
    for v in order:
        if v not in keep:
            continue
        if deadline is not None and time.monotonic() > deadline:
            return None
        trial = keep - {v}
        # a k-critical graph has minimum degree >= k-1 in a single component
        core = _peel(adj, trial, k - 1)
        comps = [c for c in _components(adj, core)] if core else []
        replaced = False
        for comp in sorted(comps, key=len):
            sub = g.induced(comp)
            verdict = _chi_at_least(sub, k, timeout)
            if verdict is Verdict.INDETERMINATE:
                return None
            if verdict is Verdict.UNSAT:
                keep = comp
                replaced = True
                break
        if not replaced:
            continue
    return sorted(keep)


def shrink_preserving_chi(g: UnitGraph, k: int, timeout: float | None = DEFAULT_TIMEOUT,
                          order: list[int] | None = None) -> UnitGraph:
    """Delete vertices one at a time (canonical order) while the graph still needs k colours.

    One pass suffices for vertex-minimality: a vertex whose removal once
    allowed a (k-1)-colouring still allows it in every smaller subgraph.
    """
    pre = _chi_at_least(g, k, timeout)
    if pre is not Verdict.UNSAT:
        raise PreconditionError(f"graph is not verified to need {k} colours ({pre.value})")
    keep = _shrink_indices(g, k, list(order) if order is not None else list(range(g.n)), timeout, None)
    if keep is None:
        raise TimeoutError("colourability decision timed out while shrinking")
    out = g.induced(keep, provenance=f"{k}-vertex-critical subgraph of [{g.provenance}]")
    if _chi_at_least(out, k, timeout) is not Verdict.UNSAT:
        raise AssertionError("shrunk graph lost the colouring bound")  # must not happen
    return out


def _witness(g: UnitGraph, keep: list[int], k: int, timeout: float | None) -> SubgraphWitness | None:
    sub = g.induced(keep)
    if _chi_at_least(sub, k, timeout) is not Verdict.UNSAT:
        return None
    return SubgraphWitness(tuple(keep), tuple(sub.edge_pairs()), k, sub)


def find_k_chromatic_subgraph(
    g: UnitGraph,
    k: int,
    max_order: int,
    budget: float = 120.0,
    seed: int = 0,
    radius: int = 2,
    timeout: float | None = 60.0,
    collect: bool = False,
) -> SearchResult:
    """Look for an induced subgraph on at most ``max_order`` vertices that needs ``k`` colours.

    Candidates come from local balls around each vertex, peeled to minimum
    degree k-1, and then shrunk to vertex-critical cores along randomised
    deletion orders (seeded, so runs are reproducible).  Every witness is
    re-checked by the colouring solver before it is returned.  The search is
    not exhaustive: NONE is only reported when no ball can need k colours.

    With ``collect`` the search spends its whole budget and counts distinct
    witness vertex sets; otherwise it stops at the first one.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    start = time.monotonic()
    deadline = start + budget
    rng = random.Random(seed)
    adj = [set(a) for a in g.adjacency]
    found: set[frozenset[int]] = set()
    best: SubgraphWitness | None = None
    attempts = 0
    if k == 2:
        if g.m and max_order >= 2:
            i, j = g.edge_pairs()[0]
            best = _witness(g, [i, j], k, timeout)
            return SearchResult(SearchStatus.FOUND, best, 1, 1, time.monotonic() - start)
        return SearchResult(SearchStatus.NONE, None, 0, 0, time.monotonic() - start)

    balls = []
    for v in range(g.n):
        ball = {v}
        frontier = {v}
        for _ in range(radius):
            frontier = set().union(*(adj[u] for u in frontier)) - ball
            ball |= frontier
        core = _peel(adj, ball, k - 1)
        if len(core) >= k:
            balls.append(sorted(core))
    promising = []
    for core in balls:
        if time.monotonic() > deadline:
            return SearchResult(SearchStatus.BUDGET_EXHAUSTED, best, len(found), attempts, time.monotonic() - start)
        verdict = _chi_at_least(g.induced(core), k, timeout)
        if verdict is Verdict.UNSAT:
            promising.append(core)
    if not promising:
        whole = _chi_at_least(g, k, timeout)
        if whole is Verdict.SAT:
            return SearchResult(SearchStatus.NONE, None, 0, 0, time.monotonic() - start)
        promising.append(list(range(g.n)))

    while time.monotonic() < deadline:
        core = promising[attempts % len(promising)]
        attempts += 1
        sub = g.induced(core)
        order = list(range(sub.n))
        rng.shuffle(order)
        keep = _shrink_indices(sub, k, order, timeout, deadline)
        if keep is None:
            break
        if len(keep) > max_order:
            continue
        parent = [core[i] for i in keep]
        key = frozenset(parent)
        if key in found:
            continue
        w = _witness(g, sorted(parent), k, timeout)
        if w is None:
            continue
        found.add(key)
        if best is None or len(w.vertices) < len(best.vertices):
            best = w
        if not collect:
            break
    status = SearchStatus.FOUND if best else SearchStatus.BUDGET_EXHAUSTED
    return SearchResult(status, best, len(found), attempts, time.monotonic() - start)
