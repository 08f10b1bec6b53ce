"""Exact graph colouring: DSATUR branch-and-bound, certificates and CNF export.

The solver only needs an adjacency structure, so it accepts either a
:class:`~polyudg.graph_builder.UnitGraph` or a plain ``(n, edges)`` pair.
"""

from __future__ import annotations

import enum
import threading
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ._dsatur_kernel import SAT, UNSAT, dsatur_kernel, dsatur_kernel_jit

DEFAULT_TIMEOUT = 600.0

EXIT_SAT = 0
EXIT_UNSAT = 20
EXIT_INDETERMINATE = 30


class Verdict(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    INDETERMINATE = "INDETERMINATE"

    @property
    def exit_code(self) -> int:
        return {Verdict.SAT: EXIT_SAT, Verdict.UNSAT: EXIT_UNSAT}.get(self, EXIT_INDETERMINATE)


class IncompleteAssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, n: int, edges) -> SimpleGraph:
        return cls(n, tuple((min(i, j), max(i, j)) for i, j in edges))

    def edge_pairs(self) -> list[tuple[int, int]]:
        return list(self.edges)

    def canonical_hash(self) -> str:
        import hashlib

        return hashlib.sha256(repr((self.n, sorted(self.edges))).encode()).hexdigest()


def _n_and_edges(g) -> tuple[int, list[tuple[int, int]]]:
    return g.n, g.edge_pairs()


def _adjacency(n: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        adj[i].add(j)
        adj[j].add(i)
    return [sorted(s) for s in adj]


@dataclass(frozen=True)
class ColoringCertificate:
    graph_hash: str
    k: int
    assignment: tuple[int, ...]

    def to_json(self) -> dict:
        return {"k": self.k, "assignment": list(self.assignment), "graph_hash": self.graph_hash}

    @classmethod
    def from_json(cls, obj: dict) -> ColoringCertificate:
        return cls(obj.get("graph_hash", ""), int(obj["k"]), tuple(int(c) for c in obj["assignment"]))


@dataclass
class SolveReport:
    verdict: Verdict
    k: int
    nodes: int
    wall_time: float
    certificate: ColoringCertificate | None = None
    strategy: str = "dsatur(saturation,degree,index)+new-colour-symmetry"
    notes: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "k": self.k,
            "nodes": self.nodes,
            "wall_time": round(self.wall_time, 6),
            "strategy": self.strategy,
            "certificate": self.certificate.to_json() if self.certificate else None,
            **({"notes": self.notes} if self.notes else {}),
        }


class DsaturSolver:
    """Decides k-colourability by DSATUR backtracking.

    Branching vertex: most distinct neighbour colours, then largest degree,
    then smallest index.  A branch may open at most one previously unused
    colour.  After each assignment every uncoloured neighbour whose
    available colours are exhausted triggers an immediate backtrack.

    The search is resumable: :meth:`run` advances it by a node quota.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], k: int, engine: str = "auto") -> None:
        if k < 1:
            raise ValueError("k must be at least 1")
        if engine == "auto":
            engine = "jit" if dsatur_kernel_jit is not None else "python"
        if engine not in ("jit", "python"):
            raise ValueError(f"unknown engine {engine!r}")
        if engine == "jit" and dsatur_kernel_jit is None:
            raise RuntimeError("numba is not available")
        self.n, self.k, self.engine = n, k, engine
        adj = _adjacency(n, edges)
        indptr = [0]
        for a in adj:
            indptr.append(indptr[-1] + len(a))
        indices = [u for a in adj for u in a]
        arrays = dict(
            indptr=indptr,
            indices=indices,
            deg=[len(a) for a in adj],
            color=[-1] * n,
            count=[0] * (n * k),
            mask=[0] * n,
            sat=[0] * n,
            sv=[0] * (n + 1),
            sc=[0] * (n + 1),
            su=[0] * (n + 1),
            state=[0, 0, 0, n, 0],
        )
        if engine == "jit":
            import numpy as np

            arrays = {key: np.asarray(val, dtype=np.int64) for key, val in arrays.items()}
            if len(arrays["indices"]) == 0:
                arrays["indices"] = np.zeros(1, dtype=np.int64)
            self._kernel = dsatur_kernel_jit
        else:
            self._kernel = dsatur_kernel
        self._a = arrays
        self.verdict: Verdict | None = None

    @property
    def nodes(self) -> int:
        return int(self._a["state"][2])

    def run(self, quota: int) -> Verdict | None:
        """Advance by at most ``quota`` nodes; returns the verdict once decided."""
        if self.verdict is not None:
            return self.verdict
        a = self._a
        code = self._kernel(a["indptr"], a["indices"], a["deg"], self.k, a["color"], a["count"], a["mask"],
                            a["sat"], a["sv"], a["sc"], a["su"], a["state"], quota)
        if code == SAT:
            self.verdict = Verdict.SAT
        elif code == UNSAT:
            self.verdict = Verdict.UNSAT
        return self.verdict

    def solve(self, timeout: float | None = DEFAULT_TIMEOUT, node_limit: int | None = None) -> Verdict:
        deadline = None if timeout is None else time.monotonic() + timeout
        slice_ = 200_000 if self.engine == "jit" else 2_000
        while self.verdict is None:
            quota = slice_
            if node_limit is not None:
                quota = min(quota, node_limit - self.nodes)
                if quota <= 0:
                    return Verdict.INDETERMINATE
            self.run(quota)
            if self.verdict is None and deadline is not None and time.monotonic() > deadline:
                return Verdict.INDETERMINATE
        return self.verdict

    def coloring(self) -> list[int]:
        if self.verdict is not Verdict.SAT:
            raise ValueError("no colouring: search did not end in SAT")
        return [int(c) for c in self._a["color"]]


def find_certificate(n: int, edges: Sequence[tuple[int, int]], k: int, solver: str = "cadical153",
                     timeout: float | None = None) -> list[int] | None:
    """Ask an external CDCL solver for a k-colouring; None if it finds none.

    Only used to *find* colourings; they are re-checked before use, and an
    UNSAT answer from here is never reported as a verdict.  ``timeout``
    interrupts the solver, which then also yields None.
    """
    try:
        from pysat.solvers import Solver
    except ImportError:  # pragma: no cover
        return None
    with Solver(name=solver) as s:
        for v in range(n):
            base = v * k + 1
            s.add_clause([base + c for c in range(k)])
        for i, j in edges:
            for c in range(k):
                s.add_clause([-(i * k + c + 1), -(j * k + c + 1)])
        if timeout is None:
            found = s.solve()
        else:
            if timeout <= 0:
                return None
            timer = threading.Timer(timeout, s.interrupt)
            timer.start()
            try:
                found = s.solve_limited(expect_interrupt=True)
            finally:
                timer.cancel()
        if not found:
            return None
        true = {lit for lit in s.get_model() if lit > 0}
    return [next(c for c in range(k) if v * k + c + 1 in true) for v in range(n)]


def k_colorable(
    g,
    k: int,
    timeout: float | None = DEFAULT_TIMEOUT,
    node_limit: int | None = None,
    engine: str = "auto",
    probe_nodes: int | None = 50_000,
    core: Sequence[int] | None = None,
) -> SolveReport:
    """Decide whether ``g`` has a proper k-colouring.

    DSATUR runs first for ``probe_nodes`` nodes.  If still undecided, an
    external solver is asked for a colouring; one that passes
    :func:`verify_coloring` settles SAT.  Otherwise DSATUR resumes and is the
    only source of UNSAT verdicts.  ``probe_nodes=None`` disables the finder.

    ``core`` optionally names a vertex subset to try first: if DSATUR proves
    the induced subgraph on it not k-colourable, neither is ``g``.
    """
    n, edges = _n_and_edges(g)
    start = time.perf_counter()
    if core is not None:
        sub = induced_simple(g, core)
        rep = k_colorable(sub, k, timeout, node_limit, engine, probe_nodes=None)
        if rep.verdict is Verdict.UNSAT:
            rep.wall_time = time.perf_counter() - start
            rep.strategy += " on induced subgraph"
            rep.notes["core_order"] = sub.n
            return rep
    solver = DsaturSolver(n, edges, k, engine=engine)
    notes: dict = {"engine": solver.engine}
    verdict = None
    if probe_nodes is not None:
        quota = probe_nodes if node_limit is None else min(probe_nodes, node_limit)
        verdict = solver.run(quota)
        if verdict is None:
            left = None if timeout is None else timeout - (time.perf_counter() - start)
            colors = find_certificate(n, edges, k, timeout=left)
            notes["certificate_finder"] = "found" if colors is not None else "none"
            if colors is not None and not verify_coloring(g, colors, k):
                cert = ColoringCertificate(g.canonical_hash(), k, tuple(colors))
                return SolveReport(Verdict.SAT, k, solver.nodes, time.perf_counter() - start, cert,
                                   strategy="dsatur-probe+external-certificate", notes=notes)
    if verdict is None:
        remaining = None if timeout is None else max(0.0, timeout - (time.perf_counter() - start))
        verdict = solver.solve(remaining, node_limit)
    elapsed = time.perf_counter() - start
    cert = None
    if verdict is Verdict.SAT:
        colors = solver.coloring()
        if verify_coloring(g, colors, k):
            raise AssertionError("solver produced an improper colouring")  # must not happen
        cert = ColoringCertificate(g.canonical_hash(), k, tuple(colors))
    return SolveReport(verdict, k, solver.nodes, elapsed, cert, notes=notes)


def induced_simple(g, keep: Sequence[int]) -> SimpleGraph:
    """Induced subgraph on ``keep`` (renumbered in sorted order) as a SimpleGraph."""
    keep = sorted(set(keep))
    remap = {v: i for i, v in enumerate(keep)}
    _, edges = _n_and_edges(g)
    return SimpleGraph.of(len(keep), [(remap[i], remap[j]) for i, j in edges if i in remap and j in remap])


def greedy_clique(g) -> list[int]:
    """A maximal clique grown greedily from each vertex; returns the largest found."""
    n, edges = _n_and_edges(g)
    adj = [set(a) for a in _adjacency(n, edges)]
    best: list[int] = [0] if n else []
    for start in sorted(range(n), key=lambda v: (-len(adj[v]), v)):
        clique = [start]
        cand = set(adj[start])
        while cand:
            v = max(cand, key=lambda u: (len(adj[u] & cand), -u))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def dsatur_heuristic(g) -> list[int]:
    """One greedy DSATUR pass (no backtracking); an upper bound on the chromatic number."""
    n, edges = _n_and_edges(g)
    adj = _adjacency(n, edges)
    color = [-1] * n
    neigh: list[set[int]] = [set() for _ in range(n)]
    uncolored = set(range(n))
    while uncolored:
        v = min(uncolored, key=lambda u: (-len(neigh[u]), -len(adj[u]), u))
        c = 0
        while c in neigh[v]:
            c += 1
        color[v] = c
        uncolored.discard(v)
        for u in adj[v]:
            neigh[u].add(c)
    return color


@dataclass
class ChromaticResult:
    chi: int | None
    coloring: SolveReport | None
    lower_report: SolveReport | None
    clique: list[int]
    heuristic_colors: int

    def to_json(self) -> dict:
        return {
            "chi": self.chi,
            "clique": self.clique,
            "heuristic_colors": self.heuristic_colors,
            "coloring": self.coloring.to_json() if self.coloring else None,
            "lower_report": self.lower_report.to_json() if self.lower_report else None,
        }


def chromatic_number(g, timeout: float | None = DEFAULT_TIMEOUT, core: Sequence[int] | None = None) -> ChromaticResult:
    """Smallest k with a k-colouring, with the k-certificate and the (k-1)-UNSAT report.

    ``chi`` is None when a decision timed out.  ``core`` is forwarded to
    :func:`k_colorable` as a subgraph to try first for UNSAT.
    """
    n, _ = _n_and_edges(g)
    if n == 0:
        return ChromaticResult(0, None, None, [], 0)
    clique = greedy_clique(g)
    heur = dsatur_heuristic(g)
    ub = max(heur) + 1
    k = max(1, len(clique))
    lower = k_colorable(g, k - 1, timeout=timeout, core=core) if k > 1 else None
    while k <= ub:
        if k == ub:
            report = SolveReport(Verdict.SAT, k, 0, 0.0, ColoringCertificate(g.canonical_hash(), k, tuple(heur)),
                                 strategy="dsatur-greedy")
        else:
            report = k_colorable(g, k, timeout=timeout, core=core)
        if report.verdict is Verdict.SAT:
            return ChromaticResult(k, report, lower, clique, ub)
        if report.verdict is Verdict.INDETERMINATE:
            return ChromaticResult(None, None, report, clique, ub)
        lower = report
        k += 1
    raise AssertionError("heuristic colouring bound was not attained")  # unreachable


def verify_coloring(g, cert: ColoringCertificate | Sequence[int], k: int | None = None) -> list[tuple[int, int]]:
    """Edges whose endpoints share a colour; an empty list means the colouring is proper.

    Independent of the solver: a single scan of the edge list.
    """
    if isinstance(cert, ColoringCertificate):
        assignment, k = cert.assignment, cert.k
    else:
        assignment = tuple(cert)
    if k is not None and k < 1:
        raise ValueError("k must be at least 1")
    n, edges = _n_and_edges(g)
    if len(assignment) != n:
        raise IncompleteAssignmentError(f"assignment covers {len(assignment)} of {n} vertices")
    for v, c in enumerate(assignment):
        if c is None or c < 0 or (k is not None and c >= k):
            raise IncompleteAssignmentError(f"vertex {v} has no valid colour (got {c!r})")
    return [(i, j) for i, j in edges if assignment[i] == assignment[j]]


def export_cnf(g, k: int) -> str:
    """DIMACS CNF for k-colourability; variable x(v, c) = v*k + c + 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n, edges = _n_and_edges(g)
    clauses: list[str] = []
    for v in range(n):
        base = v * k + 1
        clauses.append(" ".join(str(base + c) for c in range(k)) + " 0")
        for c1, c2 in combinations(range(k), 2):
            clauses.append(f"-{base + c1} -{base + c2} 0")
    for i, j in edges:
        for c in range(k):
            clauses.append(f"-{i * k + c + 1} -{j * k + c + 1} 0")
    header = [f"c {k}-colouring of a graph with {n} vertices and {len(edges)} edges", f"p cnf {n * k} {len(clauses)}"]
    return "\n".join(header + clauses) + "\n"


def external_sat_check(cnf: str, solver: str = "cadical153") -> bool:
    """Run an off-the-shelf SAT solver (python-sat) on DIMACS text; True iff satisfiable."""
    from pysat.formula import CNF
    from pysat.solvers import Solver

    formula = CNF(from_string=cnf)
    with Solver(name=solver, bootstrap_with=formula.clauses) as s:
        return bool(s.solve())
