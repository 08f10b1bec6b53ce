from __future__ import annotations

import itertools
import random

import pytest

from conftest import seeded_graph, sum_graph
from polyudg.chromatic import (
    ColoringCertificate,
    DsaturSolver,
    IncompleteAssignmentError,
    SimpleGraph,
    Verdict,
    chromatic_number,
    dsatur_heuristic,
    export_cnf,
    external_sat_check,
    find_certificate,
    greedy_clique,
    induced_simple,
    k_colorable,
    verify_coloring,
)
from polyudg.graph_builder import EdgeMode, orbit_closure
from polyudg.polygon_metric import Metric
from polyudg.seeds import seed_list
from polyudg.structure_analysis import SPINDLE_EDGES

SPINDLE = SimpleGraph.of(7, SPINDLE_EDGES)
TRIANGLE = SimpleGraph.of(3, [(0, 1), (1, 2), (0, 2)])


def brute_chi(g) -> int:
    """Exhaustive enumeration of all colourings, smallest k first."""
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[i] != colors[j] for i, j in g.edge_pairs()):
                return k
    return 0


def random_graph(rng, n, p):
    return SimpleGraph.of(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_induced(rng, g, size):
    return induced_simple(g, rng.sample(range(g.n), size))


# ---- paper examples -------------------------------------------------------------

@pytest.mark.parametrize("name", ["g120", "g121", "g295"])
def test_paper_graphs_need_five_colours(name):
    g = seeded_graph(name)
    four = k_colorable(g, 4)
    five = k_colorable(g, 5)
    assert four.verdict is Verdict.UNSAT and four.certificate is None
    assert five.verdict is Verdict.SAT and verify_coloring(g, five.certificate) == []


def test_u_only_octagon_sum_is_four_colourable():
    g = sum_graph(Metric.OCTAGON, EdgeMode.CATALOG_U)
    r = k_colorable(g, 4)
    assert r.verdict is Verdict.SAT and verify_coloring(g, r.certificate) == []
    assert k_colorable(g, 3).verdict is Verdict.UNSAT


def test_trivial_instances():
    assert k_colorable(SimpleGraph.of(0, []), 1).verdict is Verdict.SAT
    assert k_colorable(SimpleGraph.of(4, []), 1).verdict is Verdict.SAT
    assert chromatic_number(SimpleGraph.of(2, [(0, 1)])).chi == 2
    assert k_colorable(TRIANGLE, 2).verdict is Verdict.UNSAT
    with pytest.raises(ValueError):
        k_colorable(TRIANGLE, 0)


def test_chromatic_number_g121():
    res = chromatic_number(seeded_graph("g121"))
    assert res.chi == 5
    assert res.lower_report.verdict is Verdict.UNSAT and res.lower_report.k == 4
    assert verify_coloring(seeded_graph("g121"), res.coloring.certificate) == []


def test_spindle_brute_force():
    assert not any(all(c[i] != c[j] for i, j in SPINDLE_EDGES) for c in itertools.product(range(3), repeat=7))
    assert any(all(c[i] != c[j] for i, j in SPINDLE_EDGES) for c in itertools.product(range(4), repeat=7))
    assert chromatic_number(SPINDLE).chi == 4


def test_against_enumeration_on_random_small_graphs():
    rng = random.Random(8)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), rng.choice((0.3, 0.5, 0.8)))
        chi = brute_chi(g)
        assert chromatic_number(g).chi == chi
        for k in range(1, chi + 2):
            for engine in ("python", "jit"):
                want = Verdict.SAT if k >= chi else Verdict.UNSAT
                assert k_colorable(g, k, engine=engine, probe_nodes=None).verdict is want


# ---- certificates ---------------------------------------------------------------

def test_verify_coloring_examples():
    edge = SimpleGraph.of(2, [(0, 1)])
    assert verify_coloring(edge, [0, 0], 1) == [(0, 1)]
    with pytest.raises(IncompleteAssignmentError):
        verify_coloring(edge, [0], 2)
    with pytest.raises(IncompleteAssignmentError):
        verify_coloring(edge, [0, 2], 2)
    g = seeded_graph("g121")
    five = k_colorable(g, 5).certificate
    assert verify_coloring(g, five) == []
    assert verify_coloring(g, [c % 4 for c in five.assignment], 4) != []


def test_certificate_json_round_trip():
    g = seeded_graph("g120")
    cert = k_colorable(g, 5).certificate
    back = ColoringCertificate.from_json(cert.to_json())
    assert back == cert and back.graph_hash == g.canonical_hash()


def test_certificate_restricts_to_induced_subgraphs():
    g = seeded_graph("g120")
    cert = k_colorable(g, 5).certificate
    rng = random.Random(2)
    for _ in range(20):
        keep = sorted(rng.sample(range(g.n), 40))
        sub = g.induced(keep)
        assert verify_coloring(sub, [cert.assignment[v] for v in keep], 5) == []


def test_monotonicity_on_random_subgraphs():
    rng = random.Random(4)
    parents = [seeded_graph("g120"), seeded_graph("g121"), seeded_graph("g295")]
    for t in range(100):
        sub = random_induced(rng, parents[t % 3], rng.randint(8, 60))
        prev = None
        for k in range(1, 6):
            v = k_colorable(sub, k).verdict
            assert v is not Verdict.INDETERMINATE
            if prev is Verdict.SAT:
                assert v is Verdict.SAT
            prev = v


def test_certificate_finder_results_are_checked():
    g = sum_graph(Metric.DECAGON, EdgeMode.CATALOG_U)
    colors = find_certificate(g.n, g.edge_pairs(), 4)
    assert colors is not None and verify_coloring(g, colors, 4) == []
    assert find_certificate(3, TRIANGLE.edges, 2) is None
    r = k_colorable(g, 4, probe_nodes=10)
    assert r.verdict is Verdict.SAT and verify_coloring(g, r.certificate) == []


# ---- CNF and the external solver ---------------------------------------------------

def test_cnf_triangle():
    cnf = export_cnf(TRIANGLE, 2)
    header = next(ln for ln in cnf.splitlines() if ln.startswith("p "))
    assert header == "p cnf 6 12"
    assert external_sat_check(cnf) is False


def test_cnf_edgeless_and_numbering():
    cnf = export_cnf(SimpleGraph.of(2, []), 1)
    assert "p cnf 2 2" in cnf and external_sat_check(cnf) is True
    lines = export_cnf(SimpleGraph.of(2, [(0, 1)]), 3).splitlines()
    assert "1 2 3 0" in lines and "4 5 6 0" in lines and "-1 -4 0" in lines


@pytest.mark.parametrize("name", ["g120", "g121", "g295"])
def test_external_solver_agrees_on_unsat(name):
    g = seeded_graph(name)
    cnf = export_cnf(g, 4)
    if name == "g120":
        assert "p cnf 480 " in cnf
    assert k_colorable(g, 4).verdict is Verdict.UNSAT
    assert external_sat_check(cnf) is False
    assert external_sat_check(export_cnf(g, 5)) is True


# ---- determinism, engines, limits ---------------------------------------------------

@pytest.mark.parametrize("name", ["g120", "g121"])
def test_node_counts_deterministic_and_engine_independent(name):
    g = seeded_graph(name)
    runs = [k_colorable(g, 4, engine="jit").nodes for _ in range(2)]
    runs.append(k_colorable(g, 4, engine="python").nodes)
    assert runs[0] == runs[1] == runs[2] > 0


def test_engines_match_on_random_graphs():
    rng = random.Random(12)
    for _ in range(30):
        g = random_graph(rng, rng.randint(10, 40), rng.choice((0.15, 0.3)))
        for k in (2, 3, 4):
            a = DsaturSolver(g.n, g.edges, k, engine="python")
            b = DsaturSolver(g.n, g.edges, k, engine="jit")
            assert a.solve(None) is b.solve(None)
            assert a.nodes == b.nodes
            if a.verdict is Verdict.SAT:
                assert a.coloring() == b.coloring()


def test_resumable_search_matches_one_shot():
    g = seeded_graph("g121")
    one = DsaturSolver(g.n, g.edge_pairs(), 4)
    one.solve(None)
    step = DsaturSolver(g.n, g.edge_pairs(), 4, engine="python")
    while step.run(997) is None:
        pass
    assert (step.verdict, step.nodes) == (one.verdict, one.nodes)


def test_limits_give_indeterminate():
    g = seeded_graph("g295")
    r = k_colorable(g, 4, node_limit=100, probe_nodes=None)
    assert r.verdict is Verdict.INDETERMINATE and r.exit_code == 30 and r.certificate is None
    r = k_colorable(g, 4, timeout=0.0, probe_nodes=None, engine="python")
    assert r.verdict is Verdict.INDETERMINATE


def test_core_hint():
    w = sum_graph(Metric.DODECAGON, EdgeMode.CATALOG_W)
    core = [w.index[v] for v in orbit_closure(seed_list("g295"))]
    r = k_colorable(w, 4, core=core)
    assert r.verdict is Verdict.UNSAT and r.notes["core_order"] == 295
    # a colourable core falls through to the whole graph
    g = seeded_graph("g121")
    r = k_colorable(g, 4, core=list(range(10)))
    assert r.verdict is Verdict.UNSAT and "core_order" not in r.notes


def test_bounds_helpers():
    g = seeded_graph("g120")
    clique = greedy_clique(g)
    adj = [set(a) for a in g.adjacency]
    assert all(b in adj[a] for a, b in itertools.combinations(clique, 2))
    heur = dsatur_heuristic(g)
    assert verify_coloring(g, heur) == []
    assert len(clique) <= 5 <= max(heur) + 1


def test_report_json_and_exit_codes():
    r = k_colorable(TRIANGLE, 3)
    obj = r.to_json()
    assert obj["verdict"] == "SAT" and obj["certificate"]["k"] == 3 and r.exit_code == 0
    assert k_colorable(TRIANGLE, 2).exit_code == 20
