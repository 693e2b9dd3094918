import itertools
import random

import pytest

from borsukcube.coloring import (CnfFormula, dsatur, emit_dimacs,
                                 encode_coloring, exact_chromatic_small,
                                 greedy_clique, is_colorable, parse_dimacs,
                                 solve, verify_coloring)
from borsukcube.cube import VertexSet
from borsukcube.graph import build_distance_graph, parity_bipartition, trim
from borsukcube.satbackend import (SolverNotFoundError, parse_solver_output,
                                   run_solver)


def graph_from_edges(n_vertices, edges):
    """Tiny helper: encode abstract test graphs as distance graphs on
    distinct masks with a synthetic adjacency."""
    dim = max(2, (max(n_vertices - 1, 1)).bit_length())
    g = build_distance_graph(VertexSet(dim, range(n_vertices)), 1, dim)
    adj = [0] * n_vertices
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    g.adjacency = adj
    return g


def brute_colorable(g, c):
    n = len(g.vertices)
    for colors in itertools.product(range(c), repeat=n):
        if all(colors[i] != colors[j] for i, j in g.edges()):
            return True
    return False


def test_encode_single_vertex_one_color():
    g = graph_from_edges(1, [])
    f = encode_coloring(g, 1)
    assert f.variable_count == 1
    assert f.clauses == [[1]]


def test_encode_single_edge_one_color_unsat(solver_path):
    g = graph_from_edges(2, [(0, 1)])
    f = encode_coloring(g, 1)
    assert solve(f, 5000, solver_path).status == "unsat"


def test_encode_triangle_two_vs_three(solver_path):
    g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert solve(encode_coloring(g, 2), 5000, solver_path).status == "unsat"
    assert solve(encode_coloring(g, 3), 5000, solver_path).status == "sat"


def test_emit_dimacs_empty():
    assert emit_dimacs(CnfFormula(0)) == "p cnf 0 0"


def test_emit_dimacs_single_clause():
    f = CnfFormula(2)
    f.add([1, -2])
    assert emit_dimacs(f) == "p cnf 2 1\n1 -2 0"


def test_dimacs_roundtrip():
    g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    f = encode_coloring(g, 3)
    back = parse_dimacs(emit_dimacs(f))
    assert back.variable_count == f.variable_count
    assert sorted(map(tuple, back.clauses)) == sorted(map(tuple, f.clauses))


def test_solver_output_parsing_variants():
    r = parse_solver_output("c banner\ns SATISFIABLE\nv 1 -2 3 0\n")
    assert r.status == "sat" and r.model == {1, 3}
    r = parse_solver_output("s UNSATISFIABLE\n")
    assert r.status == "unsat"
    with pytest.raises(Exception):
        parse_solver_output("gibberish\n")


def test_solve_trivial_sat_unsat(solver_path):
    f = CnfFormula(1)
    f.add([1])
    assert solve(f, 5000, solver_path).status == "sat"
    f.add([-1])
    assert solve(f, 5000, solver_path).status == "unsat"


def test_solve_timeout(solver_path):
    # a pigeonhole instance too hard for a 1 ms budget
    holes = 11
    f = CnfFormula((holes + 1) * holes)
    var = lambda p, h: p * holes + h + 1
    for p in range(holes + 1):
        f.add([var(p, h) for h in range(holes)])
    for h in range(holes):
        for p1 in range(holes + 1):
            for p2 in range(p1 + 1, holes + 1):
                f.add([-var(p1, h), -var(p2, h)])
    assert solve(f, 1, solver_path).status == "timeout"


def test_missing_solver_is_configuration_error(tmp_path):
    with pytest.raises(SolverNotFoundError):
        solve(CnfFormula(1, [[1]]), 1000, str(tmp_path / "nope"))


def test_is_colorable_parity_graph(solver_path):
    vs = VertexSet(6, range(64))
    g = build_distance_graph(vs, 3)
    out = is_colorable(g, 2, timeout_ms=10_000, solver=solver_path)
    assert out.is_colored
    colors = parity_bipartition(6, 3)
    assert verify_coloring(g, colors)


def test_is_colorable_clique_needs_twelve(solver_path):
    g = graph_from_edges(12, [(a, b) for a in range(12) for b in range(a)])
    out = is_colorable(g, 11, timeout_ms=20_000, solver=solver_path)
    assert out.status == "unsat"
    out = is_colorable(g, 12, timeout_ms=20_000, solver=solver_path)
    assert out.is_colored


def test_is_colorable_cover_set_at_eleven(solver_path):
    u1 = 0b1111000000
    u2 = 0b1100110000
    vs = trim(10, 4, [0, u1, u2])
    g = build_distance_graph(vs, 4)
    out = is_colorable(g, 11, timeout_ms=120_000, solver=solver_path)
    assert out.is_colored
    assert out.colors_used <= 11


def test_verify_coloring_rejects_monochromatic_edge():
    g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert verify_coloring(g, {0: 0, 1: 1, 2: 2})
    assert not verify_coloring(g, {0: 0, 1: 0, 2: 1})
    with pytest.raises(ValueError):
        verify_coloring(g, {0: 0, 1: 1})


def test_exact_chromatic_basics():
    k5 = graph_from_edges(5, [(a, b) for a in range(5) for b in range(a)])
    assert exact_chromatic_small(k5) == 5
    empty = graph_from_edges(10, [])
    assert exact_chromatic_small(empty) == 1
    odd_cycle = graph_from_edges(7, [(i, (i + 1) % 7) for i in range(7)])
    assert exact_chromatic_small(odd_cycle) == 3
    with pytest.raises(ValueError):
        exact_chromatic_small(graph_from_edges(15, []))


def test_exact_chromatic_agrees_with_brute_force():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(2, 7)
        edges = [(a, b) for a in range(n) for b in range(a)
                 if rng.random() < 0.4]
        g = graph_from_edges(n, edges)
        chi = exact_chromatic_small(g)
        assert brute_colorable(g, chi)
        if chi > 1:
            assert not brute_colorable(g, chi - 1)


def test_exact_chromatic_cross_checks_sat(solver_path):
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(4, 12)
        edges = [(a, b) for a in range(n) for b in range(a)
                 if rng.random() < 0.45]
        g = graph_from_edges(n, edges)
        chi = exact_chromatic_small(g)
        sat_at_chi = solve(encode_coloring(g, chi), 10_000, solver_path)
        assert sat_at_chi.status == "sat"
        if chi > 1:
            below = solve(encode_coloring(g, chi - 1), 10_000, solver_path)
            assert below.status == "unsat"


def test_colorable_monotone_in_colors(solver_path):
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(5, 10)
        edges = [(a, b) for a in range(n) for b in range(a)
                 if rng.random() < 0.5]
        g = graph_from_edges(n, edges)
        chi = exact_chromatic_small(g)
        for c in (chi, chi + 1):
            out = is_colorable(g, c, timeout_ms=10_000, solver=solver_path)
            assert out.is_colored
            assert verify_coloring(g, out.assignment)


def test_greedy_clique_is_clique():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(4, 16)
        edges = [(a, b) for a in range(n) for b in range(a)
                 if rng.random() < 0.6]
        g = graph_from_edges(n, edges)
        clique = greedy_clique(g)
        for a, b in itertools.combinations(clique, 2):
            assert (g.adjacency[a] >> b) & 1


def test_dsatur_always_proper():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(3, 20)
        edges = [(a, b) for a in range(n) for b in range(a)
                 if rng.random() < 0.3]
        g = graph_from_edges(n, edges)
        colors = dsatur(g)
        assert all(colors[i] != colors[j] for i, j in g.edges())


def test_run_solver_banner(solver_path):
    result = run_solver(solver_path, "p cnf 1 1\n1 0\n", 5000)
    assert result.status == "sat"
