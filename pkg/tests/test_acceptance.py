"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Budgets follow the stated limits. Some sub-cases are known to contradict
the transcribed claims and fail honestly; the assertion messages carry the
verified counter-evidence.
"""

import json
import os
import random
import sys
import time

import pytest

from borsukcube import configs
from borsukcube.coloring import (emit_dimacs, encode_coloring,
                                 exact_chromatic_small, is_colorable, solve,
                                 verify_coloring)
from borsukcube.cover import (build_cover_10_4, build_tnk2,
                              cover_membership_check, verify_n9)
from borsukcube.cube import (VertexSet, group_order, hamming_distance,
                             random_isometry)
from borsukcube.graph import (build_distance_graph, connected_components,
                              parity_bipartition, trim)
from borsukcube.search import CASE_TABLE, run_case

pytestmark = pytest.mark.acceptance

DATA = os.path.join(os.path.dirname(__file__), "data")


def report(criterion: str, ok: bool, detail: str = "") -> bool:
    line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line, file=sys.__stderr__, flush=True)
    return ok


def test_criterion_01_parity_law():
    t0 = time.monotonic()
    checked = 0
    for n in range(1, 11):
        colors = {v: v.bit_count() & 1 for v in range(1 << n)}
        for k in range(1, n + 1, 2):
            assert parity_bipartition(n, k) == colors
            # edge-by-edge: enumerate distance-k neighbors via masks
            masks = [m for m in range(1 << n) if m.bit_count() == k]
            for v in range(1 << n):
                pv = colors[v]
                for m in masks:
                    if colors[v ^ m] == pv:
                        assert report("1 parity law", False, f"n={n} k={k}")
            checked += 1
    elapsed = time.monotonic() - t0
    assert report("1 parity law", elapsed < 10,
                  f"{checked} graphs, {elapsed:.1f}s")


def test_criterion_02_component_structure():
    t0 = time.monotonic()
    results = []
    for n in range(2, 9):
        for k in range(2, n + 1, 2):
            g = build_distance_graph(VertexSet(n, range(1 << n)), k)
            comps = connected_components(g)
            ok = (len(comps) == 2
                  and len({len(c) for c in comps}) == 1
                  and all(hamming_distance(a, b) % 2 == 0
                          for c in comps
                          for i, a in enumerate(c.members)
                          for b in c.members[i + 1:]))
            results.append((n, k, ok, len(comps)))
    elapsed = time.monotonic() - t0
    bad = [(n, k, cnt) for n, k, ok, cnt in results if not ok]
    ok_all = not bad and elapsed < 30
    report("2 component structure", ok_all,
           f"{len(results)} graphs, {elapsed:.1f}s"
           + (f"; failing cases {bad}" if bad else ""))
    assert ok_all, (
        f"claimed two components fails at {bad}: at k=n the distance-n "
        f"graph is a perfect matching with 2^(n-1) components")


def test_criterion_03_group_order_and_distance_preservation():
    t0 = time.monotonic()
    assert group_order(10) == 3_715_891_200 == (1 << 10) * 3628800
    rng = random.Random(20240)
    for _ in range(10_000):
        g = random_isometry(10, rng)
        u, v, w = (rng.randrange(1 << 10) for _ in range(3))
        assert hamming_distance(g.apply(u), g.apply(v)) == hamming_distance(u, v)
        assert hamming_distance(g.apply(v), g.apply(w)) == hamming_distance(v, w)
        assert hamming_distance(g.apply(u), g.apply(w)) == hamming_distance(u, w)
    elapsed = time.monotonic() - t0
    assert report("3 group order + isometries", elapsed < 5,
                  f"10^4 triples, {elapsed:.1f}s")


def test_criterion_04_clique_classification():
    t0 = time.monotonic()
    rep = configs.verify_classification_claims(sample_count=40)
    ok = (rep["K3"]["classes"] == 1 and rep["K5"]["classes"] == 1
          and rep["K6"]["classes"] == 1 and rep["K4"]["classes"] == 2
          and rep["K4"]["xor_separates"]
          and rep["K6_PLUS_V246666"]["classes"] == 1
          and rep["K6_PLUS_V246666"]["spot_check_agrees"])
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 600
    assert report(
        "4 clique classification", ok,
        f"K3/K4/K5/K6 classes {rep['K3']['classes']}/{rep['K4']['classes']}/"
        f"{rep['K5']['classes']}/{rep['K6']['classes']}, xor separates, "
        f"{elapsed:.0f}s")


def test_criterion_05_cover_10_4_coloring(solver_path):
    t0 = time.monotonic()
    system = build_cover_10_4()
    # sizes from the in-test scan oracle
    u1, u2 = 0b1111000000, 0b1100110000
    scan = [v for v in range(1 << 10)
            if bin(v).count("1") <= 4 and bin(v ^ u1).count("1") <= 4
            and bin(v ^ u2).count("1") <= 4]
    sizes = [len(vs) for _, vs in system.sets]
    assert sizes == [len(scan), 63, 61] == [109, 63, 61]
    statuses = []
    for label, vs in system.sets:
        g = build_distance_graph(vs, 4)
        out = is_colorable(g, 11, timeout_ms=1_800_000, solver=solver_path)
        statuses.append((label, out.status, out.colors_used))
        if out.is_colored:
            assert verify_coloring(g, out.assignment)
    ok = all(s == "colored" for _, s, _ in statuses)
    elapsed = time.monotonic() - t0
    assert report("5 cover(10,4) 11-colorings", ok,
                  f"{statuses}, {elapsed:.0f}s")


def test_criterion_06_n9_colorings(solver_path):
    t0 = time.monotonic()
    verdict = verify_n9(timeout_ms=420_000, solver=solver_path)
    entries = {e.label: e.outcome for e in verdict.entries}
    parts = []
    for k in (1, 3, 5, 7, 9):
        parts.append((f"k={k}", entries[f"T(9,{k})"] == "parity"))
    for k in (2, 4, 6, 8):
        parts.append((f"k={k}", entries[f"T(9,{k})"] == "colored"))
    ok = all(p for _, p in parts)
    elapsed = time.monotonic() - t0
    report("6 dimension-9 colorings", ok,
           "; ".join(f"{lbl}:{'ok' if p else 'FAIL'}" for lbl, p in parts)
           + f", {elapsed:.0f}s")
    assert ok, (
        f"outcomes {entries}: the k=4 two-seed trim is not 10-colorable "
        f"(its 108-vertex even component needs 11 colors; refuted by the "
        f"bundled CDCL solver and cross-checked with an independent MILP "
        f"solver, both with a pinned 8-clique)")


def test_criterion_07_anchor_rows(solver_path):
    t0 = time.monotonic()
    r4 = run_case(CASE_TABLE[4], solver=solver_path, seed=0)
    ok4 = (r4.leaves == 1 and not r4.not_colored and not r4.truncated)
    report("7 anchor row 4", ok4,
           f"leaves={r4.leaves} colored={r4.colored} {r4.elapsed_s:.0f}s")
    spec1 = CASE_TABLE[1]
    spec1.timeout_ms = 600_000
    r1 = run_case(spec1, solver=solver_path, seed=0)
    ok1 = (r1.leaves == 1 and not r1.not_colored and not r1.truncated)
    report("7 anchor row 1", ok1,
           f"leaves={r1.leaves} colored={r1.colored} timed_out={r1.timed_out} "
           f"{r1.elapsed_s:.0f}s")
    assert ok4, f"row 4 expected a single colored leaf, got {r4.to_json()}"
    assert ok1, (
        f"row 1 expected a single colored leaf, got leaves={r1.leaves} "
        f"colored={r1.colored}: the 272-vertex odd-weight component of the "
        f"leaf graph resists 11-coloring (DSATUR 17, tabu/evolutionary/"
        f"iterated-greedy all stall, bundled CDCL undecided after 1h)")


@pytest.mark.slow
def test_criterion_08_truncated_deep_rows(solver_path):
    t0 = time.monotonic()
    outcomes = []
    for row in (2, 3, 5, 6, 7, 8):
        spec = CASE_TABLE[row]
        a = run_case(spec, leaf_budget=50, solver=solver_path, seed=0)
        b = run_case(spec, leaf_budget=50, solver=solver_path, seed=0)
        same = (a.leaves == b.leaves and a.colored == b.colored
                and a.not_colored == b.not_colored)
        outcomes.append((row, a.leaves, a.truncated, same))
    ok = all(same and leaves == 50 and truncated
             for _, leaves, truncated, same in outcomes)
    elapsed = time.monotonic() - t0
    assert report(
        "8 truncated deep rows", ok,
        f"{[(r, l) for r, l, _, _ in outcomes]} deterministic, {elapsed:.0f}s")


def test_criterion_09_oracle_equivalence(solver_path):
    t0 = time.monotonic()
    rng = random.Random(900)
    agreements = 0
    for _ in range(200):
        nv = rng.randint(3, 12)
        dim = max(2, (nv - 1).bit_length())
        g = build_distance_graph(VertexSet(dim, range(nv)), 1, dim)
        adj = [0] * nv
        for a in range(nv):
            for b in range(a):
                if rng.random() < rng.choice((0.2, 0.4, 0.6)):
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
        g.adjacency = adj
        chi = exact_chromatic_small(g)
        up = solve(encode_coloring(g, chi), 60_000, solver_path)
        assert up.status == "sat", f"solver disagrees at chi={chi}"
        if chi > 1:
            down = solve(encode_coloring(g, chi - 1), 60_000, solver_path)
            assert down.status == "unsat", f"solver disagrees at chi-1"
        agreements += 1
    elapsed = time.monotonic() - t0
    assert report("9 oracle equivalence", elapsed < 300,
                  f"200 graphs agree, {elapsed:.0f}s")


def test_criterion_10_trim_oracles():
    t0 = time.monotonic()

    def scan(n, k, seeds):
        return [v for v in range(1 << n)
                if all(bin(v ^ s).count("1") <= k for s in seeds)]

    w = trim(10, 2, [0])
    assert list(w.members) == scan(10, 2, [0]) and len(w) == 56
    t4 = trim(10, 4, [0, 0b1111])
    assert list(t4.members) == scan(10, 4, [0, 0b1111]) and len(t4) == 190
    t6 = trim(10, 6, [0, 0b111111])
    assert list(t6.members) == scan(10, 6, [0, 0b111111]) and len(t6) == 692
    elapsed = time.monotonic() - t0
    assert report("10 trim oracles", elapsed < 1,
                  f"56/190/692 by scan, {elapsed:.2f}s")


def test_criterion_11_cover_membership():
    t0 = time.monotonic()
    rep = cover_membership_check(samples=100_000, seed=0)
    elapsed = time.monotonic() - t0
    report("11 cover membership", rep.passed,
           f"embedded={rep.embedded} failures={len(rep.failures)} "
           f"{elapsed:.0f}s")
    assert rep.passed, (
        f"{len(rep.failures)} maximal diameter-4 sets embed into no cover "
        f"set; smallest known certificate (12 points, verified by exact "
        f"search): [221, 223, 241, 243, 465, 467, 469, 471, 721, 723, "
        f"725, 727]; first failure here: {rep.failures[0]}")


def test_criterion_12_dimacs_golden(solver_path):
    g1 = build_distance_graph(VertexSet(1, (0,)), 1)
    g2 = build_distance_graph(VertexSet(3, (0b011, 0b110, 0b101)), 2)
    g3 = build_distance_graph(trim(10, 2, [0]), 2)
    ok = True
    for name, g, c in (("single_vertex_c1", g1, 1), ("triangle_c3", g2, 3),
                       ("ball56_k2_c10", g3, 10)):
        text = emit_dimacs(encode_coloring(g, c))
        golden = open(os.path.join(DATA, f"golden_{name}.cnf")).read()
        ok = ok and text == golden
    # pipeline property: a colored outcome always re-verifies; the third
    # graph needs exactly 10 colors (its weight-1 layer is a K10)
    out = is_colorable(g3, 10, timeout_ms=60_000, solver=solver_path)
    ok = ok and out.is_colored and verify_coloring(g3, out.assignment)
    assert report("12 DIMACS golden + verified colorings", ok,
                  "3 byte-identical encodings")
