"""Deciding c-colorability of distance graphs.

The pipeline is layered so that cheap methods answer easy queries and an
external CDCL solver settles the rest:

  1. DSATUR greedy on the whole graph;
  2. connected-component split (chromatic number is the max over parts);
  3. per component: DSATUR, low-degree peeling, a bounded tabu search, and
     finally the SAT encoding with the solver, warm-started by phase hints
     from the best tabu coloring.

Every "colored" answer carries an assignment that has been re-verified
edge by edge; a timeout is reported as such and never conflated with a
proven non-colorability.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Sequence

from .graph import DistanceGraph, component_index_lists
from .satbackend import (SatResult, find_solver, run_solver)

DEFAULT_TIMEOUT_MS = 1000

COLORED = "colored"
UNSAT = "unsat"
TIMEOUT = "timeout"


@dataclass
class CnfFormula:
    variable_count: int
    clauses: list[list[int]] = field(default_factory=list)

    def add(self, clause: Sequence[int]) -> None:
        assert all(lit != 0 and abs(lit) <= self.variable_count
                   for lit in clause)
        self.clauses.append(list(clause))


@dataclass
class ColoringOutcome:
    status: str                      # COLORED | UNSAT | TIMEOUT
    assignment: dict[int, int] | None = None   # vertex mask -> color
    colors_used: int = 0
    elapsed_s: float = 0.0
    route: str = ""                  # which pipeline stage answered

    @property
    def is_colored(self) -> bool:
        return self.status == COLORED


def greedy_clique(g: DistanceGraph, tries: int = 24) -> list[int]:
    """A large clique, greedily; vertex indices, deterministic."""
    n = len(g.vertices)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    best: list[int] = []
    for start in order[:tries]:
        clique = [start]
        cand = g.adjacency[start]
        while cand:
            pick, pick_deg = -1, -1
            m = cand
            while m:
                lsb = m & -m
                u = lsb.bit_length() - 1
                m ^= lsb
                d = (g.adjacency[u] & cand).bit_count()
                if d > pick_deg:
                    pick_deg, pick = d, u
            clique.append(pick)
            cand &= g.adjacency[pick]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur(g: DistanceGraph) -> list[int]:
    """Greedy coloring by descending saturation; deterministic."""
    n = len(g.vertices)
    colors = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    degrees = [g.degree(v) for v in range(n)]
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored,
                key=lambda u: (len(neighbor_colors[u]), degrees[u], -u))
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        m = g.adjacency[v]
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            neighbor_colors[u].add(c)
    return colors


def tabu_search(g: DistanceGraph, c: int, seed: int,
                max_iters: int, deadline: float,
                init: list[int] | None = None) -> tuple[int, list[int]]:
    """TabuCol; returns (best conflict count, best coloring)."""
    n = len(g.vertices)
    rng = random.Random(seed)
    if init is None:
        col = [rng.randrange(c) for _ in range(n)]
    else:
        col = [min(x, c - 1) for x in init]
    gamma = [[0] * c for _ in range(n)]
    for v in range(n):
        m = g.adjacency[v]
        gv = gamma[v]
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            gv[col[u]] += 1
    conflicts = sum(gamma[v][col[v]] for v in range(n)) // 2
    tabu_until = [[0] * c for _ in range(n)]
    best, best_col = conflicts, list(col)
    it = 0
    while conflicts > 0 and it < max_iters:
        it += 1
        if it % 128 == 0 and time.monotonic() > deadline:
            break
        conflicted = [v for v in range(n) if gamma[v][col[v]] > 0]
        best_delta = None
        moves: list[tuple[int, int]] = []
        for v in conflicted:
            gv = gamma[v]
            base = gv[col[v]]
            for q in range(c):
                if q == col[v]:
                    continue
                delta = gv[q] - base
                if tabu_until[v][q] >= it and conflicts + delta >= best:
                    continue
                if best_delta is None or delta < best_delta:
                    best_delta, moves = delta, [(v, q)]
                elif delta == best_delta:
                    moves.append((v, q))
        if not moves:
            v = rng.choice(conflicted)
            q = (col[v] + 1 + rng.randrange(c - 1)) % c
            best_delta = gamma[v][q] - gamma[v][col[v]]
        else:
            v, q = moves[rng.randrange(len(moves))]
        old = col[v]
        col[v] = q
        m = g.adjacency[v]
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            gamma[u][old] -= 1
            gamma[u][q] += 1
        conflicts += best_delta
        tabu_until[v][old] = it + rng.randrange(10) + (6 * len(conflicted)) // 10
        if conflicts < best:
            best, best_col = conflicts, list(col)
    return best, best_col


def encode_coloring(g: DistanceGraph, c: int) -> CnfFormula:
    """Assignment encoding: x[v,i] with at-least-one-color clauses and one
    conflict clause per edge and color. At-most-one clauses are omitted
    (any held color of a multi-colored vertex yields a proper coloring).
    A greedy clique of size >= 2 is pinned to distinct colors via units."""
    if c < 1:
        raise ValueError("color count must be positive")
    n = len(g.vertices)
    f = CnfFormula(n * c)

    def var(v: int, i: int) -> int:
        return v * c + i + 1

    for v in range(n):
        f.add([var(v, i) for i in range(c)])
    for i, j in g.edges():
        for q in range(c):
            f.add([-var(i, q), -var(j, q)])
    clique = greedy_clique(g)
    if len(clique) >= 2:
        for pos, v in enumerate(clique[:c]):
            f.add([var(v, pos)])
    return f


def emit_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.variable_count} {len(f.clauses)}"]
    for clause in f.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines)


def parse_dimacs(text: str) -> CnfFormula:
    """Inverse of emit_dimacs, for round-trip tests."""
    header = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[:2] != ["p", "cnf"]:
                raise ValueError(f"bad DIMACS header: {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise ValueError("missing DIMACS header")
    if pending:
        raise ValueError("unterminated clause")
    f = CnfFormula(header[0])
    for cl in clauses:
        f.add(cl)
    return f


def solve(f: CnfFormula, timeout_ms: int, solver: str | None = None,
          phase_hints: list[int] | None = None) -> SatResult:
    """Run the external solver on the formula; the timeout is enforced with
    a hard kill. Phase hints are emitted as comment lines that conforming
    solvers ignore."""
    solver_path = find_solver(solver)
    text = emit_dimacs(f)
    if phase_hints:
        hint_lines = []
        for i in range(0, len(phase_hints), 24):
            chunk = " ".join(str(x) for x in phase_hints[i:i + 24])
            hint_lines.append(f"c phase {chunk} 0")
        head, _, rest = text.partition("\n")
        text = head + "\n" + "\n".join(hint_lines) + ("\n" + rest if rest else "")
    return run_solver(solver_path, text, timeout_ms)


def verify_coloring(g: DistanceGraph, assignment: dict[int, int]) -> bool:
    """True iff the assignment is total on g's vertices and no edge is
    monochromatic."""
    for v in g.vertices:
        if v not in assignment:
            raise ValueError(f"assignment missing vertex {v}")
    for i, j in g.edges():
        if assignment[g.vertices[i]] == assignment[g.vertices[j]]:
            return False
    return True


def _peel(g: DistanceGraph, c: int) -> tuple[list[int], list[int]]:
    """Remove vertices of residual degree < c until none remain.

    Returns (surviving indices, removal order). Removed vertices always
    extend a proper c-coloring of the survivors greedily."""
    n = len(g.vertices)
    alive = (1 << n) - 1
    removed: list[int] = []
    changed = True
    while changed:
        changed = False
        m = alive
        while m:
            lsb = m & -m
            v = lsb.bit_length() - 1
            m ^= lsb
            if (g.adjacency[v] & alive).bit_count() < c:
                alive &= ~(1 << v)
                removed.append(v)
                changed = True
    survivors = [v for v in range(n) if (alive >> v) & 1]
    return survivors, removed


def _model_to_colors(model: set[int], n: int, c: int) -> list[int] | None:
    colors = [-1] * n
    for v in range(n):
        for q in range(c):
            if v * c + q + 1 in model:
                colors[v] = q
                break
        if colors[v] < 0:
            return None
    return colors


def is_colorable(g: DistanceGraph, c: int,
                 timeout_ms: int = DEFAULT_TIMEOUT_MS,
                 solver: str | None = None,
                 greedy_only: bool = False,
                 seed: int = 0) -> ColoringOutcome:
    """Decide whether g has a proper coloring with at most c colors.

    Returns Colored with a verified assignment, UnsatProven when the solver
    refutes some component, or TimedOut when the budget expires first.
    Treating a timeout as non-colorable is the caller's policy.
    """
    start = time.monotonic()
    deadline = start + timeout_ms / 1000.0
    n = len(g.vertices)
    if c < 1:
        raise ValueError("color count must be positive")
    if n == 0:
        return ColoringOutcome(COLORED, {}, 0, 0.0, "empty")

    def finish(assignment: dict[int, int], route: str) -> ColoringOutcome:
        if not verify_coloring(g, assignment):
            raise AssertionError(f"improper coloring escaped the {route} stage")
        used = len(set(assignment.values()))
        return ColoringOutcome(COLORED, assignment, used,
                               time.monotonic() - start, route)

    whole = dsatur(g)
    if max(whole) + 1 <= c:
        return finish({g.vertices[i]: whole[i] for i in range(n)}, "dsatur")

    components = component_index_lists(g)
    assignment: dict[int, int] = {}
    timed_out = False
    routes = []
    for comp in sorted(components, key=len, reverse=True):
        sub = g.subgraph(comp)
        outcome = _color_component(sub, c, deadline, solver, greedy_only, seed)
        if outcome.status == UNSAT:
            return ColoringOutcome(UNSAT, None, 0,
                                   time.monotonic() - start, outcome.route)
        if outcome.status == TIMEOUT:
            timed_out = True
            break
        assignment.update(outcome.assignment)
        routes.append(outcome.route)
    if timed_out:
        return ColoringOutcome(TIMEOUT, None, 0, time.monotonic() - start,
                               "+".join(routes + ["timeout"]))
    return finish(assignment, "+".join(sorted(set(routes))))


def _color_component(sub: DistanceGraph, c: int, deadline: float,
                     solver: str | None, greedy_only: bool,
                     seed: int) -> ColoringOutcome:
    n = len(sub.vertices)
    cols = dsatur(sub)
    if max(cols) + 1 <= c:
        return ColoringOutcome(
            COLORED, {sub.vertices[i]: cols[i] for i in range(n)},
            max(cols) + 1, 0.0, "dsatur")

    survivors, removed = _peel(sub, c)
    core = sub.subgraph(survivors)

    core_assignment: dict[int, int] | None = None
    route = ""
    if len(core.vertices) == 0:
        core_assignment = {}
        route = "peel"
    else:
        core_cols = dsatur(core)
        if max(core_cols) + 1 <= c:
            core_assignment = {core.vertices[i]: core_cols[i]
                               for i in range(len(core.vertices))}
            route = "peel+dsatur"
        else:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return ColoringOutcome(TIMEOUT, None, 0, 0.0, "timeout")
            tabu_deadline = time.monotonic() + min(0.35 * remaining, 60.0)
            best, best_cols = tabu_search(core, c, seed, 400_000,
                                          tabu_deadline, init=core_cols)
            if best == 0:
                core_assignment = {core.vertices[i]: best_cols[i]
                                   for i in range(len(core.vertices))}
                route = "tabu"
            elif greedy_only:
                return ColoringOutcome(TIMEOUT, None, 0, 0.0, "greedy-only")
            else:
                remaining_ms = int((deadline - time.monotonic()) * 1000)
                if remaining_ms <= 0:
                    return ColoringOutcome(TIMEOUT, None, 0, 0.0, "timeout")
                formula = encode_coloring(core, c)
                hints = []
                for v in range(len(core.vertices)):
                    for q in range(c):
                        lit = v * c + q + 1
                        hints.append(lit if best_cols[v] == q else -lit)
                result = solve(formula, remaining_ms, solver, hints)
                if result.status == "unsat":
                    return ColoringOutcome(UNSAT, None, 0, 0.0, "sat")
                if result.status == "timeout":
                    return ColoringOutcome(TIMEOUT, None, 0, 0.0, "sat-timeout")
                model_cols = _model_to_colors(result.model,
                                              len(core.vertices), c)
                if model_cols is None:
                    # defensive: a model must assign every vertex a color
                    return ColoringOutcome(TIMEOUT, None, 0, 0.0, "bad-model")
                core_assignment = {core.vertices[i]: model_cols[i]
                                   for i in range(len(core.vertices))}
                route = "sat"

    # extend over peeled vertices in reverse removal order
    assignment = dict(core_assignment)
    index_of = {v: i for i, v in enumerate(sub.vertices)}
    for v_idx in reversed(removed):
        used = set()
        m = sub.adjacency[v_idx]
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            col = assignment.get(sub.vertices[u])
            if col is not None:
                used.add(col)
        for q in range(c):
            if q not in used:
                assignment[sub.vertices[v_idx]] = q
                break
        else:
            raise AssertionError("peeling invariant violated")
    del index_of
    return ColoringOutcome(COLORED, assignment,
                           len(set(assignment.values())), 0.0, route)


def exact_chromatic_small(g: DistanceGraph) -> int:
    """Exact chromatic number by branch and bound over color classes.

    Guarded to at most 14 vertices; used as a test oracle."""
    n = len(g.vertices)
    if n > 14:
        raise ValueError("exact_chromatic_small is limited to 14 vertices")
    if n == 0:
        return 0
    ub = max(dsatur(g)) + 1
    lb = len(greedy_clique(g))
    if lb == ub:
        return ub
    order = sorted(range(n), key=lambda v: -g.degree(v))
    colors = [-1] * n
    best = ub

    def assign(pos: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if pos == n:
            best = used
            return
        v = order[pos]
        forbidden = 0
        m = g.adjacency[v]
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            if colors[u] >= 0:
                forbidden |= 1 << colors[u]
        for q in range(min(used + 1, best - 1)):
            if (forbidden >> q) & 1:
                continue
            colors[v] = q
            assign(pos + 1, max(used, q + 1))
            colors[v] = -1

    assign(0, 0)
    return best
