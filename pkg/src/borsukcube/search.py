"""Recursive search over growing assumption sets, dimension 10 at distance 6.

Each search node carries an assumption set U, an excluded set C (realized
implicitly by list slicing: once a branch for a candidate is exhausted, the
candidate is dropped from every deeper sibling), and a family of forbidden
configurations. A leaf tests whether the configuration's reachable vertex
set is 11-colorable; leaves that are not (or that time out) are collected
for separate handling.

Before coloring, edges both of whose endpoints would complete a forbidden
configuration together with U are discarded: no target set containing U may
hold both endpoints, so such an edge never constrains a valid set.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

from . import configs
from .coloring import DEFAULT_TIMEOUT_MS, UNSAT, is_colorable
from .cube import VertexSet, format_vertex, hamming_distance
from .graph import DistanceGraph, ForbiddenFamily, build_distance_graph, trim2

DIM = 10
DIST = 6
COLORS = 11
FULL_CUBE = tuple(range(1 << DIM))


@dataclass(frozen=True)
class Configuration:
    assumptions: VertexSet
    excluded: VertexSet
    forbidden: ForbiddenFamily

    def __post_init__(self):
        if self.assumptions.dim != DIM or self.excluded.dim != DIM:
            raise ValueError("search configurations live in dimension 10")
        overlap = set(self.assumptions.members) & set(self.excluded.members)
        if overlap:
            raise ValueError(f"assumptions and exclusions overlap: {overlap}")
        members = self.assumptions.members
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if hamming_distance(a, b) > DIST:
                    raise ValueError("assumption set has diameter > 6")
        if self.forbidden.embeds_in(self.assumptions):
            raise ValueError("assumption set already embeds a forbidden "
                             "configuration")

    def with_vertex(self, v: int) -> "Configuration":
        return Configuration(
            VertexSet(DIM, self.assumptions.members + (v,)),
            self.excluded, self.forbidden)


def candidate_set(cfg: Configuration) -> VertexSet:
    """Trim2 of the cube minus the excluded set, against U and the family."""
    excluded = set(cfg.excluded.members)
    pool = VertexSet(DIM, (v for v in FULL_CUBE if v not in excluded))
    return trim2(pool, DIST, cfg.assumptions, cfg.forbidden)


def can_add_restricted(cfg: Configuration, v: int) -> bool:
    """May v join the assumption set: outside U and C, within distance 6 of
    U, and creating no forbidden configuration."""
    if v in cfg.assumptions.members or v in cfg.excluded.members:
        return False
    for s in cfg.assumptions.members:
        if hamming_distance(v, s) > DIST:
            return False
    return not cfg.forbidden.embeds_with_vertex(cfg.assumptions, v)


def order_m1(candidates: VertexSet, assumptions: VertexSet,
             m: int | None = None) -> list[int]:
    """Distance-6-from-origin candidates, sorted by how many assumption
    vertices sit at distance exactly 6, descending; ties by ascending mask;
    truncated to the first m."""
    v6 = [v for v in candidates.members if v.bit_count() == DIST]

    def key(v: int) -> tuple[int, int]:
        close = sum(1 for s in assumptions.members
                    if hamming_distance(v, s) == DIST)
        return (-close, v)

    v6.sort(key=key)
    if m is not None:
        if m > len(v6):
            raise ValueError(f"m={m} exceeds candidate count {len(v6)}")
        v6 = v6[:m]
    return v6


@dataclass
class NotColoredEntry:
    assumptions: tuple[int, ...]
    status: str        # "unsat" | "timeout"


@dataclass
class SearchSink:
    """Accumulates failed leaves and counters; merging two sinks is a plain
    component-wise union, so parallel branches can combine safely."""
    leaves: int = 0
    colored: int = 0
    unsat: int = 0
    timed_out: int = 0
    not_colored: list[NotColoredEntry] = field(default_factory=list)
    leaf_budget: int | None = None
    truncated: bool = False

    def budget_left(self) -> bool:
        return self.leaf_budget is None or self.leaves < self.leaf_budget

    def record(self, cfg: Configuration, status: str) -> None:
        self.leaves += 1
        if status == "colored":
            self.colored += 1
        else:
            if status == UNSAT:
                self.unsat += 1
            else:
                self.timed_out += 1
            self.not_colored.append(
                NotColoredEntry(cfg.assumptions.members, status))

    def merge(self, other: "SearchSink") -> None:
        self.leaves += other.leaves
        self.colored += other.colored
        self.unsat += other.unsat
        self.timed_out += other.timed_out
        self.not_colored.extend(other.not_colored)
        self.truncated = self.truncated or other.truncated


class Checkpoint:
    """Records completed first-level branches, one line per branch, so an
    interrupted run can resume by skipping them."""

    def __init__(self, path: str | None):
        self.path = path
        self.done: set[str] = set()
        if path and os.path.exists(path):
            with open(path) as fh:
                self.done = {line.strip() for line in fh if line.strip()}

    def is_done(self, phase: str, idx: int) -> bool:
        return f"{phase} {idx}" in self.done

    def mark(self, phase: str, idx: int) -> None:
        key = f"{phase} {idx}"
        self.done.add(key)
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(key + "\n")


def leaf_graph(cfg: Configuration, extra_vertices) -> DistanceGraph:
    """Distance graph for a leaf test: the configuration's vertices plus the
    supplied candidates, with forbidden-pair edges discarded."""
    members = sorted(set(cfg.assumptions.members) | set(extra_vertices))
    g = build_distance_graph(members, DIST, DIM)
    if cfg.forbidden:
        in_u = set(cfg.assumptions.members)
        for i, j in list(g.edges()):
            a, b = g.vertices[i], g.vertices[j]
            if a in in_u and b in in_u:
                continue
            if a in in_u:
                discard = cfg.forbidden.embeds_with_vertex(cfg.assumptions, b)
            elif b in in_u:
                discard = cfg.forbidden.embeds_with_vertex(cfg.assumptions, a)
            else:
                discard = cfg.forbidden.embeds_with_pair(cfg.assumptions, a, b)
            if discard:
                g.adjacency[i] &= ~(1 << j)
                g.adjacency[j] &= ~(1 << i)
    return g


def _test_leaf(cfg: Configuration, extra_vertices, sink: SearchSink,
               timeout_ms: int, colors: int, solver: str | None,
               seed: int) -> None:
    g = leaf_graph(cfg, extra_vertices)
    outcome = is_colorable(g, colors, timeout_ms=timeout_ms, solver=solver,
                           seed=seed)
    sink.record(cfg, "colored" if outcome.is_colored else outcome.status)


def brute_force_restrictions(cfg: Configuration, set_to_check: list[int],
                             rest: list[int], remaining: int,
                             sink: SearchSink,
                             timeout_ms: int = DEFAULT_TIMEOUT_MS,
                             colors: int = COLORS,
                             solver: str | None = None,
                             seed: int = 0,
                             checkpoint: Checkpoint | None = None,
                             phase: str = "main",
                             _top: bool = True) -> None:
    """Leaves test the configuration against rest plus the unprocessed tail
    of the candidate list, so deeper candidates stay available."""
    if remaining < 0:
        raise ValueError("remaining must be >= 0")
    for idx, v in enumerate(set_to_check):
        if not sink.budget_left():
            sink.truncated = True
            return
        if _top and checkpoint and checkpoint.is_done(phase, idx):
            continue
        if not can_add_restricted(cfg, v):
            continue
        updated = cfg.with_vertex(v)
        tail = set_to_check[idx + 1:]
        if remaining > 0:
            brute_force_restrictions(updated, tail, rest, remaining - 1,
                                     sink, timeout_ms, colors, solver, seed,
                                     None, phase, False)
        else:
            _test_leaf(updated, list(rest) + tail, sink, timeout_ms, colors,
                       solver, seed)
        if _top and checkpoint and sink.budget_left():
            checkpoint.mark(phase, idx)


def brute_force_restrictions_limited(cfg: Configuration,
                                     set_to_check: list[int],
                                     rest: list[int], remaining: int,
                                     sink: SearchSink,
                                     timeout_ms: int = DEFAULT_TIMEOUT_MS,
                                     colors: int = COLORS,
                                     solver: str | None = None,
                                     seed: int = 0,
                                     checkpoint: Checkpoint | None = None,
                                     phase: str = "limited",
                                     _top: bool = True) -> None:
    """Same traversal, but leaves are tested against rest only: the
    unprocessed candidates count as excluded, which realizes the
    exactly-j-vertices subproblems."""
    if remaining < 0:
        raise ValueError("remaining must be >= 0")
    for idx, v in enumerate(set_to_check):
        if not sink.budget_left():
            sink.truncated = True
            return
        if _top and checkpoint and checkpoint.is_done(phase, idx):
            continue
        if not can_add_restricted(cfg, v):
            continue
        updated = cfg.with_vertex(v)
        tail = set_to_check[idx + 1:]
        if remaining > 0:
            brute_force_restrictions_limited(updated, tail, rest,
                                             remaining - 1, sink, timeout_ms,
                                             colors, solver, seed, None,
                                             phase, False)
        else:
            _test_leaf(updated, rest, sink, timeout_ms, colors, solver, seed)
        if _top and checkpoint and sink.budget_left():
            checkpoint.mark(phase, idx)


@dataclass
class CaseSpec:
    row: int
    assumptions: tuple[str, ...]       # representative tags
    forbidden: tuple[str, ...]
    m1_limit: int | None               # None = all of v6
    depth: int
    colors: int = COLORS
    timeout_ms: int = DEFAULT_TIMEOUT_MS

    def to_json(self) -> dict:
        return {"row": self.row, "assumptions": list(self.assumptions),
                "forbidden": list(self.forbidden), "m1_limit": self.m1_limit,
                "depth": self.depth, "colors": self.colors,
                "timeout_ms": self.timeout_ms}

    @classmethod
    def from_json(cls, data: dict) -> "CaseSpec":
        return cls(row=int(data["row"]),
                   assumptions=tuple(data["assumptions"]),
                   forbidden=tuple(data["forbidden"]),
                   m1_limit=data.get("m1_limit"),
                   depth=int(data["depth"]),
                   colors=int(data.get("colors", COLORS)),
                   timeout_ms=int(data.get("timeout_ms", DEFAULT_TIMEOUT_MS)))


def _assumption_set(tags: tuple[str, ...]) -> VertexSet:
    if tags == (configs.K4_PRIME, configs.K5_MINUS_E):
        # a K5-e whose distance-6 quadruple is the K4' representative
        return configs.representative(configs.K5_MINUS_E)
    if len(tags) == 1:
        return configs.representative(tags[0])
    raise ValueError(f"unsupported assumption combination: {tags}")


# Case table: one entry per row of the enumeration plan.
CASE_TABLE: dict[int, CaseSpec] = {
    1: CaseSpec(1, (configs.K2,), (configs.K3,), None, 0),
    2: CaseSpec(2, (configs.K3,),
                (configs.K4_PRIME, configs.K4_DOUBLE_PRIME), 80, 4),
    3: CaseSpec(3, (configs.K4_DOUBLE_PRIME,),
                (configs.K4_PRIME, configs.K5), None, 3),
    4: CaseSpec(4, (configs.K4_PRIME,), (configs.K5_MINUS_E,), None, 0),
    5: CaseSpec(5, (configs.K4_PRIME, configs.K5_MINUS_E),
                (configs.K5,), 60, 3),
    6: CaseSpec(6, (configs.K5,), (configs.K6,), 60, 3),
    7: CaseSpec(7, (configs.K6_PLUS_V246666,), (), None, 4),
    8: CaseSpec(8, (configs.K6,), (configs.K6_PLUS_V246666,), None, 4),
}


@dataclass
class CaseReport:
    row: int
    leaves: int
    colored: int
    timed_out: int
    unsat: int
    not_colored: list[list[str]]
    elapsed_s: float
    truncated: bool

    def to_json(self) -> dict:
        return {"row": self.row, "leaves": self.leaves,
                "colored": self.colored, "timed_out": self.timed_out,
                "unsat": self.unsat, "not_colored": self.not_colored,
                "elapsed_s": round(self.elapsed_s, 3),
                "truncated": self.truncated}


def _base_configuration(spec: CaseSpec) -> Configuration:
    return Configuration(_assumption_set(spec.assumptions),
                         VertexSet(DIM, ()),
                         configs.forbidden_family(spec.forbidden))


def _main_branch_worker(args: tuple) -> dict:
    """Run one first-level branch of the main phase in a worker process."""
    spec_json, idx, solver, seed = args
    spec = CaseSpec.from_json(spec_json)
    cfg = _base_configuration(spec)
    candidates = candidate_set(cfg)
    m1 = order_m1(candidates, cfg.assumptions, spec.m1_limit)
    m1_set = set(m1)
    rest = [v for v in candidates.members if v not in m1_set]
    sink = SearchSink()
    v = m1[idx]
    if can_add_restricted(cfg, v):
        updated = cfg.with_vertex(v)
        tail = m1[idx + 1:]
        if spec.depth - 1 > 0:
            brute_force_restrictions(updated, tail, rest, spec.depth - 2,
                                     sink, spec.timeout_ms, spec.colors,
                                     solver, seed, None, "main", False)
        else:
            _test_leaf(updated, list(rest) + tail, sink, spec.timeout_ms,
                       spec.colors, solver, seed)
    return {"leaves": sink.leaves, "colored": sink.colored,
            "unsat": sink.unsat, "timed_out": sink.timed_out,
            "not_colored": [(list(e.assumptions), e.status)
                            for e in sink.not_colored]}


def run_case(spec: CaseSpec, leaf_budget: int | None = None,
             solver: str | None = None, seed: int = 0,
             checkpoint_path: str | None = None, jobs: int = 1,
             progress=None) -> CaseReport:
    """Run one row of the case table.

    Depth 0 is a single leaf: the bare configuration's candidate set.
    Depth D >= 1 dispatches the exactly-0 leaf, the exactly-j subproblems
    for j in 1..D-1 (limited variant), and the at-least-D main run. With
    jobs > 1 the main phase's first-level branches run in a process pool
    (full runs only: a leaf budget forces sequential execution so the leaf
    sequence stays deterministic).
    """
    start = time.monotonic()
    cfg = _base_configuration(spec)
    candidates = candidate_set(cfg)
    sink = SearchSink(leaf_budget=leaf_budget)
    checkpoint = Checkpoint(checkpoint_path)
    if leaf_budget is not None:
        jobs = 1

    if spec.depth == 0:
        if not checkpoint.is_done("exact0", 0):
            _test_leaf(cfg, candidates.members, sink, spec.timeout_ms,
                       spec.colors, solver, seed)
            checkpoint.mark("exact0", 0)
    else:
        m1 = order_m1(candidates, cfg.assumptions, spec.m1_limit)
        m1_set = set(m1)
        rest = [v for v in candidates.members if v not in m1_set]
        if progress:
            progress(f"row {spec.row}: |candidates|={len(candidates)} "
                     f"|M1|={len(m1)} |rest|={len(rest)} depth={spec.depth}")
        if sink.budget_left() and not checkpoint.is_done("exact0", 0):
            _test_leaf(cfg, rest, sink, spec.timeout_ms, spec.colors,
                       solver, seed)
            checkpoint.mark("exact0", 0)
        for j in range(1, spec.depth):
            if not sink.budget_left():
                sink.truncated = True
                break
            brute_force_restrictions_limited(
                cfg, m1, rest, j - 1, sink, spec.timeout_ms, spec.colors,
                solver, seed, checkpoint, f"limited{j}")
        if not sink.budget_left():
            sink.truncated = True
        elif jobs <= 1:
            brute_force_restrictions(
                cfg, m1, rest, spec.depth - 1, sink, spec.timeout_ms,
                spec.colors, solver, seed, checkpoint, "main")
        else:
            from concurrent.futures import ProcessPoolExecutor
            todo = [i for i in range(len(m1))
                    if not checkpoint.is_done("main", i)]
            spec_json = spec.to_json()
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for idx, result in zip(todo, pool.map(
                        _main_branch_worker,
                        [(spec_json, i, solver, seed) for i in todo])):
                    branch = SearchSink(
                        leaves=result["leaves"], colored=result["colored"],
                        unsat=result["unsat"], timed_out=result["timed_out"],
                        not_colored=[NotColoredEntry(tuple(a), s)
                                     for a, s in result["not_colored"]])
                    sink.merge(branch)
                    checkpoint.mark("main", idx)
                    if progress:
                        progress(f"branch {idx}: leaves={result['leaves']}")
    not_colored = [[format_vertex(v, DIM) for v in entry.assumptions]
                   for entry in sink.not_colored]
    return CaseReport(spec.row, sink.leaves, sink.colored, sink.timed_out,
                      sink.unsat, not_colored,
                      time.monotonic() - start, sink.truncated)


def load_case_spec(path: str) -> CaseSpec:
    with open(path) as fh:
        return CaseSpec.from_json(json.load(fh))


def save_case_report(path: str, report: CaseReport,
                     manifest: dict | None = None) -> None:
    payload = report.to_json()
    if manifest:
        payload["manifest"] = manifest
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
