"""Positive-instance driven treedepth solver.

The optimisation problem is a sequence of decision problems k = 1, 2, ...
For a fixed k, levels i = k .. 1 are built bottom-up: level i holds every
connected vertex set S with |N(S)| < i whose induced treedepth is at most
k - i + 1. A set enters level i either as a singleton or as the union of
pairwise separated level-(i+1) sets joined under a common root v. Depth k is
feasible iff level 1 contains V(G).
"""
from __future__ import annotations

import logging
import time
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from pid_treedepth.core import (
    Candidate, CombinationIndex, EliminationForest, IndexKind, IndexRegistry, LevelCollection,
    LevelStats, RunOptions, SolveResult, describe_set,
)
from pid_treedepth.domination import (
    DominationIndex, build_domination_index, passes_domination_filter_bits,
)
from pid_treedepth.graph import Graph, VertexSet, induced_subgraph, iter_bits
import pid_treedepth.trie  # registers the combination indexes

logger = logging.getLogger(__name__)


class SolverInvariantError(RuntimeError):
    """A level lookup failed during reconstruction; indicates a solver bug."""


class CombinationState(NamedTuple):
    """One node of the combination search for a fixed root vertex (sets as bitsets)."""
    root_vertex: int
    union_set: int
    union_nbhd: int
    chosen: tuple[int, ...]


@dataclass
class RootIndex:
    """Level-(i+1) candidates whose neighbourhood contains one root vertex."""
    handles: list[int]
    suffix_cover: list[int]
    index: CombinationIndex


@dataclass
class Decision:
    """Outcome of one decision problem; ``levels[j]`` is the collection for level j + 1."""
    budget: int
    top: Optional[Candidate]
    levels: list[LevelCollection] = field(default_factory=list)
    stats: list[LevelStats] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.top is not None


EmitFn = Callable[[Candidate], bool]


def build_root_indexes(graph: Graph, next_level: LevelCollection, kind: IndexKind) -> dict[int, RootIndex]:
    per_root: dict[int, list[int]] = {}
    for handle, cand in enumerate(next_level.candidates):
        for v in iter_bits(cand.nbhd.bits):
            per_root.setdefault(v, []).append(handle)

    indexes = {}
    for v, handles in per_root.items():
        index = IndexRegistry.create(kind, graph.n)
        cover = [0] * (len(handles) + 1)
        for pos in range(len(handles) - 1, -1, -1):
            cand = next_level.candidates[handles[pos]]
            index.insert(cand.set, cand.nbhd, handles[pos])
            cover[pos] = cover[pos + 1] | cand.set.bits
        indexes[v] = RootIndex(handles=handles, suffix_cover=cover, index=index)
    return indexes


def enumerate_combinations(graph: Graph, i: int, next_level: LevelCollection,
                           indexes: dict[int, RootIndex], dom: DominationIndex,
                           emit: EmitFn, stats: Optional[LevelStats] = None) -> None:
    """Emit every set ⋃𝒮 ∪ {v} built from separated level-(i+1) sets under root v.

    For each root v (ascending), a depth-first search grows 𝒮 one candidate at
    a time, only ever appending candidates later in v's handle order. Each
    extension comes from querying v's index with Q = ⋃𝒮 and budget i + 1,
    which enforces disjointness, non-adjacency and |N(⋃𝒮) \\ {v}| < i.
    """
    n = graph.n
    max_size = n - (i - 1)
    adj = graph.adj
    candidates = next_level.candidates
    emitted: set[int] = set()
    states = 0

    for v in sorted(indexes):
        root = indexes[v]
        vbit = 1 << v
        nv = adj[v]
        stack = [CombinationState(v, 0, 0, ())]
        while stack:
            state = stack.pop()
            states += 1
            if state.chosen:
                last = state.chosen[-1]
                options = sorted(
                    h for h in root.index.query(VertexSet(n, state.union_set), VertexSet(n, state.union_nbhd), i + 1)
                    if h > last
                )
            else:
                options = root.handles

            children = []
            for h in options:
                cand = candidates[h]
                union = state.union_set | cand.set.bits
                if (union | vbit).bit_count() > max_size:
                    continue
                union_nbhd = state.union_nbhd | cand.nbhd.bits
                cover = root.suffix_cover[bisect_right(root.handles, h)]
                # Neighbours of v that no later candidate can absorb stay in N(final).
                unavoidable = (union_nbhd & ~vbit) | (nv & ~(union | vbit | cover))
                if unavoidable.bit_count() >= i:
                    continue

                final = union | vbit
                final_nbhd = (union_nbhd | nv) & ~final
                if (final_nbhd.bit_count() < i and final not in emitted
                        and passes_domination_filter_bits(final, final_nbhd, dom)):
                    emitted.add(final)
                    emit(Candidate(set=VertexSet(n, final), nbhd=VertexSet(n, final_nbhd), root=v))
                if cover:
                    children.append(CombinationState(v, union, union_nbhd, state.chosen + (h,)))
            stack.extend(reversed(children))

    if stats is not None:
        stats.states += states
        stats.queries += sum(r.index.queries for r in indexes.values())
        stats.visited += sum(r.index.nodes_visited for r in indexes.values())


def build_level(graph: Graph, k: int, i: int, next_level: LevelCollection,
                dom: DominationIndex, options: RunOptions,
                stats: Optional[LevelStats] = None) -> LevelCollection:
    level = LevelCollection(level=i, budget=k)
    max_size = graph.n - (i - 1)
    if max_size >= 1:
        for v in range(graph.n):
            nbhd = graph.adj[v]
            if nbhd.bit_count() < i and passes_domination_filter_bits(1 << v, nbhd, dom):
                level.add(Candidate(set=VertexSet(graph.n, 1 << v), nbhd=VertexSet(graph.n, nbhd), root=v))

    if next_level.candidates and max_size >= 2:
        indexes = build_root_indexes(graph, next_level, options.index_kind)
        enumerate_combinations(graph, i, next_level, indexes, dom, level.add, stats)

    if stats is not None:
        stats.candidates = len(level)
    return level


def decide_depth(graph: Graph, k: int, dom: DominationIndex, options: RunOptions) -> Decision:
    """Decide whether connected ``graph`` has an elimination tree of depth <= k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    start = time.time()
    built: list[LevelCollection] = []
    stats: list[LevelStats] = []
    next_level = LevelCollection(level=k + 1, budget=k)
    for i in range(k, 0, -1):
        level_start = time.time()
        level_stats = LevelStats(budget=k, level=i)
        next_level = build_level(graph, k, i, next_level, dom, options, level_stats)
        level_stats.duration_seconds = time.time() - level_start
        logger.debug("k=%d level %d: %d candidates, %d queries, %d visited, %d states",
                     k, i, level_stats.candidates, level_stats.queries, level_stats.visited,
                     level_stats.states)
        built.append(next_level)
        stats.append(level_stats)

    full = (1 << graph.n) - 1
    top = next((c for c in next_level.candidates if c.set.bits == full), None)
    logger.info("Decision k=%d: %s (%.2fs)", k, "feasible" if top else "infeasible", time.time() - start)
    return Decision(budget=k, top=top, levels=list(reversed(built)), stats=list(reversed(stats)))


def reconstruct_forest(graph: Graph, k: int, levels: list[LevelCollection], top: Candidate) -> EliminationForest:
    """Rebuild the elimination tree witnessing ``top`` from the retained set→root maps."""
    parent: list[Optional[int]] = [None] * graph.n
    stack = [(top.set.bits, top.root, 1)]
    while stack:
        bits, root, i = stack.pop()
        rest = bits & ~(1 << root)
        if not rest:
            continue
        if i >= len(levels):
            raise SolverInvariantError(f"Level {i + 1} missing while expanding root {root + 1}")
        lookup = levels[i].set_to_root
        for comp in graph.component_bits(rest):
            child = lookup.get(comp)
            if child is None:
                raise SolverInvariantError(
                    f"Component {describe_set(VertexSet(graph.n, comp))} not found at level {i + 1}")
            parent[child] = root
            stack.append((comp, child, i + 1))

    forest = EliminationForest(parent=parent, depth=0)
    forest.depth = forest.compute_depth()
    if forest.depth > k:
        raise SolverInvariantError(f"Reconstructed depth {forest.depth} exceeds budget {k}")
    return forest


def _solve_connected(graph: Graph, options: RunOptions, component: int = 0) -> tuple[EliminationForest, list[LevelStats]]:
    dom = build_domination_index(graph) if options.domination_enabled else DominationIndex.disabled(graph.n)
    stats: list[LevelStats] = []
    k = options.start_depth
    while True:
        decision = decide_depth(graph, k, dom, options)
        for s in decision.stats:
            s.component = component
        stats.extend(decision.stats)
        if decision:
            return reconstruct_forest(graph, k, decision.levels, decision.top), stats
        k += 1


def solve_treedepth(graph: Graph, options: Optional[RunOptions] = None) -> SolveResult:
    """Compute the treedepth of ``graph`` together with an optimal elimination forest."""
    options = options or RunOptions()
    if graph.n < 1:
        raise ValueError("solve_treedepth requires at least one vertex")
    if options.start_depth > 1:
        logger.warning("Starting at depth %d; optimality holds only if the treedepth is at least that",
                       options.start_depth)
    start = time.time()

    components = graph.component_bits((1 << graph.n) - 1)
    if len(components) == 1:
        forest, stats = _solve_connected(graph, options)
    else:
        parts = [induced_subgraph(graph, VertexSet(graph.n, c)) for c in components]
        logger.info("Solving %d components (sizes %s) with %d worker(s)",
                    len(parts), [sub.n for sub, _ in parts], options.workers)
        if options.workers > 1:
            with ThreadPoolExecutor(max_workers=min(len(parts), options.workers)) as executor:
                futures = [executor.submit(_solve_connected, sub, options, idx)
                           for idx, (sub, _) in enumerate(parts)]
                solved = [f.result() for f in futures]
        else:
            solved = [_solve_connected(sub, options, idx) for idx, (sub, _) in enumerate(parts)]
        forest = EliminationForest.merge(graph.n, [(labels, f) for (_, labels), (f, _) in zip(parts, solved)])
        stats = [s for _, part_stats in solved for s in part_stats]

    return SolveResult(
        depth=forest.depth, forest=forest, levels=stats,
        components=len(components), duration_seconds=time.time() - start,
    )
