"""Core framework: solver records, run options, combination-index registry."""
from __future__ import annotations

from dataclasses import dataclass, field, asdict
from enum import Enum
from pathlib import Path
from typing import Optional, Protocol

from pid_treedepth.graph import VertexSet, iter_bits


class IndexKind(Enum):
    TRIE = "trie"
    SCAN = "scan"


@dataclass(frozen=True, slots=True)
class Candidate:
    """A positive instance: connected vertex set S, its neighbourhood N(S) and the root of its witness tree."""
    set: VertexSet
    nbhd: VertexSet
    root: int


@dataclass
class LevelCollection:
    """Deduplicated candidates for level ``level`` of the depth-``budget`` decision problem."""
    level: int
    budget: int
    candidates: list[Candidate] = field(default_factory=list)
    set_to_root: dict[int, int] = field(default_factory=dict)

    def add(self, candidate: Candidate) -> bool:
        """Record ``candidate`` unless its set is already present; the first root wins."""
        key = candidate.set.bits
        if key in self.set_to_root:
            return False
        self.set_to_root[key] = candidate.root
        self.candidates.append(candidate)
        return True

    def __contains__(self, s: VertexSet) -> bool:
        return s.bits in self.set_to_root

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass
class EliminationForest:
    parent: list[Optional[int]]
    depth: int

    @property
    def n(self) -> int:
        return len(self.parent)

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p is None]

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return kids

    def vertex_depths(self) -> Optional[list[int]]:
        """Depth of every vertex (roots are 1), or None if the parent links contain a cycle."""
        depths: list[Optional[int]] = [None] * self.n
        for start in range(self.n):
            path = []
            v = start
            while v is not None and depths[v] is None:
                if len(path) > self.n:
                    return None
                path.append(v)
                v = self.parent[v]
            base = 0 if v is None else depths[v]
            for offset, u in enumerate(reversed(path), 1):
                depths[u] = base + offset
        return depths

    def compute_depth(self) -> Optional[int]:
        depths = self.vertex_depths()
        if depths is None:
            return None
        return max(depths, default=0)

    def is_ancestor(self, a: int, v: int) -> bool:
        steps = 0
        while v is not None and steps <= self.n:
            if v == a:
                return True
            v = self.parent[v]
            steps += 1
        return False

    @classmethod
    def merge(cls, n: int, parts: list[tuple[list[int], "EliminationForest"]]) -> "EliminationForest":
        """Combine forests of relabelled subgraphs; each part is (labels, forest)."""
        parent: list[Optional[int]] = [None] * n
        depth = 0
        for labels, forest in parts:
            for local, p in enumerate(forest.parent):
                parent[labels[local]] = None if p is None else labels[p]
            depth = max(depth, forest.depth)
        return cls(parent=parent, depth=depth)


@dataclass
class RunOptions:
    domination_enabled: bool = True
    use_trie: bool = True
    start_depth: int = 1
    validate_output: bool = False
    stats: bool = False
    input_path: Optional[Path] = None
    workers: int = 1
    presolve: str = "none"
    export_path: Optional[Path] = None

    def __post_init__(self):
        if self.start_depth < 1:
            raise ValueError(f"start_depth must be >= 1, got {self.start_depth}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.presolve != "none":
            raise ValueError(f"Unsupported presolve mode: {self.presolve}. Valid: [none]")

    @property
    def index_kind(self) -> IndexKind:
        return IndexKind.TRIE if self.use_trie else IndexKind.SCAN

    def to_dict(self):
        d = asdict(self)
        d["input_path"] = str(self.input_path) if self.input_path else None
        d["export_path"] = str(self.export_path) if self.export_path else None
        return d


@dataclass
class LevelStats:
    budget: int
    level: int
    component: int = 0
    candidates: int = 0
    queries: int = 0
    states: int = 0
    visited: int = 0
    duration_seconds: float = 0.0

    def to_dict(self):
        return asdict(self)


@dataclass
class SolveResult:
    depth: int
    forest: EliminationForest
    levels: list[LevelStats] = field(default_factory=list)
    components: int = 1
    duration_seconds: float = 0.0

    @property
    def total_candidates(self):
        return sum(s.candidates for s in self.levels)

    @property
    def total_queries(self):
        return sum(s.queries for s in self.levels)

    @property
    def total_visited(self):
        return sum(s.visited for s in self.levels)

    def to_dict(self):
        return {
            "depth": self.depth,
            "parent": [None if p is None else p + 1 for p in self.forest.parent],
            "components": self.components,
            "duration_seconds": self.duration_seconds,
            "total_candidates": self.total_candidates,
            "total_queries": self.total_queries,
            "total_visited": self.total_visited,
            "levels": [s.to_dict() for s in self.levels],
        }


class CombinationIndex(Protocol):
    """Store of (S, N(S)) pairs answering the budgeted-union / disjointness query."""
    queries: int
    nodes_visited: int

    def insert(self, s: VertexSet, nbhd: VertexSet, handle: int) -> None: ...

    def query(self, q: VertexSet, nbhd_q: VertexSet, i: int) -> list[int]: ...


class IndexRegistry:
    """Registry of available combination-index implementations."""
    _indexes: dict[IndexKind, type] = {}

    @classmethod
    def register(cls, kind: IndexKind, index_cls: type):
        cls._indexes[kind] = index_cls

    @classmethod
    def get(cls, kind: IndexKind) -> Optional[type]:
        return cls._indexes.get(kind)

    @classmethod
    def create(cls, kind: IndexKind, capacity: int) -> CombinationIndex:
        index_cls = cls._indexes.get(kind)
        if index_cls is None:
            raise ValueError(f"Unknown index: {kind.value}. Valid: [{', '.join(k.value for k in cls._indexes)}]")
        return index_cls(capacity)

    @classmethod
    def all(cls) -> dict[IndexKind, type]:
        return cls._indexes


def describe_set(s: VertexSet) -> str:
    """Render a vertex set with 1-based labels, e.g. ``{1,3}``."""
    return "{" + ",".join(str(v + 1) for v in iter_bits(s.bits)) + "}"
