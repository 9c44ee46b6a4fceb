"""Brute-force treedepth by memoised subset recursion, and decomposition checks."""
import logging
from typing import Optional

from pid_treedepth.core import EliminationForest
from pid_treedepth.graph import Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 20


class OracleLimitError(RuntimeError):
    """The requested vertex set is too large for exhaustive search."""


class MemoTable:
    """Treedepth of induced subgraphs keyed by the raw bitset of the vertex set."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self._td: dict[int, int] = {}
        self._root: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._td)

    def treedepth(self, bits: int) -> int:
        cached = self._td.get(bits)
        if cached is not None:
            return cached
        components = self.graph.component_bits(bits)
        if len(components) > 1:
            td = max(self.treedepth(c) for c in components)
        elif bits & (bits - 1) == 0:
            td = 1
            self._root[bits] = bits.bit_length() - 1
        else:
            td, root = min((1 + self.treedepth(bits & ~(1 << v)), v) for v in iter_bits(bits))
            self._root[bits] = root
        self._td[bits] = td
        return td

    def root(self, bits: int) -> int:
        """Optimal root for a connected set already evaluated by ``treedepth``."""
        return self._root[bits]


def _check_size(s: VertexSet, cap: int) -> None:
    if not s:
        raise ValueError("brute_force_treedepth requires a non-empty vertex set")
    if len(s) > cap:
        raise OracleLimitError(f"Oracle capped at {cap} vertices, got {len(s)}")


def brute_force_treedepth(graph: Graph, s: Optional[VertexSet] = None, cap: int = DEFAULT_VERTEX_CAP) -> int:
    """td(G[S]) by the recursive elimination-tree definition with memoisation."""
    s = graph.vertices() if s is None else s
    _check_size(s, cap)
    return MemoTable(graph).treedepth(s.bits)


def brute_force_decomposition(graph: Graph, s: Optional[VertexSet] = None,
                              cap: int = DEFAULT_VERTEX_CAP) -> EliminationForest:
    """Optimal elimination forest of G[S]; vertices outside S are left as isolated roots."""
    s = graph.vertices() if s is None else s
    _check_size(s, cap)
    memo = MemoTable(graph)
    depth = memo.treedepth(s.bits)
    parent: list[Optional[int]] = [None] * graph.n
    stack: list[tuple[int, Optional[int]]] = [(c, None) for c in graph.component_bits(s.bits)]
    while stack:
        bits, above = stack.pop()
        memo.treedepth(bits)
        root = memo.root(bits)
        parent[root] = above
        for comp in graph.component_bits(bits & ~(1 << root)):
            stack.append((comp, root))
    return EliminationForest(parent=parent, depth=depth)


def validate_decomposition(graph: Graph, forest: EliminationForest) -> bool:
    """True iff the forest is acyclic, covers every edge ancestrally and reports its true depth."""
    if forest.n != graph.n:
        logger.warning("Decomposition covers %d vertices, graph has %d", forest.n, graph.n)
        return False
    if any(p is not None and not 0 <= p < graph.n for p in forest.parent):
        logger.warning("Decomposition has a parent outside 0..%d", graph.n - 1)
        return False
    depth = forest.compute_depth()
    if depth is None:
        logger.warning("Decomposition parent links contain a cycle")
        return False
    for u, v in graph.edges():
        if not (forest.is_ancestor(u, v) or forest.is_ancestor(v, u)):
            logger.warning("Edge {%d,%d} joins vertices that are not ancestor-related", u + 1, v + 1)
            return False
    if depth != forest.depth:
        logger.warning("Reported depth %d differs from actual depth %d", forest.depth, depth)
        return False
    return True
