"""Domination rule: v dominates w when N(v)-w strictly contains N(w)-v, or they are equal and v ranks higher.

Vertices rank by (degree, id). Some optimal elimination tree never places a
vertex above one it dominates, so candidate sets whose members dominate a
neighbour of the set can be discarded.
"""
import logging
from dataclasses import dataclass

from pid_treedepth.graph import Graph, VertexSet, iter_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DominationIndex:
    """``dominators[w]`` is the bitset of vertices dominating w."""
    n: int
    dominators: tuple[int, ...]

    def dominators_of(self, w: int) -> VertexSet:
        return VertexSet(self.n, self.dominators[w])

    def dominates(self, v: int, w: int) -> bool:
        return (self.dominators[w] >> v) & 1 == 1

    @classmethod
    def disabled(cls, n: int) -> "DominationIndex":
        """An index in which nothing dominates anything."""
        return cls(n=n, dominators=(0,) * n)


def _rank(graph: Graph, v: int) -> tuple[int, int]:
    return graph.degree(v), v


def dominates(graph: Graph, v: int, w: int) -> bool:
    """Evaluate the domination relation for one ordered pair directly."""
    if v == w:
        return False
    nv = graph.adj[v] & ~(1 << w)
    nw = graph.adj[w] & ~(1 << v)
    if nw & ~nv:
        return False
    if nv != nw:
        return True
    return _rank(graph, v) > _rank(graph, w)


def build_domination_index(graph: Graph) -> DominationIndex:
    dominators = [0] * graph.n
    for w in range(graph.n):
        for v in range(graph.n):
            if dominates(graph, v, w):
                dominators[w] |= 1 << v
    index = DominationIndex(n=graph.n, dominators=tuple(dominators))
    logger.debug("Domination index: %d dominating pairs", sum(d.bit_count() for d in dominators))
    return index


def passes_domination_filter_bits(s: int, nbhd: int, dom: DominationIndex) -> bool:
    dominators = dom.dominators
    for w in iter_bits(nbhd):
        if dominators[w] & s:
            return False
    return True


def passes_domination_filter(s: VertexSet, nbhd: VertexSet, dom: DominationIndex) -> bool:
    """True iff no vertex of S dominates a member of N(S)."""
    return passes_domination_filter_bits(s.bits, nbhd.bits, dom)
