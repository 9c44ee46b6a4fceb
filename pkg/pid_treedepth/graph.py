"""Graph core: bitset vertex sets, neighbourhoods, components, PACE .gr parsing."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO, Union

logger = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Raised when PACE text input cannot be parsed."""


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``bits`` in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class VertexSet:
    """Immutable fixed-capacity set of vertices 0..capacity-1 backed by an int bitset."""

    __slots__ = ("capacity", "bits")

    def __init__(self, capacity: int, bits: int = 0):
        if bits < 0 or bits >> capacity:
            raise ValueError(f"Bits outside capacity {capacity}: {bits:#x}")
        self.capacity = capacity
        self.bits = bits

    @classmethod
    def of(cls, capacity: int, vertices: Iterable[int] = ()) -> "VertexSet":
        bits = 0
        for v in vertices:
            if not 0 <= v < capacity:
                raise ValueError(f"Vertex {v} outside capacity {capacity}")
            bits |= 1 << v
        return cls(capacity, bits)

    @classmethod
    def full(cls, capacity: int) -> "VertexSet":
        return cls(capacity, (1 << capacity) - 1)

    def _check(self, other: "VertexSet") -> None:
        if self.capacity != other.capacity:
            raise ValueError(f"Capacity mismatch: {self.capacity} vs {other.capacity}")

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.capacity and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.capacity, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.capacity, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.capacity, self.bits & ~other.bits)

    def complement(self) -> "VertexSet":
        return VertexSet(self.capacity, ((1 << self.capacity) - 1) & ~self.bits)

    def with_vertex(self, v: int) -> "VertexSet":
        return VertexSet.of(self.capacity, [v]) | self

    def without_vertex(self, v: int) -> "VertexSet":
        return VertexSet(self.capacity, self.bits & ~(1 << v))

    def isdisjoint(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def issubset(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def min(self) -> int:
        if not self.bits:
            raise ValueError("min() of empty VertexSet")
        return (self.bits & -self.bits).bit_length() - 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.capacity == other.capacity and self.bits == other.bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.capacity, self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.capacity}, {sorted(self)})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1; ``adj[v]`` is the neighbour bitset of v."""
    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from 0-based edges; self-loops are dropped and duplicates collapse."""
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n=n, adj=tuple(adj))

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def neighbours(self, v: int) -> VertexSet:
        return VertexSet(self.n, self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self) -> int:
        return sum(d.bit_count() for d in self.adj) // 2

    def vertex_set(self, vertices: Iterable[int]) -> VertexSet:
        return VertexSet.of(self.n, vertices)

    # Bit-level helpers shared with the solver's inner loops.

    def neighbourhood_bits(self, bits: int) -> int:
        adj = self.adj
        out = 0
        for v in iter_bits(bits):
            out |= adj[v]
        return out & ~bits

    def component_bits(self, bits: int) -> list[int]:
        adj = self.adj
        components = []
        remaining = bits
        while remaining:
            comp = remaining & -remaining
            frontier = comp
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= adj[v]
                frontier = reach & remaining & ~comp
                comp |= frontier
            components.append(comp)
            remaining &= ~comp
        return components


def neighbourhood_of_set(graph: Graph, s: VertexSet) -> VertexSet:
    """N(S): vertices outside S adjacent to some member of S."""
    return VertexSet(graph.n, graph.neighbourhood_bits(s.bits))


def components_within(graph: Graph, s: VertexSet) -> list[VertexSet]:
    """Connected components of G[S], ordered by their smallest vertex."""
    return [VertexSet(graph.n, c) for c in graph.component_bits(s.bits)]


def is_connected_within(graph: Graph, s: VertexSet) -> bool:
    if not s:
        raise ValueError("is_connected_within requires a non-empty vertex set")
    return len(graph.component_bits(s.bits)) == 1


def induced_subgraph(graph: Graph, s: VertexSet) -> tuple[Graph, list[int]]:
    """Relabel G[S] onto 0..|S|-1 preserving vertex order; returns (subgraph, labels)."""
    labels = list(s)
    index = {v: i for i, v in enumerate(labels)}
    edges = [(index[u], index[v]) for u, v in graph.edges() if u in index and v in index]
    return Graph.from_edges(len(labels), edges), labels


def _tokens(line: str, line_no: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"line {line_no}: non-integer token in {line.strip()!r}") from None


def parse_gr(text: Union[str, TextIO]) -> Graph:
    """Parse a PACE ``p tdp n m`` graph with 1-based edge lines."""
    lines = text.splitlines() if isinstance(text, str) else text
    n = None
    edges = []
    for line_no, line in enumerate(lines, 1):
        stripped = line.strip()
        parts = stripped.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {line_no}: duplicate header")
            if len(parts) != 4 or parts[1] != "tdp":
                raise GraphFormatError(f"line {line_no}: malformed header {stripped!r}")
            n, _ = _tokens(" ".join(parts[2:]), line_no)
            if n < 0:
                raise GraphFormatError(f"line {line_no}: negative vertex count")
            continue
        if n is None:
            raise GraphFormatError(f"line {line_no}: edge before 'p tdp' header")
        ends = _tokens(stripped, line_no)
        if len(ends) != 2:
            raise GraphFormatError(f"line {line_no}: expected two endpoints, got {stripped!r}")
        u, v = ends
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {line_no}: endpoint out of range 1..{n}")
        edges.append((u - 1, v - 1))
    if n is None:
        raise GraphFormatError("missing 'p tdp' header")
    graph = Graph.from_edges(n, edges)
    logger.debug("Parsed graph: n=%d m=%d (%d edge lines)", graph.n, graph.edge_count, len(edges))
    return graph


def format_gr(graph: Graph) -> str:
    lines = [f"p tdp {graph.n} {graph.edge_count}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"
