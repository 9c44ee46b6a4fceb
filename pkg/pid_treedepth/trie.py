"""Neighbourhood-keyed trie for combining positive instances.

Each stored pair (S, N(S)) is keyed by the ascending vertex sequence of N(S).
A query (Q, N(Q), i) returns every stored S with

    |N(S) ∪ N(Q)| < i    and    (Q ∪ N(Q)) ∩ S = ∅

Every node keeps the intersection of the keys stored beneath it, so a whole
subtree can be skipped once that common part alone exhausts the budget.
"""
from __future__ import annotations

import logging
from bisect import bisect_left
from typing import Optional

from pid_treedepth.core import IndexKind, IndexRegistry
from pid_treedepth.graph import VertexSet, iter_bits

logger = logging.getLogger(__name__)

_ALL = -1


class TrieNode:
    __slots__ = ("edge_label", "labels", "children", "key_meet", "entries")

    def __init__(self, edge_label: Optional[int] = None):
        self.edge_label = edge_label
        self.labels: list[int] = []
        self.children: list[TrieNode] = []
        # Intersection of every key stored in this subtree; _ALL while empty.
        self.key_meet = _ALL
        self.entries: list[int] = []

    def child(self, label: int, create: bool = False) -> Optional["TrieNode"]:
        pos = bisect_left(self.labels, label)
        if pos < len(self.labels) and self.labels[pos] == label:
            return self.children[pos]
        if not create:
            return None
        node = TrieNode(label)
        self.labels.insert(pos, label)
        self.children.insert(pos, node)
        return node


class TrieIndex:
    """Set-trie over sorted neighbourhoods with subtree-intersection pruning."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.root = TrieNode()
        self._sets: dict[int, int] = {}
        self.queries = 0
        self.nodes_visited = 0

    def __len__(self) -> int:
        return len(self._sets)

    def insert(self, s: VertexSet, nbhd: VertexSet, handle: int) -> None:
        self._sets[handle] = s.bits
        key = nbhd.bits
        node = self.root
        node.key_meet &= key
        for label in iter_bits(key):
            node = node.child(label, create=True)
            node.key_meet &= key
        node.entries.append(handle)

    def subtree_key_intersection(self, node: TrieNode) -> VertexSet:
        if node.key_meet == _ALL:
            return VertexSet.full(self.capacity)
        return VertexSet(self.capacity, node.key_meet)

    def query(self, q: VertexSet, nbhd_q: VertexSet, i: int) -> list[int]:
        self.queries += 1
        outside = nbhd_q.bits
        forbidden = q.bits | outside
        base = outside.bit_count()
        sets = self._sets
        found: list[int] = []
        stack = [(self.root, 0)]
        while stack:
            node, new = stack.pop()
            self.nodes_visited += 1
            if node.key_meet == _ALL or base + (node.key_meet & ~outside).bit_count() >= i:
                continue
            for handle in node.entries:
                if sets[handle] & forbidden == 0:
                    found.append(handle)
            # Reversed so children pop in ascending label order.
            for child in reversed(node.children):
                grown = new + (0 if (outside >> child.edge_label) & 1 else 1)
                if base + grown < i:
                    stack.append((child, grown))
        return found

    def nodes(self):
        """Yield (node, path_labels) for every node, depth first."""
        stack = [(self.root, ())]
        while stack:
            node, path = stack.pop()
            yield node, path
            for child in reversed(node.children):
                stack.append((child, path + (child.edge_label,)))


class ScanIndex:
    """Linear-scan reference with the same contract as TrieIndex."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._pairs: list[tuple[int, int, int]] = []
        self.queries = 0
        # Pairs examined; the scan touches every stored pair per query.
        self.nodes_visited = 0

    def __len__(self) -> int:
        return len(self._pairs)

    def insert(self, s: VertexSet, nbhd: VertexSet, handle: int) -> None:
        self._pairs.append((handle, s.bits, nbhd.bits))

    def query(self, q: VertexSet, nbhd_q: VertexSet, i: int) -> list[int]:
        self.queries += 1
        self.nodes_visited += len(self._pairs)
        outside = nbhd_q.bits
        forbidden = q.bits | outside
        return [
            handle for handle, s, nbhd in self._pairs
            if (nbhd | outside).bit_count() < i and s & forbidden == 0
        ]


IndexRegistry.register(IndexKind.TRIE, TrieIndex)
IndexRegistry.register(IndexKind.SCAN, ScanIndex)
