"""Small multigraphs and the handful of graph primitives the package needs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Multigraph:
    """A multigraph on vertices 0..vertices-1; parallel edges and loops allowed.

    Edges are stored as (u, v) pairs.  When `directed` is set, reachability
    follows edge direction; otherwise edges are unordered.
    """

    vertices: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def __post_init__(self):
        if self.vertices < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.vertices} vertices")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def with_extra_edge(self, u: int, v: int) -> "Multigraph":
        return Multigraph(self.vertices, self.edges + ((u, v),), self.directed)


class UnionFind:
    """Plain union-find with path compression; enough for desk-scale graphs."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the classes of a and b; False when already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def is_acyclic(vertices: int, edges: Iterable[tuple[int, int]]) -> bool:
    """True iff the edge multiset contains no cycle (loops and parallels count)."""
    uf = UnionFind(vertices)
    for u, v in edges:
        if not uf.union(u, v):
            return False
    return True


def component_count(vertices: int, edges: Iterable[tuple[int, int]]) -> int:
    """Number of connected components on the full vertex set."""
    uf = UnionFind(vertices)
    count = vertices
    for u, v in edges:
        if uf.union(u, v):
            count -= 1
    return count


def reaches(graph: Multigraph, edge_subset: Sequence[int], s: int, t: int) -> bool:
    """Is t reachable from s using only the edges whose indices are given?"""
    if s == t:
        return True
    adj: list[list[int]] = [[] for _ in range(graph.vertices)]
    for idx in edge_subset:
        u, v = graph.edges[idx]
        adj[u].append(v)
        if not graph.directed:
            adj[v].append(u)
    seen = [False] * graph.vertices
    seen[s] = True
    stack = [s]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v == t:
                return True
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return False


def max_matching_size(edges: Sequence[tuple[int, int]]) -> int:
    """Maximum matching size by branching on the first edge.

    Exact on any multigraph.  Exponential in the worst case, which is fine at
    the scale this package enumerates (loops can never be matched).
    """
    edges = [e for e in edges if e[0] != e[1]]

    def go(remaining: tuple[tuple[int, int], ...]) -> int:
        if not remaining:
            return 0
        u, v = remaining[0]
        rest = remaining[1:]
        best = go(rest)  # skip this edge
        compatible = tuple(e for e in rest if u not in e and v not in e)
        best = max(best, 1 + go(compatible))
        return best

    return go(tuple(edges))
