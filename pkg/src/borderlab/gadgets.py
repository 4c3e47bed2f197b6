"""Executable counting-reduction gadgets and the brute-force oracles that
verify their recovery identities.

Three reductions are materialized: balanced-sign-pattern counting via a pair
of Khintchine constants, directed s-t connection probability via expected
maximum matching in a bipartite red/blue gadget, and undirected s-t connection
probability via expected connected-component counts.  Every gadget op returns
the recovered quantity together with an exact brute-force cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, IdentityViolated
from .graphs import Multigraph, component_count, max_matching_size, reaches
from .hypercube import DEFAULT_CAP, WeightVector, khintchine
from .model import Environment, SingleMinded


@dataclass(frozen=True)
class PartitionInstance:
    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if not self.w:
            raise ValueError("partition instance must be nonempty")
        if any(x <= 0 for x in self.w):
            raise ValueError("partition weights must be positive integers")


def partition_gadget(w: PartitionInstance) -> tuple[WeightVector, WeightVector]:
    """The doubled-weights pair: (2w_1..2w_n, 0) and (2w_1..2w_n, 1)."""
    doubled = tuple(Fraction(2 * x) for x in w.w)
    return (
        WeightVector(doubled + (Fraction(0),)),
        WeightVector(doubled + (Fraction(1),)),
    )


def balanced_signings(w: PartitionInstance, cap: int = DEFAULT_CAP) -> int:
    """Brute force: the number of sign vectors x with w . x = 0."""
    n = len(w.w)
    if 2**n > cap:
        raise CapExceeded(2**n, cap, "sign enumeration")
    count = 0
    for mask in range(2**n):
        s = 0
        for j, x in enumerate(w.w):
            s += x if mask >> j & 1 else -x
        if s == 0:
            count += 1
    return count


def partition_count_via_khintchine(
    w: PartitionInstance, cap: int = DEFAULT_CAP
) -> tuple[Fraction, int]:
    """Pr[w . x = 0] recovered as K(a1) - K(a0), cross-checked against the
    brute-force count; the difference times 2^n must be that integer."""
    a0, a1 = partition_gadget(w)
    probability = khintchine(a1, cap=cap) - khintchine(a0, cap=cap)
    scaled = probability * 2 ** len(w.w)
    expected = balanced_signings(w, cap=cap)
    if scaled.denominator != 1 or scaled != expected:
        raise IdentityViolated(
            f"Khintchine recovery produced {probability}, brute force says "
            f"{expected}/2^{len(w.w)}"
        )
    return probability, expected


def stconn_probability(
    g: Multigraph, s: int, t: int, directed: bool | None = None, cap: int = DEFAULT_CAP
) -> Fraction:
    """Probability that t is reachable from s in a uniformly random edge
    subgraph; direction defaults to the graph's own flag."""
    m = g.edge_count
    if 2**m > cap:
        raise CapExceeded(2**m, cap, "edge-subset enumeration")
    work = g if directed is None or directed == g.directed else Multigraph(
        g.vertices, g.edges, directed
    )
    hits = 0
    for mask in range(2**m):
        subset = [i for i in range(m) if mask >> i & 1]
        if reaches(work, subset, s, t):
            hits += 1
    return Fraction(hits, 2**m)


@dataclass(frozen=True)
class MatchingGadget:
    """Bipartite matching gadget for a directed s-t instance.

    Left side is s plus one copy of each internal vertex; right side is the
    other copies plus t.  Every arc of the source graph that could lie on an
    s-t path becomes a red edge; each internal vertex gets `multiplicity`
    parallel blue edges between its two copies.  H's edge list holds the red
    edges first, then the blue ones grouped by vertex.
    """

    graph: Multigraph  # H, undirected
    red_count: int
    internal_count: int
    multiplicity: int

    @property
    def red_edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges[: self.red_count]

    def blue_edge(self, internal_index: int) -> tuple[int, int]:
        n = self.internal_count
        return (1 + internal_index, 1 + n + internal_index)

    def full_graph(self) -> Multigraph:
        return self.graph

    def environment(self) -> Environment:
        """One player per H edge, bundle = its endpoints, values uniform {0,1}."""
        bundles = tuple(frozenset(e) for e in self.graph.edges)
        half = Fraction(1, 2)
        return Environment(
            players=len(bundles),
            supports=tuple((Fraction(0), Fraction(1)) for _ in bundles),
            priors=tuple((half, half) for _ in bundles),
            family=SingleMinded(bundles),
        )

    def expected_max_matching(self, cap: int = DEFAULT_CAP) -> Fraction:
        """E over random edge subsets of the maximum matching size, with the
        blue edges of each vertex collapsed analytically: only "at least one
        copy survives" matters, which happens with probability 1 - 1/2^k.

        Must agree with naive enumeration of the full graph for small k.
        """
        m, n, k = self.red_count, self.internal_count, self.multiplicity
        if 2**m * 2**n > cap:
            raise CapExceeded(2**m * 2**n, cap, "gadget enumeration")
        covered = Fraction(2**k - 1, 2**k)
        uncovered = Fraction(1, 2**k)
        reds = self.red_edges
        total = Fraction(0)
        for red_mask in range(2**m):
            red_subset = [reds[i] for i in range(m) if red_mask >> i & 1]
            for cover_mask in range(2**n):
                edges = list(red_subset)
                weight = Fraction(1, 2**m)
                for v in range(n):
                    if cover_mask >> v & 1:
                        edges.append(self.blue_edge(v))
                        weight *= covered
                    else:
                        weight *= uncovered
                total += weight * max_matching_size(edges)
        return total


def _min_multiplicity(m: int, n: int) -> int:
    """Smallest k with k > m*n and 2^(k-m) > n.

    The second condition keeps the blue-coverage loss n/2^k strictly under
    the 1/2^m recovery grid; for m >= 1 it already follows from k = m*n + 1,
    but with no red edges at all it forces a larger k.
    """
    k = m * n + 1
    while n > 0 and 2 ** (k - m) <= n:
        k += 1
    return k


def stconn_gadget(g: Multigraph, s: int, t: int, k: int | None = None) -> MatchingGadget:
    """Build the red/blue bipartite gadget for a directed instance (s != t).

    `k` defaults to the smallest multiplicity the recovery argument allows;
    any k >= 1 builds a valid gadget, but recovery insists on the guard.
    """
    if not g.directed:
        raise ValueError("the matching gadget is built from a directed graph")
    if s == t:
        raise ValueError("s and t must differ")
    internal = [v for v in range(g.vertices) if v not in (s, t)]
    index = {v: i for i, v in enumerate(internal)}
    n = len(internal)
    # H vertex ids: 0 = s (left), 1..n = internal left, n+1..2n = internal
    # right, 2n+1 = t (right).
    red = []
    for u, v in g.edges:
        if u == t or v == s:
            continue  # cannot lie on any s-t path
        left = 0 if u == s else 1 + index[u]
        right = 2 * n + 1 if v == t else 1 + n + index[v]
        red.append((left, right))
    m = len(red)
    if k is None:
        k = _min_multiplicity(m, n)
    if k < 1:
        raise ValueError("blue multiplicity must be at least 1")
    blue = []
    for i in range(n):
        blue.extend([(1 + i, 1 + n + i)] * k)
    h = Multigraph(2 * n + 2, tuple(red) + tuple(blue), directed=False)
    return MatchingGadget(h, m, n, k)


def expected_max_matching(h: Multigraph, cap: int = DEFAULT_CAP) -> Fraction:
    """E over uniform edge subsets of the maximum matching size, by full
    enumeration.  Also the optimal expected welfare of the single-minded
    environment whose players are h's edges with uniform {0,1} values."""
    m = h.edge_count
    if 2**m > cap:
        raise CapExceeded(2**m, cap, "edge-subset enumeration")
    total = 0
    for mask in range(2**m):
        edges = [h.edges[i] for i in range(m) if mask >> i & 1]
        total += max_matching_size(edges)
    return Fraction(total, 2**m)


def stconn_recover(
    g: Multigraph, s: int, t: int, k: int | None = None, cap: int = DEFAULT_CAP
) -> tuple[Fraction, bool]:
    """Recover the s-t connection probability from the gadget's expected
    matching size: subtract the internal-vertex count and round the remainder
    up to the next multiple of 1/2^m.  The boolean is the cross-check against
    direct brute force."""
    gadget = stconn_gadget(g, s, t, k)
    m, n = gadget.red_count, gadget.internal_count
    if gadget.multiplicity < _min_multiplicity(m, n):
        raise ValueError(
            f"recovery needs blue multiplicity at least {_min_multiplicity(m, n)}"
        )
    remainder = gadget.expected_max_matching(cap=cap) - n
    grid = 2**m
    p = Fraction(math.ceil(remainder * grid), grid)  # exact ceiling on the 1/2^m grid
    check = p == stconn_probability(g, s, t, cap=cap)
    return p, check


def expected_components(g: Multigraph, cap: int = DEFAULT_CAP) -> Fraction:
    """E over uniform edge subsets of the number of connected components on
    the full vertex set (isolated vertices count)."""
    if g.directed:
        raise ValueError("component counting is for undirected graphs")
    m = g.edge_count
    if 2**m > cap:
        raise CapExceeded(2**m, cap, "edge-subset enumeration")
    total = 0
    for mask in range(2**m):
        edges = [g.edges[i] for i in range(m) if mask >> i & 1]
        total += component_count(g.vertices, edges)
    return Fraction(total, 2**m)


def expected_forest_size(g: Multigraph, cap: int = DEFAULT_CAP) -> Fraction:
    """E[ |V| - components ]: the optimal expected welfare of the
    graphical-matroid environment with uniform {0,1} edge values."""
    return g.vertices - expected_components(g, cap=cap)


@dataclass(frozen=True)
class MatroidGadgetReport:
    c1: Fraction  # expected components of g
    c2: Fraction  # expected components of g plus one extra (s, t) edge
    p: Fraction  # undirected s-t connection probability in g
    identity_holds: bool  # c1 - c2 == (1 - p) / 2, always


def matroid_gadget_check(
    g: Multigraph, s: int, t: int, cap: int = DEFAULT_CAP
) -> MatroidGadgetReport:
    """Adding one (s, t) edge drops the expected component count by exactly
    (1 - p)/2: the new edge must survive (probability 1/2) and must bridge
    (probability 1 - p), independently."""
    if g.directed:
        raise ValueError("the matroid gadget is for undirected graphs")
    c1 = expected_components(g, cap=cap)
    c2 = expected_components(g.with_extra_edge(s, t), cap=cap)
    p = stconn_probability(g, s, t, cap=cap)
    return MatroidGadgetReport(c1, c2, p, c1 - c2 == (1 - p) / 2)
