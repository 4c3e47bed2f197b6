"""Mechanism-design environments: players, type supports, priors, feasible sets.

Players are indexed 0..n-1 and every player's type is an index into that
player's support.  All probabilities and valuations are exact Fractions;
zero-probability types are rejected outright because downstream formulas
divide by the prior.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import CapExceeded
from .graphs import Multigraph, UnionFind
from .hypercube import DEFAULT_CAP

TypeProfile = tuple[int, ...]


@dataclass(frozen=True)
class SingleItem:
    kind = "single_item"


@dataclass(frozen=True)
class KUnit:
    k: int
    kind = "k_unit"


@dataclass(frozen=True)
class PublicProject:
    kind = "public_project"


@dataclass(frozen=True)
class SingleMinded:
    bundles: tuple[frozenset, ...]  # one bundle of items per player
    kind = "single_minded"

    def __post_init__(self):
        object.__setattr__(self, "bundles", tuple(frozenset(b) for b in self.bundles))


@dataclass(frozen=True)
class GraphicalMatroid:
    graph: Multigraph  # undirected; one player per edge
    kind = "graphical_matroid"


@dataclass(frozen=True)
class Explicit:
    sets: tuple[frozenset[int], ...]  # taken verbatim, only checked nonempty
    kind = "explicit"

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))


FeasibleFamily = SingleItem | KUnit | PublicProject | SingleMinded | GraphicalMatroid | Explicit


@dataclass(frozen=True)
class Environment:
    """Construction only normalizes to Fractions; call `validate` for the
    invariant report (ingestion goes through `require_valid`)."""

    players: int
    supports: tuple[tuple[Fraction, ...], ...]
    priors: tuple[tuple[Fraction, ...], ...]
    family: FeasibleFamily

    def __post_init__(self):
        object.__setattr__(
            self, "supports", tuple(tuple(Fraction(v) for v in s) for s in self.supports)
        )
        object.__setattr__(
            self, "priors", tuple(tuple(Fraction(p) for p in f) for f in self.priors)
        )

    def profile_count(self) -> int:
        return math.prod(len(s) for s in self.supports)

    def profiles(self) -> Iterator[TypeProfile]:
        return itertools.product(*(range(len(s)) for s in self.supports))

    def value(self, player: int, t: TypeProfile) -> Fraction:
        return self.supports[player][t[player]]


def _validate_family(family: FeasibleFamily, n: int) -> list[str]:
    problems = []
    if isinstance(family, KUnit):
        if not 1 <= family.k <= n:
            problems.append(f"k-unit family needs 1 <= k <= {n}, got k={family.k}")
    elif isinstance(family, SingleMinded):
        if len(family.bundles) != n:
            problems.append(f"single-minded family needs {n} bundles, got {len(family.bundles)}")
        for i, bundle in enumerate(family.bundles):
            if not bundle:
                problems.append(f"player {i}: bundle is empty")
    elif isinstance(family, GraphicalMatroid):
        if family.graph.directed:
            problems.append("graphical-matroid graph must be undirected")
        if family.graph.edge_count != n:
            problems.append(
                f"graphical-matroid family needs one edge per player "
                f"({n}), got {family.graph.edge_count}"
            )
    elif isinstance(family, Explicit):
        if not family.sets:
            problems.append("explicit family must be a nonempty collection")
        for s in family.sets:
            if any(not (0 <= i < n) for i in s):
                problems.append(f"explicit set {sorted(s)} mentions an unknown player")
    return problems


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]


def validate(env: Environment) -> ValidationReport:
    """Check every environment invariant and report all violations."""
    return ValidationReport(ok=not (p := _problems(env)), problems=tuple(p))


def require_valid(env: Environment) -> Environment:
    report = validate(env)
    if not report.ok:
        raise ValueError("invalid environment: " + "; ".join(report.problems))
    return env


def _problems(env: Environment) -> list[str]:
    problems = []
    if env.players < 1:
        problems.append("need at least one player")
    if len(env.supports) != env.players or len(env.priors) != env.players:
        problems.append("supports and priors must list one entry per player")
        return problems
    for i, (support, prior) in enumerate(zip(env.supports, env.priors)):
        if not support:
            problems.append(f"player {i}: support is empty")
            continue
        if any(v < 0 for v in support):
            problems.append(f"player {i}: support has a negative valuation")
        if any(b <= a for a, b in zip(support, support[1:])):
            problems.append(f"player {i}: support not strictly increasing")
        if len(prior) != len(support):
            problems.append(f"player {i}: prior length differs from support length")
            continue
        if any(p <= 0 for p in prior):
            problems.append(f"player {i}: zero or negative prior probability")
        if sum(prior) != 1:
            problems.append(f"player {i}: priors sum to {sum(prior)}, not 1")
    problems.extend(_validate_family(env.family, env.players))
    return problems


def profile_probability(env: Environment, t: TypeProfile) -> Fraction:
    """Product prior of the profile t (one type index per player)."""
    p = Fraction(1)
    for i, ti in enumerate(t):
        p *= env.priors[i][ti]
    return p


def others_probability(env: Environment, i: int, t: TypeProfile) -> Fraction:
    """Probability of everyone's type but player i's."""
    p = Fraction(1)
    for j, tj in enumerate(t):
        if j != i:
            p *= env.priors[j][tj]
    return p


def _singleminded_sets(bundles, cap: int) -> list[frozenset[int]]:
    n = len(bundles)
    out: list[frozenset[int]] = []

    def extend(start: int, chosen: tuple[int, ...], used: frozenset):
        if len(out) > cap:
            raise CapExceeded(len(out), cap, "single-minded family")
        out.append(frozenset(chosen))
        for i in range(start, n):
            if used.isdisjoint(bundles[i]):
                extend(i + 1, chosen + (i,), used | bundles[i])

    extend(0, (), frozenset())
    return out


def _matroid_sets(graph: Multigraph, cap: int) -> list[frozenset[int]]:
    n = graph.edge_count
    out: list[frozenset[int]] = []

    def extend(start: int, chosen: tuple[int, ...], uf: UnionFind):
        if len(out) > cap:
            raise CapExceeded(len(out), cap, "graphical-matroid family")
        out.append(frozenset(chosen))
        for i in range(start, n):
            u, v = graph.edges[i]
            if uf.find(u) != uf.find(v):
                child = UnionFind(graph.vertices)
                child.parent = list(uf.parent)
                child.union(u, v)
                extend(i + 1, chosen + (i,), child)

    extend(0, (), UnionFind(graph.vertices))
    return out


def feasible_sets(env: Environment, cap: int = DEFAULT_CAP) -> list[frozenset[int]]:
    """Materialize the feasible-set family, smallest sets first (deterministic)."""
    n = env.players
    family = env.family
    if isinstance(family, SingleItem):
        sets = [frozenset()] + [frozenset({i}) for i in range(n)]
    elif isinstance(family, KUnit):
        count = sum(math.comb(n, r) for r in range(family.k + 1))
        if count > cap:
            raise CapExceeded(count, cap, "k-unit family")
        sets = [
            frozenset(c)
            for r in range(family.k + 1)
            for c in itertools.combinations(range(n), r)
        ]
    elif isinstance(family, PublicProject):
        sets = [frozenset(), frozenset(range(n))]
    elif isinstance(family, SingleMinded):
        sets = _singleminded_sets(family.bundles, cap)
    elif isinstance(family, GraphicalMatroid):
        sets = _matroid_sets(family.graph, cap)
    elif isinstance(family, Explicit):
        sets = list(family.sets)
        if len(sets) > cap:
            raise CapExceeded(len(sets), cap, "explicit family")
        return sets  # verbatim, caller-chosen order
    else:
        raise TypeError(f"unknown family {family!r}")
    sets.sort(key=lambda s: (len(s), sorted(s)))
    return sets


def uniform_two_point(values: Sequence, family: FeasibleFamily) -> Environment:
    """Environment where player i is worth 0 or values[i], each with probability 1/2."""
    vals = [Fraction(v) for v in values]
    if any(v <= 0 for v in vals):
        raise ValueError("two-point stakes must be positive so supports stay increasing")
    half = Fraction(1, 2)
    return Environment(
        players=len(vals),
        supports=tuple((Fraction(0), v) for v in vals),
        priors=tuple(((half, half) for _ in vals)),
        family=family,
    )
