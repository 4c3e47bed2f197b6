"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the package's own algorithms: linear
systems are solved by plain Gaussian elimination, optima come from vertex
enumeration, welfare and matchings from raw subset filters.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from borderlab.model import Environment, SingleItem


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_single_item_env(rng: random.Random, max_players=3, max_support=3) -> Environment:
    n = rng.randint(1, max_players)
    supports, priors = [], []
    for _ in range(n):
        size = rng.randint(1, max_support)
        supports.append(tuple(Fraction(v) for v in sorted(rng.sample(range(9), size))))
        cuts = sorted(rng.sample(range(1, 12), size - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [12])]
        priors.append(tuple(Fraction(p, 12) for p in parts))
    return Environment(n, tuple(supports), tuple(priors), SingleItem())


def random_interim_rule(rng: random.Random, env: Environment):
    return tuple(
        tuple(Fraction(rng.randint(0, 8), 8) for _ in support) for support in env.supports
    )


# ---------------------------------------------------------------------------
# exact LP oracle: vertex enumeration with Gaussian elimination
# ---------------------------------------------------------------------------


def gauss_solve(rows, rhs):
    """Solve a square rational system; None when singular."""
    n = len(rows)
    aug = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def lp_oracle(program):
    """Best objective over all basic points of a bounded program, or None if
    no feasible basic point exists (infeasible for bounded regions)."""
    n = program.num_vars
    rows, rhs, checks = [], [], []
    for con in program.constraints:
        rows.append(list(con.coeffs))
        rhs.append(con.rhs)
        checks.append((list(con.coeffs), con.relation, con.rhs))
    for j, (lo, hi) in enumerate(program.bounds):
        unit = [Fraction(0)] * n
        unit[j] = Fraction(1)
        if lo is not None:
            rows.append(unit)
            rhs.append(lo)
            checks.append((unit, ">=", lo))
        if hi is not None:
            rows.append(unit)
            rhs.append(hi)
            checks.append((unit, "<=", hi))
    best = None
    for combo in itertools.combinations(range(len(rows)), n):
        point = gauss_solve([rows[i] for i in combo], [rhs[i] for i in combo])
        if point is None:
            continue
        ok = True
        for coeffs, rel, bound in checks:
            lhs = sum(a * x for a, x in zip(coeffs, point))
            if rel == "<=" and lhs > bound or rel == ">=" and lhs < bound or rel == "=" and lhs != bound:
                ok = False
                break
        if ok:
            value = sum(c * x for c, x in zip(program.objective, point))
            if best is None or value > best:
                best = value
    return best


# ---------------------------------------------------------------------------
# brute-force set/graph oracles
# ---------------------------------------------------------------------------


def family_predicate(family, n):
    """Direct definition of membership in each feasible-set family, written
    without the package's own graph utilities."""
    from borderlab.model import Explicit, GraphicalMatroid, KUnit, PublicProject, SingleMinded

    if isinstance(family, SingleItem):
        return lambda s: len(s) <= 1
    if isinstance(family, KUnit):
        return lambda s: len(s) <= family.k
    if isinstance(family, PublicProject):
        return lambda s: s == frozenset() or s == frozenset(range(n))
    if isinstance(family, SingleMinded):
        def disjoint(s):
            seen = set()
            for i in s:
                if seen & family.bundles[i]:
                    return False
                seen |= family.bundles[i]
            return True

        return disjoint
    if isinstance(family, GraphicalMatroid):
        def acyclic(s):
            # plain merge-find written here so the check is independent
            parent = list(range(family.graph.vertices))

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for i in sorted(s):
                u, v = family.graph.edges[i]
                ru, rv = find(u), find(v)
                if ru == rv:
                    return False
                parent[ru] = rv
            return True

        return acyclic
    if isinstance(family, Explicit):
        allowed = set(family.sets)
        return lambda s: s in allowed
    raise TypeError(family)


def all_subsets(n):
    for mask in range(2**n):
        yield frozenset(i for i in range(n) if mask >> i & 1)
