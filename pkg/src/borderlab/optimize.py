"""Optimal expected revenue and welfare.

Revenue has two routes: an explicit exact LP over ex-post distributions and
interim payments (any environment), and the classic virtual-valuation fast
path for regular single-item environments.  The LP is the ground truth; the
fast path must reproduce it exactly.  Welfare needs no incentives, so it is
pointwise maximization under the prior.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratlp
from .errors import CapExceeded, IdentityViolated, NotRegular, WrongFamily
from .hypercube import DEFAULT_CAP
from .interim import ExPostRule, InterimRule, ReducedForm, interim_of_expost
from .model import Environment, SingleItem, feasible_sets, others_probability, profile_probability


@dataclass(frozen=True)
class VirtualValuationTable:
    """phi[i][k]: virtual valuation of player i's k-th support point; the
    regular flag is recomputed from the table, never supplied."""

    phi: tuple[tuple[Fraction, ...], ...]
    regular: bool


def virtual_values(env: Environment) -> VirtualValuationTable:
    """Discrete virtual valuations phi(v_k) = v_k - (v_{k+1} - v_k) * (1 - F(v_k)) / f(v_k),
    with the top type keeping its value; F is the cdf at and below v_k."""
    phi = []
    regular = True
    for i in range(env.players):
        support, prior = env.supports[i], env.priors[i]
        row = []
        cdf = Fraction(0)
        for k, v in enumerate(support):
            cdf += prior[k]
            if k == len(support) - 1:
                row.append(v)
            else:
                row.append(v - (support[k + 1] - v) * (1 - cdf) / prior[k])
        if any(b < a for a, b in zip(row, row[1:])):
            regular = False
        phi.append(tuple(row))
    return VirtualValuationTable(tuple(phi), regular)


def myerson_single_item(
    env: Environment, cap: int = DEFAULT_CAP
) -> tuple[Fraction, InterimRule]:
    """Optimal single-item revenue by exact profile enumeration of the
    highest-positive-virtual-value rule (ties to the least player index)."""
    if not isinstance(env.family, SingleItem):
        raise WrongFamily("the virtual-valuation fast path needs a single-item environment")
    table = virtual_values(env)
    if not table.regular:
        raise NotRegular("virtual valuations are not monotone; use the LP route")
    if env.profile_count() > cap:
        raise CapExceeded(env.profile_count(), cap, "profile enumeration")

    y = [[Fraction(0)] * len(s) for s in env.supports]
    for t in env.profiles():
        winner, best = None, Fraction(0)
        for i in range(env.players):
            v = table.phi[i][t[i]]
            if v > best:
                winner, best = i, v
        if winner is not None:
            y[winner][t[winner]] += others_probability(env, winner, t)
    value = Fraction(0)
    for i in range(env.players):
        for k, p in enumerate(env.priors[i]):
            value += p * table.phi[i][k] * y[i][k]
    return value, tuple(tuple(row) for row in y)


def opt_rev_lp(
    env: Environment, cap: int = DEFAULT_CAP
) -> tuple[Fraction, ReducedForm, ExPostRule]:
    """Maximum expected revenue of a truthful, individually rational mechanism,
    as an explicit exact LP.

    Variables: a distribution over feasible sets per type profile, plus one
    interim payment per (player, valuation); interim allocations are linear
    expressions of the distribution variables.
    """
    sets = feasible_sets(env, cap=cap)
    profiles = list(env.profiles())
    n_z = len(profiles) * len(sets)
    if n_z > cap:
        raise CapExceeded(n_z, cap, "ex-post LP")

    n = env.players
    q_index = {}
    col = n_z
    for i in range(n):
        for k in range(len(env.supports[i])):
            q_index[i, k] = col
            col += 1
    num_vars = col

    # y[i][k] as a sparse column map over z variables.
    y_expr: dict[tuple[int, int], dict[int, Fraction]] = {key: {} for key in q_index}
    for ti, t in enumerate(profiles):
        base = ti * len(sets)
        for i in range(n):
            w = others_probability(env, i, t)
            for fi, s in enumerate(sets):
                if i in s:
                    colz = base + fi
                    expr = y_expr[i, t[i]]
                    expr[colz] = expr.get(colz, Fraction(0)) + w

    constraints = []
    for ti in range(len(profiles)):
        coeffs = [Fraction(0)] * num_vars
        for fi in range(len(sets)):
            coeffs[ti * len(sets) + fi] = Fraction(1)
        constraints.append(ratlp.Constraint(tuple(coeffs), ratlp.EQ, Fraction(1)))

    def incentive_row(i: int, k: int, k2: int | None):
        # v_k * y_i(k) - q_i(k) >= (v_k * y_i(k2) - q_i(k2) if k2 given else 0)
        coeffs = [Fraction(0)] * num_vars
        v = env.supports[i][k]
        for colz, w in y_expr[i, k].items():
            coeffs[colz] += v * w
        coeffs[q_index[i, k]] -= 1
        if k2 is not None:
            for colz, w in y_expr[i, k2].items():
                coeffs[colz] -= v * w
            coeffs[q_index[i, k2]] += 1
        return ratlp.Constraint(tuple(coeffs), ratlp.GE, Fraction(0))

    for i in range(n):
        size = len(env.supports[i])
        for k in range(size):
            constraints.append(incentive_row(i, k, None))  # participation
            for k2 in range(size):
                if k2 != k:
                    constraints.append(incentive_row(i, k, k2))  # truthfulness

    objective = [Fraction(0)] * num_vars
    for (i, k), qc in q_index.items():
        objective[qc] = env.priors[i][k]
    bounds = [(Fraction(0), None)] * n_z + [(None, None)] * (num_vars - n_z)

    outcome = ratlp.solve(
        ratlp.LinearProgram(num_vars, tuple(objective), tuple(constraints), tuple(bounds)),
        cap=cap,
    )
    if isinstance(outcome, ratlp.Infeasible):
        raise IdentityViolated("revenue LP cannot be infeasible (zero mechanism exists)")
    if isinstance(outcome, ratlp.Unbounded):
        raise IdentityViolated("revenue LP cannot be unbounded (payments are IR-capped)")

    rows = {
        t: tuple(outcome.assignment[ti * len(sets) + fi] for fi in range(len(sets)))
        for ti, t in enumerate(profiles)
    }
    witness = ExPostRule(tuple(sets), rows)
    y = interim_of_expost(env, rows, cap=cap)
    q = tuple(
        tuple(outcome.assignment[q_index[i, k]] for k in range(len(env.supports[i])))
        for i in range(n)
    )
    return outcome.value, ReducedForm(y, q), witness


def opt_wel(env: Environment, cap: int = DEFAULT_CAP) -> Fraction:
    """Maximum expected welfare: pointwise-best feasible set under the prior
    (no incentive sacrifice is needed for welfare)."""
    sets = feasible_sets(env, cap=cap)
    if env.profile_count() * len(sets) > cap:
        raise CapExceeded(env.profile_count() * len(sets), cap, "welfare enumeration")
    members = [tuple(sorted(s)) for s in sets]
    total = Fraction(0)
    for t in env.profiles():
        values = [env.supports[i][t[i]] for i in range(env.players)]
        best = max(sum(values[i] for i in s) for s in members)
        total += profile_probability(env, t) * best
    return total
