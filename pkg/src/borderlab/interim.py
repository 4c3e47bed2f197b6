"""Reduced forms, the interim-feasibility membership oracle, and Border's
inequality family for single-item environments.

An interim rule is a nested tuple y[i][k]: the probability that player i is
selected when holding the k-th valuation of its support, marginalized over
everyone else.  A distinguished-set choice S picks a subset of each player's
support and induces one linear inequality on y; a single-item rule is feasible
iff all of those inequalities hold, and that check must agree with the
explicit ex-post LP on every input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import ratlp
from .errors import CapExceeded, IdentityViolated, MalformedRule, WrongFamily
from .hypercube import DEFAULT_CAP
from .model import Environment, SingleItem, TypeProfile, feasible_sets, others_probability

InterimRule = tuple[tuple[Fraction, ...], ...]


def as_interim_rule(y: Sequence[Sequence]) -> InterimRule:
    return tuple(tuple(Fraction(v) for v in row) for row in y)


@dataclass(frozen=True)
class ReducedForm:
    """Interim allocation probabilities y and interim payments q."""

    y: InterimRule
    q: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "y", as_interim_rule(self.y))
        object.__setattr__(self, "q", tuple(tuple(Fraction(v) for v in row) for row in self.q))
        if len(self.y) != len(self.q) or any(len(a) != len(b) for a, b in zip(self.y, self.q)):
            raise ValueError("y and q must have identical shapes")
        for i, row in enumerate(self.y):
            for v in row:
                if not 0 <= v <= 1:
                    raise ValueError(f"player {i}: interim allocation {v} outside [0, 1]")


@dataclass(frozen=True)
class DistinguishedSets:
    """One subset of valuation indices per player."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "DistinguishedSets":
        return cls(tuple(frozenset(k for k in range(m.bit_length()) if m >> k & 1) for m in masks))


@dataclass(frozen=True)
class ExPostRule:
    """Per type profile, a distribution over the feasible sets of the
    environment, aligned with feasible_sets(env) order."""

    sets: tuple[frozenset[int], ...]
    rows: Mapping[TypeProfile, tuple[Fraction, ...]]


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: ExPostRule | None = None
    certificate: object | None = None  # DistinguishedSets or ratlp.FarkasCertificate

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def _check_rule_rows(env: Environment, sets, x: Mapping[TypeProfile, Sequence[Fraction]]):
    for t in env.profiles():
        if t not in x:
            raise MalformedRule(f"missing profile {t}")
        row = x[t]
        if len(row) != len(sets):
            raise MalformedRule(f"profile {t}: expected {len(sets)} set probabilities")
        if any(p < 0 for p in row):
            raise MalformedRule(f"profile {t}: negative probability")
        if sum(row) != 1:
            raise MalformedRule(f"profile {t}: probabilities sum to {sum(row)}, not 1")


def interim_of_expost(
    env: Environment,
    x: Mapping[TypeProfile, Sequence[Fraction]],
    cap: int = DEFAULT_CAP,
) -> InterimRule:
    """Marginalize an ex-post rule: y_i(v) = E over others' types of the
    probability that i is in the chosen set."""
    sets = feasible_sets(env, cap=cap)
    if env.profile_count() * len(sets) > cap:
        raise CapExceeded(env.profile_count() * len(sets), cap, "ex-post rule")
    x = {t: tuple(Fraction(p) for p in row) for t, row in x.items()}
    _check_rule_rows(env, sets, x)
    member = [[i in s for s in sets] for i in range(env.players)]
    y = [[Fraction(0)] * len(env.supports[i]) for i in range(env.players)]
    for t in env.profiles():
        row = x[t]
        for i in range(env.players):
            win = sum(p for p, m in zip(row, member[i]) if m and p)
            if win:
                y[i][t[i]] += others_probability(env, i, t) * win
    return tuple(tuple(row) for row in y)


def _check_interim_shape(env: Environment, y: InterimRule):
    if len(y) != env.players or any(len(y[i]) != len(env.supports[i]) for i in range(env.players)):
        raise MalformedRule("interim rule shape does not match the environment")
    for row in y:
        for v in row:
            if not 0 <= v <= 1:
                raise MalformedRule(f"interim allocation {v} outside [0, 1]")


def membership_lp(env: Environment, y, cap: int = DEFAULT_CAP) -> FeasibilityVerdict:
    """Decide feasibility of an interim rule by the explicit ex-post LP.

    Variables are z[t, F] >= 0 with one distribution per profile; the marginal
    of each (player, valuation) must reproduce y exactly.  Returns the witness
    rule or the Farkas certificate of the LP.
    """
    y = as_interim_rule(y)
    _check_interim_shape(env, y)
    sets = feasible_sets(env, cap=cap)
    profiles = list(env.profiles())
    n_z = len(profiles) * len(sets)
    if n_z > cap:
        raise CapExceeded(n_z, cap, "ex-post LP")

    zcol = {(ti, fi): ti * len(sets) + fi for ti in range(len(profiles)) for fi in range(len(sets))}
    constraints = []
    for ti in range(len(profiles)):
        coeffs = [Fraction(0)] * n_z
        for fi in range(len(sets)):
            coeffs[zcol[ti, fi]] = Fraction(1)
        constraints.append(ratlp.Constraint(tuple(coeffs), ratlp.EQ, Fraction(1)))
    for i in range(env.players):
        for k in range(len(env.supports[i])):
            coeffs = [Fraction(0)] * n_z
            for ti, t in enumerate(profiles):
                if t[i] != k:
                    continue
                w = others_probability(env, i, t)
                for fi, s in enumerate(sets):
                    if i in s:
                        coeffs[zcol[ti, fi]] += w
            constraints.append(ratlp.Constraint(tuple(coeffs), ratlp.EQ, y[i][k]))

    program = ratlp.LinearProgram(
        num_vars=n_z,
        objective=(Fraction(0),) * n_z,
        constraints=tuple(constraints),
        bounds=((Fraction(0), None),) * n_z,
    )
    outcome = ratlp.solve(program)
    if isinstance(outcome, ratlp.Infeasible):
        return FeasibilityVerdict(False, certificate=outcome.certificate)
    assert isinstance(outcome, ratlp.Optimal)
    rows = {
        t: tuple(outcome.assignment[zcol[ti, fi]] for fi in range(len(sets)))
        for ti, t in enumerate(profiles)
    }
    witness = ExPostRule(tuple(sets), rows)
    if interim_of_expost(env, rows, cap=cap) != y:
        raise IdentityViolated("LP witness does not reproduce the interim rule")
    return FeasibilityVerdict(True, witness=witness)


def _require_single_item(env: Environment):
    if not isinstance(env.family, SingleItem):
        raise WrongFamily("this operation is defined for single-item environments only")


def _mask_tables(env: Environment, y: InterimRule):
    """Per player, tables over support-subset bitmasks of (sum of priors,
    sum of prior-weighted allocations)."""
    fsums, fysums = [], []
    for i in range(env.players):
        size = len(env.supports[i])
        fs = [Fraction(0)] * (1 << size)
        fy = [Fraction(0)] * (1 << size)
        for mask in range(1, 1 << size):
            low = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            fs[mask] = fs[rest] + env.priors[i][low]
            fy[mask] = fy[rest] + env.priors[i][low] * y[i][low]
        fsums.append(fs)
        fysums.append(fy)
    return fsums, fysums


def border_inequality_eval(env: Environment, y, S: DistinguishedSets) -> tuple[Fraction, Fraction]:
    """Exact (lhs, rhs) of the inequality named by distinguished sets S:
    the chance the selected player holds a distinguished valuation, versus
    the chance anyone does."""
    _require_single_item(env)
    y = as_interim_rule(y)
    _check_interim_shape(env, y)
    lhs = Fraction(0)
    misses = Fraction(1)
    for i, chosen in enumerate(S.sets):
        fsum = Fraction(0)
        for k in chosen:
            if not 0 <= k < len(env.supports[i]):
                raise ValueError(f"player {i}: distinguished index {k} out of range")
            lhs += env.priors[i][k] * y[i][k]
            fsum += env.priors[i][k]
        misses *= 1 - fsum
    return lhs, 1 - misses


def border_check(env: Environment, y, cap: int = DEFAULT_CAP) -> FeasibilityVerdict:
    """Scan every distinguished-set choice in lexicographic bitmask order and
    report the first violated inequality, if any (certificate-only verdict)."""
    _require_single_item(env)
    y = as_interim_rule(y)
    _check_interim_shape(env, y)
    total = 1
    for s in env.supports:
        total *= 1 << len(s)
        if total > cap:
            raise CapExceeded(total, cap, "distinguished-set scan")
    fsums, fysums = _mask_tables(env, y)
    for masks in itertools.product(*(range(1 << len(s)) for s in env.supports)):
        lhs = Fraction(0)
        misses = Fraction(1)
        for i, m in enumerate(masks):
            lhs += fysums[i][m]
            misses *= 1 - fsums[i][m]
        if lhs > 1 - misses:
            return FeasibilityVerdict(False, certificate=DistinguishedSets.from_masks(masks))
    return FeasibilityVerdict(True)


def recognize_border_inequality(
    env: Environment,
    lhs_coeffs: Mapping[tuple[int, int], Fraction],
    rhs: Fraction,
) -> bool:
    """Is (lhs_coeffs, rhs) exactly one of the family's inequalities?

    Decodes the distinguished sets from the nonzero coefficients, demands the
    coefficient at (i, v) equal player i's prior of v, and recomputes the
    right-hand side for comparison.
    """
    _require_single_item(env)
    rhs = Fraction(rhs)
    sets = [set() for _ in range(env.players)]
    for (i, k), coeff in lhs_coeffs.items():
        if Fraction(coeff) == 0:
            continue
        if not (0 <= i < env.players and 0 <= k < len(env.supports[i])):
            return False
        if Fraction(coeff) != env.priors[i][k]:
            return False
        sets[i].add(k)
    misses = Fraction(1)
    for i, chosen in enumerate(sets):
        misses *= 1 - sum((env.priors[i][k] for k in chosen), Fraction(0))
    return rhs == 1 - misses


@dataclass(frozen=True)
class IncentiveReport:
    ok: bool
    bic_violations: tuple[tuple[int, int, int], ...]  # (player, true index, report index)
    iir_violations: tuple[tuple[int, int], ...]  # (player, type index)


def bic_iir_check(env: Environment, rf: ReducedForm) -> IncentiveReport:
    """Check truthfulness (no profitable interim misreport) and nonnegative
    interim utility, reporting every violation."""
    bic, iir = [], []
    for i in range(env.players):
        support = env.supports[i]
        for k, v in enumerate(support):
            truthful = v * rf.y[i][k] - rf.q[i][k]
            if truthful < 0:
                iir.append((i, k))
            for k2 in range(len(support)):
                if k2 == k:
                    continue
                if truthful < v * rf.y[i][k2] - rf.q[i][k2]:
                    bic.append((i, k, k2))
    return IncentiveReport(not bic and not iir, tuple(bic), tuple(iir))


def expected_revenue(env: Environment, rf: ReducedForm) -> Fraction:
    """Prior-weighted sum of the interim payments."""
    total = Fraction(0)
    for i in range(env.players):
        for k, p in enumerate(env.priors[i]):
            total += p * rf.q[i][k]
    return total
