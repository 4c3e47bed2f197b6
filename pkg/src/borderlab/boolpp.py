"""The two-point uniform public project: optimal revenue and the threshold
mechanism that attains it.

With stakes a_i > 0 and each player privately worth 0 or a_i with equal
probability, the optimal revenue is half the Khintchine constant K(a), and it
is collected by the halfspace decision rule sign_plus(sum a_i (-1)^(1+x_i))
with critical (pivotal) payments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, MonotonicityViolated, NonPositiveStake
from .hypercube import (
    DEFAULT_CAP,
    BoundedFunction,
    WeightVector,
    affine_value,
    expected_max_with_zero,
    khintchine,
    khintchine_naive,
    sign_plus,
)

__all__ = [
    "WeightVector",
    "PublicProjectMechanism",
    "khintchine",
    "khintchine_naive",
    "khintchine_bounds_check",
    "pp_opt_rev",
    "halfspace_mechanism",
    "interim_payment_bound",
    "mechanism_audit",
    "KhintchineBoundsReport",
    "MechanismAuditReport",
]


def _stakes(a) -> WeightVector:
    weights = a.weights if isinstance(a, WeightVector) else tuple(Fraction(x) for x in a)
    if any(x <= 0 for x in weights):
        raise NonPositiveStake("all stakes must be strictly positive")
    return WeightVector(weights)  # affine term, if any, plays no role here


@dataclass(frozen=True)
class KhintchineBoundsReport:
    value: Fraction
    norm_sq: Fraction  # squared 2-norm of the weights
    lower_ok: bool  # K(a)^2 >= |a|^2 / 2
    upper_ok: bool  # K(a)^2 <= |a|^2
    lower_tight: bool
    upper_tight: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def khintchine_bounds_check(a, cap: int = DEFAULT_CAP) -> KhintchineBoundsReport:
    """Verify |a|/sqrt(2) <= K(a) <= |a| by comparing squares exactly."""
    weights = a.weights if isinstance(a, WeightVector) else tuple(Fraction(x) for x in a)
    k = khintchine(weights, cap=cap)
    norm_sq = sum((w * w for w in weights), Fraction(0))
    ksq = k * k
    return KhintchineBoundsReport(
        value=k,
        norm_sq=norm_sq,
        lower_ok=2 * ksq >= norm_sq,
        upper_ok=ksq <= norm_sq,
        lower_tight=2 * ksq == norm_sq,
        upper_tight=ksq == norm_sq,
    )


def pp_opt_rev(a, cap: int = DEFAULT_CAP) -> Fraction:
    """Optimal truthful revenue of the two-point uniform public project: K(a)/2."""
    wv = _stakes(a)
    return khintchine(wv.weights, cap=cap) / 2


@dataclass(frozen=True)
class PublicProjectMechanism:
    """Deterministic threshold decision plus pivotal payments.

    decision(x) = 1 iff the signed stake sum is >= 0; a player reporting the
    high type pays its stake exactly when flipping its report would cancel
    the project.
    """

    stakes: WeightVector
    decision: BoundedFunction

    def signed_sum(self, x: int) -> Fraction:
        return affine_value(self.stakes, x)

    def payment(self, i: int, x: int) -> Fraction:
        if not x >> i & 1 or self.decision(x) != 1:
            return Fraction(0)
        if self.decision(x ^ (1 << i)) == 0:
            return self.stakes.weights[i]
        return Fraction(0)

    def payments(self, x: int) -> tuple[Fraction, ...]:
        return tuple(self.payment(i, x) for i in range(len(self.stakes.weights)))


def halfspace_mechanism(a, cap: int = DEFAULT_CAP) -> PublicProjectMechanism:
    """Materialize the optimal mechanism's decision table over all 2^n profiles."""
    wv = _stakes(a)
    n = len(wv.weights)
    if 2**n > cap:
        raise CapExceeded(2**n, cap, "profile table")
    table = tuple(Fraction(sign_plus(affine_value(wv, x))) for x in range(2**n))
    return PublicProjectMechanism(wv, BoundedFunction(n, table))


def interim_payment_bound(
    f_interim_1: Fraction, f_interim_0: Fraction, a_i: Fraction
) -> tuple[Fraction, Fraction]:
    """Revenue-maximal truthful interim payments for one player given its two
    interim build probabilities: p(0) = 0 and p(1) = a_i * (f1 - f0)."""
    f1, f0, a_i = Fraction(f_interim_1), Fraction(f_interim_0), Fraction(a_i)
    if not (0 <= f0 <= 1 and 0 <= f1 <= 1):
        raise ValueError("interim probabilities must lie in [0, 1]")
    if f1 < f0:
        raise MonotonicityViolated("high-type interim probability is below the low type's")
    return Fraction(0), a_i * (f1 - f0)


@dataclass(frozen=True)
class MechanismAuditReport:
    truthful: bool
    ex_post_ir: bool
    expected_revenue: Fraction
    revenue_matches_k_half: bool

    @property
    def ok(self) -> bool:
        return self.truthful and self.ex_post_ir and self.revenue_matches_k_half


def mechanism_audit(a, cap: int = DEFAULT_CAP) -> MechanismAuditReport:
    """Exhaustively audit the threshold mechanism over all 2^n profiles:
    no profile/misreport pair may gain ex post, utilities stay nonnegative,
    and the total expected payment must equal K(a)/2."""
    mech = halfspace_mechanism(a, cap=cap)
    weights = mech.stakes.weights
    n = len(weights)
    truthful = True
    ex_post_ir = True
    total_payment = Fraction(0)
    for x in range(2**n):
        pays = mech.payments(x)
        build = mech.decision(x)
        total_payment += sum(pays, Fraction(0))
        for i in range(n):
            value = weights[i] if x >> i & 1 else Fraction(0)
            honest = value * build - pays[i]
            if honest < 0:
                ex_post_ir = False
            lie = x ^ (1 << i)
            lie_build = mech.decision(lie)
            lie_pay = mech.payment(i, lie)
            if honest < value * lie_build - lie_pay:
                truthful = False
    expected = total_payment / 2**n
    k_half = khintchine(weights, cap=cap) / 2
    return MechanismAuditReport(truthful, ex_post_ir, expected, expected == k_half)
