"""The polytope of degree-0/1 Fourier coefficients of bounded functions.

A bounded function f: {0,1}^n -> [0,1] has Chow vector
(E[f], E[f * (-1)^(1+x_1)], ..., E[f * (-1)^(1+x_n)]).  Membership of a
candidate vector is decided by an exact LP over the 2^n table entries;
linear optimization over the polytope has the closed form (K(a') + a_0)/2,
which doubles as the validator for every infeasibility certificate.  Vertices
are exactly the halfspaces whose defining affine form never vanishes, which
the entry-probing LP makes checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ratlp
from .errors import (
    CapExceeded,
    EvenN,
    IdentityViolated,
    NotInPolytope,
    RangeError,
    VanishingWitness,
)
from .hypercube import (
    DEFAULT_CAP,
    BoundedFunction,
    WeightVector,
    affine_positive_mean,
    affine_value,
    halfspace_table,
    khintchine,
    majority,
    sign_plus,
)


@dataclass(frozen=True)
class ChowVector:
    """(c_0, c_1, ..., c_n); the box bounds below are necessary for
    membership, never sufficient."""

    c: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(Fraction(v) for v in self.c))
        if len(self.c) < 1:
            raise ValueError("a Chow vector has at least the degree-0 entry")
        if not 0 <= self.c[0] <= 1:
            raise ValueError(f"degree-0 entry {self.c[0]} outside [0, 1]")
        for i, v in enumerate(self.c[1:], start=1):
            if abs(v) > Fraction(1, 2):
                raise ValueError(f"degree-1 entry c_{i} = {v} outside [-1/2, 1/2]")

    @property
    def n(self) -> int:
        return len(self.c) - 1

    def dot(self, a: WeightVector) -> Fraction:
        a0 = a.a0 if a.a0 is not None else Fraction(0)
        if len(a.weights) != self.n:
            raise ValueError("dimension mismatch")
        return a0 * self.c[0] + sum(
            (w * v for w, v in zip(a.weights, self.c[1:])), Fraction(0)
        )


def chow_vector(f: BoundedFunction, cap: int = DEFAULT_CAP) -> ChowVector:
    """Exact Chow vector of a bounded function."""
    if 2**f.n > cap:
        raise CapExceeded(2**f.n, cap, "table enumeration")
    size = 2**f.n
    c = [sum(f.table, Fraction(0)) / size]
    for i in range(f.n):
        acc = Fraction(0)
        for x, v in enumerate(f.table):
            acc += v if x >> i & 1 else -v
        c.append(acc / size)
    return ChowVector(tuple(c))


@dataclass(frozen=True)
class ChowOptimum:
    value: Fraction
    optimizer: BoundedFunction


def chow_opt(a: WeightVector, cap: int = DEFAULT_CAP) -> ChowOptimum:
    """max over the polytope of a_0 c_0 + sum a_i c_i.

    Computed twice: by enumerating E[max(0, a(x))] and by the closed form
    (K(a_0, a_1, ..., a_n) + a_0)/2; the two must agree exactly.  The
    maximizer takes value 1 wherever a(x) >= 0 (including zeros) and 0
    elsewhere.
    """
    n = len(a.weights)
    if 2**n > cap:
        raise CapExceeded(2**n, cap, "hypercube enumeration")
    a0 = a.a0 if a.a0 is not None else Fraction(0)
    enumerated = affine_positive_mean(a, cap=cap)
    closed = (khintchine(a.with_a0_folded_in(), cap=cap) + a0) / 2
    if enumerated != closed:
        raise IdentityViolated("enumerated optimum disagrees with the closed form")
    return ChowOptimum(enumerated, halfspace_table(a))


def _chow_constraints(c: ChowVector) -> tuple[ratlp.Constraint, ...]:
    """Equality rows over the 2^n table variables, scaled by 2^n to stay integral."""
    n = c.n
    size = 2**n
    rows = [ratlp.Constraint((Fraction(1),) * size, ratlp.EQ, size * c.c[0])]
    for i in range(n):
        coeffs = tuple(Fraction(1) if x >> i & 1 else Fraction(-1) for x in range(size))
        rows.append(ratlp.Constraint(coeffs, ratlp.EQ, size * c.c[i + 1]))
    return tuple(rows)


@dataclass(frozen=True)
class MembershipVerdict:
    feasible: bool
    witness: BoundedFunction | None = None
    certificate: WeightVector | None = None  # separating functional, a_0 first

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def chow_membership(c: ChowVector, cap: int = DEFAULT_CAP) -> MembershipVerdict:
    """Is c the Chow vector of some bounded function?  Witness or separating
    functional; the functional is validated against `chow_opt` before return."""
    n = c.n
    if 2**n > cap:
        raise CapExceeded(2**n, cap, "membership LP")
    size = 2**n
    program = ratlp.LinearProgram(
        num_vars=size,
        objective=(Fraction(0),) * size,
        constraints=_chow_constraints(c),
        bounds=((Fraction(0), Fraction(1)),) * size,
    )
    outcome = ratlp.solve(program, cap=max(cap, ratlp.RATLP_CAP))
    if isinstance(outcome, ratlp.Optimal):
        witness = BoundedFunction(n, outcome.assignment)
        if chow_vector(witness, cap=cap).c != c.c:
            raise IdentityViolated("membership witness does not reproduce the vector")
        return MembershipVerdict(True, witness=witness)
    assert isinstance(outcome, ratlp.Infeasible)
    mult = outcome.certificate.constraint_multipliers
    functional = WeightVector(tuple(-m for m in mult[1:]), a0=-mult[0])
    best = chow_opt(functional, cap=cap).value
    if not c.dot(functional) > best:
        raise IdentityViolated("separating functional does not separate")
    return MembershipVerdict(False, certificate=functional)


def conditionals_to_chow(p) -> ChowVector:
    """Translate (Pr[E], Pr[E|X_1], ..., Pr[E|X_n]) with independent fair X_i
    into the Chow vector of f(x) = Pr[E | x]: c_0 = p_0 and c_i = p_i - p_0."""
    p = tuple(Fraction(v) for v in p)
    if not p:
        raise ValueError("need at least the unconditional probability")
    p0 = p[0]
    if not 0 < p0 <= 1:
        raise RangeError(f"Pr[E] = {p0} must lie in (0, 1]")
    c = [p0]
    for i, pi in enumerate(p[1:], start=1):
        if not 0 <= pi <= 1:
            raise RangeError(f"Pr[E|X_{i}] = {pi} must lie in [0, 1]")
        complement = 2 * p0 - pi  # the conditional mean on X_i = 0
        if not 0 <= complement <= 1:
            raise RangeError(
                f"Pr[E|not X_{i}] = {complement} must lie in [0, 1]"
            )
        c.append(pi - p0)
    return ChowVector(tuple(c))


def _probe_entry(constraints, size: int, x: int, maximize: bool) -> Fraction:
    objective = [Fraction(0)] * size
    objective[x] = Fraction(1) if maximize else Fraction(-1)
    outcome = ratlp.solve(
        ratlp.LinearProgram(
            num_vars=size,
            objective=tuple(objective),
            constraints=constraints,
            bounds=((Fraction(0), Fraction(1)),) * size,
        )
    )
    if not isinstance(outcome, ratlp.Optimal):
        raise IdentityViolated("entry probe must stay feasible and bounded")
    return outcome.value if maximize else -outcome.value


@dataclass(frozen=True)
class VertexVerdict:
    is_vertex: bool
    unique_witness: bool
    witness: BoundedFunction | None = None
    halfspace: WeightVector | None = None

    @property
    def status(self) -> str:
        return "vertex" if self.is_vertex else "not_vertex"


def is_vertex(c: ChowVector, cap: int = DEFAULT_CAP) -> VertexVerdict:
    """Vertex test by entry probing: re-solve the membership LP 2 * 2^n times,
    maximizing and minimizing each table entry.  A vertex must pin every entry
    (unique witness), be Boolean, and admit a strictly separating affine form
    (recovered by LP, normalized to a(x) >= 1 on the 1-side and <= -1 on the
    0-side)."""
    verdict = chow_membership(c, cap=cap)
    if not verdict.feasible:
        raise NotInPolytope("the vector is not a feasible Chow vector")
    n = c.n
    size = 2**n
    constraints = _chow_constraints(c)
    table = []
    unique = True
    for x in range(size):
        hi = _probe_entry(constraints, size, x, True)
        lo = _probe_entry(constraints, size, x, False)
        if hi != lo:
            unique = False
            break
        table.append(hi)
    if not unique:
        return VertexVerdict(False, False)
    witness = BoundedFunction(n, tuple(table))
    if not witness.is_boolean():
        return VertexVerdict(False, True, witness=witness)

    # Strict separation: find a_0..a_n with a(x) >= 1 where f = 1, <= -1 where f = 0.
    rows = []
    for x in range(size):
        coeffs = [Fraction(1)] + [
            Fraction(1) if x >> i & 1 else Fraction(-1) for i in range(n)
        ]
        if witness(x) == 1:
            rows.append(ratlp.Constraint(tuple(coeffs), ratlp.GE, Fraction(1)))
        else:
            rows.append(ratlp.Constraint(tuple(coeffs), ratlp.LE, Fraction(-1)))
    outcome = ratlp.feasible_point(
        ratlp.LinearProgram(
            num_vars=n + 1,
            objective=(Fraction(0),) * (n + 1),
            constraints=tuple(rows),
            bounds=((None, None),) * (n + 1),
        )
    )
    if isinstance(outcome, ratlp.Infeasible):
        return VertexVerdict(False, True, witness=witness)
    assert isinstance(outcome, ratlp.Optimal)
    weights = WeightVector(outcome.assignment[1:], a0=outcome.assignment[0])
    if halfspace_table(weights).table != witness.table:
        raise IdentityViolated("recovered halfspace does not reproduce the witness")
    return VertexVerdict(True, True, witness=witness, halfspace=weights)


@dataclass(frozen=True)
class UniquenessReport:
    unique: bool
    entries_probed: int


def chow_uniqueness_check(
    h: BoundedFunction, weights: WeightVector, cap: int = DEFAULT_CAP
) -> UniquenessReport:
    """Verify that h is the only bounded function with its Chow vector.

    The caller certifies h as a halfspace by supplying weights whose affine
    form never vanishes and reproduces h; the check itself is the
    entry-probing LP.
    """
    if len(weights.weights) != h.n:
        raise ValueError("weights dimension must match the function")
    for x in range(2**h.n):
        v = affine_value(weights, x)
        if v == 0:
            raise VanishingWitness(f"affine form vanishes at x = {x:0{h.n}b}")
        if Fraction(sign_plus(v)) != h(x):
            raise ValueError("weights do not certify the function")
    c = chow_vector(h, cap=cap)
    constraints = _chow_constraints(c)
    size = 2**h.n
    for x in range(size):
        hi = _probe_entry(constraints, size, x, True)
        lo = _probe_entry(constraints, size, x, False)
        if hi != lo or hi != h(x):
            return UniquenessReport(False, 2 * (x + 1))
    return UniquenessReport(True, 2 * size)


@dataclass(frozen=True)
class MajorityExtremalityReport:
    n: int
    sensitivity_sum: Fraction  # sum over i >= 1 of the majority's Chow entries
    equals_chow_opt: bool
    sweep_performed: bool
    sweep_max: Fraction | None
    majority_attains_sweep_max: bool | None

    @property
    def ok(self) -> bool:
        if not self.equals_chow_opt:
            return False
        if self.sweep_performed:
            return bool(self.majority_attains_sweep_max) and self.sweep_max == self.sensitivity_sum
        return True


def majority_extremality(n: int, cap: int = DEFAULT_CAP) -> MajorityExtremalityReport:
    """Majority maximizes the sum of degree-1 Chow entries.

    Always checks the closed form (the sum equals the polytope optimum for the
    all-ones functional); for n <= 3 additionally sweeps every Boolean
    function exhaustively.
    """
    if n % 2 == 0:
        raise EvenN("majority needs an odd number of inputs")
    if 2**n > cap:
        raise CapExceeded(2**n, cap, "majority table")
    maj = majority(n)
    c = chow_vector(maj, cap=cap)
    sens = sum(c.c[1:], Fraction(0))
    opt = chow_opt(WeightVector((Fraction(1),) * n, a0=Fraction(0)), cap=cap)
    equals = sens == opt.value

    sweep_done = False
    sweep_max = None
    attains = None
    if n <= 3:
        if 2 ** (2**n) > cap:
            raise CapExceeded(2 ** (2**n), cap, "Boolean-function sweep")
        size = 2**n
        signs = [
            [1 if x >> i & 1 else -1 for x in range(size)] for i in range(n)
        ]
        best = None
        for fbits in range(2 ** size):
            total = 0
            for i in range(n):
                si = signs[i]
                acc = 0
                for x in range(size):
                    if fbits >> x & 1:
                        acc += si[x]
                total += acc
            if best is None or total > best:
                best = total
        sweep_done = True
        sweep_max = Fraction(best, size)
        attains = sweep_max == sens
    return MajorityExtremalityReport(n, sens, equals, sweep_done, sweep_max, attains)
