"""Exact rational linear programming for small dense problems.

Two-phase primal simplex over a fraction-free integer tableau: the tableau
holds d * (true rational tableau) for a positive integer d, every pivot is a
multiply/subtract followed by an exact division (checked), so no floating
point ever enters.  Bland's rule (the default) guarantees termination with no
perturbation; rule="hybrid" runs Dantzig pricing and falls back to Bland
permanently once pivots stall, which terminates for the same reason.

Infeasibility is returned with a Farkas certificate: signed multipliers for
the constraints plus nonnegative multipliers for the variable bounds whose
combination reads 0 <= negative.  Certificates are extracted from the
phase-one duals and re-verified against the original program before being
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CapExceeded, IdentityViolated

LE, EQ, GE = "<=", "=", ">="
RATLP_CAP = 2**20


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in (LE, EQ, GE):
            raise ValueError(f"relation must be one of <=, =, >=; got {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


Bound = tuple[Optional[Fraction], Optional[Fraction]]


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x subject to constraints and per-variable bounds.

    Variables are free unless bounds say otherwise.
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    bounds: tuple[Bound, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        norm_bounds = []
        for lo, hi in self.bounds:
            norm_bounds.append(
                (None if lo is None else Fraction(lo), None if hi is None else Fraction(hi))
            )
        object.__setattr__(self, "bounds", tuple(norm_bounds))
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length must equal num_vars")
        if len(self.bounds) != self.num_vars:
            raise ValueError("bounds length must equal num_vars")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint coefficient length must equal num_vars")


def lp(
    objective: Sequence,
    constraints: Sequence[tuple[Sequence, str, object]],
    bounds: Sequence[Bound] | None = None,
) -> LinearProgram:
    """Convenience constructor from plain sequences."""
    objective = tuple(Fraction(c) for c in objective)
    n = len(objective)
    rows = tuple(Constraint(tuple(co), rel, rhs) for co, rel, rhs in constraints)
    if bounds is None:
        bounds = ((None, None),) * n
    return LinearProgram(n, objective, rows, tuple(bounds))


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers whose combination of the program's rows yields 0 <= negative.

    Sign conventions: <= rows carry multipliers >= 0, >= rows carry <= 0,
    equality rows are free; bound multipliers are always >= 0 and refer to
    x_j >= lower (lower_multipliers) and x_j <= upper (upper_multipliers).
    """

    constraint_multipliers: tuple[Fraction, ...]
    lower_multipliers: tuple[Fraction, ...]
    upper_multipliers: tuple[Fraction, ...]

    def combination(self, program: LinearProgram) -> tuple[tuple[Fraction, ...], Fraction]:
        coeffs = [Fraction(0)] * program.num_vars
        total = Fraction(0)
        for mult, con in zip(self.constraint_multipliers, program.constraints):
            if mult == 0:
                continue
            for j, a in enumerate(con.coeffs):
                coeffs[j] += mult * a
            total += mult * con.rhs
        for j, (lo, hi) in enumerate(program.bounds):
            v, w = self.lower_multipliers[j], self.upper_multipliers[j]
            if v:
                coeffs[j] -= v
                total -= v * lo
            if w:
                coeffs[j] += w
                total += w * hi
        return tuple(coeffs), total

    def verify(self, program: LinearProgram) -> bool:
        for mult, con in zip(self.constraint_multipliers, program.constraints):
            if con.relation == LE and mult < 0:
                return False
            if con.relation == GE and mult > 0:
                return False
        for j, (lo, hi) in enumerate(program.bounds):
            if self.lower_multipliers[j] < 0 or self.upper_multipliers[j] < 0:
                return False
            if lo is None and self.lower_multipliers[j] != 0:
                return False
            if hi is None and self.upper_multipliers[j] != 0:
                return False
        coeffs, total = self.combination(program)
        return all(c == 0 for c in coeffs) and total < 0


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    assignment: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


@dataclass(frozen=True)
class Unbounded:
    pass


LpOutcome = Optimal | Infeasible | Unbounded


def solve(program: LinearProgram, rule: str = "bland", cap: int = RATLP_CAP) -> LpOutcome:
    """Exact optimum of the program; deterministic for identical input."""
    size = program.num_vars * max(1, len(program.constraints))
    if size > cap:
        raise CapExceeded(size, cap, "linear program")
    outcome = _Simplex(program, rule).run()
    if isinstance(outcome, Optimal):
        _check_optimal(program, outcome)
    elif isinstance(outcome, Infeasible):
        if not outcome.certificate.verify(program):
            raise IdentityViolated("Farkas certificate failed verification")
    return outcome


def feasible_point(program: LinearProgram, rule: str = "bland", cap: int = RATLP_CAP) -> LpOutcome:
    """`solve` with a zero objective: a witness point or a Farkas certificate."""
    zero = replace(program, objective=(Fraction(0),) * program.num_vars)
    return solve(zero, rule=rule, cap=cap)


def _check_optimal(program: LinearProgram, outcome: Optimal):
    x = outcome.assignment
    for con in program.constraints:
        lhs = sum(a * xj for a, xj in zip(con.coeffs, x))
        ok = lhs <= con.rhs if con.relation == LE else lhs >= con.rhs if con.relation == GE else lhs == con.rhs
        if not ok:
            raise IdentityViolated(f"optimal point violates {con.relation} constraint")
    for xj, (lo, hi) in zip(x, program.bounds):
        if lo is not None and xj < lo:
            raise IdentityViolated("optimal point violates a lower bound")
        if hi is not None and xj > hi:
            raise IdentityViolated("optimal point violates an upper bound")
    value = sum(c * xj for c, xj in zip(program.objective, x))
    if value != outcome.value:
        raise IdentityViolated("objective value mismatch")


class _Simplex:
    """One-shot solver instance; do not reuse."""

    def __init__(self, program: LinearProgram, rule: str):
        if rule not in ("bland", "hybrid"):
            raise ValueError("rule must be 'bland' or 'hybrid'")
        self.program = program
        self.rule = rule
        self.bland = rule == "bland"
        self.degenerate_streak = 0

    # ------------------------------------------------------------------
    # standard-form construction
    # ------------------------------------------------------------------

    def _build(self):
        prog = self.program
        n = prog.num_vars

        # A variable with a lower bound is shifted, one with only an upper
        # bound is mirrored, a free one is split; all standard-form variables
        # are then >= 0.
        self.var_map = []
        ncols = 0
        for j in range(n):
            lo, hi = prog.bounds[j]
            if lo is not None:
                self.var_map.append(("shift", ncols, lo))
                ncols += 1
            elif hi is not None:
                self.var_map.append(("mirror", ncols, hi))
                ncols += 1
            else:
                self.var_map.append(("split", ncols, ncols + 1))
                ncols += 2
        self.n_varcols = ncols

        # Rows in standard-form variable space, as Fractions first.
        # tag is ("c", i) for original constraint i, ("ub", j) for the
        # upper-bound row of a doubly bounded variable j.
        frac_rows = []
        for i, con in enumerate(prog.constraints):
            coeffs = [Fraction(0)] * self.n_varcols
            rhs = con.rhs
            for j, a in enumerate(con.coeffs):
                if a == 0:
                    continue
                kind = self.var_map[j]
                if kind[0] == "shift":
                    coeffs[kind[1]] += a
                    rhs -= a * kind[2]
                elif kind[0] == "mirror":
                    coeffs[kind[1]] -= a
                    rhs -= a * kind[2]
                else:
                    coeffs[kind[1]] += a
                    coeffs[kind[2]] -= a
            frac_rows.append((coeffs, con.relation, rhs, ("c", i)))
        for j in range(n):
            lo, hi = prog.bounds[j]
            if lo is not None and hi is not None:
                kind = self.var_map[j]
                coeffs = [Fraction(0)] * self.n_varcols
                coeffs[kind[1]] = Fraction(1)
                frac_rows.append((coeffs, LE, hi - lo, ("ub", j)))

        nrows = len(frac_rows)
        self.nrows = nrows
        n_slacks = sum(1 for _, rel, _, _ in frac_rows if rel != EQ)
        self.n_realcols = self.n_varcols + n_slacks
        self.readout0 = self.n_realcols  # one readout column per row
        total_cols = self.n_realcols + nrows
        self.rhs_col = total_cols
        self.d = 1

        # Integerize: scale each row by the lcm of its denominators, flip the
        # sign so the right-hand side is nonnegative, append slack and
        # readout (identity) entries.  row_info[k] = (tag, relation, L, sigma).
        self.rows: list[list[int]] = []
        self.row_info = []
        slack_col = self.n_varcols
        for k, (coeffs, rel, rhs, tag) in enumerate(frac_rows):
            scale = math.lcm(rhs.denominator, *(c.denominator for c in coeffs))
            ints = [int(c * scale) for c in coeffs]
            irhs = int(rhs * scale)
            row = ints + [0] * (n_slacks + nrows) + [irhs]
            if rel != EQ:
                row[slack_col] = scale if rel == LE else -scale
            sigma = 1
            if irhs < 0:
                sigma = -1
                row = [-v for v in row]
            row[self.readout0 + k] = 1  # identity readout, placed after the flip
            self.rows.append(row)
            self.row_info.append((tag, rel, scale, sigma))
            if rel != EQ:
                slack_col += 1

        self.basis = [self.readout0 + k for k in range(nrows)]
        self.artificial = [True] * nrows  # readout k serves as artificial for row k

    def _crash(self):
        """Pivot in columns that already look like unit columns (slacks and
        naturally unit structure), so phase one starts with few artificials."""
        counts = [0] * self.n_realcols
        last_row = [-1] * self.n_realcols
        for i, row in enumerate(self.rows):
            for j in range(self.n_realcols):
                if row[j]:
                    counts[j] += 1
                    last_row[j] = i
        for i in range(self.nrows):
            best = None
            for j in range(self.n_realcols):
                if counts[j] == 1 and last_row[j] == i and self.rows[i][j] > 0:
                    if best is None or self.rows[i][j] < self.rows[i][best]:
                        best = j
            if best is not None:
                self._pivot(i, best, obj=None)
                self.artificial[i] = False

    # ------------------------------------------------------------------
    # pivoting
    # ------------------------------------------------------------------

    def _pivot(self, r: int, s: int, obj: list[int] | None):
        rows = self.rows
        d = self.d
        prow = rows[r]
        p = prow[s]
        if p <= 0:
            raise IdentityViolated("pivot element must be positive")
        width = self.rhs_col + 1
        for row in rows:
            if row is prow:
                continue
            f = row[s]
            for j in range(width):
                q, rem = divmod(p * row[j] - f * prow[j], d)
                if rem:
                    raise IdentityViolated("inexact division in integer pivot")
                row[j] = q
        if obj is not None:
            f = obj[s]
            for j in range(len(obj)):
                q, rem = divmod(p * obj[j] - f * prow[j], d)
                if rem:
                    raise IdentityViolated("inexact division in integer pivot")
                obj[j] = q
        self.d = p
        self.basis[r] = s

    def _objective_row(self, costs: dict[int, Fraction]) -> list[int]:
        """d * scale * (reduced costs) over the real columns."""
        scale = math.lcm(*(c.denominator for c in costs.values())) if costs else 1
        obj = [0] * self.n_realcols
        for j, c in costs.items():
            if j < self.n_realcols:
                obj[j] = self.d * int(c * scale)
        for i, b in enumerate(self.basis):
            cb = costs.get(b)
            if cb:
                icb = int(cb * scale)
                row = self.rows[i]
                for j in range(self.n_realcols):
                    obj[j] -= icb * row[j]
        return obj

    def _entering(self, obj: list[int], eligible) -> int | None:
        if self.bland:
            for j in eligible:
                if obj[j] > 0:
                    return j
            return None
        best = None
        for j in eligible:
            if obj[j] > 0 and (best is None or obj[j] > obj[best]):
                best = j
        return best

    def _leaving(self, s: int) -> int | None:
        best = None
        for i, row in enumerate(self.rows):
            t = row[s]
            if t <= 0:
                continue
            if best is None:
                best = i
                continue
            a, b = row[self.rhs_col], self.rows[best][self.rhs_col]
            bt = self.rows[best][s]
            # compare a/t against b/bt
            left, right = a * bt, b * t
            if left < right or (left == right and self.basis[i] < self.basis[best]):
                best = i
        return best

    def _iterate(self, obj: list[int], eligible) -> str:
        guard = 0
        limit = 5000 + 200 * (self.nrows + self.n_realcols)
        switch_at = 20 + 2 * self.nrows
        while True:
            guard += 1
            if guard > limit:
                raise IdentityViolated("simplex iteration limit hit")
            s = self._entering(obj, eligible)
            if s is None:
                return "optimal"
            r = self._leaving(s)
            if r is None:
                return "unbounded"
            if not self.bland:
                if self.rows[r][self.rhs_col] == 0:
                    self.degenerate_streak += 1
                    if self.degenerate_streak > switch_at:
                        self.bland = True
                else:
                    self.degenerate_streak = 0
            self._pivot(r, s, obj)

    # ------------------------------------------------------------------
    # phases
    # ------------------------------------------------------------------

    def run(self) -> LpOutcome:
        early = self._bound_contradiction()
        if early is not None:
            return early
        self._build()
        self._crash()

        # Phase one: maximize minus the sum of artificial values.
        costs = {
            self.readout0 + k: Fraction(-1)
            for k in range(self.nrows)
            if self.artificial[k]
        }
        p1_obj = self._objective_row(costs)
        eligible = range(self.n_realcols)
        status = self._iterate(p1_obj, eligible)
        if status != "optimal":
            raise IdentityViolated("phase one cannot be unbounded")
        # Any artificial still basic carries its row's value.
        infeasibility = Fraction(0)
        for i in range(self.nrows):
            b = self.basis[i]
            if b >= self.readout0 and self.artificial[b - self.readout0]:
                infeasibility += Fraction(self.rows[i][self.rhs_col], self.d)
        if infeasibility > 0:
            return Infeasible(self._certificate(p1_obj))

        self._cleanup()

        # Phase two with the real objective.
        costs = {}
        for j, c in enumerate(self.program.objective):
            if c == 0:
                continue
            kind = self.var_map[j]
            if kind[0] == "shift":
                costs[kind[1]] = costs.get(kind[1], Fraction(0)) + c
            elif kind[0] == "mirror":
                costs[kind[1]] = costs.get(kind[1], Fraction(0)) - c
            else:
                costs[kind[1]] = costs.get(kind[1], Fraction(0)) + c
                costs[kind[2]] = costs.get(kind[2], Fraction(0)) - c
        p2_obj = self._objective_row({j: c for j, c in costs.items() if c})
        status = self._iterate(p2_obj, range(self.n_realcols))
        if status == "unbounded":
            return Unbounded()
        return Optimal(*self._read_solution())

    def _bound_contradiction(self) -> Infeasible | None:
        prog = self.program
        for j, (lo, hi) in enumerate(prog.bounds):
            if lo is not None and hi is not None and lo > hi:
                lower = [Fraction(0)] * prog.num_vars
                upper = [Fraction(0)] * prog.num_vars
                lower[j] = Fraction(1)
                upper[j] = Fraction(1)
                cert = FarkasCertificate(
                    (Fraction(0),) * len(prog.constraints), tuple(lower), tuple(upper)
                )
                return Infeasible(cert)
        return None

    def _cleanup(self):
        """Drive artificials out of the basis, drop redundant rows, then strip
        every readout column before phase two."""
        basic = set(self.basis)
        for r in range(self.nrows - 1, -1, -1):
            b = self.basis[r]
            if b < self.readout0 or not self.artificial[b - self.readout0]:
                continue
            row = self.rows[r]
            pivot_col = None
            fallback = None
            for j in range(self.n_realcols):
                if j in basic or row[j] == 0:
                    continue
                if row[j] > 0:
                    pivot_col = j
                    break
                if fallback is None:
                    fallback = j
            if pivot_col is None and fallback is not None:
                for j in range(len(row)):
                    row[j] = -row[j]
                pivot_col = fallback
            if pivot_col is not None:
                self._pivot(r, pivot_col, None)
                basic = set(self.basis)
            else:
                if row[self.rhs_col] != 0:
                    raise IdentityViolated("redundant row with nonzero value")
                del self.rows[r]
                del self.basis[r]
                del self.row_info[r]
                self.nrows -= 1

        keep = list(range(self.n_realcols)) + [self.rhs_col]
        remap = {old: new for new, old in enumerate(keep)}
        self.rows = [[row[c] for c in keep] for row in self.rows]
        self.rhs_col = self.n_realcols
        self.basis = [remap[b] for b in self.basis]

    # ------------------------------------------------------------------
    # results
    # ------------------------------------------------------------------

    def _read_solution(self) -> tuple[Fraction, tuple[Fraction, ...]]:
        std = [Fraction(0)] * self.n_realcols
        for i, b in enumerate(self.basis):
            if b < self.n_realcols:
                std[b] = Fraction(self.rows[i][self.rhs_col], self.d)
        x = []
        for kind in self.var_map:
            if kind[0] == "shift":
                x.append(kind[2] + std[kind[1]])
            elif kind[0] == "mirror":
                x.append(kind[2] - std[kind[1]])
            else:
                x.append(std[kind[1]] - std[kind[2]])
        value = sum(
            (c * xi for c, xi in zip(self.program.objective, x)), Fraction(0)
        )
        return value, tuple(x)

    def _certificate(self, p1_obj: list[int]) -> FarkasCertificate:
        """Read the phase-one duals off the readout columns and translate them
        into multipliers on the original rows and bounds."""
        prog = self.program
        d = self.d

        y = []
        for k in range(self.nrows):
            col = self.readout0 + k
            acc = 0
            for i in range(self.nrows):
                b = self.basis[i]
                if b >= self.readout0 and self.artificial[b - self.readout0]:
                    acc -= self.rows[i][col]
            y.append(Fraction(acc, d))

        con_mults = [Fraction(0)] * len(prog.constraints)
        lower = [Fraction(0)] * prog.num_vars
        upper = [Fraction(0)] * prog.num_vars
        for k, (tag, _rel, scale, sigma) in enumerate(self.row_info):
            mu = y[k] * sigma * scale
            if tag[0] == "c":
                con_mults[tag[1]] += mu
            else:  # upper-bound row of variable tag[1]
                upper[tag[1]] += mu

        # Bound multipliers soak up the leftover coefficients on shifted and
        # mirrored variables: y^T A_col = -R_col / d at the phase-one stall.
        for j, kind in enumerate(self.var_map):
            if kind[0] == "shift":
                g = Fraction(-p1_obj[kind[1]], d)
                lower[j] += g
            elif kind[0] == "mirror":
                g = Fraction(-p1_obj[kind[1]], d)
                upper[j] += g
        return FarkasCertificate(tuple(con_mults), tuple(lower), tuple(upper))
