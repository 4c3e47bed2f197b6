"""Exact expectations over the Boolean hypercube.

Sign vectors x live in {-1,+1}^n; bit vectors live in {0,1}^n and are encoded
as integers with x_1 in the least significant bit.  The bridge between the two
pictures is (-1)^(1+x_i): bit 1 maps to +1, bit 0 maps to -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapExceeded

DEFAULT_CAP = 2**24


@dataclass(frozen=True)
class WeightVector:
    """Rational weights a_1..a_n, with an optional affine term a_0."""

    weights: tuple[Fraction, ...]
    a0: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if self.a0 is not None:
            object.__setattr__(self, "a0", Fraction(self.a0))
        if len(self.weights) < 1:
            raise ValueError("weight vector must have at least one coordinate")

    def __len__(self) -> int:
        return len(self.weights)

    def with_a0_folded_in(self) -> "WeightVector":
        """The (n+1)-dimensional vector (a_0, a_1, ..., a_n), a_0 defaulting to 0."""
        a0 = self.a0 if self.a0 is not None else Fraction(0)
        return WeightVector((a0,) + self.weights)


def sign_plus(z: Fraction) -> int:
    """1 when z >= 0, else 0.  Ties at zero resolve to 1 throughout the package."""
    return 1 if z >= 0 else 0


def _as_weights(a) -> tuple[Fraction, ...]:
    if isinstance(a, WeightVector):
        return a.weights
    return tuple(Fraction(w) for w in a)


def _check_cap(n: int, cap: int):
    if n >= 64 or 2**n > cap:
        raise CapExceeded(2**n if n < 64 else 2**64, cap, "hypercube enumeration")


def _integerized(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
    return [int(w * scale) for w in weights], scale


def signed_sums(a, cap: int = DEFAULT_CAP) -> Iterable[Fraction]:
    """Yield x . a over all 2^n sign vectors x, in Gray-code order."""
    weights = _as_weights(a)
    n = len(weights)
    _check_cap(n, cap)
    ints, scale = _integerized(weights)
    total = sum(ints)
    yield Fraction(total, scale)
    for i in range(1, 2**n):
        j = (i & -i).bit_length() - 1  # coordinate flipped at this Gray step
        gray = i ^ (i >> 1)  # bit set in the Gray word means coordinate is -1
        if gray >> j & 1:
            total -= 2 * ints[j]
        else:
            total += 2 * ints[j]
        yield Fraction(total, scale)


def khintchine(a, cap: int = DEFAULT_CAP) -> Fraction:
    """E over x in {-1,+1}^n of |x . a|, exactly, by Gray-code enumeration."""
    weights = _as_weights(a)
    n = len(weights)
    _check_cap(n, cap)
    ints, scale = _integerized(weights)
    total = sum(ints)
    acc = abs(total)
    for i in range(1, 2**n):
        j = (i & -i).bit_length() - 1
        gray = i ^ (i >> 1)
        if gray >> j & 1:
            total -= 2 * ints[j]
        else:
            total += 2 * ints[j]
        acc += abs(total)
    return Fraction(acc, scale * 2**n)


def khintchine_naive(a, cap: int = DEFAULT_CAP) -> Fraction:
    """Reference implementation of `khintchine`: direct product iteration."""
    weights = _as_weights(a)
    n = len(weights)
    _check_cap(n, cap)
    acc = Fraction(0)
    for mask in range(2**n):
        s = Fraction(0)
        for j, w in enumerate(weights):
            s += w if mask >> j & 1 else -w
        acc += abs(s)
    return acc / 2**n


def expected_max_with_zero(a, cap: int = DEFAULT_CAP) -> Fraction:
    """E over x in {-1,+1}^n of max(0, x . a), exactly."""
    weights = _as_weights(a)
    n = len(weights)
    _check_cap(n, cap)
    ints, scale = _integerized(weights)
    total = sum(ints)
    acc = max(0, total)
    for i in range(1, 2**n):
        j = (i & -i).bit_length() - 1
        gray = i ^ (i >> 1)
        if gray >> j & 1:
            total -= 2 * ints[j]
        else:
            total += 2 * ints[j]
        acc += max(0, total)
    return Fraction(acc, scale * 2**n)


def affine_value(a: WeightVector, x: int) -> Fraction:
    """a(x) = a_0 + sum_i a_i * (-1)^(1+x_i) for a bit vector x."""
    a0 = a.a0 if a.a0 is not None else Fraction(0)
    s = a0
    for j, w in enumerate(a.weights):
        s += w if x >> j & 1 else -w
    return s


def affine_abs_mean(a: WeightVector, cap: int = DEFAULT_CAP) -> Fraction:
    """E over x in {0,1}^n of |a(x)|, by enumeration."""
    n = len(a.weights)
    _check_cap(n, cap)
    return Fraction(sum(abs(affine_value(a, x)) for x in range(2**n)), 2**n)


def affine_positive_mean(a: WeightVector, cap: int = DEFAULT_CAP) -> Fraction:
    """E over x in {0,1}^n of max(0, a(x)) = E[sign_plus(a(x)) * a(x)]."""
    n = len(a.weights)
    _check_cap(n, cap)
    total = sum(v for v in (affine_value(a, x) for x in range(2**n)) if v > 0)
    return Fraction(total, 2**n)


@dataclass(frozen=True)
class BoundedFunction:
    """A table f: {0,1}^n -> [0,1]; index = bit vector value, x_1 = LSB."""

    n: int
    table: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(Fraction(v) for v in self.table))
        if len(self.table) != 2**self.n:
            raise ValueError(f"table must have 2^{self.n} entries, got {len(self.table)}")
        for x, v in enumerate(self.table):
            if not 0 <= v <= 1:
                raise ValueError(f"f({x:0{self.n}b}) = {v} is outside [0, 1]")

    def __call__(self, x: int) -> Fraction:
        return self.table[x]

    def is_boolean(self) -> bool:
        return all(v == 0 or v == 1 for v in self.table)

    @classmethod
    def constant(cls, n: int, value) -> "BoundedFunction":
        return cls(n, (Fraction(value),) * 2**n)

    @classmethod
    def from_predicate(cls, n: int, pred) -> "BoundedFunction":
        return cls(n, tuple(Fraction(1 if pred(x) else 0) for x in range(2**n)))


def majority(n: int) -> BoundedFunction:
    """Majority on n bits (n odd, so there are no ties)."""
    if n % 2 == 0:
        raise ValueError("majority needs an odd number of inputs")
    return BoundedFunction.from_predicate(n, lambda x: 2 * x.bit_count() > n)


def halfspace_table(a: WeightVector) -> BoundedFunction:
    """The function x -> sign_plus(a(x)) as an explicit table."""
    n = len(a.weights)
    return BoundedFunction(n, tuple(Fraction(sign_plus(affine_value(a, x))) for x in range(2**n)))
