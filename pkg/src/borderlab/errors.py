"""Exception hierarchy shared by every borderlab module."""


class BorderlabError(Exception):
    """Base class for all domain errors raised by this package."""


class CapExceeded(BorderlabError):
    """An enumeration or LP would materialize more objects than the cap allows."""

    def __init__(self, required: int, cap: int, what: str = "enumeration"):
        self.required = required
        self.cap = cap
        self.what = what
        super().__init__(f"{what} needs {required} items, cap is {cap}")


class MalformedRule(BorderlabError):
    """An ex-post or interim rule violates its basic shape constraints."""


class WrongFamily(BorderlabError):
    """Operation requires a specific feasible-set family."""


class NotRegular(BorderlabError):
    """Virtual valuations are not monotone; the fast path does not apply."""


class NonPositiveStake(BorderlabError):
    """Public-project stakes must be strictly positive."""


class MonotonicityViolated(BorderlabError):
    """Interim allocation for the high type is below the low type."""


class RangeError(BorderlabError):
    """A probability-valued input falls outside [0, 1]."""


class EvenN(BorderlabError):
    """Majority is only defined for an odd number of inputs."""


class NotInPolytope(BorderlabError):
    """The vector is not a feasible Chow vector, so the query is undefined."""


class VanishingWitness(BorderlabError):
    """The certifying affine form vanishes on some hypercube point."""


class IdentityViolated(BorderlabError):
    """An internal cross-check that must always hold has failed (a bug)."""
