"""Exception types shared across the package.

The CLI maps InvariantViolation to exit code 2 and PrecisionExhausted to
exit code 3; everything else is an ordinary error.
"""


class WildprimError(Exception):
    pass


class InvariantViolation(WildprimError):
    """A structural invariant the theory guarantees failed at runtime."""


class PrecisionExhausted(WildprimError):
    """An element is indistinguishable from zero at the working precision.

    Raised instead of silently returning zero: a wrong valuation would
    corrupt every filtration index computed from it.
    """


class IterationBudgetExceeded(WildprimError):
    """A randomized search (module chopping) hit its retry cap."""
