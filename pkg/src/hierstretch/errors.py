"""Exception types shared across the package."""


class HierStretchError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HierStretchError):
    """Malformed instance file or rational literal."""


class BudgetExceeded(HierStretchError):
    """A decision migrated more total size than the arrival's budget allows."""


class HierarchyViolation(HierStretchError):
    """A grade-1 job was placed or moved onto machine 2."""


class UnknownJob(HierStretchError):
    """A migration referenced a job index that is not in the schedule."""


class NegativeM(HierStretchError):
    """Migration factor below zero."""


class RegimeMismatch(HierStretchError):
    """Scheduler or adversary invoked outside its migration-factor interval."""


class SizeLimit(HierStretchError):
    """Exhaustive search refused: too many candidates for exact enumeration."""


class BadGamma(HierStretchError):
    """Gap parameter for the high-migration adversary out of range."""


class BadEps(HierStretchError):
    """Epsilon for the mid-migration adversary out of range."""


class BadTheta(HierStretchError):
    """Large-job size for the known-total-size adversary is not close enough
    to the root of 4*t^2 + t - 2."""


class InfeasibleConfig(HierStretchError):
    """Generator configuration cannot produce a valid instance."""
