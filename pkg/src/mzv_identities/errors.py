"""Exception types raised by the evaluators."""


class IdentityError(ValueError):
    """Base class for all domain errors in this package."""


class PoleError(IdentityError):
    """An argument sits on (or too close to) a pole of gamma/digamma."""


class PreconditionError(IdentityError):
    """A validity condition of a formula is violated."""


class DivergenceError(IdentityError):
    """A hypergeometric series does not converge at unit argument."""


class SlowConvergence(DivergenceError):
    """The series converges, but too slowly for reliable acceleration."""


class InadmissibleComposition(IdentityError):
    """The multiple zeta value index does not end in an entry >= 2."""


class RangeError(IdentityError):
    pass


class ConfigError(IdentityError):
    pass
