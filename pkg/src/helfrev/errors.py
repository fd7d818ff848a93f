"""Exception types shared across the package."""


class HelfrevError(Exception):
    """Base class for all domain errors raised by this package."""


class BadGrid(HelfrevError):
    """Grid nodes are not an increasing partition of [0, 1], or the
    quadrature order is too low."""


class NonPositiveProfile(HelfrevError):
    """A profile dipped to or below the positivity floor."""


class OutOfDomain(HelfrevError):
    """Evaluation point lies outside [-1, 1]."""


class RootNotBracketed(HelfrevError):
    """A bisection bracket does not enclose a sign change."""


class NoSolution(HelfrevError):
    """The requested object does not exist for these parameters
    (e.g. catenary branches below the existence threshold)."""


class DegenerateCoefficients(HelfrevError):
    """Closed-form coefficients are not defined for this parameter."""


class PhaseUndefined(HelfrevError):
    """A phase function or its derivative is undefined for these amplitudes."""


class PoleAtMultipleOfPi(HelfrevError):
    """tanh(x)/tan(x) evaluated at a pole of the ratio."""
