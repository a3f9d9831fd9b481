"""Exception types raised by rrdp."""


class RRDPError(ValueError):
    """Base class for all rrdp errors."""


class DegenerateMechanism(RRDPError):
    """The design matrix has p00 + p11 == 1, so the estimator is undefined."""


class ZeroEpsilonStrict(RRDPError):
    """epsilon == 0 and delta == 0: every feasible mechanism is degenerate."""


class SingularThreshold(RRDPError):
    """e^epsilon + 2*delta - 1 == 0, so g(epsilon, delta) has a zero denominator."""


class EmptyFeasibleRegion(RRDPError):
    """No candidate mechanism satisfies the privacy constraints."""
