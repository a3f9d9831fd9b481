"""Maximum likelihood estimation of the population proportion from randomized tallies."""

from __future__ import annotations

import dataclasses
import enum
import math
from typing import Optional

from rrdp.errors import DegenerateMechanism
from rrdp.mechanism import DEGENERACY_TOL, DesignMatrix

#: Multiplier of the standard deviation giving a 95% margin via Chebyshev's inequality.
CHEBYSHEV_95 = 4.5
#: Multiplier of the standard deviation giving a 95% margin under a normal approximation.
NORMAL_95 = 1.96


@dataclasses.dataclass(frozen=True)
class SurveyOutcome:
    """``count_ones`` randomized 1-answers out of ``n`` respondents."""

    n: int
    count_ones: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if not (0 <= self.count_ones <= self.n):
            raise ValueError(f"count_ones must lie in [0, n={self.n}], got {self.count_ones}")


class MarginMethod(enum.Enum):
    CHEBYSHEV_95 = "chebyshev95"
    NORMAL_95 = "normal95"


@dataclasses.dataclass(frozen=True)
class EstimateReport:
    pi_hat_raw: float
    pi_hat_clamped: float
    variance: float
    moe_chebyshev: float
    moe_normal: float
    variance_at: float


def _contrast(P) -> float:
    c = P.p00 + P.p11 - 1.0
    if abs(c) <= DEGENERACY_TOL:
        raise DegenerateMechanism(
            f"p00 + p11 = 1 for (p00={P.p00}, p11={P.p11}); the estimator is undefined"
        )
    return c


def mle_estimate(P: DesignMatrix, outcome: SurveyOutcome) -> float:
    """Unclamped MLE of pi; may fall outside [0, 1] for unlucky tallies."""
    c = _contrast(P)
    return (P.p00 - 1.0) / c + outcome.count_ones / (c * outcome.n)


def mle_coefficients(P: DesignMatrix, n: int) -> tuple[float, float]:
    """``(a, b)`` with ``mle = a + b * N`` for a tally of ``N`` ones out of ``n``."""
    c = _contrast(P)
    return (P.p00 - 1.0) / c, 1.0 / (c * n)


def estimator_variance(P, pi: float, n: int) -> float:
    """Exact variance of the MLE at true proportion ``pi`` with ``n`` respondents.

    ``P`` only needs ``p00`` and ``p11`` attributes, so boundary points can be
    evaluated directly.
    """
    if not (0.0 <= pi <= 1.0):
        raise ValueError(f"pi must lie in [0, 1], got {pi!r}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    c = _contrast(P)
    p_zero = P.p00 - pi * c
    return p_zero * (1.0 - p_zero) / (c * c * n)


def warner_variance(pw: float, pi: float, n: int) -> float:
    """MLE variance for the symmetric mechanism ``p00 = p11 = pw``."""
    if abs(2.0 * pw - 1.0) <= DEGENERACY_TOL:
        raise DegenerateMechanism("pw = 1/2 makes the estimator undefined")
    if not (0.0 <= pi <= 1.0):
        raise ValueError(f"pi must lie in [0, 1], got {pi!r}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    c = 2.0 * pw - 1.0
    centred = pw - 0.5 - pi * c
    return (0.25 - centred * centred) / (c * c * n)


def margin_of_error(variance: float, method: MarginMethod = MarginMethod.NORMAL_95) -> float:
    if variance < 0:
        raise ValueError(f"variance must be non-negative, got {variance!r}")
    k = CHEBYSHEV_95 if MarginMethod(method) is MarginMethod.CHEBYSHEV_95 else NORMAL_95
    return k * math.sqrt(variance)


def build_report(
    P: DesignMatrix, outcome: SurveyOutcome, reference_pi: Optional[float] = None
) -> EstimateReport:
    """Estimate pi from a tally and attach its variance and 95% margins.

    The variance is evaluated at ``reference_pi`` when given, otherwise at the
    clamped estimate itself (plug-in).
    """
    raw = mle_estimate(P, outcome)
    clamped = min(1.0, max(0.0, raw))
    at = clamped if reference_pi is None else reference_pi
    var = estimator_variance(P, at, outcome.n)
    return EstimateReport(
        pi_hat_raw=raw,
        pi_hat_clamped=clamped,
        variance=var,
        moe_chebyshev=margin_of_error(var, MarginMethod.CHEBYSHEV_95),
        moe_normal=margin_of_error(var, MarginMethod.NORMAL_95),
        variance_at=at,
    )
