"""Binary randomized-response mechanisms and their privacy feasibility region.

A mechanism is described by its two truthful-retention probabilities
``p00 = P(report 0 | truth 0)`` and ``p11 = P(report 1 | truth 1)``; the
off-diagonal entries of the 2x2 design matrix follow from row-stochasticity.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from typing import Protocol

import numpy as np

from rrdp.errors import DegenerateMechanism

#: Default absolute slack when testing (epsilon, delta) constraints.
CONSTRAINT_TOL = 1e-9
#: Band around p00 + p11 == 1 inside which a mechanism counts as degenerate.
DEGENERACY_TOL = 1e-12


def _check_probability(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


@dataclasses.dataclass(frozen=True)
class DesignMatrix:
    """Design matrix ``[[p00, 1 - p00], [1 - p11, p11]]``."""

    p00: float
    p11: float

    def __post_init__(self):
        _check_probability("p00", self.p00)
        _check_probability("p11", self.p11)

    @property
    def p01(self) -> float:
        return 1.0 - self.p00

    @property
    def p10(self) -> float:
        return 1.0 - self.p11

    @property
    def contrast(self) -> float:
        """``p00 + p11 - 1``, the factor that scales the signal in the output."""
        return self.p00 + self.p11 - 1.0

    @property
    def is_degenerate(self) -> bool:
        return abs(self.contrast) <= DEGENERACY_TOL

    def as_array(self) -> np.ndarray:
        return np.array([[self.p00, self.p01], [self.p10, self.p11]])

    def transpose(self) -> DesignMatrix:
        """Swap the roles of the two truthful answers."""
        return DesignMatrix(self.p11, self.p00)

    @classmethod
    def warner(cls, pw: float) -> DesignMatrix:
        return cls(pw, pw)


@dataclasses.dataclass(frozen=True)
class PrivacyParams:
    """An (epsilon, delta) privacy budget. ``exp_eps`` is cached on construction."""

    epsilon: float
    delta: float = 0.0
    exp_eps: float = dataclasses.field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.epsilon >= 0.0) or math.isinf(self.epsilon):
            raise ValueError(f"epsilon must be a finite non-negative number, got {self.epsilon!r}")
        if not (0.0 <= self.delta <= 1.0):
            raise ValueError(f"delta must lie in [0, 1], got {self.delta!r}")
        object.__setattr__(self, "exp_eps", math.exp(self.epsilon))

    @property
    def corner_value(self) -> float:
        """``(e^eps + delta) / (e^eps + 1)``: the symmetric point where both constraints bind."""
        return (self.exp_eps + self.delta) / (self.exp_eps + 1.0)


@dataclasses.dataclass(frozen=True)
class ResponseDistribution:
    p_zero: float
    p_one: float


class Branch(enum.Enum):
    """Which boundary segment of the feasible region a point lies on.

    DP1_TIGHT: ``p11 = e^eps (1 - p00) + delta`` holds with equality.
    DP2_TIGHT: ``p00 = e^eps (1 - p11) + delta`` holds with equality.
    """

    DP1_TIGHT = "dp1"
    DP2_TIGHT = "dp2"


@dataclasses.dataclass(frozen=True)
class BoundaryPoint:
    """A point of the boundary parametrization.

    Points with ``t < t_zero`` fall outside the unit square, so ``p00``/``p11``
    here are plain reals and are only turned into a :class:`DesignMatrix`
    on request.
    """

    t: float
    p00: float
    p11: float
    branch: Branch

    def as_design_matrix(self) -> DesignMatrix:
        # Clip rounding spill-over of a few ulps; anything larger is a real error.
        p00, p11 = self.p00, self.p11
        if 1.0 < p00 <= 1.0 + DEGENERACY_TOL:
            p00 = 1.0
        if 1.0 < p11 <= 1.0 + DEGENERACY_TOL:
            p11 = 1.0
        return DesignMatrix(p00, p11)


class _UniformSource(Protocol):
    def random(self) -> float: ...


def response_pmf(P: DesignMatrix, pi: float) -> ResponseDistribution:
    """Distribution of a single randomized answer when a fraction ``pi`` of the population is positive."""
    _check_probability("pi", pi)
    shift = pi * P.contrast
    return ResponseDistribution(p_zero=P.p00 - shift, p_one=1.0 - P.p00 + shift)


def randomize(P: DesignMatrix, truth: int, rng: _UniformSource) -> int:
    """Return the randomized report for one respondent.

    ``rng`` is any object with a ``random()`` method returning a uniform draw
    in [0, 1), for example :class:`numpy.random.Generator` or :mod:`random`.
    """
    if truth not in (0, 1):
        raise ValueError(f"truth must be 0 or 1, got {truth!r}")
    keep = P.p11 if truth else P.p00
    return truth if rng.random() < keep else 1 - truth


def randomize_array(P: DesignMatrix, truths: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Vectorized :func:`randomize` driven by pre-drawn uniforms of the same shape."""
    truths = np.asarray(truths, dtype=bool)
    keep = np.where(truths, P.p11, P.p00)
    return np.where(np.asarray(uniforms) < keep, truths, ~truths)


def constraint_slacks(P, priv: PrivacyParams) -> tuple[float, float, float, float]:
    """Slack (right minus left side) of the four privacy inequalities.

    Order: ``p11 <= e(1-p00)+d``, ``p00 <= e(1-p11)+d``, ``1-p00 <= e p11+d``,
    ``1-p11 <= e p00+d`` where ``e = exp(epsilon)`` and ``d = delta``.
    ``P`` may be a :class:`DesignMatrix` or a :class:`BoundaryPoint`.
    """
    e, d = priv.exp_eps, priv.delta
    p00, p11 = P.p00, P.p11
    return (
        e * (1.0 - p00) + d - p11,
        e * (1.0 - p11) + d - p00,
        e * p11 + d - (1.0 - p00),
        e * p00 + d - (1.0 - p11),
    )


def satisfies_dp(P: DesignMatrix, priv: PrivacyParams, tol: float = CONSTRAINT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return all(s >= -tol for s in constraint_slacks(P, priv))


def normalize_orientation(P: DesignMatrix) -> tuple[DesignMatrix, bool]:
    """Swap output labels if needed so that ``p00 + p11 > 1``.

    Returns the oriented matrix and whether a swap took place.
    """
    if P.is_degenerate:
        raise DegenerateMechanism(
            f"p00 + p11 = 1 for {P}; the estimator is undefined for this mechanism"
        )
    if P.contrast > 0:
        return P, False
    return DesignMatrix(1.0 - P.p00, 1.0 - P.p11), True


def in_region_r_prime(P, priv: PrivacyParams, tol: float = CONSTRAINT_TOL) -> bool:
    """Whether ``P`` is a feasible mechanism with ``p00 + p11 > 1``.

    Only the two constraints that can bind in this half of the square are
    checked; the other two are implied.
    """
    p00, p11 = P.p00, P.p11
    if p00 > 1.0 + tol or p11 > 1.0 + tol:
        return False
    if p00 + p11 - 1.0 <= DEGENERACY_TOL:
        return False
    dp1, dp2, _, _ = constraint_slacks(P, priv)
    return dp1 >= -tol and dp2 >= -tol


def on_boundary(P, priv: PrivacyParams, tol: float = CONSTRAINT_TOL) -> bool:
    """Whether ``P`` is feasible with ``p00 + p11 > 1`` and at least one constraint tight."""
    if not in_region_r_prime(P, priv, tol):
        return False
    dp1, dp2, _, _ = constraint_slacks(P, priv)
    return abs(dp1) <= tol or abs(dp2) <= tol


def t_zero(priv: PrivacyParams) -> float:
    """Boundary parameter at which the segment reaches the unit-square edge at ``(1, delta)``."""
    return priv.delta * (priv.exp_eps + 1.0) / (priv.exp_eps + priv.delta)


def boundary_point(t: float, priv: PrivacyParams, branch: Branch = Branch.DP1_TIGHT) -> BoundaryPoint:
    """Point at parameter ``t`` on one of the two boundary segments.

    ``t = 1`` gives the symmetric corner where both constraints bind and
    ``t = t_zero(priv)`` gives ``(1, delta)`` (or its transpose).
    """
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    s = t * priv.corner_value
    r = 1.0 - (s - priv.delta) / priv.exp_eps
    if branch is Branch.DP1_TIGHT:
        return BoundaryPoint(t, r, s, branch)
    return BoundaryPoint(t, s, r, branch)


def agreement_term(x, y):
    """``2xy - x - y + 1`` (equivalently ``xy + (1-x)(1-y)``).

    Non-negative on the unit square, vanishing only at (0, 1) and (1, 0).
    Works elementwise on arrays.
    """
    return 2.0 * x * y - x - y + 1.0
