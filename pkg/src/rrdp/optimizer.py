"""Variance-optimal private mechanisms, a brute-force oracle, and threshold sweeps.

For 0 < delta < 1 the optimum is always one of two points on the boundary of
the feasible region: the symmetric corner ``((e^eps + delta)/(e^eps + 1), same)``
or the edge point ``(1, delta)`` (``(delta, 1)`` when pi > 1/2).  Which one wins
is decided by comparing :func:`g_threshold` with ``min(pi, 1 - pi)``.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from typing import Iterator, Optional, Sequence

import numpy as np

from rrdp.errors import (
    EmptyFeasibleRegion,
    RRDPError,
    SingularThreshold,
    ZeroEpsilonStrict,
)
from rrdp.estimator import estimator_variance, warner_variance
from rrdp.mechanism import (
    DEGENERACY_TOL,
    Branch,
    DesignMatrix,
    PrivacyParams,
    boundary_point,
    in_region_r_prime,
    t_zero,
)

#: |g - min(pi, 1 - pi)| at or below this counts as an exact tie.
TIE_TOL = 1e-9


class ProportionOutOfRange(RRDPError):
    """pi is 0 or 1, where the optimum is not unique."""


class Regime(enum.Enum):
    STRICT_DP = "StrictDP"
    CORNER_INTERIOR = "CornerInterior"
    CORNER_BOUNDARY = "CornerBoundary"
    TIE = "Tie"
    WARNER_DIAGONAL = "WarnerDiagonal"


@dataclasses.dataclass(frozen=True)
class OptimalResult:
    """Optimal mechanism(s) for a privacy budget and population proportion.

    ``mechanisms`` holds more than one entry only when several mechanisms
    attain the same minimal variance.
    """

    mechanisms: tuple[DesignMatrix, ...]
    regime: Regime
    g_value: Optional[float]
    variance_at_pi: float
    privacy: PrivacyParams
    pi: float
    n: int

    @property
    def mechanism(self) -> DesignMatrix:
        return self.mechanisms[0]


def optimal_strict(epsilon: float) -> DesignMatrix:
    """Best pure epsilon-DP mechanism: ``p00 = p11 = e^eps / (e^eps + 1)``."""
    if not epsilon > 0:
        raise ZeroEpsilonStrict(
            "epsilon must be > 0 when delta = 0: at epsilon = 0 every private "
            "mechanism has p00 + p11 = 1 and unbounded estimator error"
        )
    # 1 / (1 + e^-eps) stays accurate for large epsilon.
    p = 1.0 / (1.0 + math.exp(-epsilon))
    return DesignMatrix(p, p)


def g_threshold(priv: PrivacyParams) -> float:
    """``delta (e^eps + delta) / (e^eps + 2 delta - 1)^2``."""
    denom = priv.exp_eps + 2.0 * priv.delta - 1.0
    if denom == 0.0:
        raise SingularThreshold(f"e^eps + 2*delta - 1 = 0 at {priv}")
    return priv.delta * (priv.exp_eps + priv.delta) / (denom * denom)


def _check_pi(pi: float) -> None:
    if not (0.0 < pi < 1.0):
        raise ProportionOutOfRange(
            f"pi must lie strictly inside (0, 1), got {pi!r}; the optimum is not unique at the ends"
        )


def optimal_relaxed(priv: PrivacyParams, pi: float, n: int = 1) -> OptimalResult:
    """Variance-minimizing (epsilon, delta)-DP mechanism(s) for proportion ``pi``.

    With ``delta = 0`` this reduces to :func:`optimal_strict`.  At ``pi = 1/2``
    the edge point and its transpose are equally good, so both are returned
    whenever the edge regime applies.
    """
    _check_pi(pi)
    if priv.delta == 0.0:
        if priv.epsilon == 0.0:
            raise ZeroEpsilonStrict(
                "epsilon = delta = 0 leaves only mechanisms with unbounded estimator error"
            )
        P = optimal_strict(priv.epsilon)
        return OptimalResult(
            (P,), Regime.STRICT_DP, None, estimator_variance(P, pi, n), priv, pi, n
        )

    g = g_threshold(priv)
    c = priv.corner_value
    corner = DesignMatrix(c, c)
    if priv.delta == 1.0:
        # Both candidates collapse to direct questioning.
        return OptimalResult(
            (corner,), Regime.CORNER_INTERIOR, g, estimator_variance(corner, pi, n), priv, pi, n
        )

    if pi < 0.5:
        edges: tuple[DesignMatrix, ...] = (DesignMatrix(1.0, priv.delta),)
    elif pi > 0.5:
        edges = (DesignMatrix(priv.delta, 1.0),)
    else:
        edges = (DesignMatrix(1.0, priv.delta), DesignMatrix(priv.delta, 1.0))

    m = min(pi, 1.0 - pi)
    if abs(g - m) <= TIE_TOL:
        mechanisms, regime = (corner, *edges), Regime.TIE
    elif g > m:
        mechanisms, regime = edges, Regime.CORNER_BOUNDARY
    else:
        mechanisms, regime = (corner,), Regime.CORNER_INTERIOR
    return OptimalResult(
        mechanisms, regime, g, estimator_variance(mechanisms[0], pi, n), priv, pi, n
    )


def optimal_warner(priv: PrivacyParams) -> float:
    """Best symmetric mechanism parameter ``pw``; the upper end of its feasible interval."""
    if priv.epsilon == 0.0 and priv.delta == 0.0:
        raise ZeroEpsilonStrict(
            "epsilon = delta = 0 leaves no symmetric mechanism with pw > 1/2"
        )
    return priv.corner_value


def warner_result(priv: PrivacyParams, pi: float, n: int = 1) -> OptimalResult:
    """:func:`optimal_warner` packaged as an :class:`OptimalResult`."""
    if not (0.0 <= pi <= 1.0):
        raise ValueError(f"pi must lie in [0, 1], got {pi!r}")
    pw = optimal_warner(priv)
    return OptimalResult(
        (DesignMatrix.warner(pw),),
        Regime.WARNER_DIAGONAL,
        None,
        warner_variance(pw, pi, n),
        priv,
        pi,
        n,
    )


def brute_force_optimal(
    priv: PrivacyParams, pi: float, n: int = 1, grid: int = 2000
) -> tuple[DesignMatrix, float]:
    """Minimize the estimator variance by exhaustive search.

    Scans a ``grid x grid`` lattice over [1/2, 1]^2, keeping only points that
    satisfy the privacy constraints exactly, plus the two endpoints of each
    boundary segment.  Ties go to the lexicographically smallest ``(p00, p11)``.
    """
    if grid < 100:
        raise ValueError(f"grid must be at least 100, got {grid}")
    if not (0.0 <= pi <= 1.0):
        raise ValueError(f"pi must lie in [0, 1], got {pi!r}")
    e, d = priv.exp_eps, priv.delta
    axis = np.linspace(0.5, 1.0, grid)
    q = axis[None, :]

    best_var = math.inf
    best: Optional[tuple[float, float]] = None

    def consider(p00: float, p11: float, var: float) -> None:
        nonlocal best_var, best
        if var < best_var or (var == best_var and (p00, p11) < best):
            best_var, best = var, (p00, p11)

    # One lattice row (fixed p00) at a time keeps memory at O(grid).
    for p00 in axis:
        p11 = q[0]
        c = p00 + p11 - 1.0
        ok = (
            (c > DEGENERACY_TOL)
            & (p11 <= e * (1.0 - p00) + d)
            & (p00 <= e * (1.0 - p11) + d)
        )
        if not ok.any():
            continue
        cs = c[ok]
        centred = p00 - 0.5 - pi * cs
        var = (0.25 - centred * centred) / (cs * cs * n)
        k = int(np.argmin(var))  # first occurrence = smallest p11
        consider(float(p00), float(p11[ok][k]), float(var[k]))

    for t in (t_zero(priv), 1.0):
        for branch in Branch:
            point = boundary_point(min(t, 1.0), priv, branch)
            if not in_region_r_prime(point, priv):
                continue
            P = point.as_design_matrix()
            consider(P.p00, P.p11, estimator_variance(P, pi, n))

    if best is None:
        raise EmptyFeasibleRegion(f"no feasible mechanism with p00 + p11 > 1 at {priv}")
    return DesignMatrix(*best), best_var


@dataclasses.dataclass(frozen=True)
class ContourSweep:
    """``g_threshold`` evaluated on an (epsilon, delta) lattice.

    ``g[i, j]`` belongs to ``(epsilons[i], deltas[j])``; singular cells are NaN.
    ``level_curves`` maps each requested level to, for every epsilon, the
    smallest delta at which g reaches that level (NaN if it never does).
    """

    epsilons: np.ndarray
    deltas: np.ndarray
    g: np.ndarray
    level_curves: dict

    def rows(self) -> Iterator[tuple[float, float, float]]:
        """Yield ``(epsilon, delta, g)`` with epsilon as the outer loop."""
        for i, eps in enumerate(self.epsilons):
            for j, delta in enumerate(self.deltas):
                yield float(eps), float(delta), float(self.g[i, j])

    def __len__(self) -> int:
        return self.g.size


def _axis(lo: float, hi: float, resolution: int) -> np.ndarray:
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if hi == lo:
        return np.array([float(lo)])
    return np.linspace(lo, hi, resolution)


def _level_curve(deltas: np.ndarray, g_row: np.ndarray, level: float) -> float:
    above = np.nonzero(g_row >= level)[0]
    if above.size == 0:
        return math.nan
    j = int(above[0])
    if j == 0 or math.isnan(g_row[j - 1]):
        return float(deltas[j])
    g0, g1 = g_row[j - 1], g_row[j]
    w = (level - g0) / (g1 - g0)
    return float(deltas[j - 1] + w * (deltas[j] - deltas[j - 1]))


def contour_sweep(
    level_set_values: Sequence[float] = (),
    epsilon_range: tuple[float, float] = (0.01, 3.0),
    delta_range: tuple[float, float] = (0.0, 0.5),
    resolution: int = 200,
) -> ContourSweep:
    """Tabulate the regime threshold over a rectangle of privacy budgets.

    A degenerate range (``lo == hi``) yields a single lattice line.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be at least 2, got {resolution}")
    eps = _axis(*epsilon_range, resolution)
    deltas = _axis(*delta_range, resolution)
    if eps[0] < 0 or deltas[0] < 0 or deltas[-1] > 1:
        raise ValueError("epsilon must be >= 0 and delta must lie in [0, 1]")
    E = np.exp(eps)[:, None]
    D = deltas[None, :]
    denom = E + 2.0 * D - 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(denom == 0.0, np.nan, D * (E + D) / (denom * denom))
    curves = {
        float(level): np.array([_level_curve(deltas, row, level) for row in g])
        for level in level_set_values
    }
    return ContourSweep(eps, deltas, g, curves)
