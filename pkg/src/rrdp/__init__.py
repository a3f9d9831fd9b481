"""Optimal differentially private randomized response.

Design, verify and evaluate binary randomized-response mechanisms under
(epsilon, delta)-differential privacy.
"""

from rrdp.errors import (
    DegenerateMechanism,
    EmptyFeasibleRegion,
    RRDPError,
    SingularThreshold,
    ZeroEpsilonStrict,
)
from rrdp.estimator import (
    EstimateReport,
    MarginMethod,
    SurveyOutcome,
    build_report,
    estimator_variance,
    margin_of_error,
    mle_estimate,
    warner_variance,
)
from rrdp.mechanism import (
    BoundaryPoint,
    Branch,
    DesignMatrix,
    PrivacyParams,
    ResponseDistribution,
    agreement_term,
    boundary_point,
    constraint_slacks,
    in_region_r_prime,
    normalize_orientation,
    on_boundary,
    randomize,
    response_pmf,
    satisfies_dp,
    t_zero,
)
from rrdp.optimizer import (
    ContourSweep,
    OptimalResult,
    ProportionOutOfRange,
    Regime,
    brute_force_optimal,
    contour_sweep,
    g_threshold,
    optimal_relaxed,
    optimal_strict,
    optimal_warner,
    warner_result,
)
from rrdp.simulation import (
    MonteCarloReport,
    SimulationConfig,
    compare_mechanisms,
    monte_carlo,
    simulate_counts,
    simulate_survey,
)

__version__ = "0.1.0"
