"""Numerical toolkit for limit theorems of unbounded oscillating observables
over full-branch expanding interval maps and the Boolean-type transformation,
with Riemann zeta sampling along vertical lines."""

__version__ = "0.1.0"

from .banach import (
    ConditionReport,
    GridFunction,
    SeminormEstimate,
    boole_condition,
    clt_condition,
    damp,
    edgeworth_condition,
    norm,
    osc,
    product_norm_check,
    seminorm,
)
from .maps import (
    BitTapeState,
    BooleanMap,
    PartitionedMap,
    apply_map,
    boolean_apply,
    conjugacy_xi,
    conjugacy_xi_inv,
    make_doubling,
    make_piecewise_linear,
    orbit,
    periodic_points,
)
from .stats import (
    BirkhoffSampleSet,
    BumpV,
    EdgeworthModel,
    MomentEstimates,
    MomentParams,
    clt_test,
    coboundary_heuristic,
    edgeworth_eval,
    edgeworth_test,
    estimate_moments,
    mlclt_test,
    sample_birkhoff,
)
from .transfer import (
    SpectralData,
    TwistedOperatorMatrix,
    char_fn_check,
    dfly_check,
    duality_check,
    eigenvalue_curve,
    invariant_density,
    leading_eigen,
    lp_bound_check,
    ulam_matrix,
)
from .zeta import (
    Observable,
    ZetaEvaluator,
    envelope_exponents,
    interval_envelope,
    observe,
    rs_theta,
)
