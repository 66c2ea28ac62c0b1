"""Kneading calculus and isentrope geometry for skew tent maps."""

from .symbolic import (
    C,
    EQUAL,
    GREATER,
    GapSeq,
    KneadingSeq,
    L,
    LESS,
    R,
    RL_INFINITY,
    compare,
    compare_prefix,
    doubling_limit_prefix,
    format_seq,
    gap_decomposition,
    in_class_M,
    is_maximal,
    minus_variant,
    parse_seq,
    parse_word,
    shift,
    star_product,
)
from .tentmap import (
    LambdaMu,
    LapOverflowError,
    TentParams,
    branch,
    entropy_lap,
    extended_itinerary,
    from_lambda_mu,
    kneading_prefix,
    lap_counts,
    orbit,
    tent_eval,
    to_lambda_mu,
)
from .theta import (
    ConvergenceError,
    Quadratic2D,
    ThetaSpec,
    ThetaValue,
    diagonal_stationary_beta,
    m1_first_return,
    theta_eval,
    theta_grad,
    theta_hessian,
    theta_partial_sum,
)
from .algebraic import (
    BivarPoly,
    RationalExpr,
    compose_branch_condition,
    diagonal_critical_points,
    isolate_real_roots,
    slope_at_diagonal,
)
from .curves import (
    BracketError,
    IsentropePoint,
    KneadingClassField,
    RasterGrid,
    ScanRoot,
    ThetaSignField,
    ThetaValueField,
    counterexample_scan,
    exceptional_spec,
    kneading_bisect_beta,
    raster,
    thex_spec,
    trace_isentrope,
    write_csv,
    write_pgm,
)

__version__ = "0.1.0"
