"""Numerical toolkit for semi-discrete smoothness analysis of pointwise operators."""

from .core import (
    DEFAULT_QUAD,
    Domain,
    MajorantResult,
    PointwiseFunction,
    QuadratureConfig,
    constant_function,
    from_callable,
    lp_norm,
    omega_p_majorant_check,
)
from .corpus import builtin, corpus_names, detect_rational
from .discrete import (
    NodeSet,
    SemiDiscreteModulus,
    admissible_partition,
    default_candidate_deltas,
    discrete_seminorm,
    equispaced_interval_nodes,
    interval_nodes,
    k_functional_estimate,
    semi_discrete_modulus,
    uniform_line_nodes,
)
from .errors import (
    CapabilityError,
    ConfigError,
    DomainError,
    InternalError,
    SmoothnessLabError,
)
from .checks import (
    InequalityReport,
    check_lower_estimate,
    check_upper_estimate,
    dyadic_sum_bound,
    frozen_constant,
    realization_check,
    series_bound_check,
)
from .operators import (
    KernelSpec,
    OperatorFamily,
    bernstein_apply,
    bernstein_derivative,
    bernstein_family,
    bspline_kernel,
    generalized_family,
    generalized_sampling_apply,
    kernel_by_name,
    m0_moment,
    moment_condition_order,
    operator_error,
    partition_of_unity_defect,
    shannon_apply,
    shannon_family,
    strang_fix_defect,
)
from .rates import RateReport, fit_decay
from .reproduce import ExampleReport, reproduce_example
from .verify import CHECKS, run_checkers
from .smoothness import (
    ModulusRequest,
    finite_difference,
    local_modulus,
    modulus_of_smoothness,
    modulus_ratio,
    tau_modulus,
)
from .steklov import (
    SteklovSpec,
    irwin_hall_density,
    steklov_average,
    steklov_derivative,
    steklov_interval,
    steklov_line,
    steklov_oracle_nested,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
