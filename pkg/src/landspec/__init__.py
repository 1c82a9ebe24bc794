"""Growth and land-price solver for a two-sector OLG economy.

Entrepreneurs borrow against capital and land under collateral limits;
the package solves the resulting balanced growth paths (open economy
with a fixed world rate, or a monetary economy with an endogenous
rate), simulates the transition and shock dynamics, and maps how the
growth effects of credit and monetary policy flip sign as land rents
grow.
"""

__version__ = "0.1.0"

from .core import (
    AssumptionReport,
    DerivedConstants,
    Mode,
    ScenarioFormatError,
    ScenarioParams,
    check_assumptions,
    derive_constants,
    load_scenario,
    positive_root,
    saving_rate,
)
from .errors import (
    AssumptionViolated,
    DomainError,
    MissingParameter,
    ModelError,
    NoEquilibrium,
    RegionTooNarrow,
    RootNotBracketed,
    ShootingFailed,
)
from .open_economy import (
    GrowthDecomposition,
    OpenBgp,
    PathState,
    ShockPaths,
    decompose,
    epsilon_bar,
    growth_given_phi,
    phi_map,
    simulate,
    solve_bgp,
    temporary_shock,
)
from .monetary import (
    DeterminacyReport,
    LandlessBgp,
    MonetaryBgp,
    MonetaryDynState,
    MoneyPriceReport,
    ReturnOrdering,
    credit_gdp,
    determinacy_report,
    dynamics_step,
    money_price_coefficient,
    quadratic_coefficients,
    quadratic_residual,
    solve_bgp_monetary,
    solve_landless,
)
from .extensions import (
    BubbleReport,
    LaborSplit,
    StabilityReport,
    UnbalancedPath,
    UnbalancedState,
    bubble_detect_unbalanced,
    fundamental_value,
    real_estate_labor,
    stability_matrix,
    unbalanced_jacobian_numerical,
    unbalanced_path,
)
from .comparative import (
    DerivativeDetail,
    PropositionResult,
    SweepRecord,
    critical_epsilon,
    default_epsilon_grid,
    derivative,
    derivative_detail,
    feasible_epsilon_ceiling,
    proposition_suite,
    sign_map,
)

__all__ = [
    "__version__",
    "AssumptionReport",
    "AssumptionViolated",
    "BubbleReport",
    "DerivativeDetail",
    "DerivedConstants",
    "DeterminacyReport",
    "DomainError",
    "GrowthDecomposition",
    "LaborSplit",
    "LandlessBgp",
    "MissingParameter",
    "Mode",
    "ModelError",
    "MonetaryBgp",
    "MonetaryDynState",
    "MoneyPriceReport",
    "NoEquilibrium",
    "OpenBgp",
    "PathState",
    "PropositionResult",
    "RegionTooNarrow",
    "ReturnOrdering",
    "RootNotBracketed",
    "ScenarioFormatError",
    "ScenarioParams",
    "ShockPaths",
    "ShootingFailed",
    "StabilityReport",
    "SweepRecord",
    "UnbalancedPath",
    "UnbalancedState",
    "bubble_detect_unbalanced",
    "check_assumptions",
    "credit_gdp",
    "critical_epsilon",
    "decompose",
    "default_epsilon_grid",
    "derivative",
    "derivative_detail",
    "derive_constants",
    "determinacy_report",
    "dynamics_step",
    "epsilon_bar",
    "feasible_epsilon_ceiling",
    "fundamental_value",
    "growth_given_phi",
    "load_scenario",
    "money_price_coefficient",
    "phi_map",
    "positive_root",
    "proposition_suite",
    "quadratic_coefficients",
    "quadratic_residual",
    "real_estate_labor",
    "saving_rate",
    "sign_map",
    "simulate",
    "solve_bgp",
    "solve_bgp_monetary",
    "solve_landless",
    "stability_matrix",
    "temporary_shock",
    "unbalanced_jacobian_numerical",
    "unbalanced_path",
]
