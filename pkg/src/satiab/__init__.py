"""Link budgets, achievable rates, and max-min power/bandwidth allocation
for a LEO satellite jointly serving an access user and a backhaul station.
"""

from .linkbudget import (
    GroundNodeParams,
    SatelliteParams,
    antenna_pattern,
    bessel_j1,
    channel_gain,
    db_to_linear,
    dbm_to_watts,
    free_space_path_loss,
    linear_to_db,
    slant_distance,
    watts_to_dbm,
)
from .ratemodel import (
    Allocation,
    DuplexMode,
    InvalidAllocation,
    RateReport,
    ScenarioParams,
    access_rate,
    backhaul_rate,
    duplex_factors,
    evaluate,
    link_rates,
    validate,
)
from .allocator import (
    Infeasible,
    PsoConfig,
    PsoState,
    SolveResult,
    SolverKind,
    grid_oracle,
    min_power_for_rate,
    pso_solve,
    run_pso,
    solve_orthogonal,
)

__version__ = "0.1.0"

__all__ = [
    "GroundNodeParams",
    "SatelliteParams",
    "antenna_pattern",
    "bessel_j1",
    "channel_gain",
    "db_to_linear",
    "dbm_to_watts",
    "free_space_path_loss",
    "linear_to_db",
    "slant_distance",
    "watts_to_dbm",
    "Allocation",
    "DuplexMode",
    "InvalidAllocation",
    "RateReport",
    "ScenarioParams",
    "access_rate",
    "backhaul_rate",
    "duplex_factors",
    "evaluate",
    "link_rates",
    "validate",
    "Infeasible",
    "PsoConfig",
    "PsoState",
    "SolveResult",
    "SolverKind",
    "grid_oracle",
    "min_power_for_rate",
    "pso_solve",
    "run_pso",
    "solve_orthogonal",
]
