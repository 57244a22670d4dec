"""Multi-region, multi-period climate-economy model."""

from .accounting import WeccResult, discounted_utility, marginal_damage_pulse, welfare_equivalent_consumption_change
from .model import (
    TRAJECTORY_COLUMNS,
    NegishiWeighted,
    Prepared,
    RegionalSWF,
    Trajectory,
    Utilitarian,
    evaluate_swf,
    simulate,
    write_trajectory_csv,
)
from .policy import (
    DEFAULT_IAM_CONFIG,
    PolicyOutcome,
    negishi_fixed_point,
    negishi_weights,
    optimize_policy,
    preferred_uniform_prices,
    price_ceiling,
)
from .scenario import (
    IamScenario,
    PolicyMode,
    PolicyPath,
    RegionPath,
    apply_overrides,
    bundled_scenario,
    bundled_scenario_path,
    load_scenario,
    rates_from_price,
    save_scenario,
    synthetic_calibration,
)
