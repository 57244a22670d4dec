"""Forward simulation and social welfare functions."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ..econ import UtilityParams
from ..errors import ShapeValidationError, UtilityDomainError
from .scenario import IamScenario, PolicyPath

FLOOR_FRACTION = 1e-9
FLOOR_PENALTY = 1e6


@dataclass(frozen=True)
class Trajectory:
    """Simulated paths. Regional arrays have shape ``(N, T)``."""

    names: tuple[str, ...]
    years: np.ndarray
    step: float
    rho: float
    utility: UtilityParams
    L: np.ndarray
    Ygross: np.ndarray
    mu: np.ndarray
    emissions: np.ndarray
    abatement_cost: np.ndarray
    damage_fraction: np.ndarray
    damage: np.ndarray
    consumption: np.ndarray
    price: np.ndarray
    cumulative_emissions: np.ndarray
    temperature: np.ndarray
    floor: np.ndarray

    @property
    def per_capita(self) -> np.ndarray:
        return self.consumption / self.L

    @property
    def floor_violated(self) -> bool:
        return bool(np.any(self.per_capita < self.floor))

    def with_consumption(self, consumption: np.ndarray) -> "Trajectory":
        from dataclasses import replace

        return replace(self, consumption=np.asarray(consumption, dtype=float))


class Prepared:
    """Scenario arrays stacked once, for repeated simulation inside optimizers."""

    def __init__(self, scenario: IamScenario):
        self.scenario = scenario
        self.Y = scenario.stack("Ygross")
        self.sigma = scenario.stack("sigma")
        self.b = scenario.stack("backstop")
        self.theta = scenario.column("theta")
        self.L = scenario.stack("L")
        self.a1 = scenario.column("a1")
        self.a2 = scenario.column("a2")
        self.unit_cost = self.b * self.sigma / self.theta
        self.baseline = self.sigma * self.Y

    def run(self, mu: np.ndarray, extra_emissions=None) -> Trajectory:
        sc = self.scenario
        cost = self.Y * self.unit_cost * mu**self.theta
        emissions = self.baseline * (1.0 - mu)
        exo = sc.exogenous_emissions
        if extra_emissions is not None:
            extra = np.asarray(extra_emissions, dtype=float)
            if extra.shape != exo.shape:
                raise ShapeValidationError(f"extra emissions must have shape {exo.shape}")
            exo = exo + extra
        cum = np.cumsum(sc.step * (emissions.sum(axis=0) + exo))
        T = sc.T0 + sc.climate_slope * cum
        frac = np.minimum(self.a1 * T[None, :] + self.a2 * T[None, :] ** 2, 1.0 - 1e-12)
        return Trajectory(
            names=tuple(sc.names),
            years=sc.years,
            step=sc.step,
            rho=sc.rho,
            utility=sc.utility,
            L=self.L,
            Ygross=self.Y,
            mu=mu,
            emissions=emissions,
            abatement_cost=cost,
            damage_fraction=frac,
            damage=self.Y * frac,
            consumption=self.Y * (1.0 - frac) - cost,
            price=self.b * mu ** (self.theta - 1.0),
            cumulative_emissions=cum,
            temperature=T,
            floor=FLOOR_FRACTION * self.Y / self.L,
        )


def simulate(scenario: IamScenario, policy: PolicyPath, extra_emissions=None) -> Trajectory:
    """Run emissions, temperature, damages and consumption forward.

    Temperature in period ``t`` responds linearly to cumulative emissions up
    to and including that period. ``extra_emissions`` (GtCO2/yr per period)
    is added to the exogenous path.
    """
    return Prepared(scenario).run(policy.control_rates(scenario), extra_emissions)


# ---------------------------------------------------------------------------
# Social welfare functions


@dataclass(frozen=True)
class Utilitarian:
    pass


@dataclass(frozen=True)
class NegishiWeighted:
    """Weighted SWF; ``weights=None`` asks the optimizer to iterate them to consistency."""

    weights: np.ndarray | None = None


@dataclass(frozen=True)
class RegionalSWF:
    """One region's own discounted utility."""

    region: int


def utility_terms(traj: Trajectory, rho: float | None = None, strict: bool = False):
    """Discounted per-region-period terms ``L beta^t u(x)`` and the floor penalty.

    Per-capita consumption below the floor is evaluated at the floor and a
    quadratic penalty on the shortfall is returned separately. With
    ``strict=True`` any shortfall raises instead.
    """
    x = traj.per_capita
    short = traj.floor - x
    if strict and np.any(short > 0):
        raise UtilityDomainError("per-capita consumption below the floor")
    x_eff = np.maximum(x, traj.floor)
    r = traj.rho if rho is None else rho
    beta = (1.0 + r) ** (-traj.step * np.arange(x.shape[1]))
    terms = traj.L * beta[None, :] * traj.utility.u(x_eff)
    penalty = FLOOR_PENALTY * float(np.sum(np.where(short > 0, (short / traj.floor) ** 2, 0.0)))
    return terms, penalty


def evaluate_swf(traj: Trajectory, swf, rho: float | None = None) -> float:
    """Discounted welfare ``sum_i sum_t L_it beta^t alpha_it u(x_it)``."""
    terms, penalty = utility_terms(traj, rho)
    if isinstance(swf, Utilitarian):
        return float(terms.sum()) - penalty
    if isinstance(swf, NegishiWeighted):
        if swf.weights is None:
            raise ValueError("NegishiWeighted SWF needs weights for evaluation")
        w = np.asarray(swf.weights, dtype=float)
        if w.shape != terms.shape:
            raise ShapeValidationError(f"weights must have shape {terms.shape}")
        return float((w * terms).sum()) - penalty
    if isinstance(swf, RegionalSWF):
        return float(terms[swf.region].sum()) - penalty
    raise TypeError(f"unknown SWF {swf!r}")


# ---------------------------------------------------------------------------
# Export

TRAJECTORY_COLUMNS = [
    "region",
    "period",
    "year",
    "population_millions",
    "gross_output_busd_per_yr",
    "control_rate",
    "carbon_price_usd_per_tco2",
    "emissions_gtco2_per_yr",
    "abatement_cost_busd_per_yr",
    "damage_busd_per_yr",
    "consumption_busd_per_yr",
    "consumption_per_capita_kusd",
    "cumulative_emissions_gtco2",
    "temperature_c",
]


def trajectory_rows(traj: Trajectory):
    for i, name in enumerate(traj.names):
        for t, year in enumerate(traj.years):
            yield [
                name,
                t,
                int(year),
                traj.L[i, t],
                traj.Ygross[i, t],
                traj.mu[i, t],
                traj.price[i, t],
                traj.emissions[i, t],
                traj.abatement_cost[i, t],
                traj.damage[i, t],
                traj.consumption[i, t],
                traj.per_capita[i, t],
                traj.cumulative_emissions[t],
                traj.temperature[t],
            ]


def write_trajectory_csv(traj: Trajectory, path, extra_columns: dict | None = None) -> None:
    """One row per region-period; ``extra_columns`` maps name -> constant value prepended to each row."""
    extra = extra_columns or {}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([*extra.keys(), *TRAJECTORY_COLUMNS])
        for row in trajectory_rows(traj):
            writer.writerow([*extra.values(), *(_fmt(v) for v in row)])


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.10g}"
    return v
