"""Scenario and policy containers for the multi-region model, plus JSON I/O.

Units throughout: population in millions, output and consumption flows in
billions of USD per year, per-capita consumption in thousands of USD,
emissions in GtCO2 per year, backstop and carbon prices in USD per tCO2
(equivalently billions of USD per GtCO2), temperature in degrees C above
pre-industrial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from pathlib import Path

import numpy as np

from ..econ import UtilityParams
from ..errors import ShapeValidationError


@dataclass(frozen=True)
class RegionPath:
    name: str
    L: np.ndarray
    Ygross: np.ndarray
    sigma: np.ndarray
    backstop: np.ndarray
    theta: float = 2.8
    a1: float = 0.0
    a2: float = 0.0

    def __post_init__(self):
        for attr in ("L", "Ygross", "sigma", "backstop"):
            arr = np.asarray(getattr(self, attr), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
            if arr.ndim != 1:
                raise ShapeValidationError(f"region {self.name!r}: {attr} must be a 1-d path")
        if np.any(self.L <= 0) or np.any(self.Ygross <= 0):
            raise ValueError(f"region {self.name!r}: population and output must be > 0")
        if np.any(self.sigma < 0) or np.any(self.backstop <= 0):
            raise ValueError(f"region {self.name!r}: sigma must be >= 0 and backstop > 0")
        if not self.theta > 1:
            raise ValueError(f"region {self.name!r}: theta must be > 1")
        if self.a1 < 0 or self.a2 < 0:
            raise ValueError(f"region {self.name!r}: damage coefficients must be >= 0")


@dataclass(frozen=True)
class IamScenario:
    regions: tuple[RegionPath, ...]
    step: float = 10.0
    start_year: int = 2005
    climate_slope: float = 4.5e-4
    T0: float = 0.8
    rho: float = 0.015
    utility: UtilityParams = field(default_factory=lambda: UtilityParams(1.5))
    exogenous_emissions: np.ndarray | None = None
    name: str = "scenario"

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        if not self.regions:
            raise ValueError("a scenario needs at least one region")
        T = len(self.regions[0].L)
        for r in self.regions:
            for attr in ("L", "Ygross", "sigma", "backstop"):
                if len(getattr(r, attr)) != T:
                    raise ShapeValidationError(f"region {r.name!r}: {attr} has length != {T}")
        exo = np.zeros(T) if self.exogenous_emissions is None else np.asarray(self.exogenous_emissions, float)
        if exo.shape != (T,):
            raise ShapeValidationError(f"exogenous emissions must have length {T}")
        exo.setflags(write=False)
        object.__setattr__(self, "exogenous_emissions", exo)
        if self.climate_slope < 0 or self.step <= 0 or self.rho < 0:
            raise ValueError("need climate_slope >= 0, step > 0, rho >= 0")
        names = [r.name for r in self.regions]
        if len(set(names)) != len(names):
            raise ValueError("region names must be unique")

    @property
    def n_regions(self) -> int:
        return len(self.regions)

    @property
    def n_periods(self) -> int:
        return len(self.regions[0].L)

    @property
    def years(self) -> np.ndarray:
        return self.start_year + self.step * np.arange(self.n_periods)

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.regions]

    def stack(self, attr: str) -> np.ndarray:
        return np.vstack([getattr(r, attr) for r in self.regions])

    def column(self, attr: str) -> np.ndarray:
        return np.array([getattr(r, attr) for r in self.regions], dtype=float)[:, None]

    def region_index(self, name: str) -> int:
        lowered = [n.lower() for n in self.names]
        try:
            return lowered.index(name.lower())
        except ValueError:
            raise KeyError(f"unknown region {name!r}; known: {', '.join(self.names)}") from None

    def discount(self, rho: float | None = None) -> np.ndarray:
        r = self.rho if rho is None else rho
        return (1.0 + r) ** (-self.step * np.arange(self.n_periods))


class PolicyMode(str, Enum):
    DIFFERENTIATED = "differentiated"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class PolicyPath:
    """Control decision.

    ``DIFFERENTIATED``: ``values`` are control rates, shape ``(N, T)``.
    ``UNIFORM``: ``values`` are carbon prices in USD/tCO2, shape ``(T,)``;
    each region's control rate follows from its marginal abatement cost.
    """

    mode: PolicyMode
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "mode", PolicyMode(self.mode))

    @classmethod
    def zero(cls, scenario: IamScenario, mode=PolicyMode.DIFFERENTIATED):
        mode = PolicyMode(mode)
        if mode is PolicyMode.UNIFORM:
            return cls(mode, np.zeros(scenario.n_periods))
        return cls(mode, np.zeros((scenario.n_regions, scenario.n_periods)))

    def control_rates(self, scenario: IamScenario) -> np.ndarray:
        N, T = scenario.n_regions, scenario.n_periods
        if self.mode is PolicyMode.DIFFERENTIATED:
            if self.values.shape != (N, T):
                raise ShapeValidationError(f"control rates must have shape {(N, T)}, got {self.values.shape}")
            if np.any(self.values < 0) or np.any(self.values > 1):
                raise ValueError("control rates must lie in [0, 1]")
            return np.array(self.values)
        if self.values.shape != (T,):
            raise ShapeValidationError(f"uniform prices must have shape {(T,)}, got {self.values.shape}")
        if np.any(self.values < 0):
            raise ValueError("carbon prices must be >= 0")
        return rates_from_price(scenario, self.values)


def rates_from_price(scenario: IamScenario, price: np.ndarray) -> np.ndarray:
    """Control rates equating each region's marginal abatement cost to ``price``."""
    b = scenario.stack("backstop")
    theta = scenario.column("theta")
    return np.clip((np.asarray(price)[None, :] / b) ** (1.0 / (theta - 1.0)), 0.0, 1.0)


# ---------------------------------------------------------------------------
# JSON I/O


def scenario_to_dict(s: IamScenario) -> dict:
    return {
        "name": s.name,
        "start_year": s.start_year,
        "step": s.step,
        "rho": s.rho,
        "eta": s.utility.eta,
        "climate_slope": s.climate_slope,
        "T0": s.T0,
        "exogenous_emissions": [float(v) for v in s.exogenous_emissions],
        "regions": [
            {
                "name": r.name,
                "theta": r.theta,
                "a1": r.a1,
                "a2": r.a2,
                "L": [float(v) for v in r.L],
                "Ygross": [float(v) for v in r.Ygross],
                "sigma": [float(v) for v in r.sigma],
                "backstop": [float(v) for v in r.backstop],
            }
            for r in s.regions
        ],
    }


REGION_SCALARS = ("theta", "a1", "a2")
TOP_SCALARS = ("rho", "eta", "climate_slope", "T0", "step")


def scenario_from_dict(d: dict) -> IamScenario:
    unknown = set(d) - {"name", "start_year", "exogenous_emissions", "regions", *TOP_SCALARS}
    if unknown:
        raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
    regions = []
    for rd in d["regions"]:
        extra = set(rd) - {"name", "L", "Ygross", "sigma", "backstop", *REGION_SCALARS}
        if extra:
            raise ValueError(f"unknown region keys for {rd.get('name')!r}: {sorted(extra)}")
        regions.append(
            RegionPath(
                name=rd["name"],
                L=rd["L"],
                Ygross=rd["Ygross"],
                sigma=rd["sigma"],
                backstop=rd["backstop"],
                theta=float(rd.get("theta", 2.8)),
                a1=float(rd.get("a1", 0.0)),
                a2=float(rd.get("a2", 0.0)),
            )
        )
    return IamScenario(
        regions=tuple(regions),
        step=float(d.get("step", 10.0)),
        start_year=int(d.get("start_year", 2005)),
        climate_slope=float(d.get("climate_slope", 4.5e-4)),
        T0=float(d.get("T0", 0.8)),
        rho=float(d.get("rho", 0.015)),
        utility=UtilityParams(float(d.get("eta", 1.5))),
        exogenous_emissions=d.get("exogenous_emissions"),
        name=d.get("name", "scenario"),
    )


def load_scenario(path) -> IamScenario:
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))


def save_scenario(scenario: IamScenario, path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=1) + "\n")


def bundled_scenario_path() -> Path:
    return Path(str(resources.files("carbonweights") / "data" / "four_region.json"))


def bundled_scenario() -> IamScenario:
    return load_scenario(bundled_scenario_path())


def apply_overrides(scenario: IamScenario, overrides: dict[str, float]) -> IamScenario:
    """Override scalar settings with dotted keys.

    ``rho``, ``eta``, ``climate_slope``, ``T0`` and ``step`` act on the
    scenario; ``region.<name>.<field>`` with field ``theta``, ``a1`` or ``a2``
    acts on one region.
    """
    d = scenario_to_dict(scenario)
    for key, value in overrides.items():
        parts = key.split(".")
        if len(parts) == 1 and parts[0] in TOP_SCALARS:
            d[parts[0]] = float(value)
        elif len(parts) == 3 and parts[0] == "region" and parts[2] in REGION_SCALARS:
            idx = scenario.region_index(parts[1])
            d["regions"][idx][parts[2]] = float(value)
        else:
            raise KeyError(f"unknown override key {key!r}")
    return scenario_from_dict(d)


# ---------------------------------------------------------------------------
# Synthetic calibration


def _approach(start, end, rate, years):
    return end + (start - end) * np.exp(-rate * years)


def synthetic_calibration(periods: int = 20, step: float = 10.0) -> IamScenario:
    """Four stylized regions from rich to poor.

    The poorest region has the largest damage coefficients, the fastest
    population growth and the fastest per-capita catch-up growth; the
    richest has the lowest damages and slowest growth.
    """
    years = step * np.arange(periods)
    specs = [
        # name, L0, Lmax, L rate, y0, g0, g_inf, g decay, sigma0, a1, a2
        ("north", 1000.0, 1100.0, 0.02, 35.0, 0.015, 0.008, 0.01, 3.0e-4, 0.0, 0.0015),
        ("china", 1350.0, 1400.0, 0.04, 5.0, 0.060, 0.010, 0.03, 1.0e-3, 0.0, 0.0020),
        ("india", 1200.0, 1800.0, 0.025, 2.5, 0.045, 0.011, 0.02, 8.0e-4, 0.002, 0.0030),
        ("africa", 900.0, 3500.0, 0.015, 1.5, 0.040, 0.012, 0.015, 6.0e-4, 0.005, 0.0040),
    ]
    regions = []
    for name, L0, Lmax, lr, y0, g0, ginf, gd, s0, a1, a2 in specs:
        L = _approach(L0, Lmax, lr, years)
        # per-capita growth decays from g0 towards ginf; integrate annual rates
        annual = np.arange(int(years[-1]) + 1)
        g = ginf + (g0 - ginf) * np.exp(-gd * annual)
        y_annual = y0 * np.concatenate([[1.0], np.cumprod(1.0 + g[:-1])])
        y = y_annual[years.astype(int)]
        sigma = s0 * (1.0 - 0.013) ** years
        backstop = 150.0 + 400.0 * np.exp(-0.015 * years)
        regions.append(RegionPath(name, L, L * y, sigma, backstop, 2.8, a1, a2))
    exo = np.maximum(3.0 * (1.0 - years / 100.0), 0.0)
    return IamScenario(
        regions=tuple(regions),
        step=step,
        start_year=2005,
        climate_slope=4.5e-4,
        T0=0.8,
        rho=0.015,
        utility=UtilityParams(1.5),
        exogenous_emissions=exo,
        name="four-region synthetic",
    )
