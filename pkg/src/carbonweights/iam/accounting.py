"""Welfare accounting: consumption-equivalent welfare changes and pulse damages."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InfeasibleAllocationError, ShapeValidationError
from .model import Prepared, Trajectory
from .scenario import IamScenario, PolicyPath


@dataclass(frozen=True)
class WeccResult:
    """Initial-period consumption change matching a welfare difference.

    ``delta`` and ``x_cf`` are per region (scope ``"region"``) or length-1
    arrays (scope ``"global"``). ``out_of_range`` is -1/+1 where the target
    utility lies below/above the range of ``u``; the matching ``delta`` is
    then -inf/+inf.
    """

    scope: str
    delta: np.ndarray
    x_cf: np.ndarray
    x0: np.ndarray
    welfare_gap: np.ndarray
    out_of_range: np.ndarray


def _check_grid(a: Trajectory, b: Trajectory):
    if a.names != b.names or a.L.shape != b.L.shape or not np.array_equal(a.years, b.years):
        raise ShapeValidationError("trajectories are not on the same region/period grid")
    if not np.array_equal(a.L, b.L):
        raise ShapeValidationError("trajectories have different population paths")


def discounted_utility(traj: Trajectory, rho: float | None = None) -> np.ndarray:
    """Per-region ``sum_t L_it beta^t u(x_it)`` (no floor penalty)."""
    r = traj.rho if rho is None else rho
    beta = (1.0 + r) ** (-traj.step * np.arange(traj.L.shape[1]))
    x = np.maximum(traj.per_capita, traj.floor)
    return (traj.L * beta[None, :] * traj.utility.u(x)).sum(axis=1)


def welfare_equivalent_consumption_change(
    traj_a: Trajectory, traj_b: Trajectory, rho: float | None = None, scope: str = "region"
) -> WeccResult:
    """Change in initial-period consumption under ``traj_b`` worth the welfare gain of ``traj_a``.

    Per region the discounted utility gap is spread over the initial
    population and converted back to consumption through the inverse
    utility. The ``"global"`` scope applies the same conversion to the
    world-average initial consumer using the summed utility gap.
    """
    _check_grid(traj_a, traj_b)
    util = traj_b.utility
    gap = discounted_utility(traj_a, rho) - discounted_utility(traj_b, rho)
    L0 = traj_b.L[:, 0]
    xb0 = np.maximum(traj_b.per_capita[:, 0], traj_b.floor[:, 0])
    if scope == "region":
        x0, pop, dpv = xb0, L0, gap
    elif scope == "global":
        x0 = np.array([np.sum(L0 * xb0) / np.sum(L0)])
        pop = np.array([np.sum(L0)])
        dpv = np.array([np.sum(gap)])
    else:
        raise ValueError("scope must be 'region' or 'global'")

    target = util.u(x0) + dpv / pop
    side = np.atleast_1d(util.in_range(target))
    x_cf = np.where(dpv == 0, x0, np.atleast_1d(util.inverse(target)))
    x_cf = np.where(side != 0, np.nan, x_cf)
    delta = np.where(dpv == 0, 0.0, pop * (x_cf - x0))
    delta = np.where(side < 0, -np.inf, np.where(side > 0, np.inf, delta))
    return WeccResult(scope, delta, x_cf, x0, dpv, side)


def marginal_damage_pulse(
    scenario: IamScenario,
    policy: PolicyPath,
    pulse_period: int,
    pulse_size: float = 1.0,
    region: str | int | None = None,
) -> np.ndarray | float:
    """Present value at the pulse period of each region's damages from extra emissions.

    ``pulse_size`` GtCO2 is emitted over period ``pulse_period``. Each
    region's consumption losses are discounted with its own factor
    ``beta^(t - p) u'(x_it) / u'(x_ip)`` and divided by the pulse, giving
    USD per tCO2. With ``region`` set, only that region's value is returned.
    """
    T = scenario.n_periods
    if not 0 <= pulse_period < T:
        raise ValueError(f"pulse_period must lie in [0, {T})")
    if not pulse_size > 0:
        raise ValueError("pulse_size must be > 0")
    prep = Prepared(scenario)
    mu = policy.control_rates(scenario)
    base = prep.run(mu)
    extra = np.zeros(T)
    extra[pulse_period] = pulse_size / scenario.step
    hit = prep.run(mu, extra)
    for traj in (base, hit):
        low = np.argwhere(traj.per_capita < traj.floor)
        if low.size:
            i, t = low[0]
            raise InfeasibleAllocationError(
                scenario.names[i], traj.consumption[i, t], "pulse run falls below the consumption floor"
            )

    p = pulse_period
    lag = np.arange(T - p)
    beta = (1.0 + scenario.rho) ** (-scenario.step * lag)
    mu_b = scenario.utility.marginal(base.per_capita[:, p:])
    factor = beta[None, :] * mu_b / mu_b[:, :1]
    loss = base.consumption[:, p:] - hit.consumption[:, p:]
    pv = scenario.step * (factor * loss).sum(axis=1) / pulse_size
    if region is None:
        return pv
    idx = region if isinstance(region, int) else scenario.region_index(region)
    return float(pv[idx])
