"""Welfare-maximizing control paths and time-variant Negishi weights."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import ConvergenceError
from ..optimizer import OptimizerConfig, OptResult, maximize_bounded
from .model import NegishiWeighted, Prepared, RegionalSWF, Trajectory, Utilitarian, evaluate_swf
from .scenario import IamScenario, PolicyMode, PolicyPath, rates_from_price

DEFAULT_IAM_CONFIG = OptimizerConfig(max_evals=60_000, xtol=1e-7, ftol=1e-12, restarts=1)


@dataclass
class PolicyOutcome:
    policy: PolicyPath
    trajectory: Trajectory
    result: OptResult
    weights: np.ndarray | None = None
    negishi_trace: list = field(default_factory=list)


def price_ceiling(scenario: IamScenario) -> np.ndarray:
    """Per-period price at which every region reaches full abatement."""
    return scenario.stack("backstop").max(axis=0)


def _decode(scenario, mode, z, ceiling):
    if mode is PolicyMode.UNIFORM:
        return PolicyPath(mode, z * ceiling)
    return PolicyPath(mode, z.reshape(scenario.n_regions, scenario.n_periods))


def _encode(scenario, mode, policy: PolicyPath | None, ceiling):
    if policy is None:
        size = scenario.n_periods if mode is PolicyMode.UNIFORM else scenario.n_regions * scenario.n_periods
        return np.zeros(size)
    if mode is PolicyMode.UNIFORM:
        if policy.mode is not PolicyMode.UNIFORM:
            raise ValueError("a uniform run needs a uniform warm start")
        return np.clip(policy.values / ceiling, 0.0, 1.0)
    return policy.control_rates(scenario).ravel()


def optimize_policy(
    scenario: IamScenario,
    swf,
    mode=PolicyMode.UNIFORM,
    cfg: OptimizerConfig | None = None,
    x0: PolicyPath | None = None,
    tol: float = 1e-6,
) -> PolicyOutcome:
    """Maximize an SWF over control paths.

    Uniform mode searches one price per period (as a fraction of the price
    that triggers full abatement everywhere); differentiated mode searches
    every region's control rate. A :class:`NegishiWeighted` SWF without
    weights is solved jointly with its weights by :func:`negishi_fixed_point`.
    """
    mode = PolicyMode(mode)
    cfg = cfg or DEFAULT_IAM_CONFIG
    if isinstance(swf, NegishiWeighted) and swf.weights is None:
        return negishi_fixed_point(scenario, mode, cfg, tol=tol, x0=x0)
    if not isinstance(swf, (Utilitarian, NegishiWeighted, RegionalSWF)):
        raise TypeError(f"unknown SWF {swf!r}")

    prep = Prepared(scenario)
    ceiling = price_ceiling(scenario)

    if mode is PolicyMode.UNIFORM:
        b, theta = prep.b, prep.theta

        def rates(z):
            return np.clip((z * ceiling)[None, :] / b, 0.0, 1.0) ** (1.0 / (theta - 1.0))
    else:
        shape = (scenario.n_regions, scenario.n_periods)

        def rates(z):
            return z.reshape(shape)

    def objective(z):
        return evaluate_swf(prep.run(rates(z)), swf)

    z0 = _encode(scenario, mode, x0, ceiling)
    res = maximize_bounded(objective, np.zeros_like(z0), np.ones_like(z0), cfg, x0=z0)
    policy = _decode(scenario, mode, res.x, ceiling)
    traj = prep.run(policy.control_rates(scenario))
    return PolicyOutcome(policy, traj, res, weights=getattr(swf, "weights", None))


def negishi_weights(traj: Trajectory) -> np.ndarray:
    """Weights ``v_t / u'(x_it)`` implied by a trajectory.

    ``v_t`` is the output-share weighted average of the regional
    wealth-based discount factors ``u'(x_it) / u'(x_i0)``, so that weighted
    marginal utilities are equal across regions within each period and equal
    to one in the first period.
    """
    x = np.maximum(traj.per_capita, traj.floor)
    mu = traj.utility.marginal(x)
    share = traj.Ygross / traj.Ygross.sum(axis=0, keepdims=True)
    v = (share * mu / mu[:, :1]).sum(axis=0)
    return v[None, :] / mu


def negishi_fixed_point(
    scenario: IamScenario,
    mode=PolicyMode.UNIFORM,
    cfg: OptimizerConfig | None = None,
    tol: float = 1e-6,
    max_outer: int = 50,
    x0: PolicyPath | None = None,
) -> PolicyOutcome:
    """Alternate Negishi-weighted optimization and weight updates until the weights settle.

    Starts from the weights of the no-policy path. Each round warm-starts
    the optimizer from the previous policy. Stops when the largest relative
    weight change is at most ``tol``.
    """
    mode = PolicyMode(mode)
    cfg = cfg or DEFAULT_IAM_CONFIG
    start = x0 if x0 is not None else PolicyPath.zero(scenario, mode)
    prep = Prepared(scenario)
    weights = negishi_weights(prep.run(start.control_rates(scenario)))
    policy = x0
    trace = []
    for k in range(max_outer):
        out = optimize_policy(
            scenario, NegishiWeighted(weights), mode, replace(cfg, seed=cfg.seed + k), x0=policy
        )
        new = negishi_weights(out.trajectory)
        change = float(np.max(np.abs(new - weights) / np.abs(weights)))
        trace.append(change)
        weights, policy = new, out.policy
        if change <= tol:
            out.weights = weights
            out.negishi_trace = trace
            return out
    raise ConvergenceError(f"Negishi weights did not settle within {max_outer} rounds", trace)


def preferred_uniform_prices(
    scenario: IamScenario, cfg: OptimizerConfig | None = None, x0: PolicyPath | None = None
) -> dict[str, PolicyOutcome]:
    """Each region's welfare-maximizing uniform price path."""
    return {
        name: optimize_policy(scenario, RegionalSWF(i), PolicyMode.UNIFORM, cfg, x0=x0)
        for i, name in enumerate(scenario.names)
    }


def uniform_price_from_rates(scenario: IamScenario, mu: np.ndarray) -> np.ndarray:
    """Uniform price implied by control rates of a uniform run (taken from the least-clamped region)."""
    b = scenario.stack("backstop")
    theta = scenario.column("theta")
    prices = b * mu ** (theta - 1.0)
    return prices.min(axis=0)


__all__ = [
    "PolicyOutcome",
    "optimize_policy",
    "negishi_weights",
    "negishi_fixed_point",
    "preferred_uniform_prices",
    "price_ceiling",
    "rates_from_price",
]
