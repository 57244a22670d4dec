"""Two-period model: abatement costs fall in period 1, damages in period 2.

Prices are uniform. The Negishi price discounts period-2 damages with the
wealth-based factor ``v`` evaluated at its own solution, so it is a joint
fixed point in ``(tau, v)``; the utilitarian price weights each region's
future damages by its own marginal utility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .econ import QuadraticCost, QuadraticDamage, UtilityParams
from .errors import (
    ConvergenceError,
    InfeasibleAllocationError,
    NoInteriorOptimumError,
    UtilityDomainError,
)
from .static import (
    DEFAULT_BAND,
    DEFAULT_TOL,
    COINCIDE,
    PriceSolution,
    Regime,
    biconditional,
    scan_roots,
)

V_DAMPING = 0.5
MAX_V_ITER = 200


@dataclass(frozen=True)
class RegionDynamic:
    """A region's period-1 population and endowment plus growth factors to period 2."""

    name: str
    L1: float
    w1: float
    gL: float
    gw: float
    cost1: QuadraticCost
    damage2: QuadraticDamage

    def __post_init__(self):
        if not (self.L1 > 0 and self.w1 > 0 and self.gL > 0 and self.gw > 0):
            raise ValueError(f"region {self.name!r}: L1, w1 and growth factors must be > 0")

    @property
    def L2(self) -> float:
        return self.L1 * self.gL

    @property
    def w2(self) -> float:
        return self.w1 * self.gw

    @property
    def W1(self) -> float:
        return self.L1 * self.w1

    @property
    def W2(self) -> float:
        return self.L2 * self.w2


@dataclass(frozen=True)
class EconomyDynamic:
    """Two regions over two periods ``years`` apart.

    ``pi`` is North's weight in the wealth-based discount factor; ``None``
    uses North's share of period-2 endowment.
    """

    north: RegionDynamic
    south: RegionDynamic
    utility: UtilityParams = field(default_factory=UtilityParams)
    rho: float = 0.015
    years: float = 50.0
    pi: float | None = None

    def __post_init__(self):
        if self.north.w1 < self.south.w1:
            raise ValueError("North must be at least as rich per capita in period 1")
        if not math.isclose(self.north.damage2.Ebar, self.south.damage2.Ebar, rel_tol=1e-12):
            raise ValueError("both regions must share the same baseline emissions Ebar")
        if self.rho < 0 or self.years < 0:
            raise ValueError("rho and years must be >= 0")
        if self.pi is not None and not 0 <= self.pi <= 1:
            raise ValueError("pi must lie in [0, 1]")

    @property
    def regions(self) -> tuple[RegionDynamic, RegionDynamic]:
        return (self.north, self.south)

    @property
    def Ebar(self) -> float:
        return self.north.damage2.Ebar

    @property
    def beta(self) -> float:
        return (1.0 + self.rho) ** (-self.years)

    @property
    def pi_north(self) -> float:
        if self.pi is not None:
            return self.pi
        return self.north.W2 / (self.north.W2 + self.south.W2)


@dataclass(frozen=True)
class _State:
    tau: float
    A_i: tuple[float, float]
    A: float
    x1: tuple[float, float]
    x2: tuple[float, float]
    mu1: tuple[float, float]
    mu2: tuple[float, float]
    dD2: tuple[float, float]


def _state(econ: EconomyDynamic, tau: float) -> _State:
    regions = econ.regions
    A_i = tuple(r.cost1.abatement_at(tau) for r in regions)
    A = A_i[0] + A_i[1]
    X1 = [r.W1 - r.cost1(a) for r, a in zip(regions, A_i)]
    X2 = [r.W2 - r.damage2(A) for r in regions]
    for r, a, b in zip(regions, X1, X2):
        if not (a > 0 and b > 0):
            raise InfeasibleAllocationError(r.name, min(a, b))
    x1 = (X1[0] / regions[0].L1, X1[1] / regions[1].L1)
    x2 = (X2[0] / regions[0].L2, X2[1] / regions[1].L2)
    u = econ.utility
    return _State(
        tau,
        A_i,
        A,
        x1,
        x2,
        (u.marginal(x1[0]), u.marginal(x1[1])),
        (u.marginal(x2[0]), u.marginal(x2[1])),
        tuple(r.damage2.marginal(A) for r in regions),
    )


def negishi_discount_factor(utility: UtilityParams, x1, x2, pi: float) -> float:
    """Weighted average of regional ratios ``u'(x_i2) / u'(x_i1)``.

    ``x1`` and ``x2`` are (North, South) per-capita consumption in the two
    periods; ``pi`` is North's weight.
    """
    mu1 = [utility.marginal(float(x)) for x in x1]
    mu2 = [utility.marginal(float(x)) for x in x2]
    if not all(math.isfinite(m) and m > 0 for m in mu1 + mu2):
        raise UtilityDomainError("marginal utilities must be finite and positive")
    return pi * mu2[0] / mu1[0] + (1.0 - pi) * mu2[1] / mu1[1]


def baseline_price(econ: EconomyDynamic) -> float:
    """Uniform price at which global abatement reaches baseline emissions."""
    top = max(r.cost1.marginal(econ.Ebar) for r in econ.regions)
    total = lambda t: sum(r.cost1.abatement_at(t) for r in econ.regions) - econ.Ebar
    return optimize.brentq(total, 0.0, top, xtol=1e-15, rtol=1e-15)


def _abatement(econ, tau):
    return sum(r.cost1.abatement_at(tau) for r in econ.regions)


def _negishi_price_given_v(econ: EconomyDynamic, v: float, hi: float) -> tuple[float, int]:
    scale = v * econ.beta

    def g(t):
        A = _abatement(econ, t)
        return t + scale * sum(r.damage2.marginal(A) for r in econ.regions)

    if g(0.0) >= 0:
        return 0.0, 0
    if g(hi) < 0:
        raise NoInteriorOptimumError("dynamic Negishi price would abate beyond baseline emissions")
    root, info = optimize.brentq(g, 0.0, hi, xtol=1e-15, rtol=1e-15, full_output=True)
    return root, info.iterations


def _solution(econ, regime, st, weights, iters, residual, extra) -> PriceSolution:
    return PriceSolution(
        regime=regime,
        tau_n=st.tau,
        tau_s=st.tau,
        a_n=st.A_i[0],
        a_s=st.A_i[1],
        x_n=st.x1[0],
        x_s=st.x1[1],
        weights=weights,
        iterations=iters,
        residual=residual,
        diagnostics={
            "richer_north": st.x1[0] > st.x1[1],
            "x2": st.x2,
            "marginal_utility_1": st.mu1,
            "marginal_utility_2": st.mu2,
            "marginal_damage_2": st.dD2,
            **extra,
        },
    )


def solve_dynamic_negishi(econ: EconomyDynamic, tol: float = DEFAULT_TOL, v: float | None = None) -> PriceSolution:
    """Dynamic Negishi price ``C'(A_i) = -v beta sum_i D_i2'(A)``.

    With ``v`` given the discount factor is held fixed; otherwise it is
    iterated to consistency with the allocation (damped outer loop on ``v``,
    Brent root in the price inside).
    """
    hi = baseline_price(econ)
    pi = econ.pi_north
    if v is not None:
        tau, iters = _negishi_price_given_v(econ, v, hi)
        st = _state(econ, tau)
        trace = []
    else:
        st0 = _state(econ, 0.0)
        v = negishi_discount_factor(econ.utility, st0.x1, st0.x2, pi)
        trace = []
        for iters in range(1, MAX_V_ITER + 1):
            tau, _ = _negishi_price_given_v(econ, v, hi)
            st = _state(econ, tau)
            v_new = negishi_discount_factor(econ.utility, st.x1, st.x2, pi)
            change = abs(v_new - v)
            trace.append(change)
            if change <= tol * max(1.0, abs(v)):
                v = v_new
                tau, _ = _negishi_price_given_v(econ, v, hi)
                st = _state(econ, tau)
                break
            v = (1.0 - V_DAMPING) * v + V_DAMPING * v_new
        else:
            raise ConvergenceError("dynamic Negishi discount factor did not converge", trace)
    residual = abs(tau + v * econ.beta * sum(st.dD2))
    weights = (1.0 / st.mu1[0], 1.0 / st.mu1[1])
    return _solution(econ, Regime.NEGISHI, st, weights, iters, residual, {"v": v, "v_trace": trace})


def _utilitarian_gap(econ, st):
    c_n, c_s = (r.cost1.curvature for r in econ.regions)
    benefit = -econ.beta * (st.mu2[0] * st.dD2[0] + st.mu2[1] * st.dD2[1]) * (c_s + c_n)
    denom = st.mu1[0] * c_s + st.mu1[1] * c_n
    return st.tau * denom - benefit, benefit / denom


def dynamic_welfare(econ: EconomyDynamic, st) -> float:
    u = econ.utility.u
    total = 0.0
    for r, a, b in zip(econ.regions, st.x1, st.x2):
        total += r.L1 * u(a) + econ.beta * r.L2 * u(b)
    return total


def solve_dynamic_utilitarian_uniform(econ: EconomyDynamic, tol: float = DEFAULT_TOL) -> PriceSolution:
    """Uniform price maximizing two-period utilitarian welfare."""
    hi = baseline_price(econ)
    st0 = _state(econ, 0.0)
    if _utilitarian_gap(econ, st0)[0] >= 0:
        return _solution(econ, Regime.UTILITARIAN_UNIFORM, st0, (1.0, 1.0), 0, 0.0, {"roots": 1})
    roots = scan_roots(
        lambda t: _utilitarian_gap(econ, _state(econ, t))[0], hi, tol, label="dynamic utilitarian"
    )
    tau, iters = max(roots, key=lambda r: dynamic_welfare(econ, _state(econ, r[0])))
    st = _state(econ, tau)
    residual = abs(tau - _utilitarian_gap(econ, st)[1])
    return _solution(
        econ,
        Regime.UTILITARIAN_UNIFORM,
        st,
        (1.0, 1.0),
        iters,
        residual,
        {"roots": len(roots), "multiple_roots": len(roots) > 1},
    )


@dataclass
class Proposition4Report:
    negishi: PriceSolution
    utilitarian: PriceSolution
    left: float
    right: float
    verdict: str


def check_proposition4(econ: EconomyDynamic, tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND) -> Proposition4Report:
    """Compare the utilitarian and Negishi prices with the damage/cost weighting test.

    Both sides are evaluated at the utilitarian solution: the left side is the
    damage-weighted average of period-2 marginal utilities, the right side the
    wealth-based discount factor times the curvature-weighted average of
    period-1 marginal utilities.
    """
    if not band > 0:
        raise ValueError("band must be > 0")
    neg = solve_dynamic_negishi(econ, tol)
    uni = solve_dynamic_utilitarian_uniform(econ, tol)
    mu1, mu2 = uni.diagnostics["marginal_utility_1"], uni.diagnostics["marginal_utility_2"]
    dD = uni.diagnostics["marginal_damage_2"]
    c_n, c_s = (r.cost1.curvature for r in econ.regions)
    v = negishi_discount_factor(econ.utility, (uni.x_n, uni.x_s), uni.diagnostics["x2"], econ.pi_north)
    left = (mu2[0] * dD[0] + mu2[1] * dD[1]) / (dD[0] + dD[1])
    right = v * (mu1[0] * c_s + mu1[1] * c_n) / (c_s + c_n)
    price_scale = max(abs(uni.tau), abs(neg.tau))
    if abs(uni.tau - neg.tau) <= 10 * tol * max(1.0, price_scale) and abs(left - right) <= 10 * tol * max(
        1.0, abs(left)
    ):
        verdict = COINCIDE
    else:
        verdict = biconditional(uni.tau - neg.tau, price_scale, left - right, max(left, right), band)
    return Proposition4Report(neg, uni, left, right, verdict)


def ratio_approx_dynamic(
    l_ratio_sn1, w_ratio_sn1, d_ratio_sn2, c_ratio_ns1, gL_s, gL_n, gw_s, gw_n, years, eta
) -> float:
    """Approximate dynamic utilitarian-to-Negishi uniform price ratio.

    Growth arguments are annual rates; growth factors over the horizon are
    ``(1 + g) ** years``. Ratios refer to period 1 (population, endowment,
    cost curvature) or period 2 (marginal damage per endowment).
    """
    for r in (l_ratio_sn1, w_ratio_sn1, d_ratio_sn2, c_ratio_ns1):
        if not r > 0:
            raise ValueError("all ratios must be positive")
    if not years > 0:
        raise ValueError("years must be > 0")
    L, w, d, c = l_ratio_sn1, w_ratio_sn1, d_ratio_sn2, c_ratio_ns1
    gL = ((1.0 + gL_s) / (1.0 + gL_n)) ** years
    gw = ((1.0 + gw_s) / (1.0 + gw_n)) ** years
    growth = (L * gL * w * gw + 1.0) / (L * gL * w * gw ** (1.0 - eta) + 1.0)
    damages = (L * gL * (w * gw) ** (1.0 - eta) * d + 1.0) / (L * gL * w * gw * d + 1.0)
    costs = (c * L * w + 1.0) / (w ** (-eta) * c * L * w + 1.0)
    return growth * damages * costs


def simplified_rice_dynamic(
    L_n1,
    L_s1,
    w_n1,
    w_s1,
    gL_n,
    gL_s,
    gw_n,
    gw_s,
    d_n,
    d_s,
    c_n,
    c_s,
    eta,
    rho=0.015,
    years=50.0,
    pi=None,
    Ebar=1.0,
) -> EconomyDynamic:
    """Two-period economy with damages proportional to period-2 endowment.

    Growth arguments are annual rates. ``d_i = (delta1, delta2)`` are damage
    coefficients per unit of period-2 endowment; ``c_i`` is the cost
    curvature per unit of period-1 endowment.
    """
    regions = []
    for name, L, w, gl, gw, d, c in (
        ("N", L_n1, w_n1, gL_n, gw_n, d_n, c_n),
        ("S", L_s1, w_s1, gL_s, gw_s, d_s, c_s),
    ):
        fL, fw = (1.0 + gl) ** years, (1.0 + gw) ** years
        W2 = L * fL * w * fw
        regions.append(
            RegionDynamic(
                name=name,
                L1=L,
                w1=w,
                gL=fL,
                gw=fw,
                cost1=QuadraticCost(k=c / (L * w)),
                damage2=QuadraticDamage(0.0, d[0] * W2, d[1] * W2, Ebar),
            )
        )
    return EconomyDynamic(regions[0], regions[1], UtilityParams(eta), rho=rho, years=years, pi=pi)


def random_dynamic_economy(rng: np.random.Generator, eta: float | None = None, max_tries: int = 200):
    """Draw a two-period economy with interior prices and a richer North in period 1.

    Annual population growth is drawn from ``[0, 2.5%]``, per-capita growth
    from ``[0.5%, 4%]``, ``rho`` from ``[0, 3%]`` and ``pi`` from ``[0.1, 0.9]``.
    Cost curvatures are scaled so that abatement lands roughly between 20%
    and 60% of baseline.
    """
    years = 50.0
    for _ in range(max_tries):
        L_n, L_s = 10.0 ** rng.uniform(0.0, 1.0, size=2)
        w_s = 10.0 ** rng.uniform(0.0, 1.0)
        w_n = w_s * 10.0 ** rng.uniform(math.log10(1.1), 1.0)
        e = float(rng.uniform(0.3, 2.5)) if eta is None else eta
        gL = rng.uniform(0.0, 0.025, size=2)
        gw = rng.uniform(0.005, 0.04, size=2)
        rho = rng.uniform(0.0, 0.03)
        pi = rng.uniform(0.1, 0.9)
        frac_n = 10.0 ** rng.uniform(-2.0, -1.3)
        frac_s = frac_n * 10.0 ** rng.uniform(-0.6, 0.6)
        lin = rng.uniform(0.2, 0.8, size=2)
        d_n = (frac_n * lin[0], frac_n * (1.0 - lin[0]))
        d_s = (frac_s * lin[1], frac_s * (1.0 - lin[1]))
        c_ratio = 10.0 ** rng.uniform(-0.6, 0.6)
        target = rng.uniform(0.2, 0.6)

        fL = (1.0 + gL) ** years
        fw = (1.0 + gw) ** years
        W2 = np.array([L_n * w_n, L_s * w_s]) * fL * fw
        a = W2[0] * d_n[0] + W2[1] * d_s[0]
        b = W2[0] * d_n[1] + W2[1] * d_s[1]
        v0 = pi * fw[0] ** (-e) + (1.0 - pi) * fw[1] ** (-e)
        disc = v0 * (1.0 + rho) ** (-years)
        S = L_n * w_n / (2.0 * c_ratio) + L_s * w_s / 2.0
        scale = S * disc * (a + 2.0 * b * (1.0 - target)) / target
        try:
            econ = simplified_rice_dynamic(
                L_n, L_s, w_n, w_s, gL[0], gL[1], gw[0], gw[1], d_n, d_s,
                c_ratio * scale, scale, e, rho=rho, years=years, pi=pi,
            )
            sols = [solve_dynamic_negishi(econ), solve_dynamic_utilitarian_uniform(econ)]
        except (InfeasibleAllocationError, NoInteriorOptimumError, ConvergenceError):
            continue
        if all(s.richer_north and s.abatement < econ.Ebar for s in sols):
            return econ
    raise RuntimeError("could not draw a valid economy")
