"""Exact carbon prices in the static two-region economy.

Every regime is the first-order condition of a welfare maximization over
carbon prices, with regions abating until their marginal abatement cost
equals their price. Uniform regimes reduce to a scalar root in the common
price; differentiated regimes are a two-equation fixed point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import optimize

from .econ import EconomyStatic, QuadraticCost, QuadraticDamage, RegionStatic, UtilityParams
from .errors import (
    ConvergenceError,
    InfeasibleAllocationError,
    InvalidWeightsError,
    NoInteriorOptimumError,
)

DEFAULT_TOL = 1e-10
DAMPING = 0.5
MAX_FIXED_POINT_ITER = 200
SCAN_POINTS = 65


class Regime(str, Enum):
    NEGISHI = "negishi"
    UTILITARIAN_UNIFORM = "utilitarian-uniform"
    UTILITARIAN_DIFFERENTIATED = "utilitarian-differentiated"
    PREFERRED_NORTH = "preferred-north"
    PREFERRED_SOUTH = "preferred-south"
    ARBITRARY_UNIFORM = "arbitrary-uniform"
    ARBITRARY_DIFFERENTIATED = "arbitrary-differentiated"


@dataclass(frozen=True)
class PriceSolution:
    regime: Regime
    tau_n: float
    tau_s: float
    a_n: float
    a_s: float
    x_n: float
    x_s: float
    weights: tuple[float, float]
    iterations: int
    residual: float
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def abatement(self) -> float:
        return self.a_n + self.a_s

    @property
    def tau(self) -> float:
        """The common price of a uniform regime (North's price otherwise)."""
        return self.tau_n

    @property
    def richer_north(self) -> bool:
        return self.x_n > self.x_s


@dataclass(frozen=True)
class _State:
    """Allocation implied by a pair of carbon prices."""

    tau: tuple[float, float]
    A_i: tuple[float, float]
    A: float
    X: tuple[float, float]
    x: tuple[float, float]
    mu: tuple[float, float]  # marginal utilities
    dD: tuple[float, float]  # D_i'(A), negative


def _state(econ: EconomyStatic, tau_n: float, tau_s: float) -> _State:
    regions = econ.regions
    A_i = (regions[0].cost.abatement_at(tau_n), regions[1].cost.abatement_at(tau_s))
    A = A_i[0] + A_i[1]
    X = tuple(r.W - r.cost(a) - r.damage(A) for r, a in zip(regions, A_i))
    for r, Xi in zip(regions, X):
        if not Xi > 0:
            raise InfeasibleAllocationError(r.name, Xi)
    x = (X[0] / regions[0].L, X[1] / regions[1].L)
    mu = (econ.utility.marginal(x[0]), econ.utility.marginal(x[1]))
    dD = (regions[0].damage.marginal(A), regions[1].damage.marginal(A))
    return _State((tau_n, tau_s), A_i, A, X, x, mu, dD)


def full_abatement_price(econ: EconomyStatic) -> float:
    """Largest regional marginal abatement cost at ``A_i = Ebar``."""
    return max(r.cost.marginal(econ.Ebar) for r in econ.regions)


def baseline_price(econ: EconomyStatic) -> float:
    """Uniform price at which global abatement reaches baseline emissions."""
    total = lambda t: sum(r.cost.abatement_at(t) for r in econ.regions) - econ.Ebar
    return optimize.brentq(total, 0.0, full_abatement_price(econ), xtol=1e-15, rtol=1e-15)


def welfare(econ: EconomyStatic, state: _State, weights=(1.0, 1.0)) -> float:
    """Weighted utilitarian welfare ``sum_i alpha_i L_i u(x_i)``."""
    return sum(
        a * r.L * econ.utility.u(xi) for a, r, xi in zip(weights, econ.regions, state.x) if a != 0
    )


def _check_weights(weights):
    a_n, a_s = (float(w) for w in weights)
    if a_n < 0 or a_s < 0 or not math.isfinite(a_n) or not math.isfinite(a_s):
        raise InvalidWeightsError(f"weights must be finite and >= 0, got {weights}")
    if a_n == 0 and a_s == 0:
        raise InvalidWeightsError("at least one welfare weight must be positive")
    return a_n, a_s


# ---------------------------------------------------------------------------
# Uniform regimes


def _uniform_gap(econ: EconomyStatic, st: _State, marginal_weights) -> tuple[float, float]:
    """Scaled residual of the uniform first-order condition and the implied price.

    ``marginal_weights`` are ``alpha_i u'(x_i)``. The scaled residual has the
    sign of ``tau - rhs`` and is continuous even when one weight is zero.
    """
    c_n, c_s = (r.cost.curvature for r in econ.regions)
    wn, ws = marginal_weights
    benefit = -(wn * st.dD[0] + ws * st.dD[1]) * (c_s + c_n)
    denom = wn * c_s + ws * c_n
    tau = st.tau[0]
    return tau * denom - benefit, benefit / denom


def scan_roots(g, hi: float, tol: float, label: str = "", points: int = SCAN_POINTS):
    """All sign changes of ``g`` on ``[0, hi]``, each refined with Brent's method.

    ``g`` may raise :class:`InfeasibleAllocationError`; such grid points are
    skipped. Returns ``[(root, iterations), ...]`` with roots closer than
    ``100 * tol`` merged.
    """
    grid = np.linspace(0.0, hi, points)
    values = []
    first_error = None
    for t in grid:
        try:
            values.append(g(t))
        except InfeasibleAllocationError as exc:
            first_error = first_error or exc
            values.append(np.nan)

    brackets = [
        (grid[k], grid[k + 1])
        for k in range(len(grid) - 1)
        if np.isfinite(values[k]) and np.isfinite(values[k + 1]) and values[k] * values[k + 1] <= 0
    ]
    if not brackets:
        if first_error is not None:
            raise first_error
        raise NoInteriorOptimumError(f"{label}: no sign change of the optimality condition on [0, {hi:.6g}]")

    roots = []
    for lo, up in brackets:
        root, info = optimize.brentq(g, lo, up, xtol=1e-15, rtol=1e-15, full_output=True)
        roots.append((root, info.iterations))
    distinct = [roots[0]]
    for r in roots[1:]:
        if abs(r[0] - distinct[-1][0]) > 100 * tol:
            distinct.append(r)
    return distinct


def _solve_uniform(econ, regime, weights, marginal_weight_fn, objective_fn, tol):
    hi = baseline_price(econ)

    def evaluate(tau):
        st = _state(econ, tau, tau)
        return st, _uniform_gap(econ, st, marginal_weight_fn(st))

    st0, (g0, _) = evaluate(0.0)
    if g0 >= 0:
        # no marginal benefit from abatement: the corner at zero is optimal
        return _uniform_solution(econ, regime, weights, st0, 0, 0.0, n_roots=1)

    distinct = scan_roots(lambda t: evaluate(t)[1][0], hi, tol, label=regime.value)
    best_root, iters = max(distinct, key=lambda r: objective_fn(evaluate(r[0])[0]))
    st = evaluate(best_root)[0]
    return _uniform_solution(
        econ, regime, weights, st, iters, None, n_roots=len(distinct), marginal_weight_fn=marginal_weight_fn
    )


def _uniform_solution(econ, regime, weights, st, iters, residual, n_roots, marginal_weight_fn=None):
    if residual is None:
        _, rhs = _uniform_gap(econ, st, marginal_weight_fn(st))
        residual = abs(st.tau[0] - rhs)
    return PriceSolution(
        regime=regime,
        tau_n=st.tau[0],
        tau_s=st.tau[1],
        a_n=st.A_i[0],
        a_s=st.A_i[1],
        x_n=st.x[0],
        x_s=st.x[1],
        weights=tuple(float(w) for w in weights),
        iterations=iters,
        residual=residual,
        diagnostics={
            "roots": n_roots,
            "multiple_roots": n_roots > 1,
            "richer_north": st.x[0] > st.x[1],
            "marginal_utility": st.mu,
            "marginal_damage": st.dD,
        },
    )


def solve_negishi_static(econ: EconomyStatic, tol: float = DEFAULT_TOL) -> PriceSolution:
    """Negishi-weighted price: marginal cost equals summed monetary marginal damages.

    The reported weights are ``1 / u'(x_i)`` at the solution.
    """
    sol = _solve_uniform(
        econ,
        Regime.NEGISHI,
        (1.0, 1.0),
        lambda st: (1.0, 1.0),
        lambda st: st.X[0] + st.X[1],
        tol,
    )
    mu = sol.diagnostics["marginal_utility"]
    return _with_weights(sol, (1.0 / mu[0], 1.0 / mu[1]))


def _with_weights(sol: PriceSolution, weights) -> PriceSolution:
    from dataclasses import replace

    return replace(sol, weights=tuple(float(w) for w in weights))


def solve_utilitarian_uniform_static(econ: EconomyStatic, tol: float = DEFAULT_TOL) -> PriceSolution:
    return _solve_uniform(
        econ,
        Regime.UTILITARIAN_UNIFORM,
        (1.0, 1.0),
        lambda st: st.mu,
        lambda st: welfare(econ, st),
        tol,
    )


def solve_preferred_static(econ: EconomyStatic, region: str, tol: float = DEFAULT_TOL) -> PriceSolution:
    """Uniform price that maximizes one region's own consumption."""
    key = region.lower()[:1]
    if key == "n":
        regime, weights, idx = Regime.PREFERRED_NORTH, (1.0, 0.0), 0
    elif key == "s":
        regime, weights, idx = Regime.PREFERRED_SOUTH, (0.0, 1.0), 1
    else:
        raise ValueError(f"region must be 'N' or 'S', got {region!r}")
    return _solve_uniform(
        econ,
        regime,
        weights,
        lambda st: weights,
        lambda st: st.X[idx],
        tol,
    )


# ---------------------------------------------------------------------------
# Differentiated regimes


def _differentiated_map(econ, tau, weights):
    """Right-hand side of the differentiated conditions at prices ``tau``."""
    st = _state(econ, tau[0], tau[1])
    a_n, a_s = weights
    wmu = (a_n * st.mu[0], a_s * st.mu[1])
    benefit = -(wmu[0] * st.dD[0] + wmu[1] * st.dD[1])
    return np.array([benefit / wmu[0], benefit / wmu[1]]), st


def _fixed_point(econ, weights, start, tol, upper):
    tau = np.array(start, dtype=float)
    trace = []
    for it in range(1, MAX_FIXED_POINT_ITER + 1):
        target, _ = _differentiated_map(econ, tau, weights)
        resid = float(np.max(np.abs(target - tau)))
        trace.append(resid)
        if resid <= tol:
            return tau, it, trace
        tau = np.clip((1.0 - DAMPING) * tau + DAMPING * target, 0.0, upper)
    # hand the best iterate to a Newton-type polish before giving up
    sol = optimize.root(
        lambda t: _differentiated_map(econ, np.clip(t, 0.0, upper), weights)[0] - t,
        tau,
        method="hybr",
        options={"xtol": 1e-14},
    )
    if sol.success:
        tau = np.clip(sol.x, 0.0, upper)
        target, _ = _differentiated_map(econ, tau, weights)
        resid = float(np.max(np.abs(target - tau)))
        trace.append(resid)
        if resid <= tol:
            return tau, MAX_FIXED_POINT_ITER + sol.nfev, trace
    raise ConvergenceError(
        f"differentiated fixed point did not reach tol={tol:g} (last residual {trace[-1]:.3g})",
        trace,
    )


def _solve_differentiated(econ, regime, weights, tol, starts=None):
    a_n, a_s = _check_weights(weights)
    if a_n == 0 or a_s == 0:
        raise InvalidWeightsError(
            "differentiated prices need strictly positive weights; a zero-weight region has an unbounded price"
        )
    upper = np.array([r.cost.marginal(econ.Ebar) for r in econ.regions])
    if starts is None:
        t0 = solve_negishi_static(econ, tol).tau
        starts = [(t0, t0), (0.5 * t0, 0.5 * t0), (1.5 * t0, 1.5 * t0)]
    results = []
    errors = []
    for s in starts:
        try:
            results.append(_fixed_point(econ, (a_n, a_s), np.minimum(s, upper), tol, upper))
        except (ConvergenceError, InfeasibleAllocationError) as exc:
            errors.append(exc)
    if not results:
        raise errors[0]
    tau, iters, trace = results[0]
    spread = max(float(np.max(np.abs(r[0] - tau))) for r in results)
    target, st = _differentiated_map(econ, tau, (a_n, a_s))
    if st.A > econ.Ebar * (1 + 1e-12):
        raise NoInteriorOptimumError(f"{regime.value}: abatement {st.A:.6g} exceeds baseline emissions")
    return PriceSolution(
        regime=regime,
        tau_n=float(tau[0]),
        tau_s=float(tau[1]),
        a_n=st.A_i[0],
        a_s=st.A_i[1],
        x_n=st.x[0],
        x_s=st.x[1],
        weights=(a_n, a_s),
        iterations=iters,
        residual=float(np.max(np.abs(target - tau))),
        diagnostics={
            "starts_converged": len(results),
            "multiple_roots": spread > 100 * tol,
            "root_spread": spread,
            "richer_north": st.x[0] > st.x[1],
            "marginal_utility": st.mu,
            "marginal_damage": st.dD,
            "trace": trace,
        },
    )


def solve_utilitarian_differentiated_static(econ: EconomyStatic, tol: float = DEFAULT_TOL) -> PriceSolution:
    """Region-specific prices equalizing marginal welfare costs of abatement."""
    return _solve_differentiated(econ, Regime.UTILITARIAN_DIFFERENTIATED, (1.0, 1.0), tol)


def solve_arbitrary_weights_static(
    econ: EconomyStatic, weights, uniform: bool, tol: float = DEFAULT_TOL
) -> PriceSolution:
    """Optimal uniform or differentiated prices for welfare weights ``(alpha_N, alpha_S)``."""
    a_n, a_s = _check_weights(weights)
    if not uniform:
        return _solve_differentiated(econ, Regime.ARBITRARY_DIFFERENTIATED, (a_n, a_s), tol)
    return _solve_uniform(
        econ,
        Regime.ARBITRARY_UNIFORM,
        (a_n, a_s),
        lambda st: (a_n * st.mu[0], a_s * st.mu[1]),
        lambda st: welfare(econ, st, (a_n, a_s)),
        tol,
    )


def transfer_derivative(econ: EconomyStatic, sol: PriceSolution, weights, eps: float = 1e-6) -> float:
    """Centered derivative of weighted welfare w.r.t. a lump-sum North-to-South transfer."""
    st = _state(econ, sol.tau_n, sol.tau_s)
    north, south = econ.regions
    u = econ.utility.u

    def w(e):
        return weights[0] * north.L * u((st.X[0] - e) / north.L) + weights[1] * south.L * u(
            (st.X[1] + e) / south.L
        )

    return (w(eps) - w(-eps)) / (2 * eps)


# ---------------------------------------------------------------------------
# Approximate utilitarian/Negishi ratio


def ratio_approx_static(l_ratio_sn, w_ratio_sn, d_ratio_sn, c_ratio_ns, eta) -> float:
    """Approximate utilitarian-to-Negishi uniform price ratio.

    Parameters
    ----------
    l_ratio_sn : float
        Population ratio ``L_S / L_N``.
    w_ratio_sn : float
        Per-capita endowment ratio ``w_S / w_N``.
    d_ratio_sn : float
        Marginal damage per endowment ratio ``d'_S / d'_N``.
    c_ratio_ns : float
        Abatement cost curvature per endowment ratio ``c''_N / c''_S``.
    eta : float
        Elasticity of marginal utility.
    """
    for v in (l_ratio_sn, w_ratio_sn, d_ratio_sn, c_ratio_ns):
        if not v > 0:
            raise ValueError("all ratios must be positive")
    lw = l_ratio_sn * w_ratio_sn
    lw_eta = l_ratio_sn * w_ratio_sn ** (1.0 - eta)
    benefit = (lw_eta * d_ratio_sn + 1.0) / (lw * d_ratio_sn + 1.0)
    cost = (lw * c_ratio_ns + 1.0) / (lw_eta * c_ratio_ns + 1.0)
    return benefit * cost


# ---------------------------------------------------------------------------
# Builders


def simplified_rice_economy(
    L_n: float,
    L_s: float,
    w_n: float,
    w_s: float,
    d_n: tuple[float, float],
    d_s: tuple[float, float],
    c_n: float,
    c_s: float,
    eta: float,
    Ebar: float = 1.0,
) -> EconomyStatic:
    """Two-region economy with damages and costs proportional to endowment.

    ``d_i = (delta1, delta2)`` are the per-endowment damage coefficients on
    remaining emissions; ``c_i`` is the curvature of the per-endowment cost
    ``c_i a^2`` in abatement per endowment ``a = A_i / (L_i w_i)``.
    """
    regions = []
    for name, L, w, d, c in (("N", L_n, w_n, d_n, c_n), ("S", L_s, w_s, d_s, c_s)):
        W = L * w
        regions.append(
            RegionStatic(
                name=name,
                L=L,
                w=w,
                cost=QuadraticCost(k=c / W),
                damage=QuadraticDamage(0.0, d[0] * W, d[1] * W, Ebar),
            )
        )
    return EconomyStatic(regions[0], regions[1], UtilityParams(eta))


def random_static_economy(rng: np.random.Generator, eta: float | None = None, max_tries: int = 200):
    """Draw an economy with an interior optimum and a richer North in every regime.

    Populations and endowments are log-uniform over one decade with
    ``w_N / w_S`` in ``[1.1, 10]``. Damage and cost ratios span both sides of
    the equal-ratio knife edge so that the biconditional checks see both
    directions. Cost curvatures are scaled so that Negishi abatement lands
    between 20% and 60% of baseline emissions.
    """
    for _ in range(max_tries):
        L_n, L_s = 10.0 ** rng.uniform(0.0, 1.0, size=2)
        w_s = 10.0 ** rng.uniform(0.0, 1.0)
        w_n = w_s * 10.0 ** rng.uniform(math.log10(1.1), 1.0)
        e = float(rng.uniform(0.3, 2.5)) if eta is None else eta
        frac_n = 10.0 ** rng.uniform(-2.0, -1.3)
        frac_s = frac_n * 10.0 ** rng.uniform(-0.6, 0.6)
        lin = rng.uniform(0.2, 0.8, size=2)
        d_n = (frac_n * lin[0], frac_n * (1.0 - lin[0]))
        d_s = (frac_s * lin[1], frac_s * (1.0 - lin[1]))
        c_ratio = 10.0 ** rng.uniform(-0.6, 0.6)  # c_N / c_S before scaling
        target = rng.uniform(0.2, 0.6)

        W_n, W_s = L_n * w_n, L_s * w_s
        a = W_n * d_n[0] + W_s * d_s[0]
        b = W_n * d_n[1] + W_s * d_s[1]
        S = W_n / (2.0 * c_ratio) + W_s / 2.0
        scale = S * (a + 2.0 * b * (1.0 - target)) / target
        try:
            econ = simplified_rice_economy(
                L_n, L_s, w_n, w_s, d_n, d_s, c_ratio * scale, scale, e
            )
            sols = [
                solve_negishi_static(econ),
                solve_utilitarian_uniform_static(econ),
                solve_utilitarian_differentiated_static(econ),
                solve_preferred_static(econ, "N"),
                solve_preferred_static(econ, "S"),
            ]
        except (InfeasibleAllocationError, NoInteriorOptimumError, ConvergenceError):
            continue
        if all(s.richer_north and s.abatement < econ.Ebar for s in sols):
            return econ
    raise RuntimeError("could not draw a valid economy")


def symmetric_economy(eta: float = 1.5, w: float = 10.0) -> EconomyStatic:
    """Two identical regions with ``C_i = A_i^2`` and ``D_i = 0.5 (3 - A)^2``."""
    cost = QuadraticCost(k=1.0)
    damage = QuadraticDamage(0.0, 0.0, 0.5, 3.0)
    north = RegionStatic("N", 1.0, w, cost, damage)
    south = RegionStatic("S", 1.0, w, cost, damage)
    return EconomyStatic(north, south, UtilityParams(eta))


# ---------------------------------------------------------------------------
# Regime-ordering checks

PASS, FAIL, INDETERMINATE, COINCIDE = "pass", "fail", "indeterminate", "coincide"
DEFAULT_BAND = 1e-6


def _near(gap, scale, band):
    return abs(gap) <= band * max(abs(scale), 1e-300)


def biconditional(lhs_gap, lhs_scale, rhs_gap, rhs_scale, band) -> str:
    """Verdict for ``lhs_gap > 0  <=>  rhs_gap > 0`` with relative tie band."""
    if _near(lhs_gap, lhs_scale, band) or _near(rhs_gap, rhs_scale, band):
        return INDETERMINATE
    return PASS if (lhs_gap > 0) == (rhs_gap > 0) else FAIL


def _strict_order(values, band) -> str:
    """Verdict for ``values[0] < values[1] < ...``."""
    scale = max(abs(v) for v in values)
    gaps = [b - a for a, b in zip(values, values[1:])]
    if any(g < 0 and not _near(g, scale, band) for g in gaps):
        return FAIL
    if any(_near(g, scale, band) for g in gaps):
        return INDETERMINATE
    return PASS


@dataclass
class StaticPropositionReport:
    negishi: PriceSolution
    utilitarian_uniform: PriceSolution
    differentiated: PriceSolution
    preferred_north: PriceSolution
    preferred_south: PriceSolution
    discriminants: dict
    verdicts: dict

    @property
    def prices(self) -> dict:
        return {
            "tau_negishi": self.negishi.tau,
            "tau_uniform": self.utilitarian_uniform.tau,
            "tau_diff_n": self.differentiated.tau_n,
            "tau_diff_s": self.differentiated.tau_s,
            "tau_pref_n": self.preferred_north.tau,
            "tau_pref_s": self.preferred_south.tau,
        }

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v == FAIL]


def solve_all_static(econ: EconomyStatic, tol: float = DEFAULT_TOL) -> dict[str, PriceSolution]:
    return {
        "negishi": solve_negishi_static(econ, tol),
        "utilitarian_uniform": solve_utilitarian_uniform_static(econ, tol),
        "differentiated": solve_utilitarian_differentiated_static(econ, tol),
        "preferred_north": solve_preferred_static(econ, "N", tol),
        "preferred_south": solve_preferred_static(econ, "S", tol),
    }


def check_static_propositions(
    econ: EconomyStatic, tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND
) -> StaticPropositionReport:
    """Solve every regime and evaluate the ordering results both ways.

    Verdicts are ``pass``, ``fail``, ``indeterminate`` (a discriminant lies
    inside the relative tie ``band`` or a maintained assumption is violated)
    or ``coincide`` (all six prices equal, the symmetric case).
    """
    if not band > 0:
        raise ValueError("band must be > 0")
    sols = solve_all_static(econ, tol)
    neg, uni, dif = sols["negishi"], sols["utilitarian_uniform"], sols["differentiated"]
    pn, ps = sols["preferred_north"], sols["preferred_south"]
    c_n, c_s = (r.cost.curvature for r in econ.regions)
    north, south = econ.regions

    # marginal damages at the utilitarian uniform and differentiated solutions
    dD_uni = uni.diagnostics["marginal_damage"]
    dD_dif = dif.diagnostics["marginal_damage"]
    mu_dif = dif.diagnostics["marginal_utility"]

    cost_ratio = c_n / c_s
    damage_ratio = dD_uni[1] / dD_uni[0]
    abatement_disc = (mu_dif[1] / mu_dif[0]) * (dD_dif[1] / dD_dif[0])
    inv_sum = 1.0 / c_n + 1.0 / c_s
    benefit_cost = (
        -dD_uni[0] * inv_sum / (uni.tau / c_n),
        -dD_uni[1] * inv_sum / (uni.tau / c_s),
    )
    disc = {
        "damage_ratio_sn": damage_ratio,
        "cost_ratio_ns": cost_ratio,
        "benefit_cost_n": benefit_cost[0],
        "benefit_cost_s": benefit_cost[1],
        "abatement_discriminant": abatement_disc,
        "abatement_diff": dif.abatement,
        "abatement_negishi": neg.abatement,
    }

    six = [neg.tau, uni.tau, dif.tau_n, dif.tau_s, pn.tau, ps.tau]
    scale = max(abs(v) for v in six)
    names = [
        "uniform_vs_negishi",
        "benefit_cost_split",
        "differentiated_bracket",
        "abatement_vs_negishi",
        "preferred_bracket",
        "preferred_direction",
    ]
    # exact ties are judged at solver precision, independent of the band
    if max(six) - min(six) <= 10 * tol * max(1.0, scale):
        return StaticPropositionReport(neg, uni, dif, pn, ps, disc, {n: COINCIDE for n in names})

    gap_price = uni.tau - neg.tau
    price_scale = max(abs(uni.tau), abs(neg.tau))
    v = {}
    v["uniform_vs_negishi"] = biconditional(
        gap_price, price_scale, damage_ratio - cost_ratio, max(damage_ratio, cost_ratio), band
    )

    straddle_up = benefit_cost[1] > 1 > benefit_cost[0]
    straddle_down = benefit_cost[1] < 1 < benefit_cost[0]
    if not uni.richer_north or any(_near(b - 1.0, 1.0, band) for b in benefit_cost):
        v["benefit_cost_split"] = INDETERMINATE
    elif _near(gap_price, price_scale, band):
        v["benefit_cost_split"] = INDETERMINATE
    elif gap_price > 0:
        v["benefit_cost_split"] = PASS if straddle_up else FAIL
    else:
        v["benefit_cost_split"] = PASS if straddle_down else FAIL

    if not dif.richer_north:
        v["differentiated_bracket"] = INDETERMINATE
    else:
        prices = _strict_order([dif.tau_s, neg.tau, dif.tau_n], band)
        ab_s = _strict_order([dif.a_s, neg.a_s], band)
        ab_n = _strict_order([neg.a_n, dif.a_n], band)
        parts = [prices, ab_s, ab_n]
        v["differentiated_bracket"] = FAIL if FAIL in parts else INDETERMINATE if INDETERMINATE in parts else PASS

    v["abatement_vs_negishi"] = biconditional(
        dif.abatement - neg.abatement,
        max(dif.abatement, neg.abatement),
        abatement_disc - cost_ratio,
        max(abs(abatement_disc), cost_ratio),
        band,
    )

    lo, hi = min(pn.tau, ps.tau), max(pn.tau, ps.tau)
    parts = [_strict_order([lo, t, hi], band) for t in (uni.tau, neg.tau)]
    v["preferred_bracket"] = FAIL if FAIL in parts else INDETERMINATE if INDETERMINATE in parts else PASS

    v["preferred_direction"] = biconditional(gap_price, price_scale, ps.tau - pn.tau, max(ps.tau, pn.tau), band)
    return StaticPropositionReport(neg, uni, dif, pn, ps, disc, v)


def negishi_knife_edge(econ: EconomyStatic, tol: float = DEFAULT_TOL) -> tuple[PriceSolution, PriceSolution]:
    """Negishi solution and the differentiated solution under its converged weights.

    The differentiated search starts away from the diagonal so that a
    uniform answer is found rather than assumed.
    """
    neg = solve_negishi_static(econ, tol)
    t = neg.tau
    dif = _solve_differentiated(
        econ, Regime.ARBITRARY_DIFFERENTIATED, neg.weights, tol, starts=[(0.5 * t, 1.5 * t), (1.5 * t, 0.5 * t)]
    )
    return neg, dif
