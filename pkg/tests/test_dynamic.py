import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carbonweights.dynamic import (
    EconomyDynamic,
    RegionDynamic,
    check_proposition4,
    negishi_discount_factor,
    random_dynamic_economy,
    ratio_approx_dynamic,
    simplified_rice_dynamic,
    solve_dynamic_negishi,
    solve_dynamic_utilitarian_uniform,
)
from carbonweights.econ import EconomyStatic, QuadraticCost, QuadraticDamage, RegionStatic, UtilityParams
from carbonweights.static import COINCIDE, FAIL, INDETERMINATE, ratio_approx_static, solve_negishi_static

DAMAGES = ((0.005, 0.01), (0.01, 0.02))


def flat_economy(rho=0.0, eta=1.5):
    """Zero growth, so both periods carry the same endowment."""
    return simplified_rice_dynamic(1.0, 3.7, 3.2, 1.0, 0.0, 0.0, 0.0, 0.0, *DAMAGES, 0.3, 0.3, eta, rho=rho)


def static_twin(econ: EconomyDynamic, damage_scale=1.0) -> EconomyStatic:
    regions = [
        RegionStatic(r.name, r.L1, r.w1, r.cost1, r.damage2.scaled(damage_scale)) for r in econ.regions
    ]
    return EconomyStatic(regions[0], regions[1], econ.utility)


def symmetric_dynamic(gL=1.3, gw=2.0, eta=1.5):
    cost = QuadraticCost(1.0)
    damage = QuadraticDamage(0.0, 0.0, 0.5, 3.0)
    r = RegionDynamic("N", 1.0, 10.0, gL, gw, cost, damage)
    return EconomyDynamic(r, RegionDynamic("S", 1.0, 10.0, gL, gw, cost, damage), UtilityParams(eta), rho=0.01)


class TestDiscountFactor:
    def test_no_growth(self):
        assert negishi_discount_factor(UtilityParams(1.5), (3.0, 1.0), (3.0, 1.0), 0.4) == 1.0

    def test_north_weight_only(self):
        u = UtilityParams(1.5)
        v = negishi_discount_factor(u, (3.0, 1.0), (5.0, 2.5), 1.0)
        assert v == u.marginal(5.0) / u.marginal(3.0)

    def test_log_utility_doubling(self):
        v = negishi_discount_factor(UtilityParams(1.0), (3.0, 1.0), (6.0, 2.0), 0.3)
        assert math.isclose(v, 0.5, rel_tol=1e-14)


class TestDynamicNegishi:
    def test_collapses_to_static_without_discounting(self):
        econ = flat_economy(rho=0.0)
        dyn = solve_dynamic_negishi(econ, v=1.0)
        assert math.isclose(dyn.tau, solve_negishi_static(static_twin(econ)).tau, rel_tol=1e-12)

    def test_consistent_discount_factor_near_one_without_growth(self):
        # costs and damages fall in different periods, so consumption still moves a little
        econ = flat_economy(rho=0.0)
        dyn = solve_dynamic_negishi(econ)
        assert abs(dyn.diagnostics["v"] - 1.0) < 0.05
        assert math.isclose(dyn.tau, solve_negishi_static(static_twin(econ)).tau, rel_tol=0.05)

    def test_half_discount_equals_halved_damages(self):
        econ = flat_economy()
        econ = EconomyDynamic(econ.north, econ.south, econ.utility, rho=2 ** (1 / 50) - 1, years=50.0)
        assert math.isclose(econ.beta, 0.5, rel_tol=1e-12)
        dyn = solve_dynamic_negishi(econ, v=1.0)
        assert math.isclose(dyn.tau, solve_negishi_static(static_twin(econ, 0.5)).tau, rel_tol=1e-9)

    def test_heavy_discounting_drives_price_to_zero(self):
        prices = [solve_dynamic_negishi(flat_economy(rho=r)).tau for r in (0.01, 0.1, 1.0)]
        assert prices[0] > prices[1] > prices[2]
        assert prices[2] < 1e-12

    def test_fixed_v_override(self):
        econ = simplified_rice_dynamic(1.0, 3.7, 3.2, 1.0, 0.0, 0.01, 0.02, 0.02, *DAMAGES, 0.3, 0.3, 1.5)
        free = solve_dynamic_negishi(econ)
        pinned = solve_dynamic_negishi(econ, v=free.diagnostics["v"])
        assert math.isclose(free.tau, pinned.tau, rel_tol=1e-9)


class TestDynamicUtilitarian:
    def test_symmetric_matches_negishi(self):
        econ = symmetric_dynamic()
        assert math.isclose(
            solve_dynamic_utilitarian_uniform(econ).tau, solve_dynamic_negishi(econ).tau, rel_tol=1e-9
        )

    def test_collapses_to_static_definition(self):
        from carbonweights.static import solve_utilitarian_uniform_static

        linear = flat_economy(rho=0.0, eta=0.0)
        assert math.isclose(
            solve_dynamic_utilitarian_uniform(linear).tau,
            solve_utilitarian_uniform_static(static_twin(linear)).tau,
            rel_tol=1e-12,
        )
        curved = flat_economy(rho=0.0)
        assert math.isclose(
            solve_dynamic_utilitarian_uniform(curved).tau,
            solve_utilitarian_uniform_static(static_twin(curved)).tau,
            rel_tol=0.01,
        )

    def test_faster_south_population_growth_raises_price(self):
        econ = simplified_rice_dynamic(1.0, 3.7, 3.2, 1.0, 0.0, 0.02, 0.02, 0.02, (0.01, 0.0), (0.01, 0.0), 0.3, 0.3, 1.5)
        assert solve_dynamic_utilitarian_uniform(econ).tau > solve_dynamic_negishi(econ).tau


class TestRatioApprox:
    def test_tabulated_cells(self):
        args = dict(l_ratio_sn1=3.7, w_ratio_sn1=1 / 3.2, c_ratio_ns1=1.0, years=50.0)
        assert round(ratio_approx_dynamic(d_ratio_sn2=1.0, gL_s=0.01, gL_n=0.0, gw_s=0.02, gw_n=0.02, eta=1.0, **args), 2) == 1.12
        assert round(ratio_approx_dynamic(d_ratio_sn2=2.0, gL_s=0.02, gL_n=0.0, gw_s=0.04, gw_n=0.02, eta=1.5, **args), 2) == 1.18

    @given(d=st.floats(0.3, 3.0), c=st.floats(0.3, 3.0), eta=st.floats(0.0, 2.5))
    def test_zero_growth_equals_static(self, d, c, eta):
        dyn = ratio_approx_dynamic(3.7, 1 / 3.2, d, c, 0.0, 0.0, 0.0, 0.0, 50.0, eta)
        assert math.isclose(dyn, ratio_approx_static(3.7, 1 / 3.2, d, c, eta), rel_tol=1e-12)

    def test_rejects_bad_ratio(self):
        with pytest.raises(ValueError):
            ratio_approx_dynamic(0.0, 1.0, 1.0, 1.0, 0, 0, 0, 0, 50.0, 1.0)


class TestGrowthWeighting:
    def test_symmetric_coincide(self):
        rep = check_proposition4(symmetric_dynamic())
        assert rep.verdict == COINCIDE
        assert math.isclose(rep.left, rep.right, rel_tol=1e-9)

    def test_population_growth_direction(self):
        econ = simplified_rice_dynamic(1.0, 3.7, 3.2, 1.0, 0.0, 0.03, 0.02, 0.02, (0.01, 0.01), (0.01, 0.01), 0.3, 0.3, 1.5)
        rep = check_proposition4(econ)
        assert rep.left > rep.right
        assert rep.utilitarian.tau > rep.negishi.tau
        assert rep.verdict == "pass"

    def test_infinite_band(self):
        econ = simplified_rice_dynamic(1.0, 3.7, 3.2, 1.0, 0.0, 0.01, 0.02, 0.02, *DAMAGES, 0.3, 0.3, 1.5)
        assert check_proposition4(econ, band=math.inf).verdict == INDETERMINATE

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1))
    def test_random_economies_never_fail(self, seed):
        assert check_proposition4(random_dynamic_economy(np.random.default_rng(seed))).verdict != FAIL
