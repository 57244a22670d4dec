import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carbonweights.econ import (
    QuadraticCost,
    QuadraticDamage,
    RegionStatic,
    UtilityParams,
    abatement_at_price,
    consumption,
    marginal_abatement_cost,
    simplified_rice_damage,
)
from carbonweights.errors import InfeasibleAllocationError, ShapeValidationError


def unit_damage(A):
    return (3.0 - A) ** 2


class TestUtility:
    def test_log_at_one(self):
        assert UtilityParams(1.0).u(1.0) == 0.0

    def test_isoelastic_value(self):
        u = UtilityParams(2.0)
        assert math.isclose(u.u(2.0), (2.0 ** -1) / -1)

    @given(eta=st.floats(0.0, 3.0), x=st.floats(0.01, 100.0))
    def test_inverse_roundtrip(self, eta, x):
        u = UtilityParams(eta)
        assert math.isclose(float(u.inverse(u.u(x))), x, rel_tol=1e-9)

    @given(eta=st.floats(0.1, 3.0), x=st.floats(0.01, 100.0))
    def test_marginal_matches_finite_difference(self, eta, x):
        u = UtilityParams(eta)
        h = 1e-6 * x
        fd = (u.u(x + h) - u.u(x - h)) / (2 * h)
        assert math.isclose(float(u.marginal(x)), fd, rel_tol=1e-5)

    def test_scalar_and_array_paths_agree(self):
        u = UtilityParams(1.5)
        xs = np.array([0.5, 1.0, 4.0])
        assert np.allclose(u.u(xs), [u.u(float(x)) for x in xs])
        assert np.allclose(u.marginal(xs), [u.marginal(float(x)) for x in xs])

    def test_negative_eta_rejected(self):
        with pytest.raises(ValueError):
            UtilityParams(-0.5)


class TestDamageScaling:
    def test_unit_endowment(self):
        D = simplified_rice_damage(1.0, 1.0, unit_damage, Ebar=3.0)
        assert math.isclose(D(2.0), 1.0)
        assert math.isclose(D.marginal(2.0), -2.0)

    def test_linear_in_population_times_endowment(self):
        D = simplified_rice_damage(2.0, 5.0, unit_damage, Ebar=3.0)
        assert math.isclose(D(2.0), 10.0)
        assert math.isclose(D.marginal(2.0), -20.0)

    def test_marginal_damage_ratio_follows_endowments(self):
        south = simplified_rice_damage(3.7, 1.0, unit_damage, Ebar=3.0)
        north = simplified_rice_damage(1.0, 3.2, unit_damage, Ebar=3.0)
        # brute-force derivative as the independent check
        h = 1e-6
        fd = lambda D: (D(1.0 + h) - D(1.0 - h)) / (2 * h)
        assert math.isclose(fd(south) / fd(north), 1.15625, rel_tol=1e-7)
        assert math.isclose(south.marginal(1.0) / north.marginal(1.0), 1.15625, rel_tol=1e-12)

    def test_quadratic_damage_object_scales(self):
        d = QuadraticDamage(0.0, 0.1, 0.2, 1.0)
        D = simplified_rice_damage(2.0, 3.0, d)
        assert math.isclose(D.d1, 0.6) and math.isclose(D.d2, 1.2)

    def test_increasing_damage_rejected(self):
        with pytest.raises(ShapeValidationError):
            simplified_rice_damage(1.0, 1.0, lambda A: A**2, Ebar=3.0)

    def test_non_quadratic_rejected(self):
        with pytest.raises(ShapeValidationError):
            simplified_rice_damage(1.0, 1.0, lambda A: (3.0 - A) ** 4, Ebar=3.0)


class TestCost:
    def test_marginal_cost(self):
        assert marginal_abatement_cost(QuadraticCost(1.0), 1.0) == 2.0

    def test_inverse(self):
        assert abatement_at_price(QuadraticCost(1.0), 2.0) == 1.0

    def test_clamped_below_linear_term(self):
        assert abatement_at_price(QuadraticCost(0.5, 1.0), 0.5) == 0.0

    @given(k=st.floats(0.01, 10), m=st.floats(0, 5), A=st.floats(0, 10))
    def test_inverse_roundtrip(self, k, m, A):
        c = QuadraticCost(k, m)
        assert math.isclose(abatement_at_price(c, marginal_abatement_cost(c, A)), A, rel_tol=1e-9, abs_tol=1e-9)

    def test_negative_abatement_rejected(self):
        with pytest.raises(ValueError):
            marginal_abatement_cost(QuadraticCost(1.0), -1.0)


def _region(L=1.0, w=10.0, k=1.0, d=(0.0, 0.0, 1.0 / 3.0), Ebar=3.0):
    return RegionStatic("R", L, w, QuadraticCost(k), QuadraticDamage(d[0], d[1], d[2], Ebar))


class TestConsumption:
    def test_arithmetic_identity(self):
        r = _region(L=2.0, w=5.0)
        X, x = consumption(r, 1.0, 2.0)
        assert math.isclose(X, 10.0 - 1.0 - r.damage(2.0))
        assert math.isclose(x, X / 2.0)

    def test_example_values(self):
        r = RegionStatic("R", 2.0, 5.0, QuadraticCost(1.0), QuadraticDamage(0.0, 0.0, 3.0, 3.0))
        X, x = consumption(r, 1.0, 2.0)
        assert (X, x) == (6.0, 3.0)

    def test_zero_abatement_corner(self):
        d0, d1, d2, Ebar, n = 0.1, 0.2, 0.3, 2.0, 0.05
        r = RegionStatic("R", 1.0, 10.0, QuadraticCost(1.0, 0.0, n), QuadraticDamage(d0, d1, d2, Ebar))
        X, _ = consumption(r, 0.0, 0.0)
        assert math.isclose(X, 10.0 - n - (d0 + d1 * Ebar + d2 * Ebar**2))

    @settings(max_examples=50)
    @given(
        L=st.floats(0.5, 5), w=st.floats(5, 50), k=st.floats(0.1, 2),
        d1=st.floats(0, 1), d2=st.floats(0, 1), ai=st.floats(0, 1), extra=st.floats(0, 1),
    )
    def test_recomputation(self, L, w, k, d1, d2, ai, extra):
        r = _region(L, w, k, (0.0, d1, d2), Ebar=2.0)
        A = ai + extra
        expected = L * w - k * ai**2 - (d1 * (2.0 - A) + d2 * (2.0 - A) ** 2)
        if expected <= 0:
            with pytest.raises(InfeasibleAllocationError):
                consumption(r, ai, A)
        else:
            X, x = consumption(r, ai, A)
            assert math.isclose(X, expected, rel_tol=1e-12)
            assert math.isclose(x, expected / L, rel_tol=1e-12)

    def test_own_abatement_above_global_rejected(self):
        with pytest.raises(ValueError):
            consumption(_region(), 2.0, 1.0)

    def test_negative_consumption_raises(self):
        r = _region(w=0.1)
        with pytest.raises(InfeasibleAllocationError):
            consumption(r, 0.0, 0.0)
