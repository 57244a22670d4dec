import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carbonweights.errors import DivergenceError
from carbonweights.optimizer import OptimizerConfig, grid_oracle, maximize_bounded, maximize_eq_constrained


def rosenbrock(p):
    x, y = p
    return -((1 - x) ** 2 + 100 * (y - x**2) ** 2)


class TestMaximizeBounded:
    def test_one_dimensional_quadratic(self):
        res = maximize_bounded(lambda x: -((x[0] - 1.0) ** 2), [-5.0], [5.0])
        assert abs(res.x[0] - 1.0) < 1e-6
        assert abs(res.f) < 1e-6
        assert res.converged

    def test_rosenbrock(self):
        res = maximize_bounded(rosenbrock, [-2.0, -2.0], [2.0, 2.0])
        assert np.max(np.abs(res.x - 1.0)) < 1e-3

    def test_separable_twelve_dimensions(self):
        centre = np.linspace(-0.8, 0.9, 12)
        curv = np.linspace(0.5, 3.0, 12)
        res = maximize_bounded(lambda x: -float(np.sum(curv * (x - centre) ** 2)), -np.ones(12), np.ones(12))
        assert np.max(np.abs(res.x - centre)) < 1e-5

    def test_corner_solution(self):
        res = maximize_bounded(lambda x: float(x[0] + 2 * x[1]), [0.0, -1.0], [3.0, 4.0])
        assert np.allclose(res.x, [3.0, 4.0], atol=1e-8)

    def test_evaluations_stay_in_box(self):
        seen = []

        def f(x):
            seen.append(x.copy())
            return -float(np.sum((x - 3.0) ** 2))

        maximize_bounded(f, [0.0, 0.0, 0.0], [1.0, 2.0, 1.0])
        pts = np.array(seen)
        assert np.all(pts >= 0.0) and np.all(pts <= [1.0, 2.0, 1.0])

    def test_non_finite_values_are_avoided(self):
        res = maximize_bounded(lambda x: -np.inf if x[0] > 0.5 else -((x[0] - 0.3) ** 2), [0.0], [1.0])
        assert abs(res.x[0] - 0.3) < 1e-6

    def test_deterministic_under_seed(self, tmp_path):
        cfg = OptimizerConfig(seed=11, trace_path=str(tmp_path / "a.csv"))
        a = maximize_bounded(rosenbrock, [-2, -2], [2, 2], cfg)
        b = maximize_bounded(rosenbrock, [-2, -2], [2, 2], OptimizerConfig(seed=11, trace_path=str(tmp_path / "b.csv")))
        assert a.x.tobytes() == b.x.tobytes() and a.f == b.f and a.evals == b.evals
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_trace_header(self, tmp_path):
        path = tmp_path / "t.csv"
        maximize_bounded(lambda x: -float(x @ x), [-1, -1], [1, 1], OptimizerConfig(trace_path=str(path), restarts=0))
        assert path.read_text().splitlines()[0] == "eval,x0,x1,f,violation"

    def test_bad_box(self):
        with pytest.raises(ValueError):
            maximize_bounded(lambda x: 0.0, [1.0], [0.0])

    @settings(max_examples=15, deadline=None)
    @given(c=st.lists(st.floats(-0.9, 0.9), min_size=2, max_size=6))
    def test_recovers_random_centres(self, c):
        c = np.array(c)
        res = maximize_bounded(lambda x: -float(np.sum((x - c) ** 2)), -np.ones(c.size), np.ones(c.size))
        assert np.max(np.abs(res.x - c)) < 1e-5


class TestConstrained:
    def test_projection(self):
        res = maximize_eq_constrained(
            lambda p: -(p[0] ** 2 + p[1] ** 2), lambda p: [p[0] + p[1] - 1.0], [-2.0, -2.0], [2.0, 2.0]
        )
        assert np.allclose(res.x, [0.5, 0.5], atol=1e-5)
        assert res.constraint_violation <= 1e-8
        assert res.converged
        assert abs(res.multipliers[0]) == pytest.approx(1.0, rel=1e-3)

    def test_contradictory_constraints_diverge(self):
        with pytest.raises(DivergenceError):
            maximize_eq_constrained(
                lambda p: -(p[0] ** 2 + p[1] ** 2),
                lambda p: [p[0] + p[1] - 1.0, p[0] + p[1] - 2.0],
                [-2.0, -2.0],
                [2.0, 2.0],
            )


class TestGridOracle:
    def test_matches_bounded_maximizer(self):
        g = grid_oracle(lambda x: -((x[0] - 1.0) ** 2), [-5.0], [5.0], 101)
        b = maximize_bounded(lambda x: -((x[0] - 1.0) ** 2), [-5.0], [5.0])
        assert abs(g.x[0] - b.x[0]) <= 10.0 / 100

    def test_refinement_sharpens(self):
        f = lambda x: -((x[0] - 0.123456) ** 2 + (x[1] + 0.4321) ** 2)
        coarse = grid_oracle(f, [-1, -1], [1, 1], 21, refine=0)
        fine = grid_oracle(f, [-1, -1], [1, 1], 21, refine=8)
        assert np.max(np.abs(fine.x - [0.123456, -0.4321])) < np.max(np.abs(coarse.x - [0.123456, -0.4321]))
        assert np.max(np.abs(fine.x - [0.123456, -0.4321])) < 1e-6

    def test_monotone_objective_hits_boundary(self):
        res = grid_oracle(lambda x: float(x.sum()), [0, 0], [1, 2], 11)
        assert np.allclose(res.x, [1, 2])

    def test_dimension_limit(self):
        with pytest.raises(ValueError):
            grid_oracle(lambda x: 0.0, np.zeros(4), np.ones(4))
