"""Domain types and elementary functions for the two-region economy.

Abatement costs and damages are quadratic. Damages are written in terms of
remaining emissions ``Ebar - A`` so that they fall, at a decreasing rate, as
global abatement ``A`` rises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import InfeasibleAllocationError, ShapeValidationError, UtilityDomainError


@dataclass(frozen=True)
class UtilityParams:
    """Isoelastic utility with elasticity of marginal utility ``eta``."""

    eta: float = 1.0

    def __post_init__(self):
        if not self.eta >= 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")

    @property
    def is_log(self) -> bool:
        return self.eta == 1.0

    def u(self, x):
        if isinstance(x, float):
            if not x > 0:
                raise UtilityDomainError("utility evaluated at non-positive consumption")
            return math.log(x) if self.is_log else x ** (1.0 - self.eta) / (1.0 - self.eta)
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise UtilityDomainError("utility evaluated at non-positive consumption")
        if self.is_log:
            out = np.log(x)
        else:
            out = x ** (1.0 - self.eta) / (1.0 - self.eta)
        return out if out.ndim else float(out)

    def marginal(self, x):
        if isinstance(x, float):
            if not x > 0:
                raise UtilityDomainError("marginal utility evaluated at non-positive consumption")
            return x ** (-self.eta)
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise UtilityDomainError("marginal utility evaluated at non-positive consumption")
        out = x ** (-self.eta)
        return out if out.ndim else float(out)

    def inverse(self, level):
        """Consumption yielding utility ``level``.

        Levels outside the range of ``u`` return ``nan``; use
        :meth:`in_range` to tell which side they fall on.
        """
        level = np.asarray(level, dtype=float)
        if self.is_log:
            out = np.exp(level)
        else:
            base = (1.0 - self.eta) * level
            with np.errstate(invalid="ignore", divide="ignore"):
                out = np.where(base > 0, np.abs(base) ** (1.0 / (1.0 - self.eta)), np.nan)
        return out if out.ndim else float(out)

    def in_range(self, level) -> np.ndarray:
        """-1 below the range of ``u``, +1 above it, 0 inside."""
        level = np.asarray(level, dtype=float)
        if self.is_log:
            return np.zeros(level.shape, dtype=int)
        if self.eta < 1:
            # u maps (0, inf) onto (0, inf)
            return np.where(level <= 0, -1, 0)
        # u maps (0, inf) onto (-inf, 0)
        return np.where(level >= 0, 1, 0)


@dataclass(frozen=True)
class QuadraticCost:
    """Abatement cost ``C(A) = k A^2 + m A + n``."""

    k: float
    m: float = 0.0
    n: float = 0.0

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"cost curvature k must be > 0, got {self.k}")
        if self.m < 0 or self.n < 0:
            raise ValueError("cost coefficients m and n must be >= 0")

    def __call__(self, A):
        return self.k * A * A + self.m * A + self.n

    def marginal(self, A):
        return 2.0 * self.k * A + self.m

    @property
    def curvature(self) -> float:
        return 2.0 * self.k

    def abatement_at(self, price):
        """Inverse marginal abatement cost, zero below the linear coefficient."""
        if np.ndim(price):
            return np.maximum(np.asarray(price, dtype=float) - self.m, 0.0) / (2.0 * self.k)
        return max(price - self.m, 0.0) / (2.0 * self.k)


@dataclass(frozen=True)
class QuadraticDamage:
    """Damage ``D(A) = d0 + d1 (Ebar - A) + d2 (Ebar - A)^2``.

    The polynomial is evaluated for any ``A`` so that root finders can probe
    past the baseline; :func:`consumption` enforces ``0 <= A <= Ebar``.
    """

    d0: float
    d1: float
    d2: float
    Ebar: float

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise ShapeValidationError("damage slope d1 and curvature d2 must be >= 0")
        if not self.Ebar > 0:
            raise ValueError("baseline emissions Ebar must be > 0")

    def __call__(self, A):
        r = self.Ebar - A
        return self.d0 + self.d1 * r + self.d2 * r * r

    def marginal(self, A):
        return -self.d1 - 2.0 * self.d2 * (self.Ebar - A)

    @property
    def curvature(self) -> float:
        return 2.0 * self.d2

    def scaled(self, factor: float) -> "QuadraticDamage":
        return replace(self, d0=self.d0 * factor, d1=self.d1 * factor, d2=self.d2 * factor)


@dataclass(frozen=True)
class RegionStatic:
    name: str
    L: float
    w: float
    cost: QuadraticCost
    damage: QuadraticDamage

    def __post_init__(self):
        if not (self.L > 0 and self.w > 0):
            raise ValueError(f"region {self.name!r}: population and endowment must be > 0")

    @property
    def W(self) -> float:
        return self.L * self.w


@dataclass(frozen=True)
class EconomyStatic:
    north: RegionStatic
    south: RegionStatic
    utility: UtilityParams = field(default_factory=UtilityParams)

    def __post_init__(self):
        # equality is allowed so that symmetric economies can be built
        if self.north.w < self.south.w:
            raise ValueError(
                f"North must be at least as rich per capita: w_N={self.north.w} < w_S={self.south.w}"
            )
        if not math.isclose(self.north.damage.Ebar, self.south.damage.Ebar, rel_tol=1e-12):
            raise ValueError("both regions must share the same baseline emissions Ebar")

    @property
    def regions(self) -> tuple[RegionStatic, RegionStatic]:
        return (self.north, self.south)

    @property
    def Ebar(self) -> float:
        return self.north.damage.Ebar


def simplified_rice_damage(
    L: float,
    w: float,
    per_endowment: QuadraticDamage | Callable[[float], float],
    Ebar: float | None = None,
    grid: int = 201,
) -> QuadraticDamage:
    """Aggregate damage ``D(A) = L w d(A)`` from damage per unit of endowment.

    ``per_endowment`` is either a :class:`QuadraticDamage` holding the
    per-endowment coefficients or a plain callable ``d(A)``; a callable is
    checked for monotonicity and convexity on ``[0, Ebar]`` and must be
    quadratic in ``A``.
    """
    scale = L * w
    if not scale > 0:
        raise ValueError("L * w must be > 0")
    if isinstance(per_endowment, QuadraticDamage):
        return per_endowment.scaled(scale)
    if Ebar is None:
        raise ValueError("Ebar is required when the damage is given as a callable")

    A = np.linspace(0.0, Ebar, grid)
    d = np.array([float(per_endowment(a)) for a in A])
    span = max(np.ptp(d), np.max(np.abs(d)), 1e-300)
    if np.any(np.diff(d) > 1e-12 * span) or not d[0] > d[-1]:
        raise ShapeValidationError("per-endowment damage must be decreasing in abatement")
    if np.any(np.diff(d, 2) < -1e-9 * span):
        raise ShapeValidationError("per-endowment damage must be convex in abatement")

    r = Ebar - A
    c2, c1, c0 = np.polyfit(r, d, 2)
    if np.max(np.abs(np.polyval([c2, c1, c0], r) - d)) > 1e-9 * span:
        raise ShapeValidationError("per-endowment damage must be quadratic in abatement")
    # round-off in the fit can leave tiny negative coefficients
    c1 = 0.0 if abs(c1) < 1e-12 * span else c1
    c2 = 0.0 if abs(c2) < 1e-12 * span else c2
    c0 = 0.0 if abs(c0) < 1e-12 * span else c0
    return QuadraticDamage(c0 * scale, c1 * scale, c2 * scale, Ebar)


def simplified_rice_cost(L: float, w: float, curvature: float) -> QuadraticCost:
    """Aggregate cost ``L w c(A / (L w))`` for ``c(a) = curvature * a^2``."""
    return QuadraticCost(k=curvature / (L * w))


def marginal_abatement_cost(cost: QuadraticCost, A: float) -> float:
    if A < 0:
        raise ValueError("abatement must be >= 0")
    return cost.marginal(A)


def abatement_at_price(cost: QuadraticCost, price: float) -> float:
    return cost.abatement_at(price)


def consumption(region: RegionStatic, own_abatement: float, global_abatement: float):
    """Aggregate and per-capita consumption ``W - C(A_i) - D(A)``."""
    Ebar = region.damage.Ebar
    tol = 1e-12 * max(Ebar, 1.0)
    if own_abatement < -tol or own_abatement > global_abatement + tol or global_abatement > Ebar + tol:
        raise ValueError(
            f"need 0 <= A_i <= A <= Ebar, got A_i={own_abatement}, A={global_abatement}, Ebar={Ebar}"
        )
    X = region.W - region.cost(own_abatement) - region.damage(global_abatement)
    if not X > 0:
        raise InfeasibleAllocationError(region.name, X)
    return X, X / region.L
