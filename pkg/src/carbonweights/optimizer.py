"""Derivative-free maximization on a box.

:func:`maximize_bounded` is a Subplex search: the variables are split into
low-dimensional subspaces, chosen from the most recent progress vector, and
each subspace is searched with Nelder-Mead. :func:`maximize_eq_constrained`
wraps it in an augmented-Lagrangian loop for equality constraints, and
:func:`grid_oracle` is a brute-force reference for up to three variables.

All routines maximize. Objective values that are not finite are treated as
worse than any finite value.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConvergenceError, DivergenceError

# Nelder-Mead coefficients
REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5
# Subplex step-size controls
PSI, OMEGA = 0.25, 0.1


@dataclass(frozen=True)
class OptimizerConfig:
    """Budgets and tolerances.

    ``xtol`` is relative to ``max(|x_i|, 1)``; ``ftol`` stops a run after two
    consecutive subspace cycles whose relative improvement is below it.
    ``trace_path`` writes one CSV row per evaluation.
    """

    max_evals: int = 200_000
    xtol: float = 1e-8
    ftol: float = 1e-9
    subspace_dim: int = 5
    restarts: int = 3
    seed: int = 0
    penalty_init: float = 10.0
    penalty_growth: float = 10.0
    ctol: float = 1e-8
    max_outer: int = 30
    initial_step: float = 0.1
    trace_path: str | None = None

    def __post_init__(self):
        if not (self.xtol > 0 and self.ftol > 0 and self.ctol > 0):
            raise ValueError("tolerances must be > 0")
        if self.subspace_dim < 2:
            raise ValueError("subspace_dim must be >= 2")
        if not self.penalty_growth > 1:
            raise ValueError("penalty_growth must be > 1")
        if self.max_evals < 1 or self.restarts < 0:
            raise ValueError("max_evals must be >= 1 and restarts >= 0")


@dataclass
class OptResult:
    x: np.ndarray
    f: float
    evals: int
    converged: bool
    constraint_violation: float = 0.0
    dispersion: float = 0.0
    message: str = ""
    multipliers: np.ndarray | None = None
    history: list = field(default_factory=list, repr=False)


class _Counter:
    """Evaluation wrapper: clamps to the box, negates, records the trace."""

    def __init__(self, objective, lower, upper, record):
        self.objective = objective
        self.lower = lower
        self.upper = upper
        self.evals = 0
        self.record = record
        self.rows = []

    def __call__(self, x):
        x = np.minimum(np.maximum(x, self.lower), self.upper)
        self.evals += 1
        f = float(self.objective(x.copy()))
        if not math.isfinite(f):
            f = -math.inf
        if self.record:
            self.rows.append((self.evals, *x.tolist(), f))
        return -f, x


def _partition(dx: np.ndarray, nsmin: int, nsmax: int) -> list[np.ndarray]:
    """Split coordinates into subspaces, largest recent progress first."""
    order = np.argsort(-np.abs(dx), kind="stable")
    mags = np.abs(dx)[order]
    n = len(dx)
    groups = []
    start = 0
    while start < n:
        left = n - start
        best_k, best_val = None, -math.inf
        for k in range(nsmin, min(nsmax, left) + 1):
            rest = left - k
            if 0 < rest < nsmin:
                continue
            head = mags[start : start + k].sum() / k
            tail = mags[start + k :].sum() / rest if rest else 0.0
            val = head - tail
            if val > best_val:
                best_k, best_val = k, val
        if best_k is None:
            best_k = left
        groups.append(order[start : start + best_k])
        start += best_k
    return groups


def _nelder_mead(fun, x, idx, step, budget, lower, upper):
    """Minimize ``fun`` over coordinates ``idx`` of ``x`` from a right-angled simplex.

    Stops when the simplex has shrunk to ``PSI`` times its initial size or
    the evaluation budget is used.
    """
    k = len(idx)
    base = x.copy()

    def embed(y):
        z = base.copy()
        z[idx] = y
        return z

    lo, hi = lower[idx], upper[idx]
    y0 = x[idx].copy()
    verts = [y0]
    for j in range(k):
        v = y0.copy()
        s = step[idx[j]]
        if not lo[j] <= v[j] + s <= hi[j]:
            s = -s
        v[j] = min(max(v[j] + s, lo[j]), hi[j])
        verts.append(v)
    verts = np.array(verts)
    fv = np.empty(k + 1)
    fv[0] = fun.last_value
    used = 0
    for j in range(1, k + 1):
        fv[j], z = fun(embed(verts[j]))
        verts[j] = z[idx]
        used += 1

    def size():
        return float(np.max(np.sum(np.abs(verts[1:] - verts[0]), axis=1))) if k else 0.0

    order = np.argsort(fv, kind="stable")
    verts, fv = verts[order], fv[order]
    size0 = size()
    if size0 == 0.0:
        return embed(verts[0]), fv[0], used

    def trial(y):
        y = np.minimum(np.maximum(y, lo), hi)
        f, _ = fun(embed(y))
        return f, y

    while used < budget and size() > PSI * size0:
        centroid = verts[:-1].mean(axis=0)
        worst = verts[-1]
        fr, yr = trial(centroid + REFLECT * (centroid - worst))
        used += 1
        if fr < fv[0]:
            fe, ye = trial(centroid + EXPAND * (yr - centroid))
            used += 1
            if fe < fr:
                verts[-1], fv[-1] = ye, fe
            else:
                verts[-1], fv[-1] = yr, fr
        elif fr < fv[-2]:
            verts[-1], fv[-1] = yr, fr
        else:
            if fr < fv[-1]:
                fc, yc = trial(centroid + CONTRACT * (yr - centroid))
            else:
                fc, yc = trial(centroid + CONTRACT * (worst - centroid))
            used += 1
            if fc < min(fr, fv[-1]):
                verts[-1], fv[-1] = yc, fc
            else:
                for j in range(1, k + 1):
                    fv[j], verts[j] = trial(verts[0] + SHRINK * (verts[j] - verts[0]))
                    used += 1
        order = np.argsort(fv, kind="stable")
        verts, fv = verts[order], fv[order]
    return embed(verts[0]), fv[0], used


class _Objective:
    """Callable that remembers the value of the current point."""

    def __init__(self, counter):
        self.counter = counter
        self.last_value = math.inf

    def __call__(self, x):
        return self.counter(x)


def _subplex(counter, x0, step0, cfg, budget):
    n = len(x0)
    lower, upper = counter.lower, counter.upper
    nsmin, nsmax = min(2, n), min(cfg.subspace_dim, n)
    fun = _Objective(counter)
    fx, x = counter(x0)
    fun.last_value = fx
    step = step0.copy()
    dx = step.copy()
    start = counter.evals
    small_df = 0
    while True:
        groups = _partition(dx, nsmin, nsmax)
        x_old, f_old = x.copy(), fx
        for idx in groups:
            remaining = budget - (counter.evals - start)
            if remaining <= 0:
                return x, -fx, False, "evaluation budget exhausted"
            x, fx, _ = _nelder_mead(fun, x, idx, step, remaining, lower, upper)
            fun.last_value = fx
        dx = x - x_old

        scale = np.maximum(np.abs(x), 1.0)
        if np.max(np.maximum(np.abs(dx), np.abs(step) * PSI) / scale) <= cfg.xtol:
            return x, -fx, True, "step tolerance reached"
        # a cycle that did not move only shrinks the steps; it says nothing about f
        moved = bool(np.any(dx != 0))
        if moved and math.isfinite(fx) and abs(f_old - fx) <= cfg.ftol * (abs(fx) + cfg.ftol):
            small_df += 1
            if small_df >= 2:
                return x, -fx, True, "function tolerance reached"
        elif moved:
            small_df = 0

        if len(groups) > 1:
            ratio = np.sum(np.abs(dx)) / np.sum(np.abs(step))
            stepscale = min(max(ratio, OMEGA), 1.0 / OMEGA)
        else:
            stepscale = PSI
        mag = np.abs(step) * stepscale
        step = np.where(dx > 0, mag, np.where(dx < 0, -mag, -step * stepscale))
        # keep steps meaningful relative to the box
        width = upper - lower
        step = np.sign(step) * np.minimum(np.abs(step), width)
        step[step == 0] = cfg.xtol * np.maximum(np.abs(x[step == 0]), 1.0)


def _validate_box(lower, upper):
    lower = np.asarray(lower, dtype=float).ravel()
    upper = np.asarray(upper, dtype=float).ravel()
    if lower.shape != upper.shape or lower.size == 0:
        raise ValueError("lower and upper must be non-empty vectors of equal length")
    if not np.all(lower < upper):
        raise ValueError("need lower < upper componentwise")
    if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
        raise ValueError("bounds must be finite")
    return lower, upper


def maximize_bounded(objective, lower, upper, cfg: OptimizerConfig | None = None, x0=None, step=None) -> OptResult:
    """Maximize ``objective`` on the box ``[lower, upper]``.

    Runs Subplex from ``x0`` (the box centre by default), then
    ``cfg.restarts`` further runs from the incumbent with randomly jittered
    initial steps drawn from a generator seeded with ``cfg.seed``. Every
    evaluated point lies inside the box. ``dispersion`` is the largest
    distance between a restart's end point and the returned point.
    """
    cfg = cfg or OptimizerConfig()
    lower, upper = _validate_box(lower, upper)
    width = upper - lower
    x = 0.5 * (lower + upper) if x0 is None else np.clip(np.asarray(x0, dtype=float).ravel(), lower, upper)
    if x.shape != lower.shape:
        raise ValueError("x0 has the wrong length")
    step0 = cfg.initial_step * width if step is None else np.asarray(step, dtype=float).ravel()
    rng = np.random.default_rng(cfg.seed)
    counter = _Counter(objective, lower, upper, record=cfg.trace_path is not None)

    runs = []
    best = None
    for r in range(cfg.restarts + 1):
        if r == 0:
            s = step0
        else:
            jitter = rng.uniform(0.5, 1.5, size=x.size) * rng.choice([-1.0, 1.0], size=x.size)
            s = jitter * step0
        start = best[0] if best is not None else x
        xr, fr, conv, msg = _subplex(counter, start, s, cfg, cfg.max_evals)
        runs.append((xr, fr, conv, msg))
        if best is None or fr > best[1]:
            best = (xr, fr, conv, msg)
    xb, fb, conv, msg = best
    dispersion = max(float(np.max(np.abs(xr - xb))) for xr, *_ in runs)
    if cfg.trace_path is not None:
        write_trace(cfg.trace_path, counter.rows, x.size)
    return OptResult(
        x=xb,
        f=fb,
        evals=counter.evals,
        converged=all(r[2] for r in runs),
        dispersion=dispersion,
        message=msg,
    )


def write_trace(path, rows, dim, violation=None):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eval", *[f"x{i}" for i in range(dim)], "f", "violation"])
        for row in rows:
            writer.writerow([*row, 0.0 if violation is None else violation])


def maximize_eq_constrained(
    objective, equalities, lower, upper, cfg: OptimizerConfig | None = None, x0=None
) -> OptResult:
    """Maximize ``objective`` subject to ``equalities(x) == 0`` on a box.

    Augmented Lagrangian: each outer iteration maximizes
    ``f - (rho / 2) * sum((h + lam / rho) ** 2)`` with :func:`maximize_bounded`,
    then updates ``lam += rho * h``. The penalty ``rho`` grows by
    ``cfg.penalty_growth`` whenever the violation did not halve. If the
    violation fails to decrease for three consecutive outer iterations the
    problem is declared divergent.
    """
    cfg = cfg or OptimizerConfig()
    lower, upper = _validate_box(lower, upper)
    x = 0.5 * (lower + upper) if x0 is None else np.clip(np.asarray(x0, dtype=float).ravel(), lower, upper)
    h0 = np.atleast_1d(np.asarray(equalities(x), dtype=float))
    lam = np.zeros_like(h0)
    rho = cfg.penalty_init
    prev = math.inf
    stalled = 0
    history = []
    evals = 1
    inner_cfg = replace(cfg, trace_path=None)
    inner = None
    for outer in range(cfg.max_outer):
        lam_now, rho_now = lam.copy(), rho

        def merit(z, lam_now=lam_now, rho_now=rho_now):
            h = np.atleast_1d(np.asarray(equalities(z), dtype=float))
            return objective(z) - 0.5 * rho_now * float(np.sum((h + lam_now / rho_now) ** 2))

        inner = maximize_bounded(merit, lower, upper, replace(inner_cfg, seed=cfg.seed + outer), x0=x)
        evals += inner.evals
        x = inner.x
        h = np.atleast_1d(np.asarray(equalities(x), dtype=float))
        viol = float(np.max(np.abs(h)))
        history.append({"outer": outer, "violation": viol, "rho": rho, "f": float(objective(x))})
        lam = lam + rho * h
        if viol <= cfg.ctol and inner.converged:
            return OptResult(
                x=x,
                f=float(objective(x)),
                evals=evals,
                converged=True,
                constraint_violation=viol,
                dispersion=inner.dispersion,
                message="constraints satisfied",
                multipliers=lam,
                history=history,
            )
        if viol >= 0.99 * prev:
            stalled += 1
            if stalled >= 3:
                raise DivergenceError(
                    f"constraint violation stopped decreasing at {viol:.3g}",
                    [row["violation"] for row in history],
                )
        else:
            stalled = 0
        if viol > 0.5 * prev:
            rho *= cfg.penalty_growth
        prev = viol
    return OptResult(
        x=x,
        f=float(objective(x)),
        evals=evals,
        converged=False,
        constraint_violation=history[-1]["violation"],
        dispersion=inner.dispersion if inner else 0.0,
        message="outer iteration limit reached",
        multipliers=lam,
        history=history,
    )


def grid_oracle(objective, lower, upper, points_per_dim: int = 21, refine: int = 1, zoom: int = 2) -> OptResult:
    """Best point of a regular grid, followed by ``refine`` zoomed re-gridding passes.

    Each pass re-grids ``zoom`` cells either side of the incumbent with the
    same number of points per dimension, clipped to the box. Intended for
    verification only, so the dimension is limited to three.
    """
    lower, upper = _validate_box(lower, upper)
    dim = lower.size
    if dim > 3:
        raise ValueError("grid_oracle supports at most 3 dimensions")
    if points_per_dim < 2:
        raise ValueError("points_per_dim must be >= 2")
    lo, hi = lower.copy(), upper.copy()
    best_x, best_f = None, -math.inf
    evals = 0
    for level in range(refine + 1):
        axes = [np.linspace(lo[d], hi[d], points_per_dim) for d in range(dim)]
        for point in itertools.product(*axes):
            x = np.array(point)
            f = float(objective(x.copy()))
            evals += 1
            if math.isfinite(f) and f > best_f:
                best_x, best_f = x, f
        if best_x is None:
            raise ConvergenceError("objective is not finite anywhere on the grid")
        h = (hi - lo) / (points_per_dim - 1)
        lo = np.maximum(best_x - zoom * h, lower)
        hi = np.minimum(best_x + zoom * h, upper)
        if np.any(hi <= lo):
            break
    return OptResult(x=best_x, f=best_f, evals=evals, converged=True, message=f"{refine} refinement passes")
