"""Brute-force oracles used to check the catalog's closed forms.

Nothing in the product path calls this module; it exists so tests can
confront every closed-form conjugate and prox with an independent
numeric estimate.  Conjugates come from a refined grid maximization of
<x, x*> - f(x); proxes from golden-section search (cyclic over
coordinates beyond one dimension).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import INF, as_vector, inner

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Search box and resolution for the grid oracles."""

    lo: float = -50.0
    hi: float = 50.0
    points_per_axis: Optional[int] = None
    refine_rounds: int = 3

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"grid requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.points_per_axis is not None and self.points_per_axis < 3:
            raise ValueError("points_per_axis must be at least 3")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be nonnegative")

    def resolve_points(self, dim):
        if self.points_per_axis is not None:
            return self.points_per_axis
        return 20001 if dim == 1 else 201


@dataclass(frozen=True)
class GridMax:
    """Result of a grid maximization.

    ``on_boundary`` means the final incumbent sits on the edge of the
    original box, i.e. divergence of the supremum is suspected.
    """

    value: float
    argmax: np.ndarray
    on_boundary: bool


def _batch_values(f, points):
    if f.value_batch is not None:
        return np.asarray(f.value_batch(points), dtype=float)
    return np.array([f.value(p) for p in points])


def _scan_box(f, x_star, lows, highs, n):
    axes = [np.linspace(lows[i], highs[i], n) for i in range(len(lows))]
    if len(axes) == 1:
        points = axes[0][:, None]
    else:
        mesh = np.meshgrid(*axes, indexing="ij")
        points = np.stack([m.ravel() for m in mesh], axis=1)
    objective = points @ x_star - _batch_values(f, points)
    objective = np.where(np.isnan(objective), -INF, objective)
    top = float(np.max(objective))
    if top == -INF:
        return top, points[0]
    # break ties toward the box center so a flat objective does not fake
    # a boundary incumbent
    near = objective >= top - 1e-12 * (1.0 + abs(top))
    center = 0.5 * (lows + highs)
    cand = points[near]
    idx = int(np.argmin(np.sum((cand - center) ** 2, axis=1)))
    return top, cand[idx]


def numeric_conjugate(f, x_star, grid=GridSpec()):
    """Estimate f*(x*) = sup_x <x, x*> - f(x) from below on a grid.

    Supports dim <= 2.  Each refinement round shrinks the box tenfold
    around the incumbent (clipped to the original box).  An incumbent
    that ends on the original boundary is flagged: the true supremum is
    then suspected to be +inf.
    """
    if f.dim > 2:
        raise ValueError(f"numeric_conjugate supports dim <= 2, got {f.dim}")
    x_star = as_vector(x_star, f.dim, "x_star")
    n = grid.resolve_points(f.dim)

    lows = np.full(f.dim, grid.lo)
    highs = np.full(f.dim, grid.hi)
    best_val, best_arg = _scan_box(f, x_star, lows, highs, n)
    half_width = 0.5 * (grid.hi - grid.lo)
    for _ in range(grid.refine_rounds):
        half_width /= 10.0
        lows = np.clip(best_arg - half_width, grid.lo, grid.hi)
        highs = np.clip(best_arg + half_width, grid.lo, grid.hi)
        val, arg = _scan_box(f, x_star, lows, highs, n)
        if val > best_val:
            best_val, best_arg = val, arg

    if best_val == -INF:
        raise ValueError("objective is -inf on the entire grid")

    spacing = (grid.hi - grid.lo) / (n - 1)
    on_boundary = bool(
        np.any(best_arg <= grid.lo + spacing) or np.any(best_arg >= grid.hi - spacing)
    )
    return GridMax(value=best_val, argmax=best_arg, on_boundary=on_boundary)


def _line_points(p, axis, ts):
    points = np.repeat(p[None, :], ts.size, axis=0)
    points[:, axis] = ts
    return points


def _golden(g, a, b, iters=200, xtol=1e-11):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    gc = g(c)
    gd = g(d)
    for _ in range(iters):
        if b - a < xtol:
            break
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - _INVPHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INVPHI * (b - a)
            gd = g(d)
    mid = 0.5 * (a + b)
    return mid, g(mid)


def numeric_prox(f, gamma, z, grid=GridSpec(), sweeps=200):
    """Minimize 0.5*||p - z||^2 + gamma*f(p) by coordinate golden section.

    Supports dim <= 3.  Each coordinate pass first scans the line on a
    coarse batch grid to bracket the minimizer (this steps over +inf
    plateaus), then golden-section refines; updates are accepted only
    when the objective improves.
    """
    if f.dim > 3:
        raise ValueError(f"numeric_prox supports dim <= 3, got {f.dim}")
    if not gamma > 0.0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    z = as_vector(z, f.dim, "z")

    def objective(p):
        d = p - z
        return 0.5 * float(np.dot(d, d)) + gamma * f.value(p)

    def objective_batch(points):
        d = points - z
        return 0.5 * np.sum(d * d, axis=1) + gamma * _batch_values(f, points)

    p = np.clip(z, grid.lo, grid.hi)
    best = objective(p)
    ts = np.linspace(grid.lo, grid.hi, 1001)
    for _ in range(sweeps):
        moved = 0.0
        for axis in range(f.dim):
            line_vals = objective_batch(_line_points(p, axis, ts))
            finite = np.isfinite(line_vals)
            if not np.any(finite):
                continue
            idx = int(np.argmin(np.where(finite, line_vals, INF)))
            lo_b = ts[max(idx - 1, 0)]
            hi_b = ts[min(idx + 1, ts.size - 1)]

            def along(t, axis=axis):
                q = p.copy()
                q[axis] = t
                return objective(q)

            # keep the scanned grid candidate: golden section can miss
            # minimizers isolated inside an infinite plateau
            t_new, val_new = _golden(along, lo_b, hi_b)
            if float(line_vals[idx]) < val_new:
                t_new, val_new = float(ts[idx]), float(line_vals[idx])
            if val_new < best:
                moved = max(moved, abs(t_new - p[axis]))
                p = p.copy()
                p[axis] = t_new
                best = val_new
        if moved < 1e-12:
            break
    return p


def sampled_fitzpatrick(A, x, x_star, samples):
    """Lower estimate of F_A(x, x*) - <x, x*> from explicit graph samples.

    Every sample must lie in gr A (checked; ValueError names the
    offender).  The estimate increases toward the true value as the
    samples fill the graph.
    """
    x = as_vector(x, A.dim, "x")
    x_star = as_vector(x_star, A.dim, "x_star")
    pts = list(samples)
    if not pts:
        raise ValueError("samples must contain at least one graph pair")
    best = -INF
    for i, (a, a_star) in enumerate(pts):
        a = as_vector(a, A.dim, f"a_{i + 1}")
        a_star = as_vector(a_star, A.dim, f"a_star_{i + 1}")
        if not A.graph_contains(a, a_star):
            raise ValueError(f"sample {i + 1} is not in the graph of {A.name}")
        value = inner(x, a_star) + inner(a, x_star) - inner(a, a_star)
        if value > best:
            best = value
    return best - inner(x, x_star)
