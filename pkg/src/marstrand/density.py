"""Push-forward of the cover mass under projection, and its mollification.

Each square sends mass ``diam**s`` to its projected interval, spread
uniformly, so the push-forward density at cover resolution is a step
function whose integral is the cover mass.  Spreading uniformly instead of
with the true trapezoidal profile changes values by at most ``sqrt(2)``,
which also gives the pointwise domination ``density <= sqrt(2) * profile``.

The mollified density is the exact sliding-window average of the step
function; it is piecewise linear, so its squared integral is evaluated
exactly on a grid that includes every kink.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covers import DyadicCover
from .projection import interval_arrays, profile_l2_squared, square_arrays, step_data
from .stepfn import StepFunction


@dataclass(frozen=True)
class PushforwardDensity:
    fn: StepFunction
    mass: float

    def __call__(self, x):
        return self.fn(x)


def pushforward_density(cover: DyadicCover, theta: float) -> PushforwardDensity:
    """Density of the projected cover mass, at cover resolution."""
    if not cover.squares:
        return PushforwardDensity(StepFunction.zero(), 0.0)
    cx, cy, side, level = square_arrays(cover.squares)
    lo, hi = interval_arrays(cx, cy, side, theta)
    w = 2.0 ** (cover.s * (0.5 - level)) / (hi - lo)  # diam**s spread over the interval
    bp, vals, _ = step_data(lo, hi, w)
    fn = StepFunction(bp, vals)
    return PushforwardDensity(fn, fn.integral())


def mollified_density(d: PushforwardDensity, eps: float, x):
    """Window average ``(1/2 eps) * integral of the density over [x-eps, x+eps]``.

    Exact from the step function's cumulative integral; accepts scalars or
    arrays.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    arr = np.asarray(x, dtype=float)
    out = (d.fn.cumulative(arr + eps) - d.fn.cumulative(arr - eps)) / (2.0 * eps)
    return out if arr.ndim else float(out)


def l2_norm(f: StepFunction) -> float:
    """``sqrt(sum value**2 * gap)``."""
    return f.l2_norm()


def mollified_l2_squared(d: PushforwardDensity, eps: float, grid_step: float | None = None) -> float:
    """Squared L2 norm of the mollified density.

    Evaluates on a regular grid of step ``eps/16`` (by default) extended
    ``2*eps`` beyond the support, augmented with every kink ``breakpoint +-
    eps``; the mollified density is piecewise linear between those nodes, so
    the per-cell rule ``len * (va^2 + va*vb + vb^2) / 3`` integrates it
    exactly and refining the grid does not change the value.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    bp = d.fn.breakpoints
    if bp.size == 0:
        return 0.0
    step = eps / 16.0 if grid_step is None else float(grid_step)
    start = bp[0] - 2.0 * eps
    stop = bp[-1] + 2.0 * eps
    nodes = np.arange(start, stop + step, step)
    kinks = np.concatenate((bp - eps, bp + eps))
    nodes = np.unique(np.concatenate((nodes, kinks[(kinks > start) & (kinks < stop)])))
    vals = mollified_density(d, eps, nodes)
    va, vb = vals[:-1], vals[1:]
    return float(np.sum(np.diff(nodes) * (va**2 + va * vb + vb**2) / 3.0))


def domination_ratio(
    cover: DyadicCover,
    theta: float,
    eps: float,
    grid_step: float | None = None,
) -> float:
    """Squared-norm ratio of the mollified density to the projection profile.

    Requires ``eps`` at least the cover's diameter (largest square diameter),
    the regime where the window average is controlled by the profile.
    """
    diameter = cover.diameter()
    if eps < diameter:
        raise ValueError(f"eps {eps} below cover diameter {diameter}")
    d = pushforward_density(cover, theta)
    num = mollified_l2_squared(d, eps, grid_step)
    den = profile_l2_squared(cover, theta)
    return num / den
