"""Orthogonal projections of dyadic squares and their weighted profiles.

The line through the origin in direction ``v = (cos theta, sin theta)`` is
coordinatized by the scalar ``t = <p, v>``, so the projection of a square is
the closed interval centered at the projected center with half-width
``(side/2) * (|cos theta| + |sin theta|)``.  The weighted profile of a cover
is the step function ``sum over squares of diam**(s-1) * indicator of the
projected interval``; its integral recovers the cover mass up to a factor
between ``1/sqrt(2)`` and ``1``, and its squared integral is the object the
transversality estimates control.

Angles are plain radians; only ``[-pi/2, pi/2]`` is ever swept since opposite
directions give the same line.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .covers import DyadicCover
from .dyadic import DyadicSquare
from .stepfn import StepFunction

_TWO_PI = 2.0 * math.pi


class Interval(NamedTuple):
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


# ---------------------------------------------------------------------------
# array kernels (shared by the angle sweeps)


def square_arrays(squares) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Centers, sides and levels of a square family as flat arrays."""
    n = len(squares)
    cx = np.empty(n)
    cy = np.empty(n)
    side = np.empty(n)
    level = np.empty(n)
    for i, q in enumerate(squares):
        sd = q.side
        cx[i] = (q.ix + 0.5) * sd
        cy[i] = (q.iy + 0.5) * sd
        side[i] = sd
        level[i] = q.level
    return cx, cy, side, level


def profile_weights(level: np.ndarray, s: float) -> np.ndarray:
    """``diam**(s-1)`` per square from the level array."""
    return 2.0 ** ((s - 1.0) * (0.5 - level))


def interval_arrays(cx, cy, side, theta: float) -> tuple[np.ndarray, np.ndarray]:
    c, sn = math.cos(theta), math.sin(theta)
    mid = cx * c + cy * sn
    half = 0.5 * side * (abs(c) + abs(sn))
    return mid - half, mid + half


def step_data(lo, hi, w) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Breakpoints, gap values and gap coverage counts of ``sum w_i * chi_i``.

    Coverage counts are accumulated in integers, so the support is exact and
    float cancellation noise outside it is forced to zero.
    """
    pos = np.concatenate((lo, hi))
    delta = np.concatenate((w, -np.asarray(w, dtype=float)))
    sign = np.concatenate((np.ones(len(lo), dtype=np.int64), -np.ones(len(hi), dtype=np.int64)))
    order = np.argsort(pos, kind="stable")
    pos = pos[order]
    csum = np.cumsum(delta[order])
    ccount = np.cumsum(sign[order])
    last = np.empty(pos.size, dtype=bool)
    last[:-1] = pos[1:] != pos[:-1]
    last[-1] = True
    bp = pos[last]
    vals = csum[last][:-1]
    counts = ccount[last][:-1]
    vals = np.where(counts > 0, np.maximum(vals, 0.0), 0.0)
    return bp, vals, counts


def union_measure_arrays(lo, hi) -> float:
    bp, _, counts = step_data(lo, hi, np.ones(len(lo)))
    return float(np.sum(np.diff(bp)[counts > 0]))


# ---------------------------------------------------------------------------
# square-level operations


def project_square(square: DyadicSquare, theta: float) -> Interval:
    """Projection of a square, as an interval in line coordinates.

    Its length is ``side * (|cos theta| + |sin theta|)``, always between
    ``diam/sqrt(2)`` and ``diam``.
    """
    c, sn = math.cos(theta), math.sin(theta)
    cx, cy = square.center
    mid = cx * c + cy * sn
    half = 0.5 * square.side * (abs(c) + abs(sn))
    return Interval(mid - half, mid + half)


def union_measure(intervals) -> float:
    """Lebesgue measure of a union of intervals (endpoint sort and sweep)."""
    pairs = sorted((float(lo), float(hi)) for lo, hi in intervals)
    total = 0.0
    cur_lo, cur_hi = None, None
    for lo, hi in pairs:
        if hi < lo:
            raise ValueError("interval with hi < lo")
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return total


def projection_profile(cover: DyadicCover, theta: float) -> StepFunction:
    """The weighted indicator sum of the cover's projections."""
    if not cover.squares:
        return StepFunction.zero()
    cx, cy, side, level = square_arrays(cover.squares)
    lo, hi = interval_arrays(cx, cy, side, theta)
    bp, vals, _ = step_data(lo, hi, profile_weights(level, cover.s))
    return StepFunction(bp, vals)


def profile_integral(cover: DyadicCover, theta: float) -> float:
    """Closed-form integral: sum of weight times projected length."""
    if not cover.squares:
        return 0.0
    _, _, side, level = square_arrays(cover.squares)
    c, sn = math.cos(theta), math.sin(theta)
    lengths = side * (abs(c) + abs(sn))
    return float(np.dot(profile_weights(level, cover.s), lengths))


def profile_l2_squared(cover: DyadicCover, theta: float) -> float:
    """Exact integral of the squared profile, from its step representation."""
    return projection_profile(cover, theta).l2_norm_sq()


def profile_l2_squared_pairwise(cover: DyadicCover, theta: float) -> float:
    """Quadratic-cost oracle for the squared-profile integral.

    Sums ``w_i * w_j * overlap(I_i, I_j)`` over all ordered pairs; intended
    for cross-checking on covers of at most a few hundred squares.
    """
    if not cover.squares:
        return 0.0
    cx, cy, side, level = square_arrays(cover.squares)
    lo, hi = interval_arrays(cx, cy, side, theta)
    w = profile_weights(level, cover.s)
    overlap = np.maximum(
        np.minimum(hi[:, None], hi[None, :]) - np.maximum(lo[:, None], lo[None, :]), 0.0
    )
    return float(w @ overlap @ w)


# ---------------------------------------------------------------------------
# transversality: the set of angles where two projections meet


def overlap_angle_measure_many(dx, dy, r) -> np.ndarray:
    """Measure of ``{theta in [-pi/2, pi/2]: |dx cos + dy sin| <= r (|cos|+|sin|)}``.

    ``dx, dy`` are center differences and ``r`` the mean of the two sides.
    On each sign-quadrant of theta the condition is a pair of half-line
    constraints linear in ``tan theta``, so the solution is one interval per
    quadrant and the measure is a difference of arctangents; exact up to
    rounding.
    """
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    r = np.broadcast_to(np.asarray(r, dtype=float), dx.shape)
    total = np.zeros(dx.shape)
    for sign, dom_lo, dom_hi in ((1.0, 0.0, np.inf), (-1.0, -np.inf, 0.0)):
        lo_a, hi_a = _half_line_ge(dx + r, dy + sign * r)
        lo_b, hi_b = _half_line_ge(-(dx - r), -(dy - sign * r))
        lo = np.maximum(np.maximum(lo_a, lo_b), dom_lo)
        hi = np.minimum(np.minimum(hi_a, hi_b), dom_hi)
        total += np.maximum(np.arctan(hi) - np.arctan(lo), 0.0)
    return total


def _half_line_ge(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Solution of ``a + b*t >= 0`` as a t-interval (lo, hi), possibly empty."""
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.where(b != 0, -a / np.where(b != 0, b, 1.0), 0.0)
    lo = np.where(b > 0, root, -np.inf)
    hi = np.where(b < 0, root, np.inf)
    empty = (b == 0) & (a < 0)
    lo = np.where(empty, np.inf, lo)
    hi = np.where(empty, -np.inf, hi)
    return lo, hi


def overlap_angle_measure(a: DyadicSquare, b: DyadicSquare) -> float:
    """Measure of the set of angles where the two projections intersect.

    Equals pi when the centers coincide; always positive, since some angle
    aligns the centers.
    """
    ax, ay = a.center
    bx, by = b.center
    r = 0.5 * (a.side + b.side)
    return float(overlap_angle_measure_many(np.array([ax - bx]), np.array([ay - by]), np.array([r]))[0])


def transversality_bound(a: DyadicSquare, b: DyadicSquare) -> float:
    """Upper bound ``2*pi*max(diam_a, diam_b) / |center_a - center_b|``.

    May exceed pi (then it is vacuous; cap when reporting).  Raises for
    coincident centers, where the exact overlap-angle measure pi applies.
    """
    ax, ay = a.center
    bx, by = b.center
    dist = math.hypot(ax - bx, ay - by)
    if dist == 0.0:
        raise ValueError("coincident centers: use the exact measure pi instead")
    return _TWO_PI * max(a.diam, b.diam) / dist
