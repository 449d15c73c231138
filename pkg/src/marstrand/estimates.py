"""Angle sweeps and the double-counting energy bounds.

The central quantity is the energy of a cover: the integral over angles of
the squared projection profile.  Three routes compute or bound it:

* ``energy_quadrature`` -- midpoint quadrature of the per-angle squared
  profile over a grid (the numeric value);
* ``energy_pair_bound`` -- the exact pair sum ``w_i w_j min(diam_i, diam_j)
  * overlap_angle_measure``, an upper bound by construction;
* ``energy_transversal_bound`` -- the pair sum with each overlap-angle
  measure replaced by ``min(pi, transversality bound)``, plus the literal
  ``sum diam_i**s diam_j**s / dist`` with no cap.

The chain quadrature <= pair bound <= capped transversal bound holds
termwise.  Shell masses and good-angle sets instantiate the remaining steps
of the positivity argument at finite depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .covers import DyadicCover
from .dyadic import DyadicSquare, diam_power
from .projection import (
    interval_arrays,
    overlap_angle_measure_many,
    profile_weights,
    square_arrays,
    step_data,
)

#: Direct pair sums refuse covers larger than this unless told otherwise.
PAIR_CAP = 10_000

#: Uniform-level covers up to this level use lattice pair counting (FFT).
_FAST_LEVEL_MAX = 11

#: Covers smaller than this skip the FFT machinery regardless of level.
_FAST_MIN_SQUARES = 2_000


class CapExceeded(RuntimeError):
    """Pair sum would need more than the allowed quadratic work."""


class ShellMass(NamedTuple):
    j: int
    mass: float
    normalized: float  # mass / (2**-j)**s


@dataclass(frozen=True)
class ThetaGrid:
    """Midpoint grid on ``[-pi/2, pi/2]``: ``theta_j = -pi/2 + (j+1/2) pi/M``."""

    count: int

    def __post_init__(self) -> None:
        if self.count < 16:
            raise ValueError("grid needs at least 16 nodes")

    @property
    def weight(self) -> float:
        return math.pi / self.count

    @property
    def nodes(self) -> np.ndarray:
        m = self.count
        return -0.5 * math.pi + (np.arange(m) + 0.5) * (math.pi / m)


@dataclass(frozen=True)
class SweepReport:
    """Per-angle projection measure, profile integrals and the CS lower bound."""

    theta: np.ndarray = field(repr=False)
    m_proj: np.ndarray = field(repr=False)
    int_f: np.ndarray = field(repr=False)
    int_f2: np.ndarray = field(repr=False)
    cs_lower: np.ndarray = field(repr=False)

    def energy_quadrature(self) -> float:
        return (math.pi / len(self.theta)) * math.fsum(self.int_f2)


def sweep(cover: DyadicCover, grid: ThetaGrid) -> SweepReport:
    """Evaluate projection measure, profile integral and squared integral per node.

    ``cs_lower = int_f**2 / int_f2`` is the Cauchy-Schwarz lower bound for the
    projection measure.
    """
    nodes = grid.nodes
    m = len(nodes)
    m_proj = np.zeros(m)
    int_f = np.zeros(m)
    int_f2 = np.zeros(m)
    if cover.squares:
        cx, cy, side, level = square_arrays(cover.squares)
        w = profile_weights(level, cover.s)
        for i, theta in enumerate(nodes):
            lo, hi = interval_arrays(cx, cy, side, theta)
            bp, vals, counts = step_data(lo, hi, w)
            gaps = np.diff(bp)
            m_proj[i] = np.sum(gaps[counts > 0])
            int_f[i] = np.dot(w, hi - lo)
            int_f2[i] = np.dot(vals**2, gaps)
    with np.errstate(divide="ignore", invalid="ignore"):
        cs = np.where(int_f2 > 0, int_f**2 / np.where(int_f2 > 0, int_f2, 1.0), 0.0)
    return SweepReport(nodes, m_proj, int_f, int_f2, cs)


def energy_quadrature(cover: DyadicCover, grid: ThetaGrid, report: SweepReport | None = None) -> float:
    """Midpoint quadrature over angles of the squared-profile integral."""
    if report is None:
        report = sweep(cover, grid)
    return report.energy_quadrature()


@dataclass(frozen=True)
class TransversalBounds:
    capped: float  # min(pi, transversality bound) per pair, every term finite
    literal: float  # sum diam_i**s diam_j**s / dist over distinct-center pairs


def energy_pair_bound(cover: DyadicCover, max_squares: int | None = None) -> float:
    """Exact pair sum bounding the energy from above.

    Ordered pairs, self pairs included with overlap-angle measure pi.  Uses
    lattice pair counting for large one-level covers; otherwise quadratic
    work, refused above ``max_squares`` (default ``PAIR_CAP``).
    """
    return _pair_sums(cover, max_squares).pair


def energy_transversal_bound(cover: DyadicCover, max_squares: int | None = None) -> TransversalBounds:
    """Transversality-capped pair bound plus the literal inverse-distance sum.

    Coincident-center pairs use the exact overlap-angle measure pi in the
    capped sum and are excluded from the literal one (their literal term is
    infinite).
    """
    sums = _pair_sums(cover, max_squares)
    return TransversalBounds(sums.capped, sums.literal)


class _PairSums(NamedTuple):
    pair: float
    capped: float
    literal: float


def _pair_sums(cover: DyadicCover, max_squares: int | None) -> _PairSums:
    if max_squares is None:
        max_squares = PAIR_CAP
    n = len(cover.squares)
    if n == 0:
        return _PairSums(0.0, 0.0, 0.0)
    levels = {q.level for q in cover.squares}
    if len(levels) == 1:
        level = next(iter(levels))
        if n >= _FAST_MIN_SQUARES and level <= _FAST_LEVEL_MAX:
            return _pair_sums_lattice(cover, level)
    if n > max_squares:
        raise CapExceeded(
            f"cover has {n} squares; pair sums are quadratic. "
            f"Lower the depth, subsample, or raise max_squares (default {PAIR_CAP})."
        )
    return _pair_sums_direct(cover)


def _pair_sums_direct(cover: DyadicCover, block: int = 256) -> _PairSums:
    cx, cy, side, level = square_arrays(cover.squares)
    s = cover.s
    w = profile_weights(level, s)
    diam = math.sqrt(2.0) * side
    diam_s = 2.0 ** (s * (0.5 - level))
    n = len(cx)
    pair = 0.0
    capped = 0.0
    literal = 0.0
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        dx = cx[i0:i1, None] - cx[None, :]
        dy = cy[i0:i1, None] - cy[None, :]
        r = 0.5 * (side[i0:i1, None] + side[None, :])
        meas = overlap_angle_measure_many(dx, dy, r)
        ww_min = (w[i0:i1, None] * w[None, :]) * np.minimum(diam[i0:i1, None], diam[None, :])
        pair += float(np.sum(ww_min * meas))
        dist = np.hypot(dx, dy)
        maxdiam = np.maximum(diam[i0:i1, None], diam[None, :])
        coincident = dist == 0.0
        with np.errstate(divide="ignore"):
            lemma = np.where(coincident, math.pi, 2.0 * math.pi * maxdiam / np.where(coincident, 1.0, dist))
        capped += float(np.sum(ww_min * np.minimum(math.pi, lemma)))
        mass_prod = diam_s[i0:i1, None] * diam_s[None, :]
        literal += float(np.sum(np.where(coincident, 0.0, mass_prod / np.where(coincident, 1.0, dist))))
    return _PairSums(pair, capped, literal)


def _pair_sums_lattice(cover: DyadicCover, level: int) -> _PairSums:
    """Pair sums for a one-level cover via FFT autocorrelation of its grid.

    All pair quantities depend only on the lattice offset, so counting pairs
    per offset reduces the quadratic sum to the offset grid.
    """
    n = 1 << level
    grid = np.zeros((n, n))
    for q in cover.squares:
        grid[q.ix, q.iy] = 1.0
    f = np.fft.rfft2(grid, s=(2 * n, 2 * n))
    ac = np.fft.irfft2(f * f.conj(), s=(2 * n, 2 * n))
    # offsets d in [-(n-1), n-1]; circular index d mod 2n
    offs = np.arange(-(n - 1), n)
    counts = np.rint(ac[np.ix_(offs % (2 * n), offs % (2 * n))])
    mask = counts > 0.5
    cnt = counts[mask]
    side = 1.0 / n
    dxy = offs * side
    dx = np.broadcast_to(dxy[:, None], counts.shape)[mask]
    dy = np.broadcast_to(dxy[None, :], counts.shape)[mask]

    s = cover.s
    diam = math.sqrt(2.0) * side
    ww_min = diam_power(level, s - 1.0) ** 2 * diam  # w_i w_j min diam, all equal
    meas = overlap_angle_measure_many(dx, dy, np.full(dx.shape, side))
    pair = ww_min * float(np.dot(cnt, meas))

    dist = np.hypot(dx, dy)
    zero = dist == 0.0
    with np.errstate(divide="ignore"):
        lemma = np.where(zero, math.pi, 2.0 * math.pi * diam / np.where(zero, 1.0, dist))
    capped = ww_min * float(np.dot(cnt, np.minimum(math.pi, lemma)))
    mass_sq = diam_power(level, s) ** 2
    with np.errstate(divide="ignore"):
        inv = np.where(zero, 0.0, 1.0 / np.where(zero, 1.0, dist))
    literal = mass_sq * float(np.dot(cnt, inv))
    return _PairSums(pair, capped, literal)


def shell_masses(cover: DyadicCover, q: DyadicSquare) -> list[ShellMass]:
    """Cover mass per dyadic distance shell around the center of ``q``.

    Shell ``j`` holds cover squares whose centers lie at distance in
    ``(2**-(j+1), 2**-j]`` from ``q``'s center, with shell 0 absorbing all
    larger distances; coincident centers (``q`` itself) belong to no shell.
    ``normalized`` is ``mass / (2**-j)**s``, the per-shell constant bounded by
    the goodness of the cover.
    """
    if q not in cover.squares:
        raise ValueError("square is not a cover element")
    cx, cy, _, level = square_arrays(cover.squares)
    qx, qy = q.center
    dist = np.hypot(cx - qx, cy - qy)
    keep = dist > 0.0
    dist = dist[keep]
    if dist.size == 0:
        return []
    mantissa, exponent = np.frexp(dist)
    j = np.maximum(0, np.where(mantissa == 0.5, 1 - exponent, -exponent))
    weights = 2.0 ** (cover.s * (0.5 - level[keep]))
    masses = np.bincount(j, weights=weights)
    return [
        ShellMass(int(jj), float(masses[jj]), float(masses[jj] / 2.0 ** (-jj * cover.s)))
        for jj in range(len(masses))
        if masses[jj] > 0
    ]


@dataclass(frozen=True)
class GoodAngleSets:
    """Per-cover masks of angles with squared profile below ``1/eps``."""

    masks: tuple[np.ndarray, ...]
    limit: np.ndarray  # nodes in the tail union for every start index

    def fraction(self, i: int | None = None) -> float:
        arr = self.limit if i is None else self.masks[i]
        return float(np.count_nonzero(arr)) / len(arr)


def good_angle_sets(
    covers,
    grid: ThetaGrid,
    eps: float,
    reports: list[SweepReport] | None = None,
) -> GoodAngleSets:
    """Threshold masks per cover plus their finite tail-union limit.

    A node belongs to the limit mask when, for every start index ``i``, some
    cover at position ``j >= i`` admits it; over a finite list this is the
    last cover's mask, kept explicit as the finite surrogate for "infinitely
    many".
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if reports is None:
        reports = [sweep(c, grid) for c in covers]
    bound = 1.0 / eps
    masks = tuple(r.int_f2 < bound for r in reports)
    limit = np.ones(grid.count, dtype=bool)
    for i in range(len(masks)):
        tail = np.zeros(grid.count, dtype=bool)
        for j in range(i, len(masks)):
            tail |= masks[j]
        limit &= tail
    return GoodAngleSets(masks, limit)
