"""Digit-restricted self-similar subsets of the unit square.

A generator with base ``b = 2**k`` and a digit set ``D`` of pairs in
``{0..b-1}^2`` produces, at depth ``n``, the ``|D|**n`` dyadic squares of
level ``k*n`` whose base-``b`` expansions use only allowed digit pairs.
Power-of-two bases make every cell an exact dyadic square, so all downstream
combinatorics stay integer-exact.  The natural mass exponent is the
similarity dimension ``log|D| / log b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dyadic import MAX_LEVEL, DyadicSquare, diam_power


@dataclass(frozen=True)
class FractalSpec:
    """Base and digit set of a self-similar subset of ``[0,1)^2``."""

    base: int
    digits: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self) -> None:
        b = self.base
        if b < 2 or b & (b - 1):
            raise ValueError("base must be a power of two")
        digits = tuple(sorted({(int(dx), int(dy)) for dx, dy in self.digits}))
        if not digits:
            raise ValueError("digit set must be non-empty")
        for dx, dy in digits:
            if not (0 <= dx < b and 0 <= dy < b):
                raise ValueError(f"digit ({dx}, {dy}) outside [0, {b})^2")
        object.__setattr__(self, "digits", digits)

    @property
    def bits_per_step(self) -> int:
        """log2(base): dyadic levels added per refinement step."""
        return self.base.bit_length() - 1


@dataclass(frozen=True)
class DiscretizedSet:
    """All depth-``depth`` cells of a generator, as one dyadic level."""

    spec: FractalSpec
    depth: int
    squares: tuple[DyadicSquare, ...] = field(repr=False)
    s: float

    @property
    def level(self) -> int:
        return self.spec.bits_per_step * self.depth


def similarity_dimension(spec: FractalSpec) -> float:
    """``log|digits| / log base``, in [0, 2]."""
    return math.log(len(spec.digits)) / math.log(spec.base)


def squares_at_depth(spec: FractalSpec, depth: int) -> DiscretizedSet:
    """Expand the digit set ``depth`` times into level-``k*depth`` squares."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    level = spec.bits_per_step * depth
    if level > MAX_LEVEL:
        raise ValueError(f"depth overflow: level {level} exceeds {MAX_LEVEL}")
    cells = [(0, 0)]
    for _ in range(depth):
        cells = [
            (ix * spec.base + dx, iy * spec.base + dy)
            for ix, iy in cells
            for dx, dy in spec.digits
        ]
    cells.sort()
    squares = tuple(DyadicSquare(level, ix, iy) for ix, iy in cells)
    return DiscretizedSet(spec, depth, squares, similarity_dimension(spec))


def hausdorff_sum(ds: DiscretizedSet, s: float) -> float:
    """Sum of ``diam**s`` over the set's squares (all one level, so exact)."""
    return len(ds.squares) * diam_power(ds.level, s)


def regularity_scan(
    ds: DiscretizedSet,
    s: float,
    radii,
    samples: int,
    seed: int = 0,
) -> float:
    """Empirical upper-regularity constant of the depth-``n`` mass.

    Assigns each square mass ``diam**s`` normalized by the total, then takes
    the sup over sampled centers ``x`` and radii ``r`` of
    ``mass(ball(x, r)) / r**s``, counting squares lying entirely inside the
    open ball.  Centers are drawn one third uniformly on the unit square, one
    third from the set's cell centers and one third from centers of the
    cells' dyadic ancestors (cluster centers sit at coarse dyadic centers).
    Deterministic for a fixed seed.
    """
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    rng = np.random.default_rng(seed)
    n = len(ds.squares)
    level = ds.level
    side = ds.squares[0].side
    x0 = np.array([q.ix for q in ds.squares], dtype=float) * side
    y0 = np.array([q.iy for q in ds.squares], dtype=float) * side

    n_uniform = samples // 3
    n_cells = samples // 3
    centers = list(zip(rng.random(n_uniform), rng.random(n_uniform)))
    picks = rng.integers(0, n, size=n_cells)
    centers += [(x0[i] + 0.5 * side, y0[i] + 0.5 * side) for i in picks]
    for i in rng.integers(0, n, size=samples - n_uniform - n_cells):
        q = ds.squares[i]
        lv = int(rng.integers(0, level + 1))
        anc_side = 2.0**-lv
        centers.append(
            (((q.ix >> (level - lv)) + 0.5) * anc_side, ((q.iy >> (level - lv)) + 0.5) * anc_side)
        )

    unit_mass = 1.0 / n  # diam**s / hausdorff_sum, all squares one level
    best = 0.0
    for cx, cy in centers:
        # farthest-corner distance from (cx, cy) to each closed square
        fx = np.maximum(np.abs(cx - x0), np.abs(cx - (x0 + side)))
        fy = np.maximum(np.abs(cy - y0), np.abs(cy - (y0 + side)))
        far = np.hypot(fx, fy)
        for r in radii:
            inside = int(np.count_nonzero(far < r))
            if inside:
                best = max(best, inside * unit_mass / r**s)
    return best
