import numpy as np
import pytest

from marstrand import DyadicCover, DyadicSquare, FractalSpec


FULL2 = FractalSpec(2, ((0, 0), (0, 1), (1, 0), (1, 1)), "full")
CARPET = FractalSpec(4, tuple((dx, dy) for dx in (0, 2, 3) for dy in (0, 2, 3)), "carpet")
DIAGONAL = FractalSpec(4, ((0, 0), (1, 1), (2, 2)), "diagonal")


@pytest.fixture
def full2():
    return FULL2


@pytest.fixture
def carpet():
    return CARPET


@pytest.fixture
def diagonal():
    return DIAGONAL


def random_square(rng, max_level=8) -> DyadicSquare:
    lv = int(rng.integers(0, max_level + 1))
    n = 1 << lv
    return DyadicSquare(lv, int(rng.integers(0, n)), int(rng.integers(0, n)))


def random_cover(rng, n_target, max_level=6, s=1.5) -> DyadicCover:
    """Random disjoint dyadic family: accept squares that conflict with none."""
    keys: set[tuple[int, int, int]] = set()
    ancestors: set[tuple[int, int, int]] = set()
    squares = []
    for _ in range(n_target * 6):
        q = random_square(rng, max_level)
        key = (q.level, q.ix, q.iy)
        if key in ancestors or key in keys:
            continue
        if any((lv, q.ix >> (q.level - lv), q.iy >> (q.level - lv)) in keys for lv in range(q.level)):
            continue
        keys.add(key)
        for lv in range(q.level):
            ancestors.add((lv, q.ix >> (q.level - lv), q.iy >> (q.level - lv)))
        squares.append(q)
        if len(squares) == n_target:
            break
    return DyadicCover(tuple(sorted(squares)), s, None)


def union_measure_oracle(intervals) -> float:
    """Pairwise-merge union measure, independent of the sweep implementation."""
    pool = [(float(lo), float(hi)) for lo, hi in intervals]
    merged = []
    while pool:
        lo, hi = pool.pop()
        changed = True
        while changed:
            changed = False
            for i, (a, b) in enumerate(merged):
                if a <= hi and lo <= b:
                    lo, hi = min(lo, a), max(hi, b)
                    merged.pop(i)
                    changed = True
                    break
        merged.append((lo, hi))
    return sum(b - a for a, b in merged)


def overlap_angle_oracle(a: DyadicSquare, b: DyadicSquare, step=1e-5) -> float:
    """Midpoint sampling of the projection-overlap condition over angles.

    Projections are closed intervals, so tangency counts as overlap; corner-
    touching lattice squares satisfy the condition with equality on a whole
    quadrant, and the 1e-12 slack keeps that boundary inclusive under float
    rounding.
    """
    thetas = np.arange(-np.pi / 2 + step / 2, np.pi / 2, step)
    c, s = np.cos(thetas), np.sin(thetas)
    ax, ay = a.center
    bx, by = b.center
    r = 0.5 * (a.side + b.side)
    hit = np.abs((ax - bx) * c + (ay - by) * s) <= r * (np.abs(c) + np.abs(s)) + 1e-12
    return float(np.count_nonzero(hit)) * step
