"""Dyadic squares of the half-open unit square, indexed exactly by integers.

A square at refinement ``level`` has side ``2**-level`` and lattice indices
``(ix, iy)`` with ``0 <= ix, iy < 2**level``; it occupies
``[ix*side, (ix+1)*side) x [iy*side, (iy+1)*side)``.  Containment,
disjointness and ancestry reduce to integer shifts, so those predicates are
exact.  Squares are weighted by powers of their *diameter* ``sqrt(2)*side``
throughout the package.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

#: Deepest refinement level; keeps lattice indices in 64-bit range and pair
#: distances well conditioned.
MAX_LEVEL = 30

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, order=True)
class DyadicSquare:
    """Lattice square of side ``2**-level`` inside ``[0,1)^2``."""

    level: int
    ix: int
    iy: int

    def __post_init__(self) -> None:
        if not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f"level must be in [0, {MAX_LEVEL}], got {self.level}")
        n = 1 << self.level
        if not (0 <= self.ix < n and 0 <= self.iy < n):
            raise ValueError(
                f"indices ({self.ix}, {self.iy}) outside [0, {n}) at level {self.level}"
            )

    @property
    def side(self) -> float:
        return 1.0 / (1 << self.level)

    @property
    def diam(self) -> float:
        """Diameter ``sqrt(2) * side``; all mass weights are powers of this."""
        return _SQRT2 * self.side

    @property
    def center(self) -> tuple[float, float]:
        s = self.side
        return ((self.ix + 0.5) * s, (self.iy + 0.5) * s)

    def contains(self, other: DyadicSquare) -> bool:
        """True iff ``other`` equals ``self`` or lies inside it (exact)."""
        if other.level < self.level:
            return False
        shift = other.level - self.level
        return (other.ix >> shift) == self.ix and (other.iy >> shift) == self.iy

    def contains_point(self, p: tuple[float, float]) -> bool:
        x, y = p
        s = self.side
        return self.ix * s <= x < (self.ix + 1) * s and self.iy * s <= y < (self.iy + 1) * s


@dataclass(frozen=True)
class BoundingBox:
    """Axis-parallel closed box inside the unit square."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.xmin <= self.xmax <= 1.0 and 0.0 <= self.ymin <= self.ymax <= 1.0):
            raise ValueError("box must satisfy 0 <= min <= max <= 1 in both coordinates")

    @property
    def diam(self) -> float:
        return math.hypot(self.xmax - self.xmin, self.ymax - self.ymin)


def diam_power(level: int, s: float) -> float:
    """``(sqrt(2) * 2**-level) ** s``, computed as a single base-2 power."""
    return 2.0 ** (s * (0.5 - level))


def mass(squares, s: float) -> float:
    """Sum of ``diam**s`` over a square family (compensated summation)."""
    return math.fsum(diam_power(q.level, s) for q in squares)


def locate(p: tuple[float, float], level: int) -> DyadicSquare:
    """The unique level-``level`` square containing ``p``.

    Raises ValueError for points outside ``[0,1)^2``.
    """
    x, y = p
    if not (0.0 <= x < 1.0 and 0.0 <= y < 1.0):
        raise ValueError(f"point {p!r} outside [0,1)^2")
    n = 1 << level
    return DyadicSquare(level, int(x * n), int(y * n))


def parent(q: DyadicSquare) -> DyadicSquare:
    """The level-``(level-1)`` square containing ``q``."""
    if q.level == 0:
        raise ValueError("the unit square has no parent")
    return DyadicSquare(q.level - 1, q.ix >> 1, q.iy >> 1)


def children(q: DyadicSquare) -> tuple[DyadicSquare, DyadicSquare, DyadicSquare, DyadicSquare]:
    """The four disjoint squares one level down whose union is ``q``."""
    lv, ix, iy = q.level + 1, q.ix << 1, q.iy << 1
    return (
        DyadicSquare(lv, ix, iy),
        DyadicSquare(lv, ix + 1, iy),
        DyadicSquare(lv, ix, iy + 1),
        DyadicSquare(lv, ix + 1, iy + 1),
    )


def cover_four(u: BoundingBox, *, degenerate_level: int = MAX_LEVEL) -> list[DyadicSquare]:
    """At most four squares of one level, each of side <= 2*|u|, covering ``u``.

    The level ``i`` satisfies ``2**-(i+1) <= |u| < 2**-i`` (clamped to
    ``[0, MAX_LEVEL]``), with ``|u|`` the box diagonal.  The returned squares
    are the level-``i`` squares meeting the box, anchored at the one
    containing its lower-left corner; because the box is smaller than one
    square it meets at most two per axis.  A degenerate box (``|u| == 0``)
    yields the single deepest-level square at its corner and a warning; boxes
    below the resolution floor ``2**-(MAX_LEVEL+1)`` also warn, since no
    representable square can satisfy ``side <= 2 * |u|`` there.
    """
    diag = u.diam
    if diag == 0.0:
        warnings.warn("degenerate box; returning one deepest-level square", stacklevel=2)
        n = 1 << degenerate_level
        ix = min(int(u.xmin * n), n - 1)
        iy = min(int(u.ymin * n), n - 1)
        return [DyadicSquare(degenerate_level, ix, iy)]
    # frexp: diag = m * 2**e with m in [0.5, 1), so 2**(e-1) <= diag < 2**e.
    _, e = math.frexp(diag)
    if -e > degenerate_level:
        warnings.warn("box below dyadic resolution; side bound unattainable", stacklevel=2)
    level = min(max(0, -e), degenerate_level)
    n = 1 << level
    ix0 = min(int(u.xmin * n), n - 1)
    iy0 = min(int(u.ymin * n), n - 1)
    ix1 = min(int(u.xmax * n), n - 1)
    iy1 = min(int(u.ymax * n), n - 1)
    return [
        DyadicSquare(level, ix, iy)
        for ix in range(ix0, ix1 + 1)
        for iy in range(iy0, iy1 + 1)
    ]


def validate_disjoint(squares) -> tuple[bool, tuple[DyadicSquare, DyadicSquare] | None]:
    """Check that no square contains or equals another (exact integer test).

    Returns ``(True, None)`` or ``(False, (contained, container))`` for the
    first offence in level-then-input order.
    """
    order = sorted(range(len(squares)), key=lambda i: (squares[i].level, i))
    seen: dict[tuple[int, int, int], DyadicSquare] = {}
    levels_present: list[int] = []
    for i in order:
        q = squares[i]
        key = (q.level, q.ix, q.iy)
        if key in seen:
            return False, (q, seen[key])
        for lv in levels_present:
            if lv == q.level:
                break
            anc = (lv, q.ix >> (q.level - lv), q.iy >> (q.level - lv))
            if anc in seen:
                return False, (q, seen[anc])
        if not levels_present or levels_present[-1] != q.level:
            levels_present.append(q.level)
        seen[key] = q
    return True, None
