"""Good dyadic covers via bottom-up merging.

A cover is *good* when, for every dyadic square ``Q``, the mass
``sum(diam**s)`` of cover elements inside ``Q`` stays below a constant times
``diam(Q)**s``.  Starting from a one-level discretization, the builder walks
levels from deepest to the root and replaces the contents of any square whose
interior mass strictly exceeds ``tau * diam(Q)**s`` by ``Q`` itself; ancestors
see the merged subtree's reduced mass, so a single bottom-up pass cascades
correctly.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

from .dyadic import DyadicSquare, diam_power, mass
from .fractals import DiscretizedSet

# Relative slack for the merge comparison: masses of exactly self-similar
# subtrees equal tau * diam(Q)**s only up to float accumulation, and such ties
# must not merge.
_TIE_SLACK = 1e-12


@dataclass(frozen=True)
class DyadicCover:
    """Disjoint dyadic squares with their mass exponent and merge threshold."""

    squares: tuple[DyadicSquare, ...] = field(repr=False)
    s: float = 1.0
    tau: float | None = None

    def mass(self) -> float:
        return mass(self.squares, self.s)

    def diameter(self) -> float:
        """Largest square diameter (the family's mesh)."""
        return max(q.diam for q in self.squares) if self.squares else 0.0


def cover_from_set(ds: DiscretizedSet, s: float | None = None) -> DyadicCover:
    """The trivial cover made of the set's own squares."""
    return DyadicCover(ds.squares, ds.s if s is None else s, None)


def build_good_cover(
    ds: DiscretizedSet,
    s: float,
    tau: float = 1.0,
    merge_log: list | None = None,
) -> DyadicCover:
    """Merge the set's squares bottom-up into a good cover.

    Strict inequality (up to float-tie slack) drives merges, so exactly
    self-similar masses at threshold are left intact.  If ``merge_log`` is a
    list it receives ``(square, absorbed_mass)`` per merge; each absorbed mass
    exceeds ``tau * diam**s`` while the replacement contributes ``diam**s``.
    """
    if not ds.squares:
        raise ValueError("cannot cover an empty set")
    if tau <= 0:
        raise ValueError("tau must be positive")
    level = ds.level
    current: dict[tuple[int, int], tuple[float, list[DyadicSquare]]] = {
        (q.ix, q.iy): (diam_power(level, s), [q]) for q in ds.squares
    }
    for lv in range(level - 1, -1, -1):
        grouped: dict[tuple[int, int], list[tuple[float, list[DyadicSquare]]]] = defaultdict(list)
        for (ix, iy), item in current.items():
            grouped[(ix >> 1, iy >> 1)].append(item)
        w_node = diam_power(lv, s)
        threshold = tau * w_node * (1.0 + _TIE_SLACK)
        current = {}
        for key, items in grouped.items():
            m = math.fsum(item[0] for item in items)
            if m > threshold:
                q = DyadicSquare(lv, key[0], key[1])
                if merge_log is not None:
                    merge_log.append((q, m))
                current[key] = (w_node, [q])
            else:
                current[key] = (m, [q for item in items for q in item[1]])
    squares = sorted(q for _, elems in current.values() for q in elems)
    return DyadicCover(tuple(squares), s, tau)


def goodness_constant(cover: DyadicCover) -> float:
    """Max over all dyadic squares ``Q`` of (cover mass inside ``Q``) / diam(Q)**s.

    ``Q`` ranges over every level from the deepest cover element up to the
    root; squares containing no cover element contribute nothing.  One
    bottom-up aggregation pass.
    """
    if not cover.squares:
        return 0.0
    s = cover.s
    by_level: dict[int, list[DyadicSquare]] = defaultdict(list)
    for q in cover.squares:
        by_level[q.level].append(q)
    deepest = max(by_level)
    best = 0.0
    parts: dict[tuple[int, int], list[float]] = defaultdict(list)
    for lv in range(deepest, -1, -1):
        w_own = diam_power(lv, s)
        for q in by_level.get(lv, ()):
            parts[(q.ix, q.iy)].append(w_own)
        merged: dict[tuple[int, int], list[float]] = defaultdict(list)
        for (ix, iy), vals in parts.items():
            m = math.fsum(vals)
            ratio = m / w_own
            if ratio > best:
                best = ratio
            merged[(ix >> 1, iy >> 1)].append(m)
        parts = merged
    return best


def goodness_bound(s: float, tau: float) -> float:
    """A priori ceiling ``max(1, tau * 2**(2-s))`` for built covers."""
    return max(1.0, tau * 2.0 ** (2.0 - s))


def covers_set(cover: DyadicCover, ds: DiscretizedSet) -> bool:
    """True iff every set square has an ancestor-or-self in the cover (exact)."""
    keys = {(q.level, q.ix, q.iy) for q in cover.squares}
    levels = sorted({q.level for q in cover.squares})
    for q in ds.squares:
        if not any(
            lv <= q.level and (lv, q.ix >> (q.level - lv), q.iy >> (q.level - lv)) in keys
            for lv in levels
        ):
            return False
    return True
