"""Piecewise-constant functions on the real line.

A ``StepFunction`` holds strictly increasing breakpoints and one value per
gap; it is zero outside ``[breakpoints[0], breakpoints[-1])``.  Arrays are
frozen after construction so instances can be shared across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StepFunction:
    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        bp = np.asarray(self.breakpoints, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if bp.ndim != 1 or vals.ndim != 1:
            raise ValueError("breakpoints and values must be 1-d")
        expected = 0 if bp.size == 0 else bp.size - 1
        if vals.size != expected:
            raise ValueError(f"expected {expected} gap values, got {vals.size}")
        if bp.size and not np.all(np.diff(bp) > 0):
            raise ValueError("breakpoints must be strictly increasing")
        if not (np.all(np.isfinite(bp)) and np.all(np.isfinite(vals))):
            raise ValueError("breakpoints and values must be finite")
        bp = bp.copy()
        vals = vals.copy()
        bp.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls) -> StepFunction:
        return cls(np.empty(0), np.empty(0))

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def __call__(self, x):
        """Evaluate (right-continuous on gaps, zero outside the support)."""
        arr = np.asarray(x, dtype=float)
        if self.values.size == 0:
            out = np.zeros_like(arr)
        else:
            idx = np.searchsorted(self.breakpoints, arr, side="right") - 1
            valid = (idx >= 0) & (idx < self.values.size)
            out = np.where(valid, self.values[np.clip(idx, 0, self.values.size - 1)], 0.0)
        return out if arr.ndim else float(out)

    def integral(self) -> float:
        if self.values.size == 0:
            return 0.0
        return float(np.dot(self.values, self.gaps))

    def l2_norm_sq(self) -> float:
        if self.values.size == 0:
            return 0.0
        return float(np.dot(self.values**2, self.gaps))

    def l2_norm(self) -> float:
        return float(np.sqrt(self.l2_norm_sq()))

    def cumulative(self, x):
        """Integral from -inf to ``x`` (exact; piecewise linear in ``x``)."""
        arr = np.asarray(x, dtype=float)
        if self.values.size == 0:
            out = np.zeros_like(arr)
            return out if arr.ndim else 0.0
        prefix = np.concatenate(([0.0], np.cumsum(self.values * self.gaps)))
        idx = np.clip(np.searchsorted(self.breakpoints, arr, side="right") - 1, 0, self.values.size - 1)
        inside = prefix[idx] + self.values[idx] * (arr - self.breakpoints[idx])
        out = np.where(arr <= self.breakpoints[0], 0.0, np.where(arr >= self.breakpoints[-1], prefix[-1], inside))
        return out if arr.ndim else float(out)

    def integral_between(self, a: float, b: float) -> float:
        if b < a:
            raise ValueError("need a <= b")
        return float(self.cumulative(b) - self.cumulative(a))
