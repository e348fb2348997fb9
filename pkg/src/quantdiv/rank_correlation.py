"""Kendall rank correlation with tie-aware guards and confidence intervals.

tau_b follows the tie-adjusted definition with a max(1, .) guard in the
denominator so fully tied lists give 0 instead of dividing by zero. Pairs
tied in either list (absolute difference <= tie_eps) are excluded from the
concordance counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

import numpy as np

from . import kernels
from .errors import LengthMismatch, OutOfRange, TooShort


@dataclass(frozen=True)
class PairCounts:
    """Pair tallies over all index pairs i < j of two aligned lists."""

    conc: int
    disc: int
    tied_x: int
    tied_y: int
    n: int

    @property
    def total_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def not_tied_x(self) -> int:
        return self.total_pairs - self.tied_x

    @property
    def not_tied_y(self) -> int:
        return self.total_pairs - self.tied_y


@dataclass(frozen=True)
class TauResult:
    tau: float
    ci_low: float
    ci_high: float
    n: int


def _as_arrays(xs: Sequence[float], ys: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    x = np.ascontiguousarray(xs, dtype=np.float64)
    y = np.ascontiguousarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise OutOfRange("inputs must be one-dimensional sequences")
    if x.shape[0] != y.shape[0]:
        raise LengthMismatch(f"lists have lengths {x.shape[0]} and {y.shape[0]}")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise OutOfRange("inputs must be finite")
    return x, y


def pair_counts(xs: Sequence[float], ys: Sequence[float], tie_eps: float = 0.0) -> PairCounts:
    """Tally concordant/discordant/tied pairs of two aligned lists."""
    if tie_eps < 0.0 or math.isnan(tie_eps):
        raise OutOfRange(f"tie_eps must be >= 0, got {tie_eps}")
    x, y = _as_arrays(xs, ys)
    n = x.shape[0]
    if n < 2:
        raise TooShort(f"need at least 2 items, got {n}")
    conc, disc, tied_x, tied_y = kernels.pair_stats(x, y, tie_eps)
    return PairCounts(conc=conc, disc=disc, tied_x=tied_x, tied_y=tied_y, n=n)


def tau_b(xs: Sequence[float], ys: Sequence[float], tie_eps: float = 0.0) -> float:
    """Tie-adjusted Kendall correlation in [-1, 1]; 0 when a list is fully tied.

    tau_b = (conc - disc) / sqrt(max(1, notTied_x) * max(1, notTied_y)),
    where notTied counts pairs not tied in that list. The single sqrt over
    the product keeps tau exactly +-1 for perfect agreement/reversal.
    """
    c = pair_counts(xs, ys, tie_eps)
    denom = math.sqrt(max(1, c.not_tied_x) * max(1, c.not_tied_y))
    return (c.conc - c.disc) / denom


def tau_plain(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Unadjusted Kendall correlation: (conc - disc) / (n (n - 1) / 2)."""
    c = pair_counts(xs, ys, tie_eps=0.0)
    return (c.conc - c.disc) / c.total_pairs


def tau_with_ci(
    xs: Sequence[float], ys: Sequence[float], confidence: float = 0.95
) -> TauResult:
    """tau_b (ties at exact equality) with a Fisher-transformed interval.

    The interval is tanh(artanh(tau) +- z * sqrt(0.437 / (n - 4))), the
    Fieller-Hartley-Pearson approximation for Kendall correlations. |tau| = 1
    collapses to the degenerate interval [tau, tau]; for n <= 4 the variance
    term is undefined and the interval falls back to [-1, 1].
    """
    if not 0.0 < confidence < 1.0:
        raise OutOfRange(f"confidence must be in (0, 1), got {confidence}")
    x, y = _as_arrays(xs, ys)
    n = x.shape[0]
    if n < 3:
        raise TooShort(f"need at least 3 items, got {n}")
    tau = tau_b(x, y, tie_eps=0.0)
    if tau >= 1.0:
        return TauResult(tau=1.0, ci_low=1.0, ci_high=1.0, n=n)
    if tau <= -1.0:
        return TauResult(tau=-1.0, ci_low=-1.0, ci_high=-1.0, n=n)
    if n <= 4:
        return TauResult(tau=tau, ci_low=-1.0, ci_high=1.0, n=n)
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    half_width = z * math.sqrt(0.437 / (n - 4))
    zt = math.atanh(tau)
    return TauResult(
        tau=tau,
        ci_low=math.tanh(zt - half_width),
        ci_high=math.tanh(zt + half_width),
        n=n,
    )
