"""Numpy implementations of the hot kernels.

Used when the compiled module is unavailable or QUANTDIV_PURE=1. Both
backends take identical inputs (including pre-generated permutation arrays)
so results match: pair counts exactly, permutation statistics to summation
rounding.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def pair_stats(xs: np.ndarray, ys: np.ndarray, tie_eps: float) -> tuple[int, int, int, int]:
    """Count (concordant, discordant, tied_x, tied_y) over all index pairs i<j.

    A pair is tied in a list when the absolute difference is <= tie_eps;
    pairs tied in either list are excluded from the concordance counts.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    iu, ju = np.triu_indices(x.shape[0], k=1)
    dx = x[iu] - x[ju]
    dy = y[iu] - y[ju]
    tied_x = np.abs(dx) <= tie_eps
    tied_y = np.abs(dy) <= tie_eps
    live = ~tied_x & ~tied_y
    conc = int(np.count_nonzero(live & ((dx > 0) == (dy > 0))))
    disc = int(np.count_nonzero(live)) - conc
    return conc, disc, int(np.count_nonzero(tied_x)), int(np.count_nonzero(tied_y))


def hsd_max_stats(values: np.ndarray, perms: np.ndarray, out: np.ndarray) -> None:
    """Largest pairwise gap between permuted row means, one entry per round.

    values: (m, B) grid of per-trial scores. perms: (R, B, m) where
    perms[r, b] is a permutation of row labels for column b. Round r's
    statistic is max_i mean_i - min_i mean_i after relabeling rows per
    column, written to out[r].
    """
    m, n_cols = values.shape
    cols = values.T  # (B, m)
    # permuted[r, b, k] = values[perms[r, b, k], b]
    permuted = np.take_along_axis(cols[np.newaxis, :, :], perms, axis=2)
    sums = permuted.sum(axis=1)  # (R, m)
    out[:] = (sums.max(axis=1) - sums.min(axis=1)) / n_cols
