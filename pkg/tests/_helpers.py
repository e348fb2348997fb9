"""Shared test utilities: random simplex points and naive oracles.

The oracles re-implement pair counting and the HSD null distribution with
plain Python loops, independent of the library's kernels, so agreement
between the two routes is meaningful.
"""

from __future__ import annotations

import math
import random

import numpy as np

from quantdiv.distributions import Distribution, validate


def random_distribution(rng: np.random.Generator, k: int, zero_rate: float = 0.25) -> Distribution:
    """Random k-class distribution; some classes get exactly zero mass."""
    raw = rng.dirichlet(np.ones(k))
    mask = rng.random(k) < zero_rate
    if mask.all():
        mask[int(rng.integers(k))] = False
    raw = np.where(mask, 0.0, raw)
    return validate(raw / raw.sum())


def positive_distribution(rng: np.random.Generator, k: int) -> Distribution:
    """Random k-class distribution with strictly positive entries."""
    raw = rng.uniform(0.05, 1.0, size=k)
    return validate(raw / raw.sum())


def random_pair(rng: np.random.Generator, k: int | None = None) -> tuple[Distribution, Distribution]:
    if k is None:
        k = int(rng.integers(2, 8))
    return random_distribution(rng, k), random_distribution(rng, k)


def tied_lists(rng: np.random.Generator, n: int) -> tuple[list[float], list[float]]:
    """Random real lists with deliberately injected exact ties."""
    xs = [round(float(rng.normal()), 1) for _ in range(n)]
    ys = [round(float(rng.normal()), 1) for _ in range(n)]
    return xs, ys


def naive_pair_counts(xs, ys, tie_eps: float = 0.0) -> tuple[int, int, int, int]:
    """Brute-force pair tally: (conc, disc, tied_x, tied_y)."""
    n = len(xs)
    conc = disc = tied_x = tied_y = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            dx = xs[i] - xs[j]
            dy = ys[i] - ys[j]
            tx = abs(dx) <= tie_eps
            ty = abs(dy) <= tie_eps
            tied_x += tx
            tied_y += ty
            if tx or ty:
                continue
            if (dx > 0) == (dy > 0):
                conc += 1
            else:
                disc += 1
    return conc, disc, tied_x, tied_y


def naive_tau_b(xs, ys, tie_eps: float = 0.0) -> float:
    """Brute-force tie-adjusted tau with the same max guard as the library."""
    conc, disc, tied_x, tied_y = naive_pair_counts(xs, ys, tie_eps)
    total = len(xs) * (len(xs) - 1) // 2
    denom = math.sqrt(max(1, total - tied_x) * max(1, total - tied_y))
    return (conc - disc) / denom


def oracle_hsd_critical(per_trial, alpha: float, rounds: int, seed: int) -> float:
    """Brute-force permutation estimate of the HSD critical value.

    Uses Python's random module so the permutation stream is independent of
    the library's; the critical values agree only statistically.
    """
    grid = [list(row) for row in per_trial]
    m = len(grid)
    n_cols = len(grid[0])
    rng = random.Random(seed)
    stats = []
    labels = list(range(m))
    for _ in range(rounds):
        sums = [0.0] * m
        for b in range(n_cols):
            rng.shuffle(labels)
            for k in range(m):
                sums[k] += grid[labels[k]][b]
        means = [s / n_cols for s in sums]
        stats.append(max(means) - min(means))
    stats.sort()
    return stats[math.ceil((1.0 - alpha) * rounds) - 1]
