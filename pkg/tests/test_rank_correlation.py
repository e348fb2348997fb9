import math

import numpy as np
import pytest

from _helpers import naive_pair_counts, naive_tau_b, tied_lists
from quantdiv.errors import LengthMismatch, OutOfRange, TooShort
from quantdiv.rank_correlation import PairCounts, pair_counts, tau_b, tau_plain, tau_with_ci


def test_pair_counts_basic():
    c = pair_counts([1.0, 2.0, 3.0], [10.0, 20.0, 30.0])
    assert (c.conc, c.disc, c.tied_x, c.tied_y) == (3, 0, 0, 0)
    assert c.n == 3
    assert c.total_pairs == 3
    assert c.not_tied_x == 3


def test_pair_counts_reversal_and_ties():
    c = pair_counts([1.0, 2.0, 3.0], [3.0, 2.0, 1.0])
    assert (c.conc, c.disc) == (0, 3)
    c = pair_counts([1.0, 1.0, 2.0], [1.0, 2.0, 3.0])
    assert c.tied_x == 1
    assert c.tied_y == 0
    assert (c.conc, c.disc) == (2, 0)


def test_pair_counts_tie_epsilon():
    xs = [1.0, 1.0 + 5e-10, 2.0]
    ys = [1.0, 2.0, 3.0]
    assert pair_counts(xs, ys, tie_eps=0.0).tied_x == 0
    assert pair_counts(xs, ys, tie_eps=1e-9).tied_x == 1


def test_pair_counts_errors():
    with pytest.raises(LengthMismatch):
        pair_counts([1.0, 2.0], [1.0])
    with pytest.raises(TooShort):
        pair_counts([1.0], [1.0])
    with pytest.raises(OutOfRange):
        pair_counts([1.0, 2.0], [1.0, 2.0], tie_eps=-1e-9)
    with pytest.raises(OutOfRange):
        pair_counts([1.0, float("nan")], [1.0, 2.0])


def test_tau_b_exact_endpoints():
    xs = list(map(float, range(12)))
    assert tau_b(xs, xs) == 1.0
    assert tau_b(xs, xs[::-1]) == -1.0


def test_tau_b_fully_tied_list_gives_zero():
    assert tau_b([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) == 0.0
    assert tau_b([1.0, 1.0, 1.0], [2.0, 2.0, 2.0]) == 0.0


def test_tau_b_monotone_invariance():
    rng = np.random.default_rng(31)
    for _ in range(100):
        xs = rng.normal(size=10)
        ys = rng.normal(size=10)
        assert tau_b(xs, ys) == tau_b(xs, np.exp(ys))
        assert tau_b(xs, ys) == tau_b(2.0 * xs + 5.0, ys)


def test_tau_b_antisymmetry():
    rng = np.random.default_rng(32)
    for _ in range(100):
        xs = rng.normal(size=8)
        ys = rng.normal(size=8)
        assert tau_b(xs, -ys) == -tau_b(xs, ys)


def test_tau_b_matches_naive_oracle():
    rng = np.random.default_rng(33)
    for _ in range(300):
        n = int(rng.integers(2, 26))
        xs, ys = tied_lists(rng, n)
        for eps in (0.0, 1e-9, 0.05):
            assert pair_counts(xs, ys, eps) == PairCounts(
                *naive_pair_counts(xs, ys, eps), n=n
            )
            assert tau_b(xs, ys, eps) == naive_tau_b(xs, ys, eps)


def test_tau_plain():
    assert tau_plain([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 1.0
    # ties shrink plain tau because the denominator keeps all pairs
    xs = [1.0, 1.0, 2.0]
    ys = [1.0, 2.0, 3.0]
    assert tau_plain(xs, ys) == pytest.approx(2.0 / 3.0)
    assert tau_b(xs, ys) > tau_plain(xs, ys)


def test_tau_with_ci_degenerate_endpoints():
    xs = list(map(float, range(8)))
    r = tau_with_ci(xs, xs)
    assert (r.tau, r.ci_low, r.ci_high, r.n) == (1.0, 1.0, 1.0, 8)
    r = tau_with_ci(xs, xs[::-1])
    assert (r.tau, r.ci_low, r.ci_high) == (-1.0, -1.0, -1.0)


def test_tau_with_ci_regression_cell():
    # 12 items, 3 discordant pairs: tau = 60/66
    xs = list(map(float, range(12)))
    ys = list(xs)
    ys[0], ys[2] = ys[2], ys[0]
    r = tau_with_ci(xs, ys)
    assert r.tau == pytest.approx(60.0 / 66.0, abs=1e-12)
    assert r.ci_low == pytest.approx(0.787, abs=0.02)
    assert r.ci_high == pytest.approx(0.963, abs=0.02)


def test_tau_with_ci_brackets_tau_and_shrinks_with_n():
    rng = np.random.default_rng(34)
    for _ in range(100):
        n = int(rng.integers(5, 30))
        xs = rng.normal(size=n)
        ys = xs + rng.normal(size=n)
        r = tau_with_ci(xs, ys)
        assert -1.0 <= r.ci_low <= r.tau <= r.ci_high <= 1.0

    def width(n):
        xs = np.arange(n, dtype=float)
        ys = xs.copy()
        ys[0], ys[1] = ys[1], ys[0]
        r = tau_with_ci(xs, ys)
        return r.ci_high - r.ci_low

    assert width(30) < width(10)


def test_tau_with_ci_small_n_falls_back_to_full_interval():
    r = tau_with_ci([1.0, 3.0, 2.0, 4.0], [1.0, 2.0, 3.0, 4.0])
    assert (r.ci_low, r.ci_high) == (-1.0, 1.0)
    assert r.ci_low <= r.tau <= r.ci_high


def test_tau_with_ci_confidence_widens():
    xs = list(map(float, range(12)))
    ys = list(xs)
    ys[0], ys[2] = ys[2], ys[0]
    narrow = tau_with_ci(xs, ys, confidence=0.90)
    wide = tau_with_ci(xs, ys, confidence=0.99)
    assert wide.ci_low < narrow.ci_low
    assert wide.ci_high > narrow.ci_high


def test_tau_with_ci_errors():
    with pytest.raises(TooShort):
        tau_with_ci([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(OutOfRange):
        tau_with_ci([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], confidence=1.0)
    with pytest.raises(OutOfRange):
        tau_with_ci([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], confidence=0.0)
