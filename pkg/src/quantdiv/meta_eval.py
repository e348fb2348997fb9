"""Rank-based comparison of divergence measures over a common dataset.

Three experiments: system agreement between measures (pairwise Kendall tau
with confidence intervals), split-half consistency (how stably a measure
ranks systems across disjoint case subsets), and randomized Tukey HSD
significance testing on the per-trial consistency grid.

Determinism contract: every trial b derives its generator from
SeedSequence((seed, TRIAL_STREAM, b)) and every permutation chunk c from
SeedSequence((seed, HSD_STREAM, c)), so results are reproducible for a given
seed and identical for any thread count. Workers write to pre-assigned slots
of the output arrays; nothing is accumulated in shared mutable state.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Sequence

import numpy as np

from . import kernels
from .errors import (
    DatasetTooSmall,
    EmptySubset,
    MisalignedRun,
    OutOfRange,
    TooFewMeasures,
    TooFewSystems,
    TooFewTrials,
)
from .measures import MeasureId, score
from .rank_correlation import TauResult, tau_b, tau_plain, tau_with_ci

if TYPE_CHECKING:
    from .dataset_io import Dataset, SystemRun

TRIAL_STREAM = 1
HSD_STREAM = 2
# Permutation rounds are generated and evaluated in fixed-size chunks; the
# chunk index seeds the sub-stream, so results do not depend on threading.
HSD_CHUNK = 256


@dataclass(frozen=True)
class FullSplit:
    """Shuffle all cases and split in half; odd case goes to the first half."""


@dataclass(frozen=True)
class FixedSize:
    """Draw two disjoint subsets of exactly k cases each."""

    k: int


SubsetMode = FullSplit | FixedSize


def format_subset_mode(mode: SubsetMode) -> str:
    if isinstance(mode, FullSplit):
        return "half"
    return f"k={mode.k}"


def parse_subset_mode(text: str) -> SubsetMode:
    if text == "half":
        return FullSplit()
    if text.startswith("k="):
        try:
            k = int(text[2:])
        except ValueError:
            raise OutOfRange(f"bad subset size in {text!r}") from None
        if k < 1:
            raise OutOfRange(f"subset size must be >= 1, got {k}")
        return FixedSize(k)
    raise OutOfRange(f"unknown subset mode {text!r}; expected 'half' or 'k=<int>'")


@dataclass(eq=False)
class ScoreMatrix:
    """Per-system, per-case scores for one measure (rows align with systems)."""

    values: np.ndarray
    system_ids: tuple[str, ...]
    case_ids: tuple[str, ...]
    measure: MeasureId | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape != (len(self.system_ids), len(self.case_ids)):
            raise MisalignedRun(
                f"score grid {values.shape} does not match "
                f"{len(self.system_ids)} systems x {len(self.case_ids)} cases"
            )
        if not np.isfinite(values).all() or (values < 0).any():
            raise OutOfRange("scores must be finite and >= 0")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __eq__(self, other):
        return (
            isinstance(other, ScoreMatrix)
            and self.system_ids == other.system_ids
            and self.case_ids == other.case_ids
            and self.measure == other.measure
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class AgreementReport:
    """Pairwise tau/CI between measures plus each measure's average tau."""

    measures: tuple[MeasureId, ...]
    grid: tuple[tuple[TauResult | None, ...], ...]  # upper triangle filled
    avg_similarity: tuple[float, ...]

    def pair(self, i: int, j: int) -> TauResult:
        if i == j:
            raise OutOfRange("no self-pair in the agreement grid")
        lo, hi = min(i, j), max(i, j)
        cell = self.grid[lo][hi]
        assert cell is not None
        return cell


@dataclass(eq=False)
class ConsistencyReport:
    """Split-half consistency of each measure plus HSD significance."""

    measures: tuple[MeasureId, ...]
    mean_tau: tuple[float, ...]
    per_trial_tau: np.ndarray  # (measures, B)
    significant_pairs: tuple[tuple[MeasureId, MeasureId], ...]  # (winner, loser)
    mode: SubsetMode
    seed: int
    B: int
    alpha: float
    permutations: int
    tau_variant: str = "b"

    def __post_init__(self):
        arr = np.array(self.per_trial_tau, dtype=np.float64)
        arr.setflags(write=False)
        object.__setattr__(self, "per_trial_tau", arr)

    def __eq__(self, other):
        return (
            isinstance(other, ConsistencyReport)
            and self.measures == other.measures
            and self.mean_tau == other.mean_tau
            and np.array_equal(self.per_trial_tau, other.per_trial_tau)
            and self.significant_pairs == other.significant_pairs
            and self.mode == other.mode
            and (self.seed, self.B, self.alpha, self.permutations, self.tau_variant)
            == (other.seed, other.B, other.alpha, other.permutations, other.tau_variant)
        )


def _check_seed(seed: int) -> int:
    if seed < 0:
        raise OutOfRange(f"seed must be non-negative, got {seed}")
    return int(seed)


def score_matrix(dataset: "Dataset", runs: Sequence["SystemRun"], measure: MeasureId) -> ScoreMatrix:
    """Score every system on every case with one measure."""
    n_cases = len(dataset.case_ids)
    values = np.empty((len(runs), n_cases), dtype=np.float64)
    for s, run in enumerate(runs):
        if len(run.est) != n_cases:
            raise MisalignedRun(
                f"system {run.system_id!r} has {len(run.est)} cases, dataset has {n_cases}"
            )
        for c in range(n_cases):
            values[s, c] = score(measure, run.est[c], dataset.gold[c])
    return ScoreMatrix(
        values=values,
        system_ids=tuple(run.system_id for run in runs),
        case_ids=tuple(dataset.case_ids),
        measure=measure,
    )


def mean_scores(matrix: ScoreMatrix, case_subset: Sequence[int] | None = None) -> np.ndarray:
    """Mean score per system, over all cases or a subset of case positions."""
    if case_subset is None:
        return matrix.values.mean(axis=1)
    idx = np.asarray(case_subset, dtype=np.intp)
    if idx.size == 0:
        raise EmptySubset("case subset is empty")
    return matrix.values[:, idx].mean(axis=1)


def agreement(
    dataset: "Dataset",
    runs: Sequence["SystemRun"],
    measures: Sequence[MeasureId],
    confidence: float = 0.95,
) -> AgreementReport:
    """Pairwise tau/CI between the measures' per-system mean-score lists.

    Ties are counted at exact equality; tau close to 1 means two measures
    rank the systems nearly identically.
    """
    measures = tuple(measures)
    if len(runs) < 3:
        raise TooFewSystems(f"need at least 3 systems, got {len(runs)}")
    if len(measures) < 2:
        raise TooFewMeasures(f"need at least 2 measures, got {len(measures)}")
    means = [mean_scores(score_matrix(dataset, runs, m)) for m in measures]
    m = len(measures)
    grid: list[list[TauResult | None]] = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            grid[i][j] = tau_with_ci(means[i], means[j], confidence)
    avg = tuple(
        math.fsum(
            grid[min(i, j)][max(i, j)].tau for j in range(m) if j != i  # type: ignore[union-attr]
        )
        / (m - 1)
        for i in range(m)
    )
    return AgreementReport(
        measures=measures,
        grid=tuple(tuple(row) for row in grid),
        avg_similarity=avg,
    )


def _split_indices(perm: np.ndarray, mode: SubsetMode) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(mode, FullSplit):
        half = (perm.shape[0] + 1) // 2
        return perm[:half], perm[half:]
    return perm[: mode.k], perm[mode.k : 2 * mode.k]


def trial_subsets(
    n_cases: int, mode: SubsetMode, seed: int, trial: int
) -> tuple[np.ndarray, np.ndarray]:
    """The two disjoint case-position subsets used by one consistency trial."""
    rng = np.random.default_rng(np.random.SeedSequence((_check_seed(seed), TRIAL_STREAM, trial)))
    return _split_indices(rng.permutation(n_cases), mode)


def _check_subset_mode(n_cases: int, mode: SubsetMode) -> None:
    if isinstance(mode, FullSplit):
        if n_cases < 4:
            raise DatasetTooSmall(f"half-split needs at least 4 cases, got {n_cases}")
    else:
        if mode.k < 1:
            raise OutOfRange(f"subset size must be >= 1, got {mode.k}")
        if n_cases < 2 * mode.k:
            raise DatasetTooSmall(
                f"two disjoint subsets of {mode.k} need {2 * mode.k} cases, got {n_cases}"
            )


def consistency_per_trial(
    stacked: np.ndarray,
    mode: SubsetMode,
    B: int,
    seed: int,
    threads: int = 1,
    tau_variant: str = "b",
) -> np.ndarray:
    """Per-trial tau grid (measures x B) from raw score grids.

    stacked is (measures, systems, cases). Each trial splits the cases per
    mode, computes each measure's per-system mean on both subsets, and
    records the tau between the two system-score lists.
    """
    stacked = np.asarray(stacked, dtype=np.float64)
    n_measures, n_systems, n_cases = stacked.shape
    if n_systems < 2:
        raise TooFewSystems(f"need at least 2 systems, got {n_systems}")
    if B < 1:
        raise TooFewTrials(f"need at least 1 trial, got {B}")
    _check_subset_mode(n_cases, mode)
    _check_seed(seed)
    if tau_variant == "b":
        tau_fn: Callable[[np.ndarray, np.ndarray], float] = lambda a, b: tau_b(a, b, tie_eps=0.0)
    elif tau_variant == "plain":
        tau_fn = tau_plain
    else:
        raise OutOfRange(f"unknown tau variant {tau_variant!r}")

    per_trial = np.empty((n_measures, B), dtype=np.float64)

    def run_trial(b: int) -> None:
        idx1, idx2 = trial_subsets(n_cases, mode, seed, b)
        first = stacked[:, :, idx1].mean(axis=2)
        second = stacked[:, :, idx2].mean(axis=2)
        for k in range(n_measures):
            per_trial[k, b] = tau_fn(first[k], second[k])

    if threads <= 1:
        for b in range(B):
            run_trial(b)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_trial, range(B)))
    return per_trial


def randomized_tukey_hsd(
    per_trial: np.ndarray,
    alpha: float = 0.05,
    permutations: int = 5000,
    seed: int = 42,
    threads: int = 1,
) -> frozenset[tuple[int, int]]:
    """Which measure pairs differ significantly in mean per-trial tau.

    The null distribution is the max pairwise gap between row means after
    permuting row labels independently within every trial column; a pair is
    significant when its observed gap exceeds the ceil((1-alpha)R)-th order
    statistic. Returns (winner, loser) row-index pairs, winner having the
    higher mean.
    """
    arr = np.ascontiguousarray(per_trial, dtype=np.float64)
    if arr.ndim != 2:
        raise OutOfRange("per-trial grid must be 2-dimensional")
    n_measures, n_trials = arr.shape
    if n_measures < 2:
        raise TooFewMeasures(f"need at least 2 measures, got {n_measures}")
    if n_trials < 2:
        raise TooFewTrials(f"need at least 2 trials, got {n_trials}")
    if not 0.0 < alpha < 1.0:
        raise OutOfRange(f"alpha must be in (0, 1), got {alpha}")
    if permutations < 1:
        raise OutOfRange(f"need at least 1 permutation round, got {permutations}")
    _check_seed(seed)

    null_stats = np.empty(permutations, dtype=np.float64)
    chunks = [
        (ci, start, min(start + HSD_CHUNK, permutations))
        for ci, start in enumerate(range(0, permutations, HSD_CHUNK))
    ]

    def run_chunk(chunk: tuple[int, int, int]) -> None:
        ci, start, stop = chunk
        rng = np.random.default_rng(np.random.SeedSequence((seed, HSD_STREAM, ci)))
        base = np.broadcast_to(
            np.arange(n_measures, dtype=np.intp), (stop - start, n_trials, n_measures)
        ).copy()
        perms = rng.permuted(base, axis=2)
        kernels.hsd_max_stats(arr, np.ascontiguousarray(perms), null_stats[start:stop])

    if threads <= 1:
        for chunk in chunks:
            run_chunk(chunk)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_chunk, chunks))

    order = math.ceil((1.0 - alpha) * permutations)
    crit = float(np.sort(null_stats)[order - 1])
    means = arr.mean(axis=1)
    out = set()
    for i in range(n_measures):
        for j in range(i + 1, n_measures):
            if abs(means[i] - means[j]) > crit:
                out.add((i, j) if means[i] > means[j] else (j, i))
    return frozenset(out)


def split_half_consistency(
    dataset: "Dataset",
    runs: Sequence["SystemRun"],
    measures: Sequence[MeasureId],
    mode: SubsetMode = FullSplit(),
    B: int = 1000,
    seed: int = 42,
    alpha: float = 0.05,
    permutations: int = 5000,
    threads: int = 1,
    tau_variant: str = "b",
) -> ConsistencyReport:
    """Split-half consistency of each measure plus HSD significance.

    With B = 1 the HSD stage is skipped (no variation to permute) and the
    significant set is empty.
    """
    measures = tuple(measures)
    if len(measures) < 1:
        raise TooFewMeasures("need at least 1 measure")
    stacked = np.stack(
        [score_matrix(dataset, runs, m).values for m in measures], axis=0
    )
    per_trial = consistency_per_trial(stacked, mode, B, seed, threads, tau_variant)
    if len(measures) >= 2 and B >= 2:
        sig_idx = randomized_tukey_hsd(per_trial, alpha, permutations, seed, threads)
    else:
        sig_idx = frozenset()
    pairs = tuple(
        (measures[i], measures[j]) for i, j in sorted(sig_idx)
    )
    return ConsistencyReport(
        measures=measures,
        mean_tau=tuple(float(v) for v in per_trial.mean(axis=1)),
        per_trial_tau=per_trial,
        significant_pairs=pairs,
        mode=mode,
        seed=seed,
        B=B,
        alpha=alpha,
        permutations=permutations,
        tau_variant=tau_variant,
    )
