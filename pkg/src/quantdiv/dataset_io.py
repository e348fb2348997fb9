"""File formats: gold/run tables in TSV, reports in TSV, JSON or markdown.

Table files are UTF-8 TSV with a header row `case_id<TAB><label>...` and one
row per case. An optional directive line `#mode: counts` or `#mode: probs`
before the header says whether rows hold raw vote counts or probabilities
(default probs). OS-level failures are not wrapped; OSError propagates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from ._version import __version__
from .distributions import Distribution, from_votes, validate
from .errors import (
    DuplicateCaseId,
    InconsistentClassCount,
    MissingCase,
    OutOfRange,
    ParseError,
    UnknownCase,
    ValidationError,
)
from .measures import MeasureId
from .meta_eval import (
    AgreementReport,
    ConsistencyReport,
    ScoreMatrix,
    format_subset_mode,
    parse_subset_mode,
)
from .rank_correlation import TauResult

FORMATS = ("tsv", "json", "markdown")


@dataclass(frozen=True)
class Dataset:
    """Gold distributions per case; votes kept when loaded from counts."""

    case_ids: tuple[str, ...]
    class_labels: tuple[str, ...]
    gold: tuple[Distribution, ...]
    votes: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class SystemRun:
    """One system's estimated distributions, aligned with the dataset order."""

    system_id: str
    est: tuple[Distribution, ...]


def _parse_table(path) -> tuple[str, tuple[str, ...], list[tuple[int, str, list[str]]]]:
    text = Path(path).read_text(encoding="utf-8")
    mode = "probs"
    labels: tuple[str, ...] | None = None
    rows: list[tuple[int, str, list[str]]] = []
    seen: dict[str, int] = {}
    for ln, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if labels is None and line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("mode:"):
                value = body[5:].strip()
                if value not in ("counts", "probs"):
                    raise ParseError(f"unknown mode {value!r}", ln)
                mode = value
            else:
                raise ParseError(f"unknown directive {line!r}", ln)
            continue
        cells = line.split("\t")
        if labels is None:
            if cells[0] != "case_id":
                raise ParseError(f"header must start with 'case_id', got {cells[0]!r}", ln)
            labels = tuple(cells[1:])
            if len(labels) < 2:
                raise ParseError("header needs at least 2 class columns", ln)
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate class labels in header", ln)
            continue
        if len(cells) != 1 + len(labels):
            raise InconsistentClassCount(
                f"row has {len(cells) - 1} values but header has {len(labels)} classes", ln
            )
        case_id = cells[0].strip()
        if not case_id:
            raise ParseError("empty case id", ln)
        if case_id in seen:
            raise DuplicateCaseId(
                f"case {case_id!r} repeated (first seen at line {seen[case_id]})", ln
            )
        seen[case_id] = ln
        rows.append((ln, case_id, cells[1:]))
    if labels is None:
        raise ParseError("missing header row")
    if not rows:
        raise ParseError("no data rows")
    return mode, labels, rows


def _row_distribution(
    mode: str, case_id: str, ln: int, cells: list[str]
) -> tuple[Distribution, tuple[int, ...] | None]:
    if mode == "counts":
        counts = []
        for cell in cells:
            try:
                counts.append(int(cell))
            except ValueError:
                raise ParseError(f"bad vote count {cell!r}", ln) from None
        try:
            return from_votes(counts), tuple(counts)
        except ValidationError as exc:
            raise type(exc)(f"case {case_id!r}: {exc}") from exc
    values = []
    for cell in cells:
        try:
            values.append(float(cell))
        except ValueError:
            raise ParseError(f"bad probability {cell!r}", ln) from None
    try:
        return validate(values), None
    except ValidationError as exc:
        raise type(exc)(f"case {case_id!r}: {exc}") from exc


def load_gold(path) -> Dataset:
    """Read the gold table; counts rows are converted to distributions."""
    mode, labels, rows = _parse_table(path)
    gold = []
    votes = []
    for ln, case_id, cells in rows:
        dist, row_votes = _row_distribution(mode, case_id, ln, cells)
        gold.append(dist)
        votes.append(row_votes)
    return Dataset(
        case_ids=tuple(cid for _, cid, _ in rows),
        class_labels=labels,
        gold=tuple(gold),
        votes=tuple(votes) if mode == "counts" else None,  # type: ignore[arg-type]
    )


def load_run(path, dataset: Dataset, system_id: str | None = None) -> SystemRun:
    """Read one system's table and align its cases with the dataset order."""
    mode, labels, rows = _parse_table(path)
    if len(labels) != len(dataset.class_labels):
        raise InconsistentClassCount(
            f"run has {len(labels)} classes, dataset has {len(dataset.class_labels)}"
        )
    if labels != dataset.class_labels:
        raise InconsistentClassCount(
            f"run class labels {labels!r} differ from dataset's {dataset.class_labels!r}"
        )
    by_case: dict[str, Distribution] = {}
    for ln, case_id, cells in rows:
        by_case[case_id], _ = _row_distribution(mode, case_id, ln, cells)
    wanted = set(dataset.case_ids)
    missing = [cid for cid in dataset.case_ids if cid not in by_case]
    if missing:
        raise MissingCase(f"run lacks {len(missing)} dataset case(s), e.g. {missing[0]!r}")
    extra = sorted(set(by_case) - wanted)
    if extra:
        raise UnknownCase(f"run has {len(extra)} unknown case(s), e.g. {extra[0]!r}")
    return SystemRun(
        system_id=system_id if system_id is not None else Path(path).stem,
        est=tuple(by_case[cid] for cid in dataset.case_ids),
    )


def write_dataset(dataset: Dataset, path) -> Path:
    """Write a gold table; vote counts when available, else full-precision probs."""
    path = Path(path)
    lines = []
    if dataset.votes is not None:
        lines.append("#mode: counts")
        header_rows = (
            (cid, [str(v) for v in row]) for cid, row in zip(dataset.case_ids, dataset.votes)
        )
    else:
        lines.append("#mode: probs")
        header_rows = (
            (cid, [repr(p) for p in dist.probs])
            for cid, dist in zip(dataset.case_ids, dataset.gold)
        )
    lines.append("case_id\t" + "\t".join(dataset.class_labels))
    for cid, cells in header_rows:
        lines.append(cid + "\t" + "\t".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_run(run: SystemRun, dataset: Dataset, path) -> Path:
    """Write one system's table with full-precision probabilities."""
    path = Path(path)
    lines = ["#mode: probs", "case_id\t" + "\t".join(dataset.class_labels)]
    for cid, dist in zip(dataset.case_ids, run.est):
        lines.append(cid + "\t" + "\t".join(repr(p) for p in dist.probs))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _fmt6(x: float) -> str:
    return f"{x:.6f}"


def _meta(seed=None, B=None, mode=None, alpha=None) -> dict:
    return {"seed": seed, "B": B, "mode": mode, "alpha": alpha, "tool_version": __version__}


def _json_doc(report) -> dict:
    if isinstance(report, ScoreMatrix):
        return {
            "kind": "score_matrix",
            "measures": [report.measure.value] if report.measure is not None else [],
            "payload": {
                "system_ids": list(report.system_ids),
                "case_ids": list(report.case_ids),
                "values": report.values.tolist(),
            },
            "meta": _meta(),
        }
    if isinstance(report, AgreementReport):
        pairs = []
        m = len(report.measures)
        for i in range(m):
            for j in range(i + 1, m):
                cell = report.grid[i][j]
                pairs.append(
                    {
                        "first": report.measures[i].value,
                        "second": report.measures[j].value,
                        "tau": cell.tau,
                        "ci_low": cell.ci_low,
                        "ci_high": cell.ci_high,
                        "n": cell.n,
                    }
                )
        return {
            "kind": "agreement",
            "measures": [m.value for m in report.measures],
            "payload": {"pairs": pairs, "avg_similarity": list(report.avg_similarity)},
            "meta": _meta(),
        }
    if isinstance(report, ConsistencyReport):
        return {
            "kind": "consistency",
            "measures": [m.value for m in report.measures],
            "payload": {
                "mean_tau": list(report.mean_tau),
                "per_trial_tau": report.per_trial_tau.tolist(),
                "significant_pairs": [[w.value, l.value] for w, l in report.significant_pairs],
                "permutations": report.permutations,
                "tau_variant": report.tau_variant,
            },
            "meta": _meta(
                seed=report.seed,
                B=report.B,
                mode=format_subset_mode(report.mode),
                alpha=report.alpha,
            ),
        }
    raise OutOfRange(f"cannot serialize {type(report).__name__}")


def _consistency_order(report: ConsistencyReport) -> list[int]:
    return sorted(range(len(report.measures)), key=lambda i: (-report.mean_tau[i], i))


def _outperforms(report: ConsistencyReport, i: int) -> list[str]:
    return [l.value for w, l in report.significant_pairs if w is report.measures[i]]


def _render_tsv(report) -> str:
    if isinstance(report, ScoreMatrix):
        lines = ["system_id\t" + "\t".join(report.case_ids)]
        for sid, row in zip(report.system_ids, report.values):
            lines.append(sid + "\t" + "\t".join(_fmt6(v) for v in row))
        return "\n".join(lines) + "\n"
    if isinstance(report, AgreementReport):
        lines = ["first\tsecond\ttau\tci_low\tci_high\tn"]
        m = len(report.measures)
        for i in range(m):
            for j in range(i + 1, m):
                cell = report.grid[i][j]
                lines.append(
                    "\t".join(
                        (
                            report.measures[i].value,
                            report.measures[j].value,
                            _fmt6(cell.tau),
                            _fmt6(cell.ci_low),
                            _fmt6(cell.ci_high),
                            str(cell.n),
                        )
                    )
                )
        lines.append("")
        lines.append("measure\tavg_similarity")
        for mid, avg in zip(report.measures, report.avg_similarity):
            lines.append(f"{mid.value}\t{_fmt6(avg)}")
        return "\n".join(lines) + "\n"
    if isinstance(report, ConsistencyReport):
        lines = ["measure\tmean_tau\tsignificantly_outperforms"]
        for i in _consistency_order(report):
            lines.append(
                "\t".join(
                    (
                        report.measures[i].value,
                        _fmt6(report.mean_tau[i]),
                        ",".join(_outperforms(report, i)),
                    )
                )
            )
        return "\n".join(lines) + "\n"
    raise OutOfRange(f"cannot serialize {type(report).__name__}")


def _render_markdown(report) -> str:
    if isinstance(report, ScoreMatrix):
        title = f" ({report.measure.value})" if report.measure is not None else ""
        lines = [f"| system{title} | " + " | ".join(report.case_ids) + " |"]
        lines.append("|" + " --- |" * (1 + len(report.case_ids)))
        for sid, row in zip(report.system_ids, report.values):
            lines.append(f"| {sid} | " + " | ".join(_fmt6(v) for v in row) + " |")
        return "\n".join(lines) + "\n"
    if isinstance(report, AgreementReport):
        tags = [m.value for m in report.measures]
        m = len(tags)
        lines = ["| measure | " + " | ".join(tags[1:]) + " |"]
        lines.append("|" + " --- |" * m)
        for i in range(m - 1):
            cells = []
            for j in range(1, m):
                if j > i:
                    cell = report.grid[i][j]
                    cells.append(f"{cell.tau:.3f} [{cell.ci_low:.3f}, {cell.ci_high:.3f}]")
                else:
                    cells.append("")
            lines.append(f"| {tags[i]} | " + " | ".join(cells) + " |")
        lines.append("")
        lines.append("| measure | average tau |")
        lines.append("| --- | --- |")
        for tag, avg in zip(tags, report.avg_similarity):
            lines.append(f"| {tag} | {avg:.3f} |")
        return "\n".join(lines) + "\n"
    if isinstance(report, ConsistencyReport):
        lines = ["| measure | mean tau | significantly outperforms |"]
        lines.append("| --- | --- | --- |")
        for i in _consistency_order(report):
            beats = ", ".join(_outperforms(report, i)) or "-"
            lines.append(f"| {report.measures[i].value} | {report.mean_tau[i]:.4f} | {beats} |")
        return "\n".join(lines) + "\n"
    raise OutOfRange(f"cannot serialize {type(report).__name__}")


def render_report(report, fmt: str) -> str:
    """Serialize a report to one of FORMATS; JSON keeps full float precision."""
    if fmt == "json":
        return json.dumps(_json_doc(report), indent=2) + "\n"
    if fmt == "tsv":
        return _render_tsv(report)
    if fmt == "markdown":
        return _render_markdown(report)
    raise OutOfRange(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write_report(report, fmt: str, path) -> Path:
    path = Path(path)
    path.write_text(render_report(report, fmt), encoding="utf-8")
    return path


def read_report(path):
    """Load a JSON report back into its report object (full precision)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a JSON report: {exc}") from exc
    kind = doc.get("kind")
    payload = doc.get("payload", {})
    meta = doc.get("meta", {})
    measures = tuple(MeasureId(tag) for tag in doc.get("measures", []))
    if kind == "score_matrix":
        return ScoreMatrix(
            values=np.array(payload["values"], dtype=np.float64),
            system_ids=tuple(payload["system_ids"]),
            case_ids=tuple(payload["case_ids"]),
            measure=measures[0] if measures else None,
        )
    if kind == "agreement":
        index = {m.value: i for i, m in enumerate(measures)}
        m = len(measures)
        grid: list[list[TauResult | None]] = [[None] * m for _ in range(m)]
        for pair in payload["pairs"]:
            i, j = index[pair["first"]], index[pair["second"]]
            grid[i][j] = TauResult(
                tau=pair["tau"], ci_low=pair["ci_low"], ci_high=pair["ci_high"], n=pair["n"]
            )
        return AgreementReport(
            measures=measures,
            grid=tuple(tuple(row) for row in grid),
            avg_similarity=tuple(payload["avg_similarity"]),
        )
    if kind == "consistency":
        return ConsistencyReport(
            measures=measures,
            mean_tau=tuple(payload["mean_tau"]),
            per_trial_tau=np.array(payload["per_trial_tau"], dtype=np.float64),
            significant_pairs=tuple(
                (MeasureId(w), MeasureId(l)) for w, l in payload["significant_pairs"]
            ),
            mode=parse_subset_mode(meta["mode"]),
            seed=meta["seed"],
            B=meta["B"],
            alpha=meta["alpha"],
            permutations=payload["permutations"],
            tau_variant=payload["tau_variant"],
        )
    raise ParseError(f"unknown report kind {kind!r}")
