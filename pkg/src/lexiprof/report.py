"""Deterministic report emission and optional figure rendering.

Sweep output is long-format (tidy) CSV: one row per metric value, plus
one row per skipped grid cell, with byte-stable formatting (fixed column
order, fixed row order, 6-decimal values, empty field for missing).
Any plotting tool can pivot that; ``render_figures`` ships the obvious
pivots as matplotlib files for quick inspection without spreadsheet work.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError
from .experiment import AggregateRow, SweepResult
from .metrics import MatchMode, metric_items

ROWS_HEADER = (
    "speaker_id", "timepoint_min", "window_minutes", "window_index",
    "scope", "mode", "k_assignment_id", "metric", "value", "skip_reason",
)
AGGREGATE_HEADER = (
    "timepoint_min", "k_assignment_id", "window_minutes", "window_index",
    "scope", "mode", "metric", "mean", "std", "n_defined",
)


@dataclass(frozen=True)
class ReportRow:
    """One long-format output row: a metric value or a skipped cell."""

    speaker_id: str
    timepoint_min: int
    window_minutes: int
    window_index: int | None
    scope: str
    mode: str
    k_assignment_id: str
    metric: str
    value: float | None
    skip_reason: str = ""

    def __post_init__(self):
        if self.skip_reason and (self.metric or self.value is not None):
            raise ValueError("a skip row carries no metric value")


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def rows_from_sweep(result: SweepResult) -> list[ReportRow]:
    rows = [
        ReportRow(
            speaker_id=rec.speaker_id,
            timepoint_min=rec.timepoint_min,
            window_minutes=rec.window_minutes,
            window_index=rec.window_index,
            scope=rec.metrics.scope,
            mode=rec.metrics.mode.value,
            k_assignment_id=rec.k_assignment_id,
            metric=metric,
            value=value,
        )
        for rec in result.records
        for metric, value in metric_items(rec.metrics)
    ]
    rows.extend(
        ReportRow(
            speaker_id=skip.speaker_id,
            timepoint_min=skip.timepoint_min,
            window_minutes=skip.window_minutes,
            window_index=None,
            scope="",
            mode="",
            k_assignment_id=skip.k_assignment_id,
            metric="",
            value=None,
            skip_reason=skip.reason,
        )
        for skip in result.skips
    )
    return rows


def rows_to_csv(rows: Iterable[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROWS_HEADER)
    for r in rows:
        writer.writerow([
            r.speaker_id,
            r.timepoint_min,
            r.window_minutes,
            "" if r.window_index is None else r.window_index,
            r.scope,
            r.mode,
            r.k_assignment_id,
            r.metric,
            _fmt(r.value),
            r.skip_reason,
        ])
    return buf.getvalue()


def write_rows_csv(rows: Iterable[ReportRow], path: Path | str):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(rows_to_csv(rows))


def read_rows_csv(path: Path | str) -> list[ReportRow]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = tuple(next(reader, ()))
        if header != ROWS_HEADER:
            raise ParseError(f"unexpected rows header {header!r}")
        out = []
        for fields in reader:
            if len(fields) != len(ROWS_HEADER):
                raise ParseError(f"bad row width: {fields!r}")
            (speaker, tp, wm, wi, scope, mode, k_id, metric, value,
             skip) = fields
            out.append(ReportRow(
                speaker_id=speaker,
                timepoint_min=int(tp),
                window_minutes=int(wm),
                window_index=None if wi == "" else int(wi),
                scope=scope,
                mode=mode,
                k_assignment_id=k_id,
                metric=metric,
                value=None if value == "" else float(value),
                skip_reason=skip,
            ))
        return out


def write_aggregate_csv(rows: Iterable[AggregateRow], path: Path | str):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER)
        for r in rows:
            writer.writerow([
                r.timepoint_min,
                r.k_assignment_id,
                r.window_minutes,
                r.window_index,
                r.scope,
                r.mode.value,
                r.metric,
                _fmt(r.mean),
                _fmt(r.std),
                r.n_defined,
            ])


def read_aggregate_csv(path: Path | str) -> list[AggregateRow]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = tuple(next(reader, ()))
        if header != AGGREGATE_HEADER:
            raise ParseError(f"unexpected aggregate header {header!r}")
        out = []
        for fields in reader:
            if len(fields) != len(AGGREGATE_HEADER):
                raise ParseError(f"bad row width: {fields!r}")
            tp, k_id, wm, wi, scope, mode, metric, mean, std, n = fields
            out.append(AggregateRow(
                timepoint_min=int(tp),
                k_assignment_id=k_id,
                window_minutes=int(wm),
                window_index=int(wi),
                scope=scope,
                mode=MatchMode(mode),
                metric=metric,
                mean=None if mean == "" else float(mean),
                std=None if std == "" else float(std),
                n_defined=int(n),
            ))
        return out


# -- figures ---------------------------------------------------------------

def _series(
    rows: Sequence[AggregateRow], **fixed
) -> dict[int, tuple[list[int], list[float], list[float]]]:
    """Group (window_index, mean, std) series by timepoint after filtering."""
    series: dict[int, dict[int, tuple[float, float]]] = {}
    for r in rows:
        if r.mean is None:
            continue
        if any(getattr(r, key) != value for key, value in fixed.items()):
            continue
        series.setdefault(r.timepoint_min, {})[r.window_index] = (
            r.mean, r.std or 0.0)
    out = {}
    for tp, points in series.items():
        xs = sorted(points)
        out[tp] = (xs, [points[x][0] for x in xs], [points[x][1] for x in xs])
    return out


def render_figures(
    rows: Sequence[AggregateRow], outdir: Path | str, dpi: int = 150
) -> list[Path]:
    """Render standard stability figures next to the delimited output.

    One overview of aggregate recall over window index per construction
    timepoint, plus a per-scope panel grid, for the first configuration
    found in the data (smallest window size, first assignment id). Rows
    without data simply leave their panel empty.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if not rows:
        return []
    wm = min(r.window_minutes for r in rows)
    k_id = rows[0].k_assignment_id
    mode = MatchMode.EXACT.value
    written: list[Path] = []

    fig, ax = plt.subplots(figsize=(7, 4.5))
    overview = _series(
        rows, k_assignment_id=k_id, window_minutes=wm, scope="AGGREGATE",
        mode=MatchMode.EXACT, metric="recall")
    for tp in sorted(overview):
        xs, means, stds = overview[tp]
        ax.plot(xs, means, marker="o", label=f"{tp} min")
        ax.fill_between(
            xs,
            [m - s for m, s in zip(means, stds)],
            [m + s for m, s in zip(means, stds)],
            alpha=0.15,
        )
    ax.set_xlabel("evaluation window index")
    ax.set_ylabel("mean aggregate recall")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(
        f"Aggregate recall over time ({wm}-min windows, {k_id}, {mode})")
    ax.legend(title="construction span", fontsize=8)
    ax.grid(True, alpha=0.3)
    path = outdir / "aggregate_recall.png"
    fig.savefig(path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    scopes = sorted(
        {r.scope for r in rows if r.scope != "AGGREGATE"},
        key=lambda s: (s.startswith("ngram-"), s))
    if scopes:
        cols = 3
        nrows = (len(scopes) + cols - 1) // cols
        fig, axes = plt.subplots(
            nrows, cols, figsize=(4 * cols, 2.8 * nrows),
            sharex=True, sharey=True, squeeze=False)
        for i, scope in enumerate(scopes):
            ax = axes[i // cols][i % cols]
            per_tp = _series(
                rows, k_assignment_id=k_id, window_minutes=wm, scope=scope,
                mode=MatchMode.EXACT, metric="recall")
            for tp in sorted(per_tp):
                xs, means, _ = per_tp[tp]
                ax.plot(xs, means, marker=".", label=f"{tp} min")
            ax.set_title(scope, fontsize=9)
            ax.set_ylim(0.0, 1.05)
            ax.grid(True, alpha=0.3)
        for j in range(len(scopes), nrows * cols):
            axes[j // cols][j % cols].axis("off")
        handles, labels = axes[0][0].get_legend_handles_labels()
        if handles:
            fig.legend(handles, labels, loc="lower right", fontsize=8)
        fig.suptitle(f"Per-scope recall ({wm}-min windows, {k_id}, {mode})")
        fig.supxlabel("evaluation window index")
        fig.supylabel("mean recall")
        path = outdir / "scope_recall.png"
        fig.savefig(path, dpi=dpi, bbox_inches="tight")
        plt.close(fig)
        written.append(path)
    return written
