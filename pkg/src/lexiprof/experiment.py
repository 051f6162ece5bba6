"""The stability experiment grid.

For each speaker, profiles are built from increasing opening spans
(construction timepoints), then evaluated over contiguous non-overlapping
windows tiling the remaining speech, under a sweep of per-category size
caps and both match modes. Results come back as a flat record list plus
per-cell skip reasons; nothing aborts the sweep. ``aggregate`` reduces
records across speakers to mean/std tables ready for plotting.
"""

from __future__ import annotations

import hashlib
import json
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .annotate import CATEGORY_ORDER, ProfileCategory
from .errors import (
    EmptyConstructionWindow,
    InvalidConfig,
    MissingLemmas,
    UntaggedInput,
)
from .ingest import SpeakerRole, Transcript, slice_transcript, to_conllu
from .metrics import (
    EvaluationWindow,
    MatchMode,
    MetricRecord,
    evaluate_profile,
    make_evaluation_window,
    metric_items,
    scope_sort_key,
)
from .profile import MarkerPolicy, ProfileConfig, build_profile


@dataclass(frozen=True)
class KAssignment:
    """One named point of the profile-size sweep."""

    id: str
    items_per_category: dict[ProfileCategory, int]

    def __post_init__(self):
        if not self.id:
            raise InvalidConfig("assignment id must be non-empty")
        if set(self.items_per_category) != set(CATEGORY_ORDER):
            raise InvalidConfig(
                "assignment must cover exactly the six categories")
        if any(v < 1 for v in self.items_per_category.values()):
            raise InvalidConfig("per-category caps must be >= 1")


def uniform_assignment(k: int) -> KAssignment:
    return KAssignment(f"k{k}", {c: k for c in CATEGORY_ORDER})


def recommended_config() -> tuple[int, dict[ProfileCategory, int]]:
    """The configuration that performed best in held-out evaluation.

    A 10-minute construction span with caps of 5 for adjectives and
    conjunctions and 10 for adverbs, nouns, pronouns, and verbs.
    """
    return 10, {
        ProfileCategory.ADJECTIVE: 5,
        ProfileCategory.CONJUNCTION: 5,
        ProfileCategory.ADVERB: 10,
        ProfileCategory.NOUN: 10,
        ProfileCategory.PRONOUN: 10,
        ProfileCategory.VERB: 10,
    }


def recommended_assignment() -> KAssignment:
    return KAssignment("recommended", recommended_config()[1])


_DEFAULT_MODES = (MatchMode.EXACT, MatchMode.LEMMATISED)


@dataclass(frozen=True)
class SweepConfig:
    timepoints_min: tuple[int, ...] = (5, 10, 15, 20, 25, 30)
    k_values: tuple[int, ...] = (3, 5, 10, 15, 20)
    window_minutes: tuple[int, ...] = (10, 30)
    modes: tuple[MatchMode, ...] = _DEFAULT_MODES
    analysis_cutoff_min: int | None = 115
    marker_policy: MarkerPolicy = MarkerPolicy.RETAIN
    include_aux: bool = False
    include_propn: bool = False
    seed: int = 0
    k_assignments: tuple[KAssignment, ...] | None = None

    def __post_init__(self):
        if not self.timepoints_min:
            raise InvalidConfig("at least one construction timepoint required")
        prev = 0
        for tp in self.timepoints_min:
            if tp <= prev:
                raise InvalidConfig(
                    "timepoints must be positive and strictly increasing")
            prev = tp
        if self.k_assignments is None and not self.k_values:
            raise InvalidConfig("k_values or k_assignments required")
        if any(k < 1 for k in self.k_values):
            raise InvalidConfig("k values must be >= 1")
        if not self.window_minutes or any(w < 1 for w in self.window_minutes):
            raise InvalidConfig("window sizes must be >= 1 minute")
        if not self.modes:
            raise InvalidConfig("at least one match mode required")
        if (self.analysis_cutoff_min is not None
                and self.analysis_cutoff_min <= max(self.timepoints_min)):
            raise InvalidConfig(
                "analysis cutoff must exceed the largest timepoint")

    @property
    def assignments(self) -> tuple[KAssignment, ...]:
        if self.k_assignments is not None:
            return self.k_assignments
        return tuple(uniform_assignment(k) for k in self.k_values)

    def profile_config(self, timepoint_min: int, a: KAssignment) -> ProfileConfig:
        return ProfileConfig(
            items_per_category=dict(a.items_per_category),
            marker_policy=self.marker_policy,
            construction_minutes=timepoint_min,
            include_aux=self.include_aux,
            include_propn=self.include_propn,
        )


def sweep_config_to_dict(sc: SweepConfig) -> dict:
    doc = {
        "timepoints_min": list(sc.timepoints_min),
        "k_values": list(sc.k_values),
        "window_minutes": list(sc.window_minutes),
        "modes": [m.value for m in sc.modes],
        "analysis_cutoff_min": sc.analysis_cutoff_min,
        "marker_policy": sc.marker_policy.value,
        "include_aux": sc.include_aux,
        "include_propn": sc.include_propn,
        "seed": sc.seed,
    }
    if sc.k_assignments is not None:
        doc["k_assignments"] = [
            {
                "id": a.id,
                "items_per_category": {
                    c.value: a.items_per_category[c] for c in CATEGORY_ORDER
                },
            }
            for a in sc.k_assignments
        ]
    return doc


def sweep_config_from_dict(data: dict) -> SweepConfig:
    try:
        assignments = None
        if data.get("k_assignments") is not None:
            assignments = tuple(
                KAssignment(
                    a["id"],
                    {
                        ProfileCategory(c): v
                        for c, v in a["items_per_category"].items()
                    },
                )
                for a in data["k_assignments"]
            )
        return SweepConfig(
            timepoints_min=tuple(data.get(
                "timepoints_min", (5, 10, 15, 20, 25, 30))),
            k_values=tuple(data.get("k_values", (3, 5, 10, 15, 20))),
            window_minutes=tuple(data.get("window_minutes", (10, 30))),
            modes=tuple(
                MatchMode(m) for m in data.get(
                    "modes", [m.value for m in _DEFAULT_MODES])),
            analysis_cutoff_min=data.get("analysis_cutoff_min", 115),
            marker_policy=MarkerPolicy(data.get("marker_policy", "RETAIN")),
            include_aux=data.get("include_aux", False),
            include_propn=data.get("include_propn", False),
            seed=data.get("seed", 0),
            k_assignments=assignments,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidConfig(f"bad sweep config: {exc}") from None


# -- window tiling -----------------------------------------------------------

def make_windows(
    t: Transcript,
    after_s: float,
    window_s: float,
    cutoff_s: float | None = None,
    n_values: Sequence[int] = (2, 3, 4, 5),
    marker_policy: MarkerPolicy = MarkerPolicy.RETAIN,
    include_aux: bool = False,
    include_propn: bool = False,
) -> list[EvaluationWindow]:
    """Contiguous interviewee windows tiling [after_s, limit).

    The limit is the transcript duration, lowered to the cutoff when one
    is given; a window is emitted only when it fits entirely, and a
    window without speech is emitted flagged-empty rather than dropped.
    """
    if window_s <= 0:
        raise InvalidConfig("window size must be positive")
    limit = t.duration if cutoff_s is None else min(t.duration, cutoff_s)
    windows: list[EvaluationWindow] = []
    index = 0
    start = after_s
    while start + window_s <= limit:
        sliced = slice_transcript(
            t, start, start + window_s, SpeakerRole.INTERVIEWEE)
        windows.append(make_evaluation_window(
            sliced, index, n_values, marker_policy, include_aux, include_propn))
        index += 1
        start += window_s
    return windows


# -- the sweep ---------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    speaker_id: str
    timepoint_min: int
    k_assignment_id: str
    window_minutes: int
    window_index: int
    metrics: MetricRecord


@dataclass(frozen=True)
class SkipRecord:
    speaker_id: str
    timepoint_min: int
    k_assignment_id: str
    window_minutes: int
    reason: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple[SweepRecord, ...]
    skips: tuple[SkipRecord, ...]
    assignment_ids: tuple[str, ...]
    provenance: dict = field(default_factory=dict)


def _corpus_digest(corpus: Iterable[Transcript]) -> str:
    h = hashlib.sha256()
    for t in corpus:
        h.update(to_conllu(t).encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()


def _config_digest(sc: SweepConfig) -> str:
    blob = json.dumps(sweep_config_to_dict(sc), sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _evaluate_cell(
    profile, windows, mode: MatchMode
) -> list[tuple[int, MetricRecord]]:
    out = []
    for w in windows:
        for rec in evaluate_profile(profile, w, mode):
            out.append((w.index, rec))
    return out


def _sweep_transcript(
    t: Transcript, sc: SweepConfig
) -> tuple[list[SweepRecord], list[SkipRecord]]:
    """All records and skips for a single speaker, unsorted."""
    assignments = sc.assignments
    cutoff_s = (None if sc.analysis_cutoff_min is None
                else sc.analysis_cutoff_min * 60.0)
    records: list[SweepRecord] = []
    skips: list[SkipRecord] = []

    def skip_all(tp, reason, wms=None):
        for a in assignments:
            for wm in (wms if wms is not None else sc.window_minutes):
                skips.append(SkipRecord(t.speaker_id, tp, a.id, wm, reason))

    for tp in sc.timepoints_min:
        profiles = {}
        try:
            for a in assignments:
                profiles[a.id] = build_profile(t, sc.profile_config(tp, a))
        except EmptyConstructionWindow:
            skip_all(tp, "EmptyConstructionWindow")
            continue
        except UntaggedInput:
            skip_all(tp, "UntaggedInput")
            continue
        for wm in sc.window_minutes:
            try:
                windows = make_windows(
                    t, tp * 60.0, wm * 60.0, cutoff_s,
                    marker_policy=sc.marker_policy,
                    include_aux=sc.include_aux,
                    include_propn=sc.include_propn,
                )
            except UntaggedInput:
                skip_all(tp, "UntaggedInput", wms=[wm])
                continue
            if not windows:
                skip_all(tp, "NoEvaluationWindows", wms=[wm])
                continue
            for a in assignments:
                for mode in sc.modes:
                    try:
                        cell = _evaluate_cell(profiles[a.id], windows, mode)
                    except MissingLemmas:
                        skips.append(SkipRecord(
                            t.speaker_id, tp, a.id, wm, "MissingLemmas"))
                        continue
                    records.extend(
                        SweepRecord(t.speaker_id, tp, a.id, wm, idx, rec)
                        for idx, rec in cell
                    )
    return records, skips


def _sweep_worker(
    payload: tuple[Transcript, SweepConfig]
) -> tuple[list[SweepRecord], list[SkipRecord]]:
    return _sweep_transcript(*payload)


def run_sweep(
    corpus: Sequence[Transcript], sc: SweepConfig, jobs: int = 1
) -> SweepResult:
    """Evaluate the full grid over a tagged corpus.

    Cells that cannot be evaluated (construction span not covered, no
    room for evaluation windows, missing annotations) become SkipRecords
    instead of failures. Output ordering is deterministic regardless of
    ``jobs``: records are sorted by speaker, timepoint, assignment,
    window size, window index, mode, and scope.
    """
    assignments = sc.assignments
    mode_order = {m: i for i, m in enumerate(sc.modes)}
    assignment_order = {a.id: i for i, a in enumerate(assignments)}
    ordered = sorted(corpus, key=lambda t: t.speaker_id)

    records: list[SweepRecord] = []
    skips: list[SkipRecord] = []
    if jobs > 1 and len(ordered) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(
                _sweep_worker, [(t, sc) for t in ordered]))
    else:
        parts = [_sweep_transcript(t, sc) for t in ordered]
    for part_records, part_skips in parts:
        records.extend(part_records)
        skips.extend(part_skips)

    records.sort(key=lambda r: (
        r.speaker_id, r.timepoint_min, assignment_order[r.k_assignment_id],
        r.window_minutes, r.window_index, mode_order[r.metrics.mode],
        scope_sort_key(r.metrics.scope),
    ))
    skips.sort(key=lambda s: (
        s.speaker_id, s.timepoint_min, assignment_order[s.k_assignment_id],
        s.window_minutes, s.reason,
    ))
    provenance = {
        "config": sweep_config_to_dict(sc),
        "config_sha256": _config_digest(sc),
        "corpus_sha256": _corpus_digest(ordered),
        "n_speakers": len(corpus),
        "k_assignments": [a.id for a in assignments],
        "n_records": len(records),
        "n_skips": len(skips),
    }
    return SweepResult(
        tuple(records), tuple(skips),
        tuple(a.id for a in assignments), provenance,
    )


# -- cross-speaker aggregation -------------------------------------------

_METRIC_ORDER = {"recall": 0, "coverage": 1, "cosine": 2}


@dataclass(frozen=True)
class AggregateRow:
    timepoint_min: int
    k_assignment_id: str
    window_minutes: int
    window_index: int
    scope: str
    mode: MatchMode
    metric: str
    mean: float | None
    std: float | None
    n_defined: int


def aggregate(r: SweepResult) -> list[AggregateRow]:
    """Mean and population std across speakers per grid cell and metric."""
    cells: dict[tuple, list[float | None]] = {}
    for rec in r.records:
        for metric, value in metric_items(rec.metrics):
            key = (rec.timepoint_min, rec.k_assignment_id, rec.window_minutes,
                   rec.window_index, rec.metrics.scope, rec.metrics.mode,
                   metric)
            cells.setdefault(key, []).append(value)

    assignment_order = {a: i for i, a in enumerate(r.assignment_ids)}
    rows: list[AggregateRow] = []
    for key in sorted(cells, key=lambda k: (
            k[0], assignment_order.get(k[1], len(assignment_order)), k[2],
            k[3], scope_sort_key(k[4]), k[5].value, _METRIC_ORDER[k[6]])):
        values = [v for v in cells[key] if v is not None]
        if values:
            mean = statistics.fmean(values)
            std = statistics.pstdev(values, mu=mean)
        else:
            mean = std = None
        rows.append(AggregateRow(*key, mean, std, len(values)))
    return rows
