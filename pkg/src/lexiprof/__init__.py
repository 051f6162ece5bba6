"""Personalised lexical profiles from spoken-dialogue transcripts.

Build per-speaker profiles (frequent vocabulary per POS category plus
word n-grams) from the opening minutes of an interview and measure how
well they keep describing the same speaker's later speech.
"""

from .annotate import (
    CATEGORY_ORDER,
    ProfileCategory,
    TaggerKind,
    TaggerSpec,
    load_lexicon,
    map_pos,
    tag_transcript,
)
from .errors import (
    EmptyConstructionWindow,
    InvalidConfig,
    InvalidModel,
    InvalidSpan,
    LexiconLoadError,
    LexiprofError,
    MissingLemmas,
    ParseError,
    PassthroughOnUntagged,
    SpanOverlap,
    UntaggedInput,
)
from .experiment import (
    AggregateRow,
    KAssignment,
    SkipRecord,
    SweepConfig,
    SweepRecord,
    SweepResult,
    aggregate,
    make_windows,
    recommended_assignment,
    recommended_config,
    run_sweep,
    sweep_config_from_dict,
    sweep_config_to_dict,
    uniform_assignment,
)
from .ingest import (
    Marker,
    SpeakerRole,
    Token,
    TokenWindow,
    Transcript,
    UPOS_TAGS,
    Utterance,
    parse_conllu,
    parse_raw_transcript,
    slice_transcript,
    to_conllu,
)
from .metrics import (
    EvaluationWindow,
    MatchMode,
    MetricRecord,
    cosine,
    coverage,
    evaluate_profile,
    make_evaluation_window,
    metric_items,
    project_counts,
    recall,
)
from .profile import (
    LexicalProfile,
    MarkerPolicy,
    NgramEntry,
    ProfileConfig,
    VocabEntry,
    build_profile,
    count_ngrams,
    count_vocabulary,
    extract_ngrams,
    profile_from_json,
    profile_to_json,
    select_top_k,
)
from .report import (
    ReportRow,
    read_aggregate_csv,
    read_rows_csv,
    render_figures,
    rows_from_sweep,
    rows_to_csv,
    write_aggregate_csv,
    write_rows_csv,
)
from .synth import (
    LexEntry,
    SpeakerModel,
    TopicShift,
    default_speaker_model,
    generate_transcript,
    speaker_model_from_json,
    speaker_model_to_json,
    with_drift,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
