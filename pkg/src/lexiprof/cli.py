"""Command-line interface.

    lexiprof build    --input talk.conllu --output profile.json
    lexiprof eval     --profile profile.json --input talk.conllu
    lexiprof sweep    --manifest corpus.json --output results/
    lexiprof synth    --seed 7 --duration-min 120 --output synth.conllu
    lexiprof tagcheck --input talk.conllu
    lexiprof report   --input results/

Exit codes: 0 success; 2 unusable input (parse errors, bad configs, bad
models, empty manifests); 3 construction span not covered by the
transcript; 4 evaluation span overlapping the construction span; 5
lemma-based matching requested on data without lemmas. Failures print a
single machine-parsable `error[<Code>]: message` line on stderr. The
LEXIPROF_LOG environment variable sets the logging level.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from .annotate import TaggerKind, TaggerSpec, tag_transcript
from .errors import (
    EmptyConstructionWindow,
    InvalidConfig,
    LexiprofError,
    MissingLemmas,
    SpanOverlap,
)
from .experiment import (
    SweepConfig,
    aggregate,
    make_windows,
    run_sweep,
    sweep_config_from_dict,
)
from .ingest import Transcript, parse_conllu, parse_raw_transcript, to_conllu
from .metrics import MatchMode, evaluate_profile, metric_items
from .profile import (
    ProfileConfig,
    build_profile,
    config_from_dict,
    profile_from_json,
    profile_to_json,
)
from .report import (
    ReportRow,
    read_aggregate_csv,
    render_figures,
    rows_from_sweep,
    rows_to_csv,
    write_aggregate_csv,
    write_rows_csv,
)
from .synth import (
    default_speaker_model,
    generate_transcript,
    speaker_model_from_json,
)

log = logging.getLogger("lexiprof")


def _parse_tagger(arg: str) -> TaggerSpec:
    if arg == "pretagged":
        return TaggerSpec(TaggerKind.PRETAGGED_PASSTHROUGH)
    if arg == "external":
        return TaggerSpec(TaggerKind.EXTERNAL_CONLLU)
    if arg.startswith("lexicon:"):
        return TaggerSpec(
            TaggerKind.BUILTIN_LEXICON, Path(arg.split(":", 1)[1]))
    raise InvalidConfig(
        f"unknown tagger {arg!r}; use pretagged, external, or lexicon:<path>")


def _read_transcript(path: Path, fmt: str) -> Transcript:
    text = path.read_text(encoding="utf-8")
    if fmt == "auto":
        if path.suffix in (".conllu", ".conll"):
            fmt = "conllu"
        elif any(
            line.startswith("# speaker") or "\t" in line
            for line in text.splitlines()
        ):
            fmt = "conllu"
        else:
            fmt = "raw"
    if fmt == "conllu":
        return parse_conllu(text)
    return parse_raw_transcript(text)


def _load_transcript(path: Path, fmt: str, tagger: str) -> Transcript:
    return tag_transcript(_read_transcript(path, fmt), _parse_tagger(tagger))


def _write_text(text: str, output: str | None):
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _profile_config(args) -> ProfileConfig:
    if args.config is None:
        return ProfileConfig()
    data = json.loads(Path(args.config).read_text(encoding="utf-8"))
    return config_from_dict(data)


# -- subcommands -------------------------------------------------------------

def cmd_build(args) -> int:
    t = _load_transcript(Path(args.input), args.format, args.tagger)
    profile = build_profile(t, _profile_config(args))
    _write_text(profile_to_json(profile), args.output)
    return 0


def cmd_eval(args) -> int:
    profile = profile_from_json(
        Path(args.profile).read_text(encoding="utf-8"))
    t = _load_transcript(Path(args.input), args.format, args.tagger)
    modes = ([MatchMode.EXACT, MatchMode.LEMMATISED]
             if args.mode == "both" else [MatchMode(args.mode)])
    if MatchMode.LEMMATISED in modes and not t.is_tagged():
        raise MissingLemmas(
            "lemma-based matching needs a tagged transcript")
    cfg = profile.config
    cutoff_s = None if args.cutoff_min is None else args.cutoff_min * 60.0
    windows = make_windows(
        t, profile.construction_span[1], args.window_minutes * 60.0,
        cutoff_s, n_values=list(cfg.n_values),
        marker_policy=cfg.marker_policy, include_aux=cfg.include_aux,
        include_propn=cfg.include_propn,
    )
    if not windows:
        log.warning("no room for %d-minute evaluation windows after %.0fs",
                    args.window_minutes, profile.construction_span[1])
    rows = [
        ReportRow(
            speaker_id=t.speaker_id,
            timepoint_min=cfg.construction_minutes,
            window_minutes=args.window_minutes,
            window_index=w.index,
            scope=rec.scope,
            mode=rec.mode.value,
            k_assignment_id="profile",
            metric=metric,
            value=value,
        )
        for w in windows
        for mode in modes
        for rec in evaluate_profile(profile, w, mode)
        for metric, value in metric_items(rec)
    ]
    _write_text(rows_to_csv(rows), args.output)
    return 0


def _load_manifest(path: Path) -> list[dict]:
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, list):
        raise InvalidConfig("manifest must be a JSON list")
    if not data:
        raise InvalidConfig("manifest is empty")
    entries = []
    for item in data:
        if isinstance(item, str):
            entries.append({"path": item, "format": "auto"})
        elif isinstance(item, dict) and "path" in item:
            entries.append({
                "path": item["path"],
                "format": item.get("format", "auto"),
                **({"tagger": item["tagger"]} if "tagger" in item else {}),
            })
        else:
            raise InvalidConfig(f"bad manifest entry: {item!r}")
    return entries


def cmd_sweep(args) -> int:
    manifest_path = Path(args.manifest)
    entries = _load_manifest(manifest_path)
    if args.config is not None:
        sc = sweep_config_from_dict(
            json.loads(Path(args.config).read_text(encoding="utf-8")))
    else:
        sc = SweepConfig()
    base = manifest_path.parent
    corpus = []
    files = []
    for entry in entries:
        p = Path(entry["path"])
        if not p.is_absolute():
            p = base / p
        corpus.append(_load_transcript(
            p, entry["format"], entry.get("tagger", args.tagger)))
        files.append({
            "path": entry["path"],
            "format": entry["format"],
            "sha256": hashlib.sha256(p.read_bytes()).hexdigest(),
        })
    result = run_sweep(corpus, sc, jobs=args.jobs)
    outdir = Path(args.output or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    write_rows_csv(rows_from_sweep(result), outdir / "rows.csv")
    write_aggregate_csv(aggregate(result), outdir / "aggregate.csv")
    provenance = dict(result.provenance)
    provenance["manifest"] = files
    (outdir / "provenance.json").write_text(
        json.dumps(provenance, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8")
    log.info("sweep: %d records, %d skips -> %s",
             provenance["n_records"], provenance["n_skips"], outdir)
    return 0


def cmd_synth(args) -> int:
    if args.model is not None:
        model = speaker_model_from_json(
            Path(args.model).read_text(encoding="utf-8"))
        if args.seed is not None:
            from dataclasses import replace
            model = replace(model, seed=args.seed)
    else:
        model = default_speaker_model(args.seed if args.seed is not None else 0)
    t = generate_transcript(model, args.duration_min)
    _write_text(
        to_conllu(t, extra_comments=[f"seed = {model.seed}"]), args.output)
    return 0


def cmd_tagcheck(args) -> int:
    t = parse_conllu(Path(args.input).read_text(encoding="utf-8"))
    n_tokens = sum(len(u.tokens) for u in t.utterances)
    n_markers = sum(
        1 for u in t.utterances for tok in u.tokens if tok.is_marker)
    n_untagged = sum(
        1 for u in t.utterances for tok in u.tokens
        if not tok.is_marker and tok.pos == "X")
    if args.strict and n_untagged:
        raise InvalidConfig(
            f"{n_untagged} word tokens lack a POS tag under --strict")
    print(f"ok: speaker_id={t.speaker_id} utterances={len(t.utterances)} "
          f"tokens={n_tokens} markers={n_markers} untagged={n_untagged} "
          f"duration_s={t.duration:g}")
    return 0


def cmd_report(args) -> int:
    indir = Path(args.input)
    agg_path = indir if indir.is_file() else indir / "aggregate.csv"
    rows = read_aggregate_csv(agg_path)
    outdir = Path(args.output) if args.output else agg_path.parent
    written = render_figures(rows, outdir)
    for path in written:
        print(path)
    return 0


# -- wiring ------------------------------------------------------------------

def _common(sub: argparse.ArgumentParser):
    sub.add_argument("--config", help="configuration file (JSON)")
    sub.add_argument("--seed", type=int, help="random seed override")
    sub.add_argument("--jobs", type=int, default=1,
                     help="parallel worker processes")
    sub.add_argument("--output", "-o", help="output file or directory")


def _tagger_flags(sub: argparse.ArgumentParser):
    sub.add_argument("--tagger", default="pretagged",
                     help="pretagged, external, or lexicon:<path>")
    sub.add_argument("--format", default="auto",
                     choices=("auto", "raw", "conllu"),
                     help="input transcript format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexiprof",
        description="Lexical profiles from spoken-dialogue transcripts "
                    "and their stability over time.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a profile from a transcript")
    p.add_argument("--input", required=True)
    _tagger_flags(p)
    _common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("eval", help="evaluate a profile against later speech")
    p.add_argument("--profile", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--window-minutes", type=int, default=10)
    p.add_argument("--mode", default="EXACT",
                   choices=("EXACT", "LEMMATISED", "both"))
    p.add_argument("--cutoff-min", type=int, default=None,
                   help="ignore speech beyond this minute")
    _tagger_flags(p)
    _common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="run the full evaluation grid")
    p.add_argument("--manifest", required=True,
                   help="JSON list of transcript files")
    p.add_argument("--tagger", default="pretagged",
                   help="tagger for manifest entries without one")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="generate a synthetic interview")
    p.add_argument("--model", help="speaker model JSON")
    p.add_argument("--duration-min", type=float, required=True)
    _common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("tagcheck", help="validate transcript metadata")
    p.add_argument("--input", required=True)
    p.add_argument("--strict", action="store_true",
                   help="also require every word to carry a POS tag")
    _common(p)
    p.set_defaults(func=cmd_tagcheck)

    p = sub.add_parser("report", help="render figures from sweep output")
    p.add_argument("--input", required=True,
                   help="sweep output directory or aggregate.csv")
    _common(p)
    p.set_defaults(func=cmd_report)

    return parser


def _exit_code(exc: LexiprofError) -> int:
    if isinstance(exc, EmptyConstructionWindow):
        return 3
    if isinstance(exc, SpanOverlap):
        return 4
    if isinstance(exc, MissingLemmas):
        return 5
    return 2


_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def main(argv=None) -> int:
    level = os.environ.get("LEXIPROF_LOG", "WARNING").upper()
    logging.basicConfig(
        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s",
        level=level if level in _LOG_LEVELS else "WARNING")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LexiprofError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return _exit_code(exc)
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error[Parse]: {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
