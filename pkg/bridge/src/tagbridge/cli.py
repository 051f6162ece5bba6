"""Command-line entry point.

    tagbridge --input raw.txt --output out.conllu --model <id>

Exit codes mirror the profile tool's convention: 0 on success, 2 for
anything unusable (parse failures, bad configuration, unavailable
models, I/O), with a single `error[<Code>]: message` line on stderr.
"""

from __future__ import annotations

import argparse
import sys

from .core import BridgeConfig, DEFAULT_MODEL, tag_file
from .errors import BridgeError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagbridge",
        description="Tag a raw interview transcript into CoNLL-U.")
    parser.add_argument("--input", required=True, help="raw transcript file")
    parser.add_argument("--output", required=True, help="CoNLL-U destination")
    parser.add_argument(
        "--model", default=DEFAULT_MODEL,
        help="pipeline name, or lexicon:<path> for offline table lookup")
    parser.add_argument("--batch-size", type=int, default=32)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = BridgeConfig(
            input_path=args.input,
            output_path=args.output,
            model=args.model,
            batch_size=args.batch_size,
        )
        tag_file(cfg)
    except BridgeError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 2
    return 0


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
