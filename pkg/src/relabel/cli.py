"""``relabel`` command line: convert, validate, stats, roundtrip, table, compare.

Exit status: 0 success, 1 error-severity findings or strict mapping failure,
2 usage or configuration error, 3 I/O or parse failure.  Data goes to
stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Sequence

from .conllu import ConlluError, Sentence, iter_sentences, serialize_sentence
from .convert import ConversionError, ConvertConfig, ConvertReport, iter_convert, roundtrip_check
from .graph import validate_document
from .policy import Policy
from .report import ERROR
from .stats import (GoldenMismatch, compare_with_golden, count_labels, read_golden,
                    render_diff, render_table)
from .taxonomy import DEFAULT_REGISTRY

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
CONFIG_ENV = "RELABEL_CONFIG"
CONFIG_KEYS = {
    "framework": str, "src_key": str, "dst_key": str, "keep_src": bool,
    "policy": str, "override_table": str, "jobs": int,
}


class UsageError(Exception):
    pass


# ------------------------------------------------------------------- config

def load_config(path: Optional[str]) -> dict:
    """Read flat ``key = value`` defaults whose names mirror ConvertConfig."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"bad config {path}: {exc}") from None
    for key, value in data.items():
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r} in {path}")
        if not isinstance(value, CONFIG_KEYS[key]) or (CONFIG_KEYS[key] is int and isinstance(value, bool)):
            raise UsageError(f"config key {key!r} must be {CONFIG_KEYS[key].__name__}")
    if "override_table" in data:
        base = Path(path).parent
        data["override_table"] = str(base / data["override_table"])
    return data


def _setting(args, config: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


def _convert_config(args, config: dict, framework: Optional[str] = None) -> ConvertConfig:
    keep = False if getattr(args, "no_keep_src", False) else config.get("keep_src", True)
    try:
        return ConvertConfig(
            framework=framework or _setting(args, config, "framework", "fgd"),
            src_key=_setting(args, config, "src_key"),
            dst_key=_setting(args, config, "dst_key", "DeepRel"),
            keep_src=keep,
            policy=_setting(args, config, "policy", Policy.FALLBACK.value),
            override_table=_setting(args, config, "override_table"),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------- I/O

@contextmanager
def _open_input(path: str):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8-sig", newline="\n") as fh:
            yield fh


def _sentences(path: str) -> Iterator[Sentence]:
    with _open_input(path) as fh:
        yield from iter_sentences(fh)


@contextmanager
def _atomic_output(path: Optional[str]):
    """Write to a temp file beside ``path`` and move it in place on success."""
    if path is None or path == "-":
        yield sys.stdout
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def _report(findings, stream=None) -> None:
    stream = stream or sys.stderr
    for f in findings:
        print(f.render(), file=stream)


# ---------------------------------------------------------------- commands

def cmd_convert(args, config) -> int:
    cfg = _convert_config(args, config, framework=args.framework)
    jobs = _setting(args, config, "jobs", 1)
    total = ConvertReport()
    try:
        cfg.table
    except (OSError, ValueError) as exc:
        raise UsageError(f"override table: {exc}") from None
    with _atomic_output(args.output) as out:
        for sent, rep in iter_convert(_sentences(args.input), cfg, jobs=jobs):
            out.write(serialize_sentence(sent))
            total = total.merge(rep)
    _report(total.diagnostics)
    print(total.summary(), file=sys.stderr)
    return EXIT_FINDINGS if total.worst == ERROR else EXIT_OK


def cmd_validate(args, config) -> int:
    jobs = _setting(args, config, "jobs", 1)
    report = validate_document(_sentences(args.input), jobs=jobs)
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_FINDINGS if report.errors else EXIT_OK


def cmd_stats(args, config) -> int:
    key = args.key or config.get("dst_key", "DeepRel")
    table = count_labels(_sentences(args.input), key, corpus=Path(args.input).name)
    sys.stdout.write(render_table(table, args.format))
    return EXIT_OK


def cmd_roundtrip(args, config) -> int:
    cfg = _convert_config(args, config)
    report = roundtrip_check(_sentences(args.input), cfg, args.mode)
    _report(report.findings)
    stats = " ".join(f"{k}={v}" for k, v in sorted(report.stats.items()))
    print(stats, file=sys.stdout)
    return EXIT_FINDINGS if report.errors else EXIT_OK


def cmd_table(args, config) -> int:
    if args.which == "registry":
        table = DEFAULT_REGISTRY
    else:
        cfg = _convert_config(args, config, framework=args.which)
        try:
            table = cfg.table
        except (OSError, ValueError) as exc:
            raise UsageError(f"override table: {exc}") from None
    sys.stdout.write(table.to_json() if args.format == "json" else table.to_tsv())
    return EXIT_OK


def cmd_compare(args, config) -> int:
    key = args.key or config.get("dst_key", "DeepRel")
    table = count_labels(_sentences(args.input), key)
    golden = read_golden(Path(args.golden).read_text(encoding="utf-8"), key)
    try:
        diff = compare_with_golden(table, golden, args.mode)
    except GoldenMismatch as exc:
        sys.stdout.write(render_diff(exc.diff))
        print(f"ERROR GOLDEN_MISMATCH {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    sys.stdout.write(render_diff(diff))
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"TOML file with defaults (else ${CONFIG_ENV})")
    common.add_argument("-v", "--verbose", action="store_true", help="log parser warnings")

    mapping = argparse.ArgumentParser(add_help=False)
    mapping.add_argument("--policy", choices=[p.value for p in Policy])
    mapping.add_argument("--src-key", dest="src_key")
    mapping.add_argument("--dst-key", dest="dst_key")
    mapping.add_argument("--override", dest="override_table", metavar="TSV",
                         help="mapping overrides merged over the default table")

    parser = argparse.ArgumentParser(prog="relabel", description="Harmonize deep-syntactic relation labels in CoNLL-U files.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("convert", parents=[common, mapping], help="write unified labels into MISC")
    p.add_argument("--from", dest="framework", choices=["fgd", "ancora"])
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--out", dest="output", metavar="FILE", help="default: stdout")
    p.add_argument("--no-keep-src", action="store_true", help="do not record the source label")
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("validate", parents=[common], help="check basic tree and enhanced graph")
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", parents=[common], help="label frequency table")
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--key", help="MISC key to count (default: the destination key)")
    p.add_argument("--format", choices=["tsv", "json", "markdown"], default="tsv")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("roundtrip", parents=[common, mapping], help="check a converted file for label loss")
    p.add_argument("--from", dest="framework", choices=["fgd", "ancora"])
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--mode", choices=["A", "B", "AB"], default="AB")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("table", parents=[common, mapping], help="export the active mapping table")
    p.add_argument("which", nargs="?", choices=["fgd", "ancora", "registry"], default="fgd")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", parents=[common], help="diff label counts against a golden TSV")
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--golden", required=True, metavar="TSV")
    p.add_argument("--key", help="MISC key to count (default: the destination key)")
    p.add_argument("--mode", choices=["assert", "report"], default="assert")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except UsageError as exc:
        print(f"relabel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConversionError as exc:
        print(f"ERROR MAPPING_FAILED {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    except ConlluError as exc:
        print(f"relabel: parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"relabel: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
