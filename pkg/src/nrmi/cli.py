"""Command-line surface: score one image, batch-score a manifest, evaluate a
dataset against MOS, or generate a seeded distortion ladder.

Exit codes: 0 success, 1 partial failures (batch/eval) or insufficient data,
2 usage error, 3 fatal I/O error. Data goes to stdout; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import datasets, distort, image, metric
from .errors import ConfigError, FormatError, NrmiError


def _config_from_args(args) -> metric.NrmiConfig:
    return metric.NrmiConfig(r=args.r, eps_eig=args.eps_eig)


def _add_config_flags(parser):
    parser.add_argument("--r", type=int, default=1,
                        help="neighborhood radius; block size is 2r+1 (default 1)")
    parser.add_argument("--eps-eig", type=float, default=1e-9, dest="eps_eig",
                        help="eigenvalue clamp for log-determinants (default 1e-9)")


def cmd_score(args) -> int:
    try:
        data = Path(args.image).read_bytes()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        img = image.decode_image(data)
        record = metric.score_image(img, _config_from_args(args), source=args.image)
    except NrmiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.json:
        payload = dataclasses.asdict(record)
        payload["effective_dims"] = list(record.effective_dims)
        print(json.dumps(payload))
    else:
        print(f"nrmi={record.nrmi!r} m_rmi={record.m_rmi!r} weight={record.weight!r}")
    return 0


def _load_manifest(args):
    loader = datasets.load_tid_manifest if getattr(args, "tid_format", False) \
        else datasets.load_csv_manifest
    return loader(args.manifest)


def cmd_batch(args) -> int:
    try:
        manifest = _load_manifest(args)
    except FormatError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    root = Path(args.root) if args.root else Path(args.manifest).parent
    report = datasets.evaluate_dataset(manifest, root, _config_from_args(args),
                                       dataset_name=Path(args.manifest).stem)
    try:
        datasets.write_report(report, args.format, args.out)
    except NrmiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"scored={report.n_scored} failed={report.n_failed} out={args.out}")
    return 0 if report.n_failed == 0 else 1


def cmd_eval(args) -> int:
    try:
        manifest = _load_manifest(args)
    except FormatError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    root = Path(args.root) if args.root else Path(args.manifest).parent
    report = datasets.evaluate_dataset(manifest, root, _config_from_args(args),
                                       dataset_name=Path(args.manifest).stem)
    if args.out:
        try:
            datasets.write_report(report, args.format, args.out)
        except NrmiError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
    if report.srcc is None:
        print(
            f"insufficient data: {report.n_scored} scored, {report.n_failed} failed; "
            "need >= 3 successful scores with non-degenerate variance",
            file=sys.stderr,
        )
        return 1
    print(f"srcc={report.srcc!r} plcc={report.plcc!r} n={report.n_scored}")
    return 0 if report.n_failed == 0 else 1


def cmd_distort(args) -> int:
    try:
        data = Path(args.input).read_bytes()
        img = image.decode_image(data)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NrmiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        levels = [float(v) for v in args.levels.split(",") if v.strip() != ""]
        ladder = distort.distortion_ladder(img, args.kind, levels, args.seed)
    except (ValueError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = Path(args.input).stem
        for level, distorted in zip(levels, ladder):
            level_text = f"{level:g}"
            path = out_dir / f"{stem}_{args.kind}_{level_text}.pgm"
            path.write_bytes(image.encode_pgm(distorted))
            print(path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrmi",
        description="No-reference image quality index from regional mutual information",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("score", help="score a single image")
    p.add_argument("image")
    _add_config_flags(p)
    p.add_argument("--json", action="store_true", help="emit the record as JSON")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("batch", help="score a manifest of images into a report file")
    p.add_argument("--manifest", required=True)
    p.add_argument("--root", default=None,
                   help="image root (default: the manifest's directory)")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--tid-format", action="store_true", dest="tid_format",
                   help="manifest is '<mos> <filename>' lines instead of CSV")
    _add_config_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("eval", help="correlate scores against MOS (SRCC/PLCC)")
    p.add_argument("--manifest", required=True)
    p.add_argument("--tid-format", action="store_true", dest="tid_format")
    p.add_argument("--root", default=None)
    p.add_argument("--out", default=None, help="also write the full report here")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_config_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("distort", help="write a seeded distortion ladder as PGM files")
    p.add_argument("input")
    p.add_argument("--kind", choices=distort.KINDS, required=True)
    p.add_argument("--levels", required=True, help="comma-separated increasing levels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True, dest="out_dir")
    p.set_defaults(func=cmd_distort)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
