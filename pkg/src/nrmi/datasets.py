"""Dataset manifests (score-vs-MOS), batch evaluation over image databases,
and report emission.

Two manifest formats are supported: a generic CSV with a "path,mos" header,
and the TID distributions' "<mos> <filename>" whitespace layout. Databases
themselves are never bundled; callers point the tool at local copies.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DegenerateVarianceError, FormatError, NrmiError, WriteError
from .image import decode_image
from .metric import NrmiConfig, score_image
from .stats import pearson, spearman


@dataclass(frozen=True)
class ManifestRecord:
    path: str
    mos: float


@dataclass(frozen=True)
class ReportRecord:
    path: str
    mos: float
    nrmi: float = None
    error: str = None


@dataclass(frozen=True)
class EvaluationReport:
    dataset_name: str
    n_scored: int
    n_failed: int
    srcc: float
    plcc: float
    records: tuple


def load_csv_manifest(path) -> list:
    """Parse a "path,mos" CSV manifest; paths are kept as written (relative
    to the manifest's directory)."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty manifest: missing 'path,mos' header", line=1)
        if [h.strip().lower() for h in header] != ["path", "mos"]:
            raise FormatError(f"expected header 'path,mos', got {','.join(header)!r}", line=1)
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise FormatError(f"expected 2 fields, got {len(row)}", line=lineno)
            rel, mos_text = row[0].strip(), row[1].strip()
            if not rel:
                raise FormatError("empty path", line=lineno)
            try:
                mos = float(mos_text)
            except ValueError:
                raise FormatError(f"unparseable mos {mos_text!r}", line=lineno)
            records.append(ManifestRecord(rel, mos))
    return records


def load_tid_manifest(path) -> list:
    """Parse the TID databases' mos_with_names layout: "<mos> <filename>"."""
    records = []
    with open(Path(path)) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise FormatError(f"expected '<mos> <filename>', got {line!r}", line=lineno)
            try:
                mos = float(parts[0])
            except ValueError:
                raise FormatError(f"unparseable mos {parts[0]!r}", line=lineno)
            records.append(ManifestRecord(parts[1], mos))
    return records


def evaluate_dataset(manifest, root, cfg: NrmiConfig = NrmiConfig(),
                     dataset_name: str = "") -> EvaluationReport:
    """Score every manifest image under `root` and correlate against MOS.

    Per-image failures are collected, never fatal. Correlations are present
    only with >= 3 successful scores and non-degenerate variance.
    """
    root = Path(root)
    records = []
    for rec in manifest:
        try:
            data = (root / rec.path).read_bytes()
            img = decode_image(data)
            q = score_image(img, cfg, source=rec.path)
            records.append(ReportRecord(rec.path, rec.mos, nrmi=q.nrmi))
        except (OSError, NrmiError) as exc:
            records.append(ReportRecord(rec.path, rec.mos, error=str(exc)))
    scored = [r for r in records if r.error is None]
    srcc = plcc = None
    if len(scored) >= 3:
        xs = [r.nrmi for r in scored]
        ys = [r.mos for r in scored]
        try:
            srcc = spearman(xs, ys)
            plcc = pearson(xs, ys)
        except DegenerateVarianceError:
            srcc = plcc = None
    return EvaluationReport(
        dataset_name=dataset_name,
        n_scored=len(scored),
        n_failed=len(records) - len(scored),
        srcc=srcc,
        plcc=plcc,
        records=tuple(records),
    )


def write_report(report: EvaluationReport, fmt: str, out) -> None:
    """Emit a report as CSV (data rows plus '#'-prefixed summary footer) or
    JSON (round-trip stable via read_json_report)."""
    out = Path(out)
    try:
        if fmt == "csv":
            with open(out, "w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["path", "mos", "nrmi", "error"])
                for r in report.records:
                    writer.writerow([
                        r.path,
                        repr(r.mos),
                        "" if r.nrmi is None else repr(r.nrmi),
                        r.error or "",
                    ])
                fh.write(f"# dataset={report.dataset_name}\n")
                fh.write(f"# n_scored={report.n_scored} n_failed={report.n_failed}\n")
                fh.write(f"# srcc={report.srcc!r} plcc={report.plcc!r}\n")
        elif fmt == "json":
            payload = {
                "dataset_name": report.dataset_name,
                "n_scored": report.n_scored,
                "n_failed": report.n_failed,
                "srcc": report.srcc,
                "plcc": report.plcc,
                "records": [
                    {"path": r.path, "mos": r.mos, "nrmi": r.nrmi, "error": r.error}
                    for r in report.records
                ],
            }
            with open(out, "w") as fh:
                json.dump(payload, fh, indent=2)
                fh.write("\n")
        else:
            raise ValueError(f"unknown report format {fmt!r}")
    except OSError as exc:
        raise WriteError(f"cannot write report to {out}: {exc}")


def read_json_report(path) -> EvaluationReport:
    with open(Path(path)) as fh:
        payload = json.load(fh)
    return EvaluationReport(
        dataset_name=payload["dataset_name"],
        n_scored=payload["n_scored"],
        n_failed=payload["n_failed"],
        srcc=payload["srcc"],
        plcc=payload["plcc"],
        records=tuple(
            ReportRecord(r["path"], r["mos"], r["nrmi"], r["error"])
            for r in payload["records"]
        ),
    )
