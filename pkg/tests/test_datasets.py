import numpy as np
import pytest

from nrmi.datasets import (
    EvaluationReport,
    ManifestRecord,
    evaluate_dataset,
    load_csv_manifest,
    load_tid_manifest,
    read_json_report,
    write_report,
)
from nrmi.distort import distortion_ladder
from nrmi.errors import FormatError, WriteError
from nrmi.image import encode_pgm
from nrmi.metric import NrmiConfig
from conftest import make_blobs


class TestCsvManifest:
    def test_basic(self, tmp_path):
        f = tmp_path / "m.csv"
        f.write_text("path,mos\na.png,4.5\nb.png,2.0\n")
        records = load_csv_manifest(f)
        assert records == [ManifestRecord("a.png", 4.5), ManifestRecord("b.png", 2.0)]

    def test_empty_file(self, tmp_path):
        f = tmp_path / "m.csv"
        f.write_text("")
        with pytest.raises(FormatError, match="header"):
            load_csv_manifest(f)

    def test_bad_header(self, tmp_path):
        f = tmp_path / "m.csv"
        f.write_text("file,score\na.png,1\n")
        with pytest.raises(FormatError, match="line 1"):
            load_csv_manifest(f)

    def test_unparseable_mos_names_line(self, tmp_path):
        f = tmp_path / "m.csv"
        f.write_text("path,mos\na.png,abc\n")
        with pytest.raises(FormatError, match="line 2"):
            load_csv_manifest(f)

    def test_crlf_tolerated(self, tmp_path):
        f = tmp_path / "m.csv"
        f.write_bytes(b"path,mos\r\na.png,1.5\r\n")
        assert load_csv_manifest(f) == [ManifestRecord("a.png", 1.5)]


class TestTidManifest:
    def test_basic_line(self, tmp_path):
        f = tmp_path / "mos_with_names.txt"
        f.write_text("5.51 i01_01_1.bmp\n")
        assert load_tid_manifest(f) == [ManifestRecord("i01_01_1.bmp", 5.51)]

    def test_blank_lines_skipped(self, tmp_path):
        f = tmp_path / "m.txt"
        f.write_text("\n5.0 a.bmp\n\n4.0 b.bmp\n")
        assert len(load_tid_manifest(f)) == 2

    def test_swapped_order_rejected(self, tmp_path):
        f = tmp_path / "m.txt"
        f.write_text("i01.bmp 5.5\n")
        with pytest.raises(FormatError, match="line 1"):
            load_tid_manifest(f)


def ladder_fixture(tmp_path, levels=(0, 8, 32), mos=(5.0, 3.0, 1.0)):
    """Noise ladder written as PGM files plus a matching manifest."""
    img = make_blobs(60, 60)
    rungs = distortion_ladder(img, "gaussian-noise", list(levels), seed=3)
    records = []
    for level, distorted, score in zip(levels, rungs, mos):
        name = f"noise_{level}.pgm"
        (tmp_path / name).write_bytes(encode_pgm(distorted))
        records.append(ManifestRecord(name, score))
    return records


class TestEvaluate:
    def test_monotone_ladder_perfect_srcc(self, tmp_path):
        manifest = ladder_fixture(tmp_path)
        report = evaluate_dataset(manifest, tmp_path, NrmiConfig(), "ladder")
        assert report.n_scored == 3 and report.n_failed == 0
        assert abs(report.srcc) == pytest.approx(1.0, abs=1e-12)

    def test_missing_file_collected(self, tmp_path):
        manifest = ladder_fixture(tmp_path) + [ManifestRecord("missing.pgm", 2.0)]
        report = evaluate_dataset(manifest, tmp_path)
        assert report.n_failed == 1
        assert report.n_scored == 3
        failed = [r for r in report.records if r.error is not None]
        assert failed[0].path == "missing.pgm"

    def test_empty_manifest(self, tmp_path):
        report = evaluate_dataset([], tmp_path)
        assert report.srcc is None and report.plcc is None
        assert report.n_scored == 0

    def test_record_conservation_and_order(self, tmp_path):
        manifest = ladder_fixture(tmp_path)
        report = evaluate_dataset(manifest, tmp_path)
        assert [r.path for r in report.records] == [m.path for m in manifest]

    def test_order_insensitive_correlations(self, tmp_path):
        manifest = ladder_fixture(tmp_path)
        r1 = evaluate_dataset(manifest, tmp_path)
        r2 = evaluate_dataset(list(reversed(manifest)), tmp_path)
        assert r1.srcc == pytest.approx(r2.srcc, abs=1e-12)
        assert r1.plcc == pytest.approx(r2.plcc, abs=1e-12)


class TestReports:
    def make_report(self, tmp_path):
        manifest = ladder_fixture(tmp_path) + [ManifestRecord("gone.pgm", 2.0)]
        return evaluate_dataset(manifest, tmp_path, dataset_name="fixture")

    def test_csv_layout(self, tmp_path):
        report = self.make_report(tmp_path)
        out = tmp_path / "report.csv"
        write_report(report, "csv", out)
        lines = out.read_text().splitlines()
        assert lines[0] == "path,mos,nrmi,error"
        data = [l for l in lines[1:] if not l.startswith("#")]
        comments = [l for l in lines if l.startswith("#")]
        assert len(data) == 4
        assert any("n_scored=3" in l for l in comments)

    def test_json_roundtrip(self, tmp_path):
        report = self.make_report(tmp_path)
        out = tmp_path / "report.json"
        write_report(report, "json", out)
        assert read_json_report(out) == report

    def test_unwritable_path(self, tmp_path):
        report = self.make_report(tmp_path)
        with pytest.raises(WriteError):
            write_report(report, "csv", tmp_path / "no" / "such" / "dir" / "r.csv")
