import subprocess
import sys

import pytest

from ar1bayes import __version__
from ar1bayes.cli import bias_svg, main, read_series


@pytest.fixture
def series_file(tmp_path):
    path = tmp_path / "s.csv"
    assert main(["simulate", "--phi", "0.5", "--length", "120", "--seed", "42", "--out", str(path)]) == 0
    return path


class TestSimulate:
    def test_file_layout(self, series_file):
        text = series_file.read_text()
        lines = [l for l in text.splitlines() if not l.startswith("#")]
        assert lines[0] == "index,value"
        assert len(lines) == 121
        assert "# seed: 42" in text and f"# version: {__version__}" in text
        manifest = series_file.with_name("s.csv.manifest.txt").read_text()
        assert "duration_s" in manifest and "command = simulate" in manifest

    def test_byte_reproducible(self, tmp_path, series_file):
        other = tmp_path / "t.csv"
        main(["simulate", "--phi", "0.5", "--length", "120", "--seed", "42", "--out", str(other)])
        assert other.read_bytes() == series_file.read_bytes()

    def test_default_burn_in(self, series_file):
        assert "# config.burn_in: 200" in series_file.read_text()

    def test_nonstationary_is_usage_error(self, capsys):
        assert main(["simulate", "--phi", "1.2"]) == 1
        assert "stationarity violated" in capsys.readouterr().err

    def test_unwritable_path(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert main(["simulate", "--phi", "0.1", "--out", str(blocker / "sub" / "x.csv")]) == 1

    def test_full_precision(self, capsys):
        main(["simulate", "--phi", "0.1", "--length", "3", "--precision", "full"])
        value = capsys.readouterr().out.strip().splitlines()[-1].split(",")[1]
        assert len(value.split(".")[1]) > 4


class TestReader:
    def test_round_trip(self, series_file):
        y = read_series(series_file)
        assert y.size == 120

    def test_whitespace_and_comments(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("# note\n\n1 10.5\n2   11.0\n")
        assert read_series(p).tolist() == [10.5, 11.0]
        assert read_series(p, "0").tolist() == [1.0, 2.0]

    def test_named_column(self, tmp_path):
        p = tmp_path / "h.csv"
        p.write_text("year,count\n1,5\n2,6\n")
        assert read_series(p, "year").tolist() == [1.0, 2.0]

    def test_bad_line_named(self, tmp_path, capsys):
        p = tmp_path / "bad.csv"
        p.write_text("x\n1\n2\nfoo\n")
        assert main(["estimate", str(p), "--train"]) == 2
        assert "line 4" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["estimate", str(tmp_path / "nope.csv"), "--train"]) == 2


class TestEstimate:
    def test_one_row(self, series_file, capsys):
        assert main(["estimate", str(series_file), "--d", "0.5", "--sigma-phi2", "1"]) == 0
        lines = [l for l in capsys.readouterr().out.splitlines() if l and not l.startswith("#")]
        assert lines[0] == "MME,CLS,MLE,CMLE,BE"
        assert len(lines) == 2
        assert all(len(v.split(".")[1]) == 4 for v in lines[1].split(","))

    def test_deterministic(self, series_file, capsys):
        main(["estimate", str(series_file), "--train"])
        first = capsys.readouterr().out
        main(["estimate", str(series_file), "--train"])
        assert capsys.readouterr().out == first

    def test_zero_series_is_data_error(self, tmp_path, capsys):
        p = tmp_path / "z.csv"
        p.write_text("0\n" * 15)
        assert main(["estimate", str(p), "--d", "0.5", "--sigma-phi2", "1"]) == 2
        assert "zero" in capsys.readouterr().err

    def test_needs_hyperparameters(self, series_file):
        assert main(["estimate", str(series_file)]) == 1
        assert main(["estimate", str(series_file), "--train", "--d", "0.1"]) == 1


class TestAnalyze:
    def test_report_files(self, tmp_path, series_file):
        out = tmp_path / "report"
        assert main(["analyze", str(series_file), "--out", str(out)]) == 0
        names = sorted(p.name for p in out.iterdir())
        assert names == ["estimates.csv", "manifest.txt", "normality.csv", "posteriors.csv", "unit_root.csv"]
        post = [l for l in (out / "posteriors.csv").read_text().splitlines() if not l.startswith("#")]
        assert post[0] == "prior,mean,sd,lower,upper,length" and len(post) == 5
        pp = [l for l in (out / "unit_root.csv").read_text().splitlines() if not l.startswith("#")]
        assert len(pp) == 5  # header + lags 0..3

    def test_white_noise(self, tmp_path, capsys):
        p = tmp_path / "wn.csv"
        main(["simulate", "--phi", "0", "--length", "300", "--seed", "9", "--out", str(p)])
        capsys.readouterr()
        assert main(["analyze", str(p), "--precision", "full"]) == 0
        out = capsys.readouterr().out
        rows = [l for l in out.splitlines() if l and not l.startswith("#")]
        pp = rows[1:5]
        assert all(float(r.split(",")[4]) < 0.01 for r in pp)
        est = [float(v) for v in rows[6].split(",")]
        assert all(abs(v) < 0.15 for v in est)

    def test_short_series(self, tmp_path, capsys):
        p = tmp_path / "short.csv"
        p.write_text("1\n2\n3\n4\n5\n")
        assert main(["analyze", str(p)]) == 2
        assert "series too short" in capsys.readouterr().err


class TestCompare:
    def test_default_tables(self, tmp_path):
        out = tmp_path / "cmp"
        assert main(["compare", "--out", str(out)]) == 0
        for T in (30, 100):
            rows = [l for l in (out / f"compare_T{T}.csv").read_text().splitlines() if not l.startswith("#")]
            assert rows[0] == "phi,MME,CLS,MLE,CMLE,BE"
            assert [r.split(",")[0] for r in rows[1:]] == ["-0.9000", "-0.5000", "0.0000", "0.5000", "0.9000"]
        assert "outputs = " in (out / "manifest.txt").read_text()

    def test_empty_grid(self, capsys):
        assert main(["compare", "--phi", ""]) == 1
        assert "empty grid" in capsys.readouterr().err

    def test_config_file_and_flag_precedence(self, tmp_path, capsys):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[simulation]\nphi_grid = 0.2, 0.4\nlengths = 40\nbase_seed = 7\n")
        assert main(["compare", "--config", str(cfg), "--seed", "8"]) == 0
        out = capsys.readouterr().out
        assert "# seed: 8" in out and "compare" in out
        assert "0.2000," in out and "0.4000," in out and "T = 40" in out

    def test_config_empty_grid(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[simulation]\nphi_grid =\n")
        assert main(["compare", "--config", str(cfg)]) == 1

    def test_config_unknown_key(self, tmp_path):
        cfg = tmp_path / "c.ini"
        cfg.write_text("[simulation]\ncolour = blue\n")
        assert main(["compare", "--config", str(cfg)]) == 1

    def test_averaged(self, capsys):
        assert main(["compare", "--phi", "0.5", "--length", "30", "--replications", "20"]) == 0
        assert "mean over 20 replication(s)" in capsys.readouterr().out


class TestSensitivity:
    def test_tables_and_parallel_identity(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        args = ["sensitivity", "--replications", "12", "--length", "30,50"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b), "--jobs", "2"]) == 0
        files = sorted(p.name for p in a.iterdir() if p.suffix == ".csv")
        assert len(files) == 6
        for name in files:
            assert (a / name).read_bytes() == (b / name).read_bytes()
        text = (a / "sensitivity_phi_-0.2.csv").read_text()
        assert "smoke run" in text
        rows = [l for l in text.splitlines() if not l.startswith("#")]
        assert rows[0] == "n,Jeffreys,GPrior,NaturalConjugate,TruncatedNormal,denominator"


class TestBiasPlot:
    def test_rows_and_svg(self, tmp_path):
        out, svg = tmp_path / "bias.csv", tmp_path / "bias.svg"
        assert main(["bias-plot", "--out", str(out), "--svg", str(svg)]) == 0
        rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert rows[0] == "repeat,method,abs_bias" and len(rows) == 51
        assert all(float(r.split(",")[2]) >= 0 for r in rows[1:])
        assert "# config.phi_grid: 0.5" in out.read_text()
        body = svg.read_text()
        assert body.startswith("<svg") and body.count("<polyline") == 5

    def test_svg_single_repeat(self):
        assert "<polyline" in bias_svg([(1, "CLS", 0.1)], 0.5, 30)


class TestEntryPoints:
    def test_bad_subcommand(self):
        assert main(["bogus"]) == 1

    def test_module_invocation(self):
        proc = subprocess.run([sys.executable, "-m", "ar1bayes", "--version"], capture_output=True, text=True)
        assert proc.returncode == 0 and __version__ in proc.stdout
