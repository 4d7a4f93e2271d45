import csv
import subprocess
import sys

import numpy as np
import pytest

from gpfast import cli
from gpfast.bench import BENCH_COLUMNS, run_bench, write_bench
from gpfast.demo import SNAPSHOT_ITERS, cmd_demo, run_demo
from gpfast.diagnostics import effective_sample_size
from gpfast.errors import NotPositiveDefinite

SUMMARY_COLUMNS = ["index", "t", "truth_w", "obs_s", "post_mean", "post_lo2sd", "post_hi2sd"]


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


@pytest.fixture(scope="module")
def demo_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("demo")
    assert cli.run(["demo", "--out-dir", str(out)]) == 0
    return out


class TestBench:
    def test_smoke_n200(self, tmp_path):
        out = tmp_path / "bench.csv"
        code = cli.run(["bench", "--sizes", "200", "--reps", "5", "--ess-iters", "100", "--out", str(out)])
        assert code == 0
        header, rows = read_csv(out)
        assert header == BENCH_COLUMNS
        ops = [r[0] for r in rows]
        assert ops == ["invert", "trench_invert", "log_det", "log_dmvnorm[toeplitz]",
                       "log_dmvnorm[dense]", "log_dmvnorm_cached[x1000]", "rmvnorm", "ess_run"]
        for r in rows:
            assert int(r[2]) == 200 and int(r[3]) == 5
            fast, base, ratio = float(r[4]), float(r[5]), float(r[6])
            assert fast > 0 and base > 0 and ratio > 0
            assert ratio == pytest.approx(base / fast, abs=5e-4)

    def test_degenerate_size(self, tmp_path):
        out = tmp_path / "b.csv"
        assert cli.run(["bench", "--sizes", "2", "--reps", "3", "--ess-iters", "10", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        assert len(rows) == 8

    def test_no_jitter_and_multiple_sizes(self, tmp_path):
        out = tmp_path / "b.csv"
        assert cli.run(["bench", "--sizes", "4,8", "--reps", "3", "--ess-iters", "0",
                        "--no-jitter", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        assert [int(r[2]) for r in rows] == [4] * 7 + [8] * 7

    def test_csv_round_trip(self, tmp_path):
        rows = run_bench([3], reps=3, ess_iters=0)
        out = write_bench(rows, tmp_path / "b.csv")
        _, back = read_csv(out)
        for row, text in zip(rows, back):
            assert float(text[4]) == row.fast_median_s
            assert float(text[5]) == row.base_median_s

    @pytest.mark.parametrize("argv", [
        ["bench", "--sizes", "1", "--out", "x.csv"],
        ["bench", "--reps", "2", "--out", "x.csv"],
        ["bench", "--sizes", "a,b"],
        ["frobnicate"],
        [],
    ])
    def test_usage_errors(self, argv, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert cli.run(argv) == cli.EXIT_USAGE

    def test_unwritable_output(self, tmp_path):
        out = tmp_path / "missing" / "dir" / "b.csv"
        assert cli.run(["bench", "--sizes", "2", "--reps", "3", "--out", str(out)]) == cli.EXIT_IO


class TestDemo:
    def test_emits_four_csvs(self, demo_dir):
        assert sorted(p.name for p in demo_dir.iterdir()) == [
            "observations.csv", "posterior_summary.csv", "snapshots.csv", "truth.csv"]

    def test_summary_schema(self, demo_dir):
        header, rows = read_csv(demo_dir / "posterior_summary.csv")
        assert header == SUMMARY_COLUMNS
        assert len(rows) == 100
        vals = np.array(rows, dtype=float)
        mean, lo, hi = vals[:, 4], vals[:, 5], vals[:, 6]
        assert np.all(lo <= mean) and np.all(mean <= hi)

    def test_snapshot_rows(self, demo_dir):
        header, rows = read_csv(demo_dir / "snapshots.csv")
        assert header[0] == "iteration" and len(header) == 101
        assert [int(r[0]) for r in rows] == list(SNAPSHOT_ITERS)

    def test_round_trip(self, demo_dir):
        out = run_demo()
        _, rows = read_csv(demo_dir / "posterior_summary.csv")
        vals = np.array(rows, dtype=float)
        np.testing.assert_array_equal(vals[:, 2], out.truth)
        np.testing.assert_array_equal(vals[:, 4], out.post_mean)
        _, snaps = read_csv(demo_dir / "snapshots.csv")
        np.testing.assert_array_equal(np.array(snaps[-1][1:], dtype=float), out.snapshots[1000])

    def test_truth_and_observations_consistent(self, demo_dir):
        _, truth = read_csv(demo_dir / "truth.csv")
        _, obs = read_csv(demo_dir / "observations.csv")
        t = np.array([r[1] for r in truth], dtype=float)
        w = np.array([r[2] for r in truth], dtype=float)
        s = np.array([r[2] for r in obs], dtype=float)
        assert t[0] == 0.0 and t[-1] == pytest.approx(2 * np.pi)
        assert np.max(np.abs(s - np.sin(t + w))) < 6e-3

    def test_byte_identical_reruns(self, demo_dir, tmp_path):
        assert cli.run(["demo", "--out-dir", str(tmp_path)]) == 0
        for name in ("truth.csv", "observations.csv", "posterior_summary.csv", "snapshots.csv"):
            assert (tmp_path / name).read_bytes() == (demo_dir / name).read_bytes()

    def test_env_seed_overrides_flag(self, tmp_path, monkeypatch):
        assert cli.run(["demo", "--seed", "7", "--out-dir", str(tmp_path / "a")]) == 0
        monkeypatch.setenv("GPFAST_SEED", "7")
        assert cli.run(["demo", "--seed", "5", "--out-dir", str(tmp_path / "b")]) == 0
        a = (tmp_path / "a" / "truth.csv").read_bytes()
        assert (tmp_path / "b" / "truth.csv").read_bytes() == a

    def test_too_few_iterations(self, tmp_path):
        assert cli.run(["demo", "--iters", "999", "--out-dir", str(tmp_path)]) == cli.EXIT_USAGE

    def test_numerical_failure_exit_code(self, tmp_path, monkeypatch):
        def boom(**kwargs):
            raise NotPositiveDefinite(3)

        monkeypatch.setattr(cli, "cmd_demo", boom)
        assert cli.run(["demo", "--out-dir", str(tmp_path)]) == cli.EXIT_NUMERIC

    def test_uninformative_likelihood_returns_prior_mean(self):
        out = run_demo(noise_sd=1e6, seed=3)
        ess = effective_sample_size(out.chain.samples)
        assert np.max(np.abs(out.post_mean)) < 3 * 1.0 / np.sqrt(ess.min())

    def test_cmd_demo_returns_output(self, tmp_path):
        out = cmd_demo(n=10, iters=1000, seed=0, out_dir=tmp_path)
        assert out.truth.shape == (10,)
        assert len(out.snapshots) == 6


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "gpfast", "demo", "--n", "8",
                           "--out-dir", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "snapshots.csv").exists()
