"""Smoke and hygiene tests for figure rendering."""

import io
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from womplot import PlotSpec, SchemaError, read_trajectory, read_voi_sweep, render
from womplot.cli import main

DATA = Path(__file__).resolve().parent / "data"
SWEEP_CSV = DATA / "alpha_sweep.csv"
TRAJ_AWARE = DATA / "trajectory_aware.csv"
TRAJ_NAIVE = DATA / "trajectory_naive.csv"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestReaders:
    def test_sweep_reader(self):
        data = read_voi_sweep(SWEEP_CSV)
        assert data.param == "alpha"
        assert len(data.values) == 50
        assert data.values == sorted(data.values)
        assert all(0.0 <= v <= 100.0 for v in data.voi_pct)

    def test_trajectory_reader(self):
        data = read_trajectory(TRAJ_NAIVE)
        assert data.periods == list(range(1, 19))
        assert all(0.0 <= r <= 1.0 for r in data.reputation)

    def test_schema_mismatch_names_header(self, tmp_path):
        wrong = tmp_path / "wrong.csv"
        wrong.write_text("alpha,profit\n1,2\n")
        with pytest.raises(SchemaError, match="alpha,profit"):
            read_voi_sweep(wrong)
        with pytest.raises(SchemaError, match="trajectory"):
            read_trajectory(wrong)


class TestRender:
    def test_voi_sweep_png(self, tmp_path):
        out = tmp_path / "sweep.png"
        render(PlotSpec(input_csv=SWEEP_CSV, kind="voi_sweep", output=out,
                        title="profit and information value",
                        x_label="advertisement resistance"))
        assert out.stat().st_size > 1000

    def test_trajectory_overlay_svg(self, tmp_path):
        out = tmp_path / "cycle.svg"
        render(PlotSpec(input_csv=TRAJ_AWARE, kind="trajectory", output=out,
                        input2=TRAJ_NAIVE))
        text = out.read_text()
        assert text.startswith("<?xml")
        assert "aware" in text and "naive" in text

    def test_empty_rows_render_fine(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("param,value,profit_aware,profit_naive,voi_pct,"
                         "policy_aware,policy_naive,omega,method,skipped\n")
        out = tmp_path / "empty.png"
        render(PlotSpec(input_csv=empty, kind="voi_sweep", output=out))
        assert out.exists()

    def test_deterministic_bytes(self, tmp_path):
        outs = []
        for name in ("a.png", "b.png"):
            out = tmp_path / name
            render(PlotSpec(input_csv=SWEEP_CSV, kind="voi_sweep",
                            output=out))
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_rejects_unknown_kind_and_extension(self, tmp_path):
        with pytest.raises(ValueError):
            PlotSpec(input_csv=SWEEP_CSV, kind="pie", output=tmp_path / "x.png")
        with pytest.raises(ValueError):
            PlotSpec(input_csv=SWEEP_CSV, kind="voi_sweep",
                     output=tmp_path / "x.pdf")


class TestCli:
    def test_happy_path(self, tmp_path):
        out = tmp_path / "fig.png"
        code, stdout, _ = run_cli("--kind", "voi_sweep", "--in",
                                  str(SWEEP_CSV), "--out", str(out))
        assert code == 0 and str(out) in stdout

    def test_trajectory_with_overlay(self, tmp_path):
        out = tmp_path / "fig.svg"
        code, _, _ = run_cli("--kind", "trajectory", "--in", str(TRAJ_AWARE),
                             "--in2", str(TRAJ_NAIVE), "--out", str(out))
        assert code == 0

    def test_schema_mismatch_exit_2(self, tmp_path):
        wrong = tmp_path / "wrong.csv"
        wrong.write_text("a,b\n1,2\n")
        code, _, err = run_cli("--kind", "voi_sweep", "--in", str(wrong),
                               "--out", str(tmp_path / "x.png"))
        assert code == 2 and "header mismatch" in err

    def test_in2_only_for_trajectories(self, tmp_path):
        code, _, err = run_cli("--kind", "voi_sweep", "--in", str(SWEEP_CSV),
                               "--in2", str(TRAJ_NAIVE), "--out",
                               str(tmp_path / "x.png"))
        assert code == 1 and "--in2" in err

    def test_missing_file_exit_1(self, tmp_path):
        code, _, err = run_cli("--kind", "voi_sweep", "--in", "/nope.csv",
                               "--out", str(tmp_path / "x.png"))
        assert code == 1 and err.startswith("error:")
