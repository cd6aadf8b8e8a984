"""
End-to-end tests for the command-line entry point.
"""
import json
import os

import pandas as pd
import pytest

from bench_cli import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main, summarize
from models import RunReport
from tour import Tour, read_tour, tour_length
from utils import err_percent

FAST = ["--npop", "4", "--nch", "2", "--g", "1"]


@pytest.fixture
def square_file(generator, square):
    return generator.write_instance(square)


@pytest.fixture
def triangle_file(generator, triangle):
    return generator.write_instance(triangle)


class TestSolve:
    def test_triangle(self, triangle_file, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["solve", triangle_file, "--optimum", "12", "--out", str(out)] + FAST)
        assert code == EXIT_OK
        printed = capsys.readouterr().out
        assert "Best length: 12" in printed
        assert "Err: 0.00%" in printed
        assert (out / "tri.json").exists()
        assert (out / "tri_trace.csv").exists()
        tour = read_tour((out / "tri.tour").read_text(), 3)
        assert len(tour) == 3
        assert "Length = 12" in (out / "tri.tour").read_text()

    def test_report_matches_tour(self, square_file, square, tmp_path):
        out = tmp_path / "out"
        assert main(["solve", square_file, "--out", str(out), "--seed", "5"] + FAST) == EXIT_OK
        report = json.loads((out / "square.json").read_text())
        assert report["best_length"] == 40
        assert report["seed"] == 5
        assert tour_length(square, Tour(tuple(report["best_tour"]))) == 40
        trace = pd.read_csv(out / "square_trace.csv")
        assert list(trace["generation"]) == list(range(len(trace)))

    def test_missing_instance(self, tmp_path):
        assert main(["solve", str(tmp_path / "nosuch.tsp"), "--out", str(tmp_path)] + FAST) == EXIT_RUNTIME

    def test_invalid_population(self, triangle_file, tmp_path, capsys):
        assert main(["solve", triangle_file, "--npop", "0", "--out", str(tmp_path)]) == EXIT_USAGE
        assert "n_pop" in capsys.readouterr().err

    def test_config_file_is_overridden_by_flags(self, triangle_file, tmp_path):
        config_file = tmp_path / "cfg.json"
        config_file.write_text(json.dumps({"n_pop": 3, "seed": 11}))
        out = tmp_path / "out"
        assert main(["solve", triangle_file, "--config", str(config_file), "--seed", "2",
                     "--out", str(out), "--nch", "2", "--g", "1"]) == EXIT_OK
        report = json.loads((out / "tri.json").read_text())
        assert report["config"]["n_pop"] == 3
        assert report["seed"] == 2

    def test_bad_config_file(self, triangle_file, tmp_path):
        config_file = tmp_path / "cfg.json"
        config_file.write_text(json.dumps({"population": 3}))
        assert main(["solve", triangle_file, "--config", str(config_file), "--out", str(tmp_path)]) == EXIT_USAGE

    def test_malformed_instance(self, tmp_path):
        bad = tmp_path / "bad.tsp"
        bad.write_text("NAME : bad\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : GEO\nNODE_COORD_SECTION\nEOF\n")
        assert main(["solve", str(bad), "--out", str(tmp_path)] + FAST) == EXIT_RUNTIME


class TestBench:
    def test_csv_manifest(self, generator, square_file, tmp_path, capsys):
        manifest = generator.write_manifest([(square_file, 40)])
        out = tmp_path / "bench"
        code = main(["--quiet", "bench", manifest, "--runs", "2", "--out", str(out)] + FAST)
        assert code == EXIT_OK
        summary = pd.read_csv(out / "bench_summary.csv")
        assert list(summary["Instance"]) == ["square"]
        assert list(summary["Success"]) == ["2/2"]
        assert summary["Err"].iloc[0] == 0.0
        runs = pd.read_csv(out / "bench_runs.csv")
        assert sorted(runs["seed"]) == [1, 2]
        assert "2/2" in capsys.readouterr().out

    def test_run_reports_reproduce_summary_err(self, generator, tmp_path):
        inst = generator.random_instance(25, name="rand25")
        manifest = generator.write_manifest([(generator.write_instance(inst), 1000)])
        out = tmp_path / "bench"
        assert main(["--quiet", "bench", manifest, "--runs", "3", "--out", str(out)] + FAST) == EXIT_OK

        reports = sorted((out / "runs").glob("rand25_*.json"))
        assert [p.name for p in reports] == ["rand25_1.json", "rand25_2.json", "rand25_3.json"]
        lengths = [RunReport.from_json_file(str(p)).best_length for p in reports]
        summary = pd.read_csv(out / "bench_summary.csv", dtype=str)
        assert summary["Err"].iloc[0] == f"{err_percent(sum(lengths) / len(lengths), 1000):.2f}"
        runs = pd.read_csv(out / "bench_runs.csv")
        assert sorted(os.path.basename(p) for p in runs["report"]) == [p.name for p in reports]

    def test_missing_instance_is_reported_not_fatal(self, generator, square_file, tmp_path):
        manifest = generator.write_manifest([("nosuch9847", 491924), (square_file, 40)],
                                            filename="manifest.txt")
        out = tmp_path / "bench"
        assert main(["--quiet", "bench", manifest, "--runs", "1", "--out", str(out)] + FAST) == EXIT_OK
        summary = pd.read_csv(out / "bench_summary.csv").set_index("Instance")
        assert summary.loc["nosuch9847", "Optimum"] == 491924
        assert summary.loc["nosuch9847", "Success"] == "0/1"
        assert "not found" in summary.loc["nosuch9847", "Error"]
        assert summary.loc["square", "Success"] == "1/1"

    def test_nch_sweep_adds_config_column(self, generator, square_file, tmp_path):
        manifest = generator.write_manifest([(square_file, 40)])
        out = tmp_path / "bench"
        args = ["--quiet", "bench", manifest, "--runs", "1", "--out", str(out),
                "--npop", "4", "--g", "1", "--nch", "2,3"]
        assert main(args) == EXIT_OK
        summary = pd.read_csv(out / "bench_summary.csv")
        assert list(summary["Config"]) == ["nch=2", "nch=3"]
        assert (out / "runs" / "square_nch-2_1.json").exists()
        assert (out / "runs" / "square_nch-3_1.json").exists()

    def test_compare_global(self, generator, square_file, tmp_path):
        manifest = generator.write_manifest([(square_file, 40)])
        out = tmp_path / "bench"
        args = ["--quiet", "bench", manifest, "--runs", "1", "--out", str(out),
                "--compare-global", "kmultiple,block"] + FAST
        assert main(args) == EXIT_OK
        summary = pd.read_csv(out / "bench_summary.csv")
        assert list(summary["Config"]) == ["global=kmultiple", "global=block"]

    def test_unknown_global_strategy(self, generator, square_file, tmp_path):
        manifest = generator.write_manifest([(square_file, 40)])
        args = ["--quiet", "bench", manifest, "--out", str(tmp_path), "--compare-global", "foo"] + FAST
        assert main(args) == EXIT_USAGE

    def test_missing_manifest(self, tmp_path):
        assert main(["--quiet", "bench", str(tmp_path / "none.csv"), "--out", str(tmp_path)]) == EXIT_RUNTIME

    def test_bad_runs(self, generator, square_file, tmp_path):
        manifest = generator.write_manifest([(square_file, 40)])
        assert main(["--quiet", "bench", manifest, "--runs", "0", "--out", str(tmp_path)]) == EXIT_USAGE


class TestSummarize:
    def test_err_and_success_over_ten_runs(self):
        runs = pd.DataFrame({
            "instance": ["pr10"] * 10,
            "config": ["default"] * 10,
            "optimum": [1000] * 10,
            "seed": list(range(1, 11)),
            "best_length": [1010] + [1000] * 9,
            "seconds": [2.0] * 10,
            "error": [None] * 10,
        })
        (row,) = summarize(runs)
        data = row.to_dict()
        assert data["Err"] == "0.10"
        assert data["Success"] == "9/10"
        assert data["Time"] == "2.00"

    def test_failed_runs_are_left_out_of_err(self):
        runs = pd.DataFrame({
            "instance": ["pr10"] * 3,
            "config": ["default"] * 3,
            "optimum": [1000] * 3,
            "seed": [1, 2, 3],
            "best_length": [1020, 1000, None],
            "seconds": [1.0, 1.0, None],
            "error": [None, None, "boom"],
        })
        (row,) = summarize(runs)
        assert row.to_dict()["Err"] == "1.00"
        assert row.to_dict()["Success"] == "1/3"
        assert row.error == "boom"


class TestRender:
    def test_tour(self, generator, square_file, tmp_path):
        tour_file = generator.write_tour_file(Tour((0, 1, 2, 3)), "square", 40)
        out = tmp_path / "square.svg"
        assert main(["render", square_file, tour_file, "--out", str(out)]) == EXIT_OK
        svg = out.read_text()
        assert svg.count('id="city-') == 4
        assert svg.count('id="edge-') == 4

    def test_default_output_path(self, generator, square_file):
        tour_file = generator.write_tour_file(Tour((0, 1, 2, 3)), "square")
        assert main(["render", square_file, tour_file]) == EXIT_OK
        assert os.path.exists(os.path.splitext(tour_file)[0] + ".svg")

    def test_rings_of_identical_tours(self, generator, square_file, tmp_path):
        first = generator.write_tour_file(Tour((0, 1, 2, 3)), "a")
        second = generator.write_tour_file(Tour((1, 2, 3, 0)), "b")
        out = tmp_path / "rings.svg"
        dump = tmp_path / "rings.json"
        code = main(["render", square_file, first, second, "--show-rings",
                     "--out", str(out), "--dump-rings", str(dump)])
        assert code == EXIT_OK
        assert out.read_text().count('id="ring-') == 8
        rings = json.loads(dump.read_text())["rings"]
        assert len(rings) == 4
        assert all(r["ineffective"] for r in rings)

    def test_rings_need_two_tours(self, generator, square_file):
        tour_file = generator.write_tour_file(Tour((0, 1, 2, 3)), "a")
        assert main(["render", square_file, tour_file, "--show-rings"]) == EXIT_USAGE

    def test_trace(self, square_file, tmp_path):
        out = tmp_path / "out"
        assert main(["solve", square_file, "--out", str(out)] + FAST) == EXIT_OK
        assert main(["render", "--trace", str(out / "square.json")]) == EXIT_OK
        svg = (out / "square_convergence.svg").read_text()
        assert 'id="stage-switch"' in svg

    def test_tour_of_wrong_size(self, generator, square_file):
        tour_file = generator.write_tour_file(Tour((0, 1, 2)), "short")
        assert main(["render", square_file, tour_file]) == EXIT_RUNTIME
