"""
Tests for configuration and report models.
"""
import json

import pytest

from config import DEFAULT_N_CH, DEFAULT_N_POP, TRACE_COLUMNS
from models import (BenchRow, ConfigError, GAConfig, GenerationRecord, RunReport, Stage,
                    Strategy, StrategyKind)


class TestStrategy:
    def test_from_name(self):
        assert Strategy.from_name("random") == Strategy.random()
        assert Strategy.from_name("KMultiple", k_multiple=4) == Strategy(StrategyKind.KMULTIPLE, 4)
        assert Strategy.from_name("block", block_rings=8).count == 8

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            Strategy.from_name("greedy")

    def test_count_must_be_positive(self):
        with pytest.raises(ConfigError):
            Strategy.k_multiple(0)

    def test_str(self):
        assert str(Strategy.single()) == "single"
        assert str(Strategy.block(6)) == "block(6)"


class TestGAConfig:
    def test_defaults(self):
        cfg = GAConfig().validate()
        assert cfg.n_pop == DEFAULT_N_POP == 200
        assert cfg.n_ch == DEFAULT_N_CH == 20
        assert cfg.strategy_for(Stage.LOCAL) == Strategy.random()
        assert cfg.strategy_for(Stage.GLOBAL) == Strategy.block(6)

    @pytest.mark.parametrize("field,value", [
        ("n_pop", 1), ("n_ch", 0), ("g_stagnation", 0), ("k_multiple", 0),
        ("neighbor_k", 0), ("min_ring_size", 1), ("local_strategy", "block"),
        ("global_strategy", "single"), ("time_limit", 0), ("evaluation", "diversity"),
    ])
    def test_validate_names_the_field(self, field, value):
        with pytest.raises(ConfigError, match=field):
            GAConfig(**{field: value}).validate()

    def test_replace_ignores_none(self):
        cfg = GAConfig().replace(n_pop=50, n_ch=None)
        assert cfg.n_pop == 50
        assert cfg.n_ch == DEFAULT_N_CH

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="unknown"):
            GAConfig.from_dict({"population": 10})

    def test_greedy_preset(self):
        assert GAConfig.from_preset("greedy").n_pop == 400
        with pytest.raises(ConfigError):
            GAConfig.from_preset("fast")

    def test_json_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"n_pop": 30, "global_strategy": "kmultiple"}))
        cfg = GAConfig.from_json_file(str(path))
        assert cfg.n_pop == 30
        assert cfg.global_strategy == "kmultiple"
        assert cfg.n_ch == DEFAULT_N_CH

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            GAConfig.from_json_file(str(path))
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            GAConfig.from_json_file(str(path))


class TestRunReport:
    def make_report(self) -> RunReport:
        return RunReport(
            instance_name="tri", best_length=12, best_tour=[0, 1, 2], seed=1,
            config=GAConfig().to_dict(), generations=2, switch_generation=1, seconds=0.5, init_seconds=0.25,
            trace=[GenerationRecord(0, 12, 12.0, Stage.LOCAL), GenerationRecord(1, 12, 12.0, Stage.GLOBAL)],
        )

    def test_json_file_reload(self, tmp_path):
        report = self.make_report()
        path = tmp_path / "report.json"
        path.write_text(report.to_json())
        loaded = RunReport.from_json_file(str(path))
        assert loaded == report
        assert loaded.init_seconds == 0.25

    def test_trace_frame(self):
        df = self.make_report().trace_frame()
        assert list(df.columns) == TRACE_COLUMNS
        assert list(df["stage"]) == ["LocalES", "GlobalES"]

    def test_err_percent(self):
        report = self.make_report()
        assert report.err_percent(12) == 0.0
        assert report.err_percent(10) == pytest.approx(20.0)


class TestBenchRow:
    def test_table_format(self):
        row = BenchRow(instance="ja9847", optimum=491924, runs=10, success=9, err=0.0123, time=372.456)
        data = row.to_dict()
        assert data["Optimum"] == 491924
        assert data["Success"] == "9/10"
        assert data["Err"] == "0.01"
        assert data["Time"] == "372.46"

    def test_failed_row(self):
        data = BenchRow(instance="x", optimum=5, runs=3, error="boom").to_dict()
        assert data["Err"] is None
        assert data["Error"] == "boom"
