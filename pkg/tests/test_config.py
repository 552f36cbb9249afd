"""TOML run configuration: defaults, validation, and the report-dir override."""

from pathlib import Path

import pytest

from pointgwr.config import (
    REPORT_DIR_ENV,
    ConfigError,
    RunConfig,
    load_config,
    parse_config,
)
from pointgwr.vision.objects import DEFAULT_HUE_RANGES


class TestSeed:
    def test_seed_is_mandatory(self):
        with pytest.raises(ConfigError):
            parse_config({})

    @pytest.mark.parametrize("bad", [-1, True, "42", 1.5, None])
    def test_seed_must_be_a_nonnegative_int(self, bad):
        with pytest.raises(ConfigError):
            parse_config({"seed": bad})

    def test_zero_is_a_valid_seed(self):
        assert parse_config({"seed": 0}).seed == 0


class TestDefaults:
    def test_minimal_config_fills_everything(self):
        cfg = parse_config({"seed": 42})
        assert cfg.paths.dataset == Path("runs/dataset.pgwr")
        assert cfg.paths.model == Path("runs/model.json")
        assert cfg.paths.skin_model is None
        assert cfg.gwr.a_t == 0.90
        assert cfg.noise.outlier_rate == 0.0
        assert cfg.hue_ranges == DEFAULT_HUE_RANGES
        assert cfg.simulate.per_scene_frames == 80
        assert cfg.train.epochs == 30
        assert cfg.evaluate.eval_frame == 40
        assert cfg.sweep.a_t == (0.85, 0.90, 0.95)
        assert cfg.sweep.epochs == (30, 50, 100)
        assert cfg.output.format == "text"


class TestValidation:
    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="top level"):
            parse_config({"seed": 1, "sweeep": {}})

    def test_unknown_section_key(self):
        with pytest.raises(ConfigError, match="gwr"):
            parse_config({"seed": 1, "gwr": {"a_t": 0.9, "atee": 1}})

    def test_invalid_gwr_value(self):
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "gwr": {"a_t": 1.5}})

    def test_invalid_noise_value(self):
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "noise": {"outlier_rate": 2.0}})

    def test_invalid_output_format(self):
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "output": {"format": "yaml"}})

    def test_invalid_simulate_class(self):
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "simulate": {"classes": ["a7"]}})

    def test_empty_sweep_grid(self):
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "sweep": {"a_t": []}})

    def test_bad_hue_range_entry(self):
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "hue_ranges": [{"name": "x"}]})
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "hue_ranges": []})

    def test_eval_frame_none_means_all_frames(self):
        # omitted -> default 40; explicit scoring of all frames uses folds only
        cfg = parse_config({"seed": 1, "evaluate": {"folds": 4}})
        assert cfg.evaluate.folds == 4
        with pytest.raises(ConfigError):
            parse_config({"seed": 1, "evaluate": {"folds": 1}})


class TestOverrides:
    def test_sections_flow_through(self):
        cfg = parse_config(
            {
                "seed": 7,
                "paths": {"dataset": "x/d.pgwr", "skin_model": "x/skin.json"},
                "gwr": {"a_t": 0.95, "noise_t": 0.4},
                "noise": {"outlier_rate": 0.1},
                "simulate": {"per_scene_frames": 10, "classes": ["none", "a4"]},
                "train": {"epochs": 5},
                "evaluate": {"eval_frame": 3, "match_iou": 0.25},
                "sweep": {"a_t": [0.8], "epochs": [2, 4], "workers": 2},
                "output": {"format": "json"},
            }
        )
        assert cfg.paths.skin_model == Path("x/skin.json")
        assert cfg.gwr.a_t == 0.95 and cfg.gwr.noise_t == 0.4
        assert cfg.noise.outlier_rate == 0.1
        assert cfg.simulate.classes == ("none", "a4")
        assert cfg.train.epochs == 5
        assert cfg.evaluate.match_iou == 0.25
        assert cfg.sweep == type(cfg.sweep)(a_t=(0.8,), epochs=(2, 4), workers=2)
        assert cfg.output.format == "json"

    def test_custom_hue_ranges(self):
        cfg = parse_config(
            {
                "seed": 1,
                "hue_ranges": [
                    {"name": "red", "h_min": 350.0, "h_max": 10.0},
                    {"name": "cyan", "h_min": 160.0, "h_max": 200.0, "s_min": 0.5},
                ],
            }
        )
        assert [hr.name for hr in cfg.hue_ranges] == ["red", "cyan"]
        assert cfg.hue_ranges[1].s_min == 0.5

    def test_report_dir_env_override(self, monkeypatch):
        cfg = parse_config({"seed": 1, "paths": {"report_dir": "from/file"}})
        monkeypatch.delenv(REPORT_DIR_ENV, raising=False)
        assert cfg.report_dir == Path("from/file")
        monkeypatch.setenv(REPORT_DIR_ENV, "from/env")
        assert cfg.report_dir == Path("from/env")


class TestHashing:
    def test_hash_is_stable_and_sensitive(self):
        a = parse_config({"seed": 1})
        b = parse_config({"seed": 1})
        c = parse_config({"seed": 2})
        assert a.config_hash() == b.config_hash()
        assert a.config_hash() != c.config_hash()
        assert len(a.config_hash()) == 16
        int(a.config_hash(), 16)  # hex digest prefix

    def test_to_dict_is_json_ready(self):
        import json

        json.dumps(parse_config({"seed": 3}).to_dict())


class TestLoading:
    def test_load_from_toml(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text(
            'seed = 9\n\n[gwr]\na_t = 0.95\n\n[train]\nepochs = 12\n'
        )
        cfg = load_config(path)
        assert isinstance(cfg, RunConfig)
        assert cfg.seed == 9 and cfg.gwr.a_t == 0.95 and cfg.train.epochs == 12

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nope.toml")

    def test_invalid_toml(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("seed = = 1\n")
        with pytest.raises(ConfigError, match="TOML"):
            load_config(path)
