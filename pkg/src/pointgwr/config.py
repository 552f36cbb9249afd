"""Run configuration: one TOML file drives every pipeline stage.

The seed is the only mandatory key -- runs must be reproducible, so
there is deliberately no wall-clock fallback.  Every other table has
defaults matching the standard experiment.  Unknown keys are rejected
rather than ignored so a typo cannot silently fall back to a default.

Example::

    seed = 42

    [paths]
    dataset = "runs/dataset.pgwr"
    model = "runs/model.json"
    report_dir = "runs/report"

    [gwr]
    a_t = 0.95

    [train]
    epochs = 30

The report directory can be overridden without editing the file by
setting the ``POINTGWR_REPORT_DIR`` environment variable.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from .gwr import GwrParams
from .sim.dataset import AMBIGUITY_CLASSES
from .sim.gestures import NoiseSpec
from .vision.objects import DEFAULT_HUE_RANGES, HueRange

#: Environment variable that overrides ``paths.report_dir``.
REPORT_DIR_ENV = "POINTGWR_REPORT_DIR"

OUTPUT_FORMATS = ("text", "json")


class ConfigError(ValueError):
    """Raised for unreadable, incomplete, or contradictory configuration."""


@dataclass(frozen=True)
class PathsConfig:
    dataset: Path = Path("runs/dataset.pgwr")
    model: Path = Path("runs/model.json")
    report_dir: Path = Path("runs/report")
    skin_model: Path | None = None


@dataclass(frozen=True)
class SimulateConfig:
    per_scene_frames: int = 80
    classes: tuple[str, ...] | None = None
    include_edge_cases: bool = False

    def __post_init__(self) -> None:
        if self.per_scene_frames < 1:
            raise ConfigError(f"per_scene_frames must be >= 1, got {self.per_scene_frames}")
        if self.classes is not None:
            unknown = set(self.classes) - set(AMBIGUITY_CLASSES)
            if unknown:
                raise ConfigError(f"unknown ambiguity classes: {sorted(unknown)}")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 30

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")


@dataclass(frozen=True)
class EvaluateConfig:
    eval_frame: int | None = 40
    folds: int = 3
    match_iou: float = 0.5

    def __post_init__(self) -> None:
        if self.eval_frame is not None and self.eval_frame < 0:
            raise ConfigError(f"eval_frame must be >= 0, got {self.eval_frame}")
        if self.folds < 2:
            raise ConfigError(f"folds must be >= 2, got {self.folds}")
        if not 0.0 < self.match_iou <= 1.0:
            raise ConfigError(f"match_iou must lie in (0, 1], got {self.match_iou}")


@dataclass(frozen=True)
class SweepConfig:
    a_t: tuple[float, ...] = (0.85, 0.90, 0.95)
    epochs: tuple[int, ...] = (30, 50, 100)
    workers: int = 0  # 0 = available parallelism

    def __post_init__(self) -> None:
        if not self.a_t or not self.epochs:
            raise ConfigError("sweep grids must not be empty")
        if self.workers < 0:
            raise ConfigError(f"workers must be >= 0, got {self.workers}")


@dataclass(frozen=True)
class OutputConfig:
    format: str = "text"

    def __post_init__(self) -> None:
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"output format must be one of {OUTPUT_FORMATS}, got {self.format!r}")


@dataclass(frozen=True)
class RunConfig:
    """Everything a pipeline run needs, seed first."""

    seed: int
    paths: PathsConfig = field(default_factory=PathsConfig)
    gwr: GwrParams = field(default_factory=GwrParams)
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    hue_ranges: tuple[HueRange, ...] = DEFAULT_HUE_RANGES
    simulate: SimulateConfig = field(default_factory=SimulateConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    evaluate: EvaluateConfig = field(default_factory=EvaluateConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @property
    def report_dir(self) -> Path:
        """Report directory, honoring the environment override."""
        override = os.environ.get(REPORT_DIR_ENV)
        return Path(override) if override else self.paths.report_dir

    def to_dict(self) -> dict:
        data = {
            "seed": self.seed,
            "paths": {
                "dataset": str(self.paths.dataset),
                "model": str(self.paths.model),
                "report_dir": str(self.paths.report_dir),
                "skin_model": None if self.paths.skin_model is None else str(self.paths.skin_model),
            },
            "gwr": self.gwr.as_dict(),
            "noise": dataclasses.asdict(self.noise),
            "hue_ranges": [hr.to_dict() for hr in self.hue_ranges],
            "simulate": dataclasses.asdict(self.simulate),
            "train": dataclasses.asdict(self.train),
            "evaluate": dataclasses.asdict(self.evaluate),
            "sweep": dataclasses.asdict(self.sweep),
            "output": dataclasses.asdict(self.output),
        }
        data["simulate"]["classes"] = (
            None if self.simulate.classes is None else list(self.simulate.classes)
        )
        data["sweep"]["a_t"] = list(self.sweep.a_t)
        data["sweep"]["epochs"] = list(self.sweep.epochs)
        return data

    def config_hash(self) -> str:
        """Stable digest of the configuration, for embedding in reports."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def _take(table: dict, section: str, allowed: set[str]) -> dict:
    unknown = set(table) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in [{section}]: {sorted(unknown)}")
    return table


def _build(cls, table: dict, section: str, **coerced):
    fields = {f.name for f in dataclasses.fields(cls)}
    _take(table, section, fields)
    try:
        return cls(**{**table, **coerced})
    except (TypeError, ValueError) as err:
        raise ConfigError(f"bad [{section}] section: {err}") from err


def parse_config(data: dict) -> RunConfig:
    """Build a :class:`RunConfig` from already-parsed TOML data."""
    if "seed" not in data:
        raise ConfigError("config must set a seed; runs are always reproducible")
    seed = data["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, got {seed!r}")

    top_allowed = {
        "seed", "paths", "gwr", "noise", "hue_ranges",
        "simulate", "train", "evaluate", "sweep", "output",
    }
    _take(data, "top level", top_allowed)

    paths_table = dict(data.get("paths", {}))
    _take(paths_table, "paths", {"dataset", "model", "report_dir", "skin_model"})
    paths = PathsConfig(
        dataset=Path(paths_table.get("dataset", PathsConfig.dataset)),
        model=Path(paths_table.get("model", PathsConfig.model)),
        report_dir=Path(paths_table.get("report_dir", PathsConfig.report_dir)),
        skin_model=(
            Path(paths_table["skin_model"]) if "skin_model" in paths_table else None
        ),
    )

    simulate_table = dict(data.get("simulate", {}))
    if simulate_table.get("classes") is not None:
        simulate_table["classes"] = tuple(simulate_table["classes"])
    sweep_table = dict(data.get("sweep", {}))
    for key in ("a_t", "epochs"):
        if key in sweep_table:
            sweep_table[key] = tuple(sweep_table[key])

    hue_tables = data.get("hue_ranges")
    if hue_tables is None:
        hue_ranges = DEFAULT_HUE_RANGES
    else:
        try:
            hue_ranges = tuple(HueRange.from_dict(entry) for entry in hue_tables)
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError(f"bad [[hue_ranges]] entry: {err}") from err
        if not hue_ranges:
            raise ConfigError("hue_ranges must not be empty when given")

    return RunConfig(
        seed=seed,
        paths=paths,
        gwr=_build(GwrParams, dict(data.get("gwr", {})), "gwr"),
        noise=_build(NoiseSpec, dict(data.get("noise", {})), "noise"),
        hue_ranges=hue_ranges,
        simulate=_build(SimulateConfig, simulate_table, "simulate"),
        train=_build(TrainConfig, dict(data.get("train", {})), "train"),
        evaluate=_build(EvaluateConfig, dict(data.get("evaluate", {})), "evaluate"),
        sweep=_build(SweepConfig, sweep_table, "sweep"),
        output=_build(OutputConfig, dict(data.get("output", {})), "output"),
    )


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a TOML run configuration."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except FileNotFoundError as err:
        raise ConfigError(f"config file not found: {path}") from err
    except tomli.TOMLDecodeError as err:
        raise ConfigError(f"config file {path} is not valid TOML: {err}") from err
    return parse_config(data)
