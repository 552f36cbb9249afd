"""Command-line interface for the full pointing-gesture pipeline.

Every subcommand is driven by one TOML configuration file (see
:mod:`pointgwr.config`); flags only override paths and worker counts,
so a config plus a seed fully determines every artifact.  Exit codes:
0 on success, 1 for usage and configuration problems (missing config
file, bad flags, absent inputs), 2 for data-contract violations (a
dataset or model file that does not match its documented format).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .datafile import DataFormatError, read_dataset, write_dataset
from .features import FeatureVector
from .gwr import GwrNetwork, ModelFormatError, load_model, save_model
from .harness import _fresh_network, _training_arrays, crossval, evaluate, sweep
from .predictor import predict
from .report import (
    write_crossval_report,
    write_eval_report,
    write_summary_csv,
    write_sweep_report,
)
from .boxes import BoxLabel
from .sim.dataset import generate_dataset
from .vision import (
    SkinModel,
    classify_skin,
    color_mask,
    extract_features,
    load_rgb,
    save_mask,
    segment_color_objects,
)


class UsageError(Exception):
    """Bad invocation; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit(2)
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pointgwr", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="TOML run configuration")
    common.add_argument("--json", action="store_true", help="emit machine-readable output")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="synthesize a gesture dataset")
    p.add_argument("--out", help="dataset path (default: paths.dataset)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("train", parents=[common], help="train a network on a dataset")
    p.add_argument("--dataset", help="dataset path (default: paths.dataset)")
    p.add_argument("--model", help="model output path (default: paths.model)")
    p.add_argument("--epochs", type=int, help="override [train].epochs")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", parents=[common], help="resolve one observation")
    p.add_argument("--model", help="model path (default: paths.model)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--observation", help="JSON file with a feature vector and boxes")
    group.add_argument("--image", help="RGB image to run the vision pipeline on")
    p.add_argument("--skin-model", help="skin model JSON (required with --image)")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("evaluate", parents=[common], help="score a model or run cross-validation")
    p.add_argument("--dataset", help="dataset path (default: paths.dataset)")
    p.add_argument("--model", help="model path (default: paths.model)")
    p.add_argument("--report-dir", help="report directory (default: paths.report_dir)")
    p.add_argument("--crossval", action="store_true",
                   help="train and score scene-disjoint folds instead of a saved model")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("sweep", parents=[common], help="cross-validate the parameter grid")
    p.add_argument("--dataset", help="dataset path (default: paths.dataset)")
    p.add_argument("--report-dir", help="report directory (default: paths.report_dir)")
    p.add_argument("--workers", type=int,
                   help="worker processes (default: [sweep].workers; 0 = all cores)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("segment", parents=[common], help="write masks and detections for an image")
    p.add_argument("--image", required=True, help="RGB image to segment")
    p.add_argument("--out", help="output directory (default: report_dir / segment)")
    p.add_argument("--skin-model", help="skin model JSON (default: paths.skin_model)")
    p.set_defaults(func=_cmd_segment)

    return parser


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _require(path: Path, what: str) -> Path:
    if not path.exists():
        raise UsageError(f"{what} not found: {path}")
    return path


# ------------------------------------------------------------- subcommands


def _cmd_simulate(args, config: RunConfig) -> int:
    dataset = generate_dataset(
        per_scene_frames=config.simulate.per_scene_frames,
        noise=config.noise,
        seed=config.seed,
        classes=config.simulate.classes,
        include_edge_cases=config.simulate.include_edge_cases,
    )
    out = Path(args.out) if args.out else config.paths.dataset
    out.parent.mkdir(parents=True, exist_ok=True)
    write_dataset(dataset, out)
    _emit(args, {
        "dataset": str(out),
        "frames": len(dataset.records),
        "scenes": len(dataset.scenes),
        "seed": dataset.seed,
    }, [f"wrote {out}: {len(dataset.records)} frames across {len(dataset.scenes)} scenes"])
    return 0


def _cmd_train(args, config: RunConfig) -> int:
    dataset_path = _require(Path(args.dataset or config.paths.dataset), "dataset")
    dataset = read_dataset(dataset_path)
    epochs = args.epochs if args.epochs is not None else config.train.epochs
    if epochs < 1:
        raise UsageError(f"epochs must be >= 1, got {epochs}")
    features, labels = _training_arrays(dataset.valid_records())
    net = _fresh_network(features, labels, config.gwr, dataset)
    net.train(features, labels, epochs, seed=np.random.default_rng(config.seed))
    model_path = Path(args.model or config.paths.model)
    model_path.parent.mkdir(parents=True, exist_ok=True)
    save_model(net, model_path)
    last = net.train_log[-1]
    _emit(args, {
        "model": str(model_path),
        "epochs": epochs,
        "n_nodes": net.n_nodes,
        "n_edges": net.n_edges,
        "quantization_error": last["quantization_error"],
    }, [
        f"trained {epochs} epochs on {len(features)} frames",
        f"wrote {model_path}: {net.n_nodes} nodes, {net.n_edges} edges, "
        f"quantization error {last['quantization_error']:.5f}",
    ])
    return 0


def _load_observation(path: Path) -> tuple[FeatureVector, list[BoxLabel]]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        raw_feature = data["feature"]
        if isinstance(raw_feature, dict):
            feature = FeatureVector(**{k: float(v) for k, v in raw_feature.items()})
        else:
            feature = FeatureVector.from_array([float(v) for v in raw_feature])
        boxes = [BoxLabel(*(float(v) for v in box)) for box in data["objects"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
        raise DataFormatError(f"bad observation file {path}: {err}") from err
    if not boxes:
        raise DataFormatError(f"observation file {path} lists no objects")
    return feature, boxes


def _cmd_predict(args, config: RunConfig) -> int:
    net = load_model(_require(Path(args.model or config.paths.model), "model"))
    if args.observation:
        feature, boxes = _load_observation(_require(Path(args.observation), "observation file"))
        detections = None
    else:
        image = load_rgb(_require(Path(args.image), "image"))
        skin_path = args.skin_model or config.paths.skin_model
        if skin_path is None:
            raise UsageError("--image needs a skin model (--skin-model or paths.skin_model)")
        skin = SkinModel.load(_require(Path(skin_path), "skin model"))
        objects = segment_color_objects(image, config.hue_ranges)
        if not objects:
            raise DataFormatError("no objects detected in the image")
        feature = extract_features(classify_skin(skin, image))
        detections = [ob.to_dict() for ob in objects]
        if feature is None:
            payload = {"kind": "no_gesture", "detected_objects": detections}
            _emit(args, payload, ["no pointing hand detected"])
            return 0
        boxes = [ob.bbox for ob in objects]
    prediction = predict(net, feature, boxes)
    payload = prediction.to_dict()
    if detections is not None:
        payload["detected_objects"] = detections
    target = "none" if prediction.target_index is None else str(prediction.target_index)
    _emit(args, payload, [
        f"{prediction.kind}: target {target}, "
        f"activation {prediction.bmu_activation:.3f}",
    ])
    return 0


def _cmd_evaluate(args, config: RunConfig) -> int:
    dataset = read_dataset(_require(Path(args.dataset or config.paths.dataset), "dataset"))
    report_dir = Path(args.report_dir) if args.report_dir else config.report_dir
    digest = config.config_hash()
    if args.crossval:
        result = crossval(
            dataset,
            config.gwr,
            config.train.epochs,
            config.seed,
            folds=config.evaluate.folds,
            eval_frame=config.evaluate.eval_frame,
            match_iou=config.evaluate.match_iou,
        )
        written = write_crossval_report(report_dir, result, config_hash=digest)
        precision, _ = result.mean_std("precision")
        miss, _ = result.mean_std("miss_rate")
        summary = {"report_dir": str(report_dir), "precision": precision, "miss_rate": miss}
        lines = [f"crossval ({config.evaluate.folds} folds): "
                 f"total precision {precision:.2f}, miss {miss:.2f}"]
    else:
        net = load_model(_require(Path(args.model or config.paths.model), "model"))
        result = evaluate(
            net,
            dataset,
            eval_frame=config.evaluate.eval_frame,
            match_iou=config.evaluate.match_iou,
        )
        written = write_eval_report(
            report_dir, result, train_log=net.train_log, config_hash=digest,
            extra={"model": {"n_nodes": net.n_nodes, "n_edges": net.n_edges}},
        )
        summary = {"report_dir": str(report_dir), **result.total.metrics()}
        lines = [f"total: precision {result.total.precision:.2f}, "
                 f"recall {result.total.recall:.2f}, miss {result.total.miss_rate:.2f}"]
    lines += [f"wrote {path}" for path in written]
    _emit(args, summary, lines)
    return 0


def _cmd_sweep(args, config: RunConfig) -> int:
    dataset = read_dataset(_require(Path(args.dataset or config.paths.dataset), "dataset"))
    workers = args.workers if args.workers is not None else config.sweep.workers
    if workers < 0:
        raise UsageError(f"workers must be >= 0, got {workers}")
    if workers == 0:
        workers = os.cpu_count() or 1
    cells = sweep(
        dataset,
        config.sweep.a_t,
        config.sweep.epochs,
        config.seed,
        folds=config.evaluate.folds,
        eval_frame=config.evaluate.eval_frame,
        workers=workers,
    )
    report_dir = Path(args.report_dir) if args.report_dir else config.report_dir
    written = write_sweep_report(report_dir, cells, config_hash=config.config_hash())
    payload = {
        "report_dir": str(report_dir),
        "cells": [
            {"a_t": cell.a_t, "epochs": cell.epochs,
             "f1": cell.mean_std("f1")[0], "nodes": cell.summary()["nodes"]["mean"]}
            for cell in cells
        ],
    }
    lines = [f"swept {len(cells)} cells over {len(config.sweep.a_t)} a_t x "
             f"{len(config.sweep.epochs)} epoch values"]
    lines += [f"wrote {path}" for path in written]
    _emit(args, payload, lines)
    return 0


def _cmd_segment(args, config: RunConfig) -> int:
    image = load_rgb(_require(Path(args.image), "image"))
    out_dir = Path(args.out) if args.out else config.report_dir / "segment"
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for hue_range in config.hue_ranges:
        path = out_dir / f"mask_{hue_range.name}.png"
        save_mask(path, color_mask(image, hue_range))
        written.append(path)
    skin_path = args.skin_model or config.paths.skin_model
    gesture = None
    if skin_path is not None:
        skin = SkinModel.load(_require(Path(skin_path), "skin model"))
        hand_mask = classify_skin(skin, image)
        path = out_dir / "mask_skin.png"
        save_mask(path, hand_mask)
        written.append(path)
        feature = extract_features(hand_mask)
        if feature is not None:
            gesture = {
                "alpha": feature.alpha,
                "centroid": [feature.c_x, feature.c_y],
                "fingertip": [feature.p_x, feature.p_y],
            }
    objects = segment_color_objects(image, config.hue_ranges)
    body = {"objects": [ob.to_dict() for ob in objects], "gesture": gesture}
    objects_path = out_dir / "objects.json"
    objects_path.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    written.append(objects_path)
    _emit(args, {"out_dir": str(out_dir), **body},
          [f"found {len(objects)} objects"] + [f"wrote {path}" for path in written])
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args.config)
        return args.func(args, config)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 1
    except (DataFormatError, ModelFormatError) as err:
        print(f"data error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
