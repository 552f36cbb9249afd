"""Report rendering: JSON bodies, delimited summaries, and figures.

Reports are comparison-friendly by construction: JSON bodies are written
with sorted keys and no wall-clock fields, CSV rows follow a fixed class
order, and figures are rendered through the Agg backend with the
software tag stripped, so two runs from the same configuration and seed
produce byte-identical report directories.  The configuration digest is
the only run identity embedded in a body.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import CrossvalResult, EvalReport
from .sim.dataset import AMBIGUITY_CLASSES

#: Column order of every summary.csv.
SUMMARY_COLUMNS = ("Class", "Precision", "Recall", "F1", "Miss")

#: Figure metadata that suppresses the renderer's software/version tag.
_PNG_METADATA = {"Software": None}


def write_json(path: str | Path, body: dict) -> Path:
    """Write a canonical JSON body: sorted keys, trailing newline."""
    path = Path(path)
    path.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def _class_order(present) -> list[str]:
    ordered = [k for k in AMBIGUITY_CLASSES if k in present]
    return ordered + ["total"]


def eval_summary_rows(report: EvalReport) -> list[tuple[str, float, float, float, float]]:
    """(class, precision, recall, f1, miss_rate) rows, total last."""
    rows = []
    for klass in _class_order(report.per_class):
        tally = report.total if klass == "total" else report.per_class[klass]
        rows.append((klass, tally.precision, tally.recall, tally.f1, tally.miss_rate))
    return rows


def crossval_summary_rows(result: CrossvalResult) -> list[tuple[str, float, float, float, float]]:
    """Fold-mean metric rows in the same shape as :func:`eval_summary_rows`."""
    present = set()
    for fold in result.folds:
        present.update(fold.report.per_class)
    rows = []
    for klass in _class_order(present):
        rows.append((
            klass,
            result.mean_std("precision", klass)[0],
            result.mean_std("recall", klass)[0],
            result.mean_std("f1", klass)[0],
            result.mean_std("miss_rate", klass)[0],
        ))
    return rows


def write_summary_csv(path: str | Path, rows) -> Path:
    """Write metric rows as summary.csv with the fixed column set."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for klass, precision, recall, f1, miss in rows:
            writer.writerow(
                [klass, f"{precision:.2f}", f"{recall:.2f}", f"{f1:.2f}", f"{miss:.2f}"]
            )
    return path


# ---------------------------------------------------------------- figures


def save_metrics_figure(path: str | Path, rows) -> Path:
    """Grouped bars of precision/recall/F1/miss per class."""
    path = Path(path)
    classes = [row[0] for row in rows]
    series = {
        "Precision": [row[1] for row in rows],
        "Recall": [row[2] for row in rows],
        "F1": [row[3] for row in rows],
        "Miss": [row[4] for row in rows],
    }
    x = np.arange(len(classes))
    width = 0.2
    fig, ax = plt.subplots(figsize=(1.8 + 1.4 * len(classes), 4.2))
    for i, (name, values) in enumerate(series.items()):
        ax.bar(x + (i - 1.5) * width, values, width, label=name)
    ax.set_xticks(x)
    ax.set_xticklabels(classes)
    ax.set_ylabel("percent")
    ax.set_ylim(0, 105)
    ax.legend(ncol=4, fontsize="small", loc="lower center")
    ax.set_title("Target resolution by ambiguity class")
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def save_growth_figure(path: str | Path, train_log: list[dict]) -> Path:
    """Node count and quantization error over training epochs."""
    path = Path(path)
    epochs = [entry["epoch"] for entry in train_log]
    nodes = [entry["nodes"] for entry in train_log]
    qe = [entry["quantization_error"] for entry in train_log]
    fig, ax_nodes = plt.subplots(figsize=(6.4, 4.2))
    ax_nodes.plot(epochs, nodes, color="tab:blue", label="nodes")
    ax_nodes.set_xlabel("epoch")
    ax_nodes.set_ylabel("nodes", color="tab:blue")
    ax_qe = ax_nodes.twinx()
    ax_qe.plot(epochs, qe, color="tab:orange", label="quantization error")
    ax_qe.set_ylabel("quantization error", color="tab:orange")
    ax_nodes.set_title("Network growth")
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def save_sweep_figure(path: str | Path, cells: list[CrossvalResult]) -> Path:
    """Heatmaps over the (a_t, epochs) grid: F1, miss rate, node count."""
    path = Path(path)
    a_t_values = sorted({cell.a_t for cell in cells})
    epoch_values = sorted({cell.epochs for cell in cells})
    panels = {
        "total F1 (%)": lambda c: c.mean_std("f1")[0],
        "total miss (%)": lambda c: c.mean_std("miss_rate")[0],
        "nodes": lambda c: c.summary()["nodes"]["mean"],
    }
    fig, axes = plt.subplots(1, len(panels), figsize=(4.2 * len(panels), 3.8))
    for ax, (title, value_of) in zip(np.atleast_1d(axes), panels.items()):
        grid = np.full((len(a_t_values), len(epoch_values)), np.nan)
        for cell in cells:
            i = a_t_values.index(cell.a_t)
            j = epoch_values.index(cell.epochs)
            grid[i, j] = value_of(cell)
        image = ax.imshow(grid, aspect="auto", origin="lower")
        ax.set_xticks(range(len(epoch_values)), [str(e) for e in epoch_values])
        ax.set_yticks(range(len(a_t_values)), [f"{a:g}" for a in a_t_values])
        ax.set_xlabel("epochs")
        ax.set_ylabel("a_t")
        ax.set_title(title)
        for i in range(len(a_t_values)):
            for j in range(len(epoch_values)):
                if not np.isnan(grid[i, j]):
                    ax.text(j, i, f"{grid[i, j]:.1f}", ha="center", va="center",
                            color="white", fontsize="small")
        fig.colorbar(image, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


# ----------------------------------------------------------- report dirs


def write_eval_report(
    report_dir: str | Path,
    report: EvalReport,
    train_log: list[dict] | None = None,
    config_hash: str | None = None,
    extra: dict | None = None,
) -> list[Path]:
    """Write one evaluation's report directory; returns the paths written."""
    report_dir = Path(report_dir)
    report_dir.mkdir(parents=True, exist_ok=True)
    body = {"kind": "evaluate", "report": report.to_dict()}
    if config_hash is not None:
        body["config_hash"] = config_hash
    if extra:
        body.update(extra)
    rows = eval_summary_rows(report)
    written = [
        write_json(report_dir / "report.json", body),
        write_summary_csv(report_dir / "summary.csv", rows),
        save_metrics_figure(report_dir / "metrics_by_class.png", rows),
    ]
    if train_log:
        written.append(save_growth_figure(report_dir / "growth_curve.png", train_log))
    return written


def write_crossval_report(
    report_dir: str | Path,
    result: CrossvalResult,
    config_hash: str | None = None,
) -> list[Path]:
    """Write one cross-validation's report directory."""
    report_dir = Path(report_dir)
    report_dir.mkdir(parents=True, exist_ok=True)
    body = {"kind": "crossval", "crossval": result.to_dict()}
    if config_hash is not None:
        body["config_hash"] = config_hash
    rows = crossval_summary_rows(result)
    return [
        write_json(report_dir / "report.json", body),
        write_summary_csv(report_dir / "summary.csv", rows),
        save_metrics_figure(report_dir / "metrics_by_class.png", rows),
    ]


def write_sweep_report(
    report_dir: str | Path,
    cells: list[CrossvalResult],
    config_hash: str | None = None,
) -> list[Path]:
    """Write a sweep: one report directory per grid cell plus the roll-up."""
    report_dir = Path(report_dir)
    report_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for cell in cells:
        cell_dir = report_dir / f"a_t_{cell.a_t:g}_epochs_{cell.epochs}"
        written.extend(write_crossval_report(cell_dir, cell, config_hash))

    body = {
        "kind": "sweep",
        "cells": [cell.summary() for cell in cells],
    }
    if config_hash is not None:
        body["config_hash"] = config_hash
    written.append(write_json(report_dir / "report.json", body))

    with open(report_dir / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("a_t", "epochs") + SUMMARY_COLUMNS + ("Nodes",))
        for cell in cells:
            summary = cell.summary()
            writer.writerow([
                f"{cell.a_t:g}",
                cell.epochs,
                "total",
                f"{cell.mean_std('precision')[0]:.2f}",
                f"{cell.mean_std('recall')[0]:.2f}",
                f"{cell.mean_std('f1')[0]:.2f}",
                f"{cell.mean_std('miss_rate')[0]:.2f}",
                f"{summary['nodes']['mean']:.1f}",
            ])
    written.append(report_dir / "summary.csv")
    written.append(save_sweep_figure(report_dir / "sweep_grid.png", cells))
    return written
