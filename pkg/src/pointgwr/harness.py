"""Evaluation protocol: frame outcomes, aggregate metrics, cross-validation.

Every evaluated frame lands in exactly one bucket.  For frames with a
real target: the right object resolved is a hit (TP); the wrong object
is counted against both columns (FP and FN); returning nothing -- or
dismissing the frame as noise -- is an FN and a miss, the noise case
additionally a falsely detected noise (FDN).  Frames with no target
(off-scenario poses) are either correctly rejected or false accepts.
Declaring an ambiguity counts toward CDA when the scene really is
ambiguous; the top-ranked candidate still scores TP/FP as usual.

Cross-validation splits by scene, never by frame, so near-identical
frames of one configuration cannot straddle the train/test boundary.
Recording takes of one arrangement are spread over different folds:
every training split then covers every arrangement while the evaluated
frames still come from recordings the network has never seen.  Fold
statistics are reported as mean +/- population standard deviation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baseline import PHI_MIN, ray_from_feature, select_target
from .boxes import BoxLabel, iou
from .gwr.network import GwrNetwork
from .gwr.params import GwrParams
from .predictor import AMBIGUOUS, MATCH_IOU, NOISE, Prediction, predict
from .sim.dataset import AMBIGUITY_CLASSES, GestureDataset, Record
from .sim.scenes import Scene

BUCKETS = ("tp", "fp", "miss", "fdn", "rejected", "false_accept")


@dataclass(frozen=True)
class GroundTruth:
    """What a frame was: the intended object index (None for noise poses)
    and whether the scene offers more than one object."""

    intended: int | None
    ambiguous_scene: bool


@dataclass(frozen=True)
class Outcome:
    bucket: str
    cda: bool = False

    def __post_init__(self):
        if self.bucket not in BUCKETS:
            raise ValueError(f"unknown outcome bucket: {self.bucket!r}")


def classify_outcome(prediction: Prediction, truth: GroundTruth) -> Outcome:
    """Assign one frame to its outcome bucket."""
    if truth.intended is None:
        if prediction.kind == NOISE or prediction.target_index is None:
            return Outcome("rejected")
        return Outcome("false_accept")
    cda = prediction.kind == AMBIGUOUS and truth.ambiguous_scene
    if prediction.kind == NOISE:
        return Outcome("fdn")
    if prediction.target_index is None:
        return Outcome("miss", cda=cda)
    if prediction.target_index == truth.intended:
        return Outcome("tp", cda=cda)
    return Outcome("fp", cda=cda)


@dataclass
class Tally:
    """Outcome counts plus the derived percentage metrics."""

    tp: int = 0
    fp: int = 0
    fn: int = 0
    miss: int = 0
    fdn: int = 0
    rejected: int = 0
    false_accept: int = 0
    cda_hits: int = 0
    n_valid: int = 0
    n_noise: int = 0
    n_ambiguous_valid: int = 0
    iou_sum: float = 0.0
    iou_n: int = 0

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, miss: int = 0) -> "Tally":
        return cls(tp=tp, fp=fp, fn=fn, miss=miss, n_valid=tp + fn)

    def add(self, outcome: Outcome, ambiguous_scene: bool = False) -> None:
        b = outcome.bucket
        if b in ("rejected", "false_accept"):
            self.n_noise += 1
            setattr(self, b, getattr(self, b) + 1)
            if b == "false_accept":
                self.fp += 1
            return
        self.n_valid += 1
        if ambiguous_scene:
            self.n_ambiguous_valid += 1
        if outcome.cda:
            self.cda_hits += 1
        if b == "tp":
            self.tp += 1
        elif b == "fp":
            self.fp += 1
            self.fn += 1
        elif b == "miss":
            self.fn += 1
            self.miss += 1
        elif b == "fdn":
            self.fn += 1
            self.miss += 1
            self.fdn += 1

    def add_iou(self, value: float) -> None:
        self.iou_sum += value
        self.iou_n += 1

    # -- metrics, in percent ------------------------------------------
    @property
    def precision(self) -> float:
        d = self.tp + self.fp
        return 100.0 * self.tp / d if d else 0.0

    @property
    def recall(self) -> float:
        d = self.tp + self.fn
        return 100.0 * self.tp / d if d else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2.0 * p * r / (p + r) if p + r else 0.0

    @property
    def miss_rate(self) -> float:
        d = self.tp + self.fn
        return 100.0 * self.miss / d if d else 0.0

    @property
    def fdn_rate(self) -> float:
        return 100.0 * self.fdn / self.n_valid if self.n_valid else 0.0

    @property
    def cda_rate(self) -> float:
        d = self.n_ambiguous_valid
        return 100.0 * self.cda_hits / d if d else 0.0

    @property
    def mean_iou(self) -> float | None:
        return self.iou_sum / self.iou_n if self.iou_n else None

    def metrics(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "miss": self.miss,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "miss_rate": self.miss_rate,
            "cda_rate": self.cda_rate,
            "fdn_rate": self.fdn_rate,
            "mean_iou": self.mean_iou,
            "n_valid": self.n_valid,
            "n_noise": self.n_noise,
            "rejected": self.rejected,
            "false_accept": self.false_accept,
        }


def compute_metrics(outcomes, by_class: bool = True) -> "EvalReport":
    """Aggregate (ambiguity_class, Outcome, ambiguous_scene) triples."""
    outcomes = list(outcomes)
    if not outcomes:
        raise ValueError("no outcomes to aggregate")
    per_class: dict[str, Tally] = {}
    total = Tally()
    for klass, outcome, ambiguous_scene in outcomes:
        total.add(outcome, ambiguous_scene)
        if by_class:
            per_class.setdefault(klass, Tally()).add(outcome, ambiguous_scene)
    return EvalReport(per_class=per_class, total=total)


@dataclass
class EvalReport:
    per_class: dict[str, Tally]
    total: Tally
    eval_frame: int | None = None

    def to_dict(self) -> dict:
        return {
            "eval_frame": self.eval_frame,
            "total": self.total.metrics(),
            "per_class": {
                k: self.per_class[k].metrics()
                for k in AMBIGUITY_CLASSES
                if k in self.per_class
            },
        }


def _frame_records(dataset: GestureDataset, records, eval_frame: int | None):
    records = dataset.records if records is None else records
    if eval_frame is not None:
        records = [r for r in records if r.frame_index == eval_frame]
        if not records:
            raise ValueError(f"no frames with index {eval_frame}")
    return records


def _scene_truth(scene: Scene, record: Record) -> GroundTruth:
    return GroundTruth(
        intended=None if record.noise_flag else scene.target_index,
        ambiguous_scene=scene.n_objects >= 2,
    )


def evaluate(
    net: GwrNetwork,
    dataset: GestureDataset,
    records=None,
    eval_frame: int | None = None,
    noise_t: float | None = None,
    match_iou: float = MATCH_IOU,
) -> EvalReport:
    """Evaluate network predictions frame by frame.

    ``eval_frame`` restricts scoring to the designated steady-state frame
    of every scene; None scores all frames.  The per-frame IoU statistic
    compares the BMU's label box against the intended object.
    """
    records = _frame_records(dataset, records, eval_frame)
    per_class: dict[str, Tally] = {}
    total = Tally()
    for r in records:
        scene = dataset.scene_by_id(r.scene_id)
        boxes = [o.bbox for o in scene.objects]
        pred = predict(net, r.feature, boxes, noise_t=noise_t, match_iou=match_iou)
        truth = _scene_truth(scene, r)
        outcome = classify_outcome(pred, truth)
        tally = per_class.setdefault(r.ambiguity_class, Tally())
        tally.add(outcome, truth.ambiguous_scene)
        total.add(outcome, truth.ambiguous_scene)
        if r.label is not None and pred.bmu_label is not None:
            value = iou(pred.bmu_label, r.label)
            tally.add_iou(value)
            total.add_iou(value)
    return EvalReport(per_class=per_class, total=total, eval_frame=eval_frame)


def evaluate_baseline(
    dataset: GestureDataset,
    records=None,
    eval_frame: int | None = None,
    phi_min: float = PHI_MIN,
) -> EvalReport:
    """Score the geometric ray baseline under the same outcome taxonomy.

    The baseline has no noise gate and no ambiguity concept: a ray that
    qualifies no box is a miss (or, for off-scenario poses, a rejection).
    """
    records = _frame_records(dataset, records, eval_frame)
    per_class: dict[str, Tally] = {}
    total = Tally()
    for r in records:
        scene = dataset.scene_by_id(r.scene_id)
        boxes = [o.bbox for o in scene.objects]
        idx, _ = select_target(ray_from_feature(r.feature), boxes, phi_min=phi_min)
        truth = _scene_truth(scene, r)
        if truth.intended is None:
            outcome = Outcome("rejected" if idx is None else "false_accept")
        elif idx is None:
            outcome = Outcome("miss")
        elif idx == truth.intended:
            outcome = Outcome("tp")
        else:
            outcome = Outcome("fp")
        per_class.setdefault(r.ambiguity_class, Tally()).add(outcome, truth.ambiguous_scene)
        total.add(outcome, truth.ambiguous_scene)
    return EvalReport(per_class=per_class, total=total, eval_frame=eval_frame)


# -- cross-validation ---------------------------------------------------


@dataclass
class FoldResult:
    fold_index: int
    test_scene_ids: tuple[int, ...]
    report: EvalReport
    n_nodes: int
    n_edges: int
    quantization_error: float


@dataclass
class CrossvalResult:
    folds: list[FoldResult]
    a_t: float
    epochs: int

    def _fold_values(self, klass: str, metric: str) -> list[float]:
        out = []
        for f in self.folds:
            tally = f.report.total if klass == "total" else f.report.per_class.get(klass)
            out.append(getattr(tally, metric) if tally is not None else 0.0)
        return out

    def mean_std(self, metric: str, klass: str = "total") -> tuple[float, float]:
        values = np.array(self._fold_values(klass, metric))
        return float(values.mean()), float(values.std())  # population std

    def summary(self) -> dict:
        metrics = ("precision", "recall", "f1", "miss_rate", "cda_rate", "fdn_rate")
        classes = ["total"] + [
            k for k in AMBIGUITY_CLASSES if any(k in f.report.per_class for f in self.folds)
        ]
        out: dict = {"a_t": self.a_t, "epochs": self.epochs}
        for klass in classes:
            out[klass] = {}
            for m in metrics:
                mean, std = self.mean_std(m, klass)
                out[klass][m] = {"mean": mean, "std": std}
        nodes = np.array([f.n_nodes for f in self.folds], dtype=float)
        qe = np.array([f.quantization_error for f in self.folds])
        out["nodes"] = {"mean": float(nodes.mean()), "std": float(nodes.std())}
        out["quantization_error"] = {"mean": float(qe.mean()), "std": float(qe.std())}
        return out

    def to_dict(self) -> dict:
        return {
            "a_t": self.a_t,
            "epochs": self.epochs,
            "summary": self.summary(),
            "folds": [
                {
                    "fold": f.fold_index,
                    "test_scenes": list(f.test_scene_ids),
                    "n_nodes": f.n_nodes,
                    "n_edges": f.n_edges,
                    "quantization_error": f.quantization_error,
                    "report": f.report.to_dict(),
                }
                for f in self.folds
            ],
        }


def fold_scene_ids(dataset: GestureDataset, folds: int, seed: int) -> list[list[int]]:
    """Scene-disjoint fold assignment, stratified over recording takes.

    Scenes sharing a ``layout_id`` (takes of one arrangement) land in
    different folds, so each training split covers every arrangement and
    the held-out frames come from an unseen recording.  Subject to that,
    arrangements fill the currently least-loaded folds in seeded random
    order, which keeps fold sizes balanced and the assignment
    reproducible for a given seed.
    """
    present = sorted({r.scene_id for r in dataset.records})
    if len(present) < folds:
        raise ValueError(f"need at least {folds} scenes, have {len(present)}")
    rng = np.random.default_rng(seed)
    groups: dict[int, list[int]] = {}
    for sid in present:
        groups.setdefault(dataset.scene_by_id(sid).layout_id, []).append(sid)
    assignment: list[list[int]] = [[] for _ in range(folds)]
    loads = [0] * folds
    for key in sorted(groups):
        order = sorted(range(folds), key=lambda f: (loads[f], rng.random()))
        for j, sid in enumerate(sorted(groups[key])):
            fold = order[j % folds]  # wrap when takes outnumber folds
            assignment[fold].append(sid)
            loads[fold] += 1
    return [sorted(ids) for ids in assignment]


def _training_arrays(records) -> tuple[np.ndarray, np.ndarray]:
    valid = [r for r in records if not r.noise_flag]
    if len(valid) < 2:
        raise ValueError("need at least two labelled frames to train")
    X = np.array([r.feature.as_array() for r in valid])
    Y = np.array([r.label.as_tuple() for r in valid])
    return X, Y


def _fresh_network(
    X: np.ndarray, Y: np.ndarray, params: GwrParams, dataset: GestureDataset
) -> GwrNetwork:
    j = next((i for i in range(1, len(X)) if not np.array_equal(X[i], X[0])), None)
    if j is None:
        raise ValueError("all training observations are identical")
    return GwrNetwork.new_network(
        X[0],
        X[j],
        BoxLabel(*Y[0]),
        BoxLabel(*Y[j]),
        params,
        bounds=dataset.geometry.feature_bounds(),
        label_scale=(dataset.geometry.image_w, dataset.geometry.image_h),
    )


def crossval(
    dataset: GestureDataset,
    params: GwrParams,
    epochs: int,
    seed: int,
    folds: int = 3,
    eval_frame: int | None = None,
    noise_t: float | None = None,
    match_iou: float = MATCH_IOU,
) -> CrossvalResult:
    """Train on folds-1 scene groups, evaluate on the held-out one."""
    assignment = fold_scene_ids(dataset, folds, seed)
    results = []
    for i, test_ids in enumerate(assignment):
        test_set = set(test_ids)
        train_records = [r for r in dataset.records if r.scene_id not in test_set]
        test_records = [r for r in dataset.records if r.scene_id in test_set]
        X, Y = _training_arrays(train_records)
        net = _fresh_network(X, Y, params, dataset)
        net.train(X, Y, epochs, seed=np.random.default_rng([seed, i]))
        report = evaluate(
            net, dataset, test_records, eval_frame=eval_frame, noise_t=noise_t, match_iou=match_iou
        )
        results.append(
            FoldResult(
                fold_index=i,
                test_scene_ids=tuple(test_ids),
                report=report,
                n_nodes=net.n_nodes,
                n_edges=net.n_edges,
                quantization_error=net.train_log[-1]["quantization_error"],
            )
        )
    return CrossvalResult(folds=results, a_t=params.a_t, epochs=epochs)


# -- parameter sweep ----------------------------------------------------


def sweep(
    dataset: GestureDataset,
    a_t_values,
    epoch_values,
    seed: int,
    folds: int = 3,
    eval_frame: int | None = None,
    workers: int = 1,
) -> list[CrossvalResult]:
    """Cross-validate every (a_T, epochs) grid cell.

    Within one a_T the epoch checkpoints are taken from one continued
    training trajectory per fold (train to 30, evaluate, train on to 50,
    ...), which matches a single longer run sampled along the way.
    """
    a_t_values = list(a_t_values)
    if workers > 1 and len(a_t_values) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(
                _sweep_one_a_t,
                [(dataset, a_t, epoch_values, seed, folds, eval_frame) for a_t in a_t_values],
            )
        results = [cell for chunk in chunks for cell in chunk]
    else:
        results = [
            cell
            for a_t in a_t_values
            for cell in _sweep_one_a_t((dataset, a_t, epoch_values, seed, folds, eval_frame))
        ]
    return results


def _sweep_one_a_t(args) -> list[CrossvalResult]:
    dataset, a_t, epoch_values, seed, folds, eval_frame = args
    checkpoints = sorted(set(int(e) for e in epoch_values))
    if not checkpoints or checkpoints[0] < 1:
        raise ValueError("epoch checkpoints must be positive")
    params = GwrParams(a_t=a_t)
    assignment = fold_scene_ids(dataset, folds, seed)
    per_epoch: dict[int, list[FoldResult]] = {e: [] for e in checkpoints}
    for i, test_ids in enumerate(assignment):
        test_set = set(test_ids)
        train_records = [r for r in dataset.records if r.scene_id not in test_set]
        test_records = [r for r in dataset.records if r.scene_id in test_set]
        X, Y = _training_arrays(train_records)
        net = _fresh_network(X, Y, params, dataset)
        rng = np.random.default_rng([seed, i])
        done = 0
        for e in checkpoints:
            net.train(X, Y, e - done, seed=rng)
            done = e
            report = evaluate(net, dataset, test_records, eval_frame=eval_frame)
            per_epoch[e].append(
                FoldResult(
                    fold_index=i,
                    test_scene_ids=tuple(test_ids),
                    report=report,
                    n_nodes=net.n_nodes,
                    n_edges=net.n_edges,
                    quantization_error=net.train_log[-1]["quantization_error"],
                )
            )
    return [CrossvalResult(folds=per_epoch[e], a_t=a_t, epochs=e) for e in checkpoints]


def growth_table(
    dataset: GestureDataset, a_t_values, epoch_values, seed: int
) -> list[dict]:
    """Full-data network size and quantization error per (a_T, epochs) cell.

    One continued training run per a_T, read off at each epoch checkpoint.
    """
    checkpoints = sorted(set(int(e) for e in epoch_values))
    X, Y = _training_arrays(dataset.records)
    rows = []
    for a_t in a_t_values:
        params = GwrParams(a_t=a_t)
        net = _fresh_network(X, Y, params, dataset)
        net.train(X, Y, checkpoints[-1], seed=np.random.default_rng([seed]))
        for e in checkpoints:
            entry = net.train_log[e - 1]
            rows.append(
                {
                    "a_t": float(a_t),
                    "epochs": e,
                    "nodes": entry["nodes"],
                    "edges": entry["edges"],
                    "quantization_error": entry["quantization_error"],
                }
            )
    return rows
