"""A growing-when-required network with bounding-box labels.

The network is an online vector quantizer over the 5-dimensional gesture
feature space.  Every node carries a weight vector, a continuous
bounding-box label, and a firing counter; nodes are linked by aging edges.
One adaptation step with an observation ``o`` and its ground-truth box:

1. find the best and second-best matching nodes (Euclidean distance,
   ties broken toward the lowest node id);
2. create or refresh the edge between them (age 0);
3. compute the activity a = exp(-distance to best match);
4. if a < a_t and the best match's firing counter is below h_t, insert a
   new node at the midpoint of the best match's weight and ``o``,
   connected to both matches, removing their direct edge;
5. otherwise move the best match's weight by eta_b * h_b toward ``o`` and
   every topological neighbor by eta_n * h_n, update the labels the same
   way, then habituate the firing counters (best match fastest);
6. age every edge incident to the best match by one;
7. drop edges older than age_max and any node left without edges.

Distances are computed in scaled feature coordinates when the network was
built with :class:`~pointgwr.features.FeatureBounds`; the public API keeps
accepting raw vectors either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..boxes import BoxLabel
from ..features import FeatureBounds
from .labels import adapt_label, init_label
from .params import GwrParams, habituate

_GROW = 256  # row-capacity increment for the node arrays


@dataclass(frozen=True)
class GwrNode:
    """Read-only view of one node.

    The weight is reported in the network's metric space (scaled
    coordinates when feature bounds are set, raw otherwise).
    """

    id: int
    weight: np.ndarray
    label: BoxLabel
    habituation: float


@dataclass(frozen=True)
class StepOutcome:
    """What one adaptation step did."""

    inserted: bool
    activity: float
    bmu_id: int
    sbmu_id: int
    new_node_id: int | None = None
    nodes_removed: int = 0


class GwrNetwork:
    """See the module docstring for the adaptation algorithm."""

    def __init__(
        self,
        params: GwrParams,
        bounds: FeatureBounds | None = None,
        label_scale: tuple[float, float] | None = None,
    ):
        self.params = params
        self.bounds = bounds
        self.label_scale = label_scale
        self.train_log: list[dict] = []
        if bounds is not None:
            lo, span = bounds._lo_span()
            self._lo, self._span = lo, span
        else:
            self._lo = self._span = None
        self._n = 0
        cap = _GROW
        self._W = np.zeros((cap, 5))
        self._labels = np.zeros((cap, 4))
        self._hab = np.zeros(cap)
        self._ids = np.zeros(cap, dtype=np.int64)
        self._row_of: dict[int, int] = {}
        self._adj: dict[int, dict[int, int]] = {}
        self._next_id = 0

    # ------------------------------------------------------------------ setup

    @classmethod
    def new_network(
        cls,
        o1: np.ndarray,
        o2: np.ndarray,
        label1: BoxLabel,
        label2: BoxLabel,
        params: GwrParams,
        bounds: FeatureBounds | None = None,
        label_scale: tuple[float, float] | None = None,
    ) -> "GwrNetwork":
        """A fresh two-node network built from two distinct samples."""
        net = cls(params, bounds=bounds, label_scale=label_scale)
        v1, v2 = net._metric(o1), net._metric(o2)
        if np.array_equal(v1, v2):
            raise ValueError("the two seed samples must be distinct")
        net._append_node(v1, np.array(label1.as_tuple(), dtype=np.float64))
        net._append_node(v2, np.array(label2.as_tuple(), dtype=np.float64))
        return net

    def _metric(self, v: np.ndarray) -> np.ndarray:
        """Raw feature vector -> metric-space coordinates."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape[-1] != 5:
            raise ValueError(f"expected 5-dimensional features, got shape {v.shape}")
        if self._lo is None:
            return v.copy() if v.ndim == 1 else v
        return (v - self._lo) / self._span

    def _append_node(
        self,
        weight: np.ndarray,
        label_row: np.ndarray,
        node_id: int | None = None,
        habituation: float | None = None,
    ) -> int:
        """Add a node row.  Explicit ids (used when loading) must arrive in
        increasing order so that row order keeps matching id order."""
        if self._n == len(self._ids):
            extra = len(self._ids) + _GROW
            self._W = np.resize(self._W, (extra, 5))
            self._labels = np.resize(self._labels, (extra, 4))
            self._hab = np.resize(self._hab, extra)
            self._ids = np.resize(self._ids, extra)
        r = self._n
        if node_id is None:
            node_id = self._next_id
        elif node_id < self._next_id:
            raise ValueError(f"node ids must be strictly increasing, got {node_id}")
        self._next_id = node_id + 1
        self._W[r] = weight
        self._labels[r] = label_row
        self._hab[r] = self.params.h0 if habituation is None else habituation
        self._ids[r] = node_id
        self._row_of[node_id] = r
        self._adj[node_id] = {}
        self._n += 1
        return node_id

    # ------------------------------------------------------------- inspection

    @property
    def n_nodes(self) -> int:
        return self._n

    @property
    def n_edges(self) -> int:
        return sum(len(nbs) for nbs in self._adj.values()) // 2

    def node_ids(self) -> list[int]:
        return [int(i) for i in self._ids[: self._n]]

    def get_node(self, node_id: int) -> GwrNode:
        r = self._row_of[node_id]
        return GwrNode(
            id=node_id,
            weight=self._W[r].copy(),
            label=BoxLabel(*self._labels[r]),
            habituation=float(self._hab[r]),
        )

    def neighbors(self, node_id: int) -> list[int]:
        return sorted(self._adj[node_id])

    def edges(self) -> list[tuple[int, int, int]]:
        """All edges as (a, b, age) with a < b, sorted."""
        out = []
        for a, nbs in self._adj.items():
            for b, age in nbs.items():
                if a < b:
                    out.append((a, b, age))
        return sorted(out)

    # ---------------------------------------------------------------- queries

    def _best_rows(self, v: np.ndarray) -> tuple[int, int, float]:
        """Rows of the two nearest nodes plus the nearest distance.

        Distance ties resolve toward the lowest node id; node ids are
        assigned in increasing order and rows keep id order, so the first
        minimum is the right one.
        """
        W = self._W[: self._n]
        diff = W - v
        d2 = np.einsum("ij,ij->i", diff, diff)
        r1 = int(np.argmin(d2))
        d1 = float(d2[r1])
        d2[r1] = np.inf
        r2 = int(np.argmin(d2))
        return r1, r2, math.sqrt(d1)

    def best_matching(self, observation: np.ndarray) -> tuple[int, int, float]:
        """(best id, second-best id, distance to best) for a raw observation."""
        if self._n < 2:
            raise ValueError("network needs at least two nodes")
        r1, r2, dist = self._best_rows(self._metric(observation))
        return int(self._ids[r1]), int(self._ids[r2]), dist

    def activity(self, observation: np.ndarray) -> float:
        """a = exp(-distance to the best matching node), in (0, 1]."""
        _, _, dist = self.best_matching(observation)
        return math.exp(-dist)

    def k_nearest(self, observation: np.ndarray, k: int) -> list[int]:
        """Ids of the k nearest nodes, nearest first, ties toward low ids."""
        if k < 1 or k > self._n:
            raise ValueError(f"k must lie in [1, {self._n}], got {k}")
        v = self._metric(observation)
        W = self._W[: self._n]
        diff = W - v
        d2 = np.einsum("ij,ij->i", diff, diff)
        order = np.argsort(d2, kind="stable")[:k]
        return [int(self._ids[r]) for r in order]

    def bmu_rows(self, observations: np.ndarray, chunk: int = 512) -> np.ndarray:
        """Vectorized best-match row lookup for a batch of raw observations."""
        V = self._metric(np.asarray(observations, dtype=np.float64))
        W = self._W[: self._n]
        rows = np.empty(len(V), dtype=np.int64)
        for i in range(0, len(V), chunk):
            d2 = ((V[i : i + chunk, None, :] - W[None, :, :]) ** 2).sum(-1)
            rows[i : i + chunk] = np.argmin(d2, axis=1)
        return rows

    def bmu_labels(self, observations: np.ndarray) -> np.ndarray:
        """Best-match label rows (n, 4) for a batch of raw observations."""
        return self._labels[: self._n][self.bmu_rows(observations)].copy()

    # ------------------------------------------------------------------ edges

    def _evict_oldest_edge(self, node_id: int) -> None:
        nbs = self._adj[node_id]
        victim = max(nbs, key=lambda b: (nbs[b], -b))
        del nbs[victim]
        del self._adj[victim][node_id]

    def _add_or_refresh_edge(self, a: int, b: int) -> None:
        adj = self._adj
        if b in adj[a]:
            adj[a][b] = 0
            adj[b][a] = 0
            return
        cap = self.params.nb_max
        if len(adj[a]) >= cap:
            self._evict_oldest_edge(a)
        if len(adj[b]) >= cap:
            self._evict_oldest_edge(b)
        adj[a][b] = 0
        adj[b][a] = 0

    def _remove_rows(self, rows: list[int]) -> None:
        keep = np.ones(self._n, dtype=bool)
        keep[rows] = False
        m = int(keep.sum())
        self._W[:m] = self._W[: self._n][keep]
        self._labels[:m] = self._labels[: self._n][keep]
        self._hab[:m] = self._hab[: self._n][keep]
        self._ids[:m] = self._ids[: self._n][keep]
        self._n = m
        self._row_of = {int(self._ids[r]): r for r in range(m)}

    def _drop_orphans(self, candidate_ids: Sequence[int]) -> int:
        """Remove nodes from ``candidate_ids`` that have no edges left.

        Never shrinks the network below two nodes (the lowest-id orphans
        survive in that corner case so queries stay well defined).
        """
        orphans = sorted(i for i in set(candidate_ids) if not self._adj[i])
        if not orphans:
            return 0
        allowed = self._n - 2
        if len(orphans) > allowed:
            orphans = orphans[len(orphans) - allowed :] if allowed > 0 else []
        if not orphans:
            return 0
        for i in orphans:
            del self._adj[i]
        self._remove_rows([self._row_of[i] for i in orphans])
        return len(orphans)

    def prune(self) -> int:
        """Full sweep: drop over-age edges, then orphaned nodes.

        The adaptation step runs an incremental equivalent (only edges at
        the best match can have aged); this method exists for explicit
        maintenance and for verifying the invariant in one shot.
        """
        age_max = self.params.age_max
        dead = [
            (a, b)
            for a, nbs in self._adj.items()
            for b, age in nbs.items()
            if a < b and age > age_max
        ]
        touched = []
        for a, b in dead:
            del self._adj[a][b]
            del self._adj[b][a]
            touched += [a, b]
        return self._drop_orphans(touched or list(self._adj))

    # ------------------------------------------------------------- adaptation

    def adapt(self, observation: np.ndarray, label: BoxLabel | np.ndarray) -> StepOutcome:
        """One online step; see the module docstring for the exact order."""
        if self._n < 2:
            raise ValueError("network needs at least two nodes")
        p = self.params
        v = self._metric(observation)
        if isinstance(label, BoxLabel):
            lab = np.array(label.as_tuple(), dtype=np.float64)
        else:
            lab = np.asarray(label, dtype=np.float64)
        r_b, r_s, dist = self._best_rows(v)
        id_b, id_s = int(self._ids[r_b]), int(self._ids[r_s])

        self._add_or_refresh_edge(id_b, id_s)
        a = math.exp(-dist)
        h_b = float(self._hab[r_b])

        new_id = None
        if a < p.a_t and h_b < p.h_t:
            w_new = 0.5 * (self._W[r_b] + v)
            lab_new = init_label(self._labels[r_b], lab)
            del self._adj[id_b][id_s]
            del self._adj[id_s][id_b]
            new_id = self._append_node(w_new, lab_new)
            self._add_or_refresh_edge(new_id, id_b)
            self._add_or_refresh_edge(new_id, id_s)
        else:
            sizes = p.adapt_label_sizes
            self._W[r_b] += p.eta_b * h_b * (v - self._W[r_b])
            self._labels[r_b] = adapt_label(self._labels[r_b], lab, p.eta_b, h_b, sizes)
            for nb_id in self._adj[id_b]:
                r_n = self._row_of[nb_id]
                h_n = float(self._hab[r_n])
                self._W[r_n] += p.eta_n * h_n * (v - self._W[r_n])
                self._labels[r_n] = adapt_label(self._labels[r_n], lab, p.eta_n, h_n, sizes)
                self._hab[r_n] = habituate(h_n, p, is_bmu=False)
            self._hab[r_b] = habituate(h_b, p, is_bmu=True)

        # Age the edges at the best match, then prune just what this step
        # could have pushed over the limit.
        adj_b = self._adj[id_b]
        for nb_id in adj_b:
            age = adj_b[nb_id] + 1
            adj_b[nb_id] = age
            self._adj[nb_id][id_b] = age
        over = [nb_id for nb_id, age in adj_b.items() if age > p.age_max]
        removed = 0
        if over:
            for nb_id in over:
                del adj_b[nb_id]
                del self._adj[nb_id][id_b]
            removed = self._drop_orphans(over + [id_b])
        return StepOutcome(
            inserted=new_id is not None,
            activity=a,
            bmu_id=id_b,
            sbmu_id=id_s,
            new_node_id=new_id,
            nodes_removed=removed,
        )

    # --------------------------------------------------------------- training

    def train(
        self,
        observations: np.ndarray,
        labels: np.ndarray,
        epochs: int,
        seed: int | np.random.Generator,
        shuffle: bool = True,
        log: bool = True,
    ) -> list[dict]:
        """Run ``epochs`` shuffled passes over the data.

        ``observations`` is (n, 5) raw feature vectors, ``labels`` (n, 4)
        ground-truth boxes.  Appends one entry per epoch to ``train_log``
        with the node count, edge count, and quantization error after the
        epoch, and returns the log.
        """
        X = np.asarray(observations, dtype=np.float64)
        Y = np.asarray(labels, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != 5 or Y.shape != (len(X), 4):
            raise ValueError(f"bad training shapes: {X.shape}, {Y.shape}")
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        start = len(self.train_log)
        for ep in range(epochs):
            order = rng.permutation(len(X)) if shuffle else np.arange(len(X))
            for i in order:
                self.adapt(X[i], Y[i])
            if log:
                self.train_log.append(
                    {
                        "epoch": start + ep + 1,
                        "nodes": self.n_nodes,
                        "edges": self.n_edges,
                        "quantization_error": self.quantization_error(X, Y),
                    }
                )
        return self.train_log

    def quantization_error(self, observations: np.ndarray, labels: np.ndarray) -> float:
        """Mean distance between best-match label centroids and true centroids.

        Centroids are compared in scale-free image coordinates (divided by
        the label scale when one was configured), so the error is
        comparable across image sizes.
        """
        Y = np.asarray(labels, dtype=np.float64)
        got = self._labels[: self._n][self.bmu_rows(observations)]
        gx = 0.5 * (got[:, 0] + got[:, 2])
        gy = 0.5 * (got[:, 1] + got[:, 3])
        tx = 0.5 * (Y[:, 0] + Y[:, 2])
        ty = 0.5 * (Y[:, 1] + Y[:, 3])
        sw, sh = self.label_scale if self.label_scale else (1.0, 1.0)
        return float(np.hypot((gx - tx) / sw, (gy - ty) / sh).mean())

    # ------------------------------------------------------------ persistence

    def to_dict(self) -> dict:
        params = self.params.as_dict()
        params["feature_bounds"] = self.bounds.as_dict() if self.bounds else None
        params["label_scale"] = list(self.label_scale) if self.label_scale else None
        nodes = []
        for r in range(self._n):
            x1, y1, x2, y2 = (float(c) for c in self._labels[r])
            nodes.append(
                {
                    "id": int(self._ids[r]),
                    "weight": [float(w) for w in self._W[r]],
                    "label": {"x1": x1, "y1": y1, "x2": x2, "y2": y2},
                    "habituation": float(self._hab[r]),
                }
            )
        edges = [{"a": a, "b": b, "age": age} for a, b, age in self.edges()]
        return {
            "format_version": 1,
            "params": params,
            "nodes": nodes,
            "edges": edges,
            "train_log": self.train_log,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GwrNetwork":
        version = d.get("format_version")
        if version != 1:
            raise ValueError(f"unsupported model format version: {version!r}")
        pd = dict(d["params"])
        bounds_d = pd.pop("feature_bounds", None)
        scale = pd.pop("label_scale", None)
        net = cls(
            GwrParams.from_dict(pd),
            bounds=FeatureBounds.from_dict(bounds_d) if bounds_d else None,
            label_scale=tuple(scale) if scale else None,
        )
        for node in sorted(d["nodes"], key=lambda n: n["id"]):
            lab = node["label"]
            net._append_node(
                np.array(node["weight"], dtype=np.float64),
                np.array([lab["x1"], lab["y1"], lab["x2"], lab["y2"]], dtype=np.float64),
                node_id=int(node["id"]),
                habituation=float(node["habituation"]),
            )
        for e in d["edges"]:
            a, b, age = int(e["a"]), int(e["b"]), int(e["age"])
            net._adj[a][b] = age
            net._adj[b][a] = age
        net.train_log = list(d.get("train_log", []))
        return net
