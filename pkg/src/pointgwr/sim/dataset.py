"""Gesture datasets: frame records grouped by scene.

A dataset is a flat list of frames, each carrying its features, its
ground-truth box (absent for off-scenario frames), and enough indexing
metadata (scene id, ambiguity class, frame number) to slice by scene for
cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..boxes import BoxLabel
from ..features import FeatureVector
from .geometry import TableGeometry
from .gestures import NoiseSpec, synth_gesture
from .scenes import Scene, enumerate_configs

AMBIGUITY_CLASSES = ("none", "a1", "a2", "a3", "a4")


@dataclass(frozen=True)
class Record:
    scene_id: int
    ambiguity_class: str
    noise_flag: bool
    frame_index: int
    feature: FeatureVector
    label: BoxLabel | None

    def __post_init__(self):
        if self.noise_flag != (self.label is None):
            raise ValueError("noise frames carry no label; valid frames must")


@dataclass(frozen=True)
class GestureDataset:
    scenes: tuple[Scene, ...]
    records: tuple[Record, ...]
    noise: NoiseSpec
    seed: int
    geometry: TableGeometry = field(default_factory=TableGeometry)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def scene_by_id(self, scene_id: int) -> Scene:
        return self.scenes[scene_id]

    def to_arrays(self) -> dict[str, np.ndarray]:
        """Columnar view: features (n,5), labels (n,4; NaN rows for noise),
        scene_ids (n,), noise_flags (n,)."""
        n = len(self.records)
        feats = np.empty((n, 5))
        labels = np.full((n, 4), np.nan)
        scene_ids = np.empty(n, dtype=np.int64)
        flags = np.zeros(n, dtype=bool)
        for i, r in enumerate(self.records):
            feats[i] = r.feature.as_array()
            if r.label is not None:
                labels[i] = r.label.as_tuple()
            scene_ids[i] = r.scene_id
            flags[i] = r.noise_flag
        return {
            "features": feats,
            "labels": labels,
            "scene_ids": scene_ids,
            "noise_flags": flags,
        }

    def valid_records(self) -> list[Record]:
        return [r for r in self.records if not r.noise_flag]

    def subset(self, scene_ids) -> "GestureDataset":
        """The frames belonging to the given scenes, scene table unchanged."""
        wanted = set(int(s) for s in scene_ids)
        return GestureDataset(
            scenes=self.scenes,
            records=tuple(r for r in self.records if r.scene_id in wanted),
            noise=self.noise,
            seed=self.seed,
            geometry=self.geometry,
        )


def generate_dataset(
    per_scene_frames: int = 80,
    noise: NoiseSpec | None = None,
    seed: int | None = None,
    classes=None,
    include_edge_cases: bool = False,
    geometry: TableGeometry | None = None,
) -> GestureDataset:
    """Synthesize `per_scene_frames` gesture frames for every configuration.

    `classes` restricts generation to the named ambiguity classes; frames
    are drawn scene by scene from one seeded stream, so equal arguments
    reproduce the dataset bit for bit.
    """
    if seed is None:
        raise ValueError("dataset generation needs an explicit seed")
    if per_scene_frames < 1:
        raise ValueError("per_scene_frames must be >= 1")
    noise = noise or NoiseSpec()
    geometry = geometry or TableGeometry()
    if classes is not None:
        unknown = set(classes) - set(AMBIGUITY_CLASSES)
        if unknown:
            raise ValueError(f"unknown ambiguity classes: {sorted(unknown)}")
    scenes = enumerate_configs(geometry, include_edge_cases=include_edge_cases)
    rng = np.random.default_rng(seed)
    records = []
    for scene in scenes:
        if classes is not None and scene.ambiguity_class not in classes:
            continue
        for j in range(per_scene_frames):
            fv, label = synth_gesture(scene, noise, rng, geometry)
            records.append(
                Record(
                    scene_id=scene.scene_id,
                    ambiguity_class=scene.ambiguity_class,
                    noise_flag=label is None,
                    frame_index=j,
                    feature=fv,
                    label=label,
                )
            )
    return GestureDataset(
        scenes=tuple(scenes),
        records=tuple(records),
        noise=noise,
        seed=int(seed),
        geometry=geometry,
    )
