"""Binary on-disk format for gesture datasets.

A dataset file is a little-endian stream with three parts:

==========  =====  =====================================================
offset      size   field
==========  =====  =====================================================
0           4      magic ``b"PGWR"``
4           1      format version (currently 1)
5           4      u32: byte length H of the JSON header
9           H      UTF-8 JSON header (see below)
9+H         4      u32: record count N
...                N length-prefixed records
==========  =====  =====================================================

Each record is a u32 payload length followed by the payload:

==========  =====  =====================================================
offset      size   field
==========  =====  =====================================================
0           4      u32: scene id
4           4      u32: frame index within the scene
8           1      u8: ambiguity-class tag (index into the class list)
9           1      u8: noise flag (1 = off-scenario frame, no label)
10          40     5 x f64 feature vector (alpha, c_x, c_y, p_x, p_y)
50          32     4 x f64 box label (x1, y1, x2, y2); absent when the
                   noise flag is set, making the payload 50 bytes
==========  =====  =====================================================

The JSON header carries everything needed to rebuild the dataset
object: the generation seed, the noise specification, the geometry
constants, and the full scene table (object placements, boxes, target
indices, layout ids).  Payloads are self-delimiting, so records can be
skipped without parsing them.
"""

from __future__ import annotations

import dataclasses
import json
import struct
from pathlib import Path

from .boxes import BoxLabel
from .features import FeatureVector
from .sim.dataset import AMBIGUITY_CLASSES, GestureDataset, Record
from .sim.geometry import TableGeometry
from .sim.gestures import NoiseSpec
from .sim.scenes import Scene, SceneObject

MAGIC = b"PGWR"
FORMAT_VERSION = 1

_FIXED = struct.Struct("<IIBB5d")
_LABEL = struct.Struct("<4d")
_U32 = struct.Struct("<I")


class DataFormatError(ValueError):
    """Raised when a file does not match the documented layout."""


def _scene_to_dict(scene: Scene) -> dict:
    return {
        "scene_id": scene.scene_id,
        "ambiguity_class": scene.ambiguity_class,
        "target_index": scene.target_index,
        "layout_id": scene.layout_id,
        "edge_case": scene.edge_case,
        "objects": [
            {
                "color": ob.color,
                "x_cm": ob.x_cm,
                "row": ob.row,
                "depth_cm": ob.depth_cm,
                "bbox": list(ob.bbox.as_tuple()),
            }
            for ob in scene.objects
        ],
    }


def _scene_from_dict(data: dict) -> Scene:
    return Scene(
        scene_id=int(data["scene_id"]),
        ambiguity_class=str(data["ambiguity_class"]),
        objects=tuple(
            SceneObject(
                color=str(ob["color"]),
                x_cm=float(ob["x_cm"]),
                row=int(ob["row"]),
                depth_cm=float(ob["depth_cm"]),
                bbox=BoxLabel(*ob["bbox"]),
            )
            for ob in data["objects"]
        ),
        target_index=int(data["target_index"]),
        layout_id=int(data.get("layout_id", 0)),
        edge_case=bool(data.get("edge_case", False)),
    )


def _header_dict(dataset: GestureDataset) -> dict:
    return {
        "seed": dataset.seed,
        "noise": dataclasses.asdict(dataset.noise),
        "geometry": dataclasses.asdict(dataset.geometry),
        "classes": list(AMBIGUITY_CLASSES),
        "scenes": [_scene_to_dict(s) for s in dataset.scenes],
    }


def _pack_record(record: Record) -> bytes:
    tag = AMBIGUITY_CLASSES.index(record.ambiguity_class)
    payload = _FIXED.pack(
        record.scene_id,
        record.frame_index,
        tag,
        1 if record.noise_flag else 0,
        *record.feature.as_array().tolist(),
    )
    if record.label is not None:
        payload += _LABEL.pack(*record.label.as_tuple())
    return _U32.pack(len(payload)) + payload


def _unpack_record(payload: bytes, classes: list[str]) -> Record:
    if len(payload) < _FIXED.size:
        raise DataFormatError(f"record payload truncated at {len(payload)} bytes")
    scene_id, frame_index, tag, noise_flag, *feat = _FIXED.unpack_from(payload)
    if tag >= len(classes):
        raise DataFormatError(f"unknown ambiguity-class tag {tag}")
    expected = _FIXED.size + (0 if noise_flag else _LABEL.size)
    if len(payload) != expected:
        raise DataFormatError(
            f"record payload is {len(payload)} bytes, expected {expected}"
        )
    label = None
    if not noise_flag:
        label = BoxLabel(*_LABEL.unpack_from(payload, _FIXED.size))
    return Record(
        scene_id=scene_id,
        ambiguity_class=classes[tag],
        noise_flag=bool(noise_flag),
        frame_index=frame_index,
        feature=FeatureVector.from_array(feat),
        label=label,
    )


def write_dataset(dataset: GestureDataset, path: str | Path) -> None:
    """Serialize a dataset to the documented binary layout."""
    header = json.dumps(_header_dict(dataset), sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(bytes([FORMAT_VERSION]))
        fh.write(_U32.pack(len(header)))
        fh.write(header)
        fh.write(_U32.pack(len(dataset.records)))
        for record in dataset.records:
            fh.write(_pack_record(record))


def read_dataset(path: str | Path) -> GestureDataset:
    """Read a dataset file back into an in-memory dataset.

    Raises :class:`DataFormatError` on a bad magic, an unsupported
    version, or a truncated/garbled stream.
    """
    blob = Path(path).read_bytes()
    if blob[:4] != MAGIC:
        raise DataFormatError(f"not a gesture dataset file: bad magic {blob[:4]!r}")
    if len(blob) < 9:
        raise DataFormatError("file truncated before the header")
    version = blob[4]
    if version != FORMAT_VERSION:
        raise DataFormatError(f"unsupported dataset format version {version}")
    (header_len,) = _U32.unpack_from(blob, 5)
    header_end = 9 + header_len
    if len(blob) < header_end + 4:
        raise DataFormatError("file truncated inside the header")
    try:
        header = json.loads(blob[9:header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise DataFormatError(f"header is not valid JSON: {err}") from err

    classes = [str(c) for c in header["classes"]]
    scenes = tuple(_scene_from_dict(s) for s in header["scenes"])
    noise = NoiseSpec(**header["noise"])
    geometry = TableGeometry(**{
        key: tuple(value) if isinstance(value, list) else value
        for key, value in header["geometry"].items()
    })

    (count,) = _U32.unpack_from(blob, header_end)
    offset = header_end + 4
    records = []
    for index in range(count):
        if len(blob) < offset + 4:
            raise DataFormatError(f"file truncated before record {index}")
        (payload_len,) = _U32.unpack_from(blob, offset)
        offset += 4
        if len(blob) < offset + payload_len:
            raise DataFormatError(f"file truncated inside record {index}")
        records.append(_unpack_record(blob[offset : offset + payload_len], classes))
        offset += payload_len
    if offset != len(blob):
        raise DataFormatError(f"{len(blob) - offset} trailing bytes after the last record")

    return GestureDataset(
        scenes=scenes,
        records=tuple(records),
        noise=noise,
        seed=int(header["seed"]),
        geometry=geometry,
    )
