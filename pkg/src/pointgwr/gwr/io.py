"""Model persistence: versioned JSON, lossless and byte-stable.

Floats are emitted through ``repr`` (the json module's default), which is
the shortest decimal string that round-trips to the exact same float64 --
loading a saved model reproduces bit-identical weights, labels, and
counters.  Keys are sorted and separators fixed so that identical models
serialize to identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .network import GwrNetwork


class ModelFormatError(ValueError):
    """Raised for unreadable or version-mismatched model files."""


def dumps_model(net: GwrNetwork) -> str:
    return json.dumps(net.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"


def save_model(net: GwrNetwork, path: str | Path) -> None:
    Path(path).write_text(dumps_model(net), encoding="utf-8")


def load_model(path: str | Path) -> GwrNetwork:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ModelFormatError(f"cannot read model file {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ModelFormatError(f"model file {path} does not hold an object")
    try:
        return GwrNetwork.from_dict(raw)
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"bad model file {path}: {e}") from e
