"""Growing-when-required network with bounding-box labels."""

from .params import GwrParams, habituate, habituation_closed_form
from .labels import init_label, adapt_label, adapt_labels
from .network import GwrNetwork, GwrNode, StepOutcome
from .io import ModelFormatError, dumps_model, load_model, save_model

__all__ = [
    "GwrParams",
    "GwrNetwork",
    "GwrNode",
    "StepOutcome",
    "ModelFormatError",
    "habituate",
    "habituation_closed_form",
    "init_label",
    "adapt_label",
    "adapt_labels",
    "dumps_model",
    "save_model",
    "load_model",
]
