"""Uniform predict/loss/gradient entry points over single models and ensembles."""

from __future__ import annotations

import numpy as np

from . import ensemble as ens_mod
from . import nn


def _is_ens(model) -> bool:
    return isinstance(model, ens_mod.EnsembleModel)


def input_dim(model) -> int:
    return model.input_dim


def logits(model, x: np.ndarray) -> np.ndarray:
    return ens_mod.ensemble_logits(model, x) if _is_ens(model) else nn.forward(model, x)


def predict(model, x: np.ndarray):
    return ens_mod.predict(model, x) if _is_ens(model) else nn.predict(model, x)


def loss(model, x: np.ndarray, y):
    return ens_mod.loss(model, x, y) if _is_ens(model) else nn.loss(model, x, y)


def input_gradient(model, x: np.ndarray, y) -> np.ndarray:
    if _is_ens(model):
        return ens_mod.input_gradient(model, x, y)
    return nn.input_gradient(model, x, y)


def prob_gradient(model, x: np.ndarray, target: int) -> np.ndarray:
    if _is_ens(model):
        return ens_mod.prob_input_gradient(model, x, target)
    return nn.prob_input_gradient(model, x, target)


def save(model, path) -> None:
    if _is_ens(model):
        ens_mod.save_ensemble(model, path)
    else:
        nn.save_model(model, path)


def load(path):
    """Load a model file or an ensemble directory."""
    import os

    if os.path.isdir(path):
        return ens_mod.load_ensemble(path)
    return nn.load_model(path)
