"""Weighted logit ensemble with a simplex-constrained weight vector.

Base logits are stabilized per base (Z_i - max Z_i) before weighting; the
weighted sum goes through the same stable softmax as a single model, so
predictions and losses are shift-consistent with the bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import nn
from .errors import ConfigError, InputError, ParseError

WEIGHT_SUM_TOL = 1e-9


@dataclass
class EnsembleModel:
    bases: list[nn.MlpModel]
    weights: np.ndarray

    @property
    def input_dim(self) -> int:
        return self.bases[0].input_dim

    def copy(self) -> "EnsembleModel":
        return EnsembleModel([b.copy() for b in self.bases], self.weights.copy())

    def validate(self) -> None:
        if len(self.bases) < 1:
            raise InputError("ensemble needs at least one base model")
        if any(b.input_dim != self.input_dim for b in self.bases):
            raise InputError("base models disagree on input dimension")
        w = self.weights
        if w.shape != (len(self.bases),):
            raise InputError("weight vector length != number of bases")
        if np.any(w < 0) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise InputError("weights must be non-negative and sum to 1")


def make_ensemble(bases, weights=None) -> EnsembleModel:
    bases = list(bases)
    if weights is None:
        weights = np.full(len(bases), 1.0 / max(len(bases), 1))
    ens = EnsembleModel(bases, np.asarray(weights, dtype=float))
    ens.validate()
    return ens


def _stabilized_base_logits(ens: EnsembleModel, X: np.ndarray) -> np.ndarray:
    """(l, n, 2) stack of per-base logits, each shifted by its row max."""
    out = np.empty((len(ens.bases), X.shape[0], 2))
    for i, base in enumerate(ens.bases):
        z = nn._forward_cache(base, X)[-1]
        out[i] = z - z.max(axis=-1, keepdims=True)
    return out


def ensemble_logits(ens: EnsembleModel, x: np.ndarray) -> np.ndarray:
    """Weighted sum of stabilized base logits."""
    X, single = nn._as_batch(x, ens.input_dim)
    stacked = _stabilized_base_logits(ens, X)
    logits = np.tensordot(ens.weights, stacked, axes=(0, 0))
    return logits[0] if single else logits


def predict(ens: EnsembleModel, x: np.ndarray):
    p = nn.predict_logits(ensemble_logits(ens, x))
    return int(p) if np.ndim(p) == 0 else p


def loss(ens: EnsembleModel, x: np.ndarray, y):
    X, single = nn._as_batch(x, ens.input_dim)
    ys = np.atleast_1d(np.asarray(y, dtype=int))
    vals = nn.loss_from_logits(ensemble_logits(ens, X), ys)
    return float(vals[0]) if single else vals


def _input_grad_from_delta(ens: EnsembleModel, X: np.ndarray, delta: np.ndarray):
    grad = np.zeros_like(X)
    for w_i, base in zip(ens.weights, ens.bases):
        acts = nn._forward_cache(base, X)
        g, _, _ = nn._backprop(base, acts, delta * w_i, False)
        grad += g
    return grad


def input_gradient(ens: EnsembleModel, x: np.ndarray, y):
    """dL/dx of the ensemble loss: weighted sum of per-base backprops."""
    X, single = nn._as_batch(x, ens.input_dim)
    ys = np.atleast_1d(np.asarray(y, dtype=int))
    delta = nn._softmax_delta(ensemble_logits(ens, X), ys)
    grad = _input_grad_from_delta(ens, X, delta)
    return grad[0] if single else grad


def prob_input_gradient(ens: EnsembleModel, x: np.ndarray, target: int):
    """Gradient of the ensemble's softmax output for `target` w.r.t. x."""
    X, single = nn._as_batch(x, ens.input_dim)
    delta = nn._prob_delta(ensemble_logits(ens, X), target)
    grad = _input_grad_from_delta(ens, X, delta)
    return grad[0] if single else grad


def weight_gradient(ens: EnsembleModel, X: np.ndarray, y) -> np.ndarray:
    """Exact dJ/dw for the mean cross-entropy over (X, y)."""
    X, _ = nn._as_batch(X, ens.input_dim)
    ys = np.asarray(y, dtype=int)
    stacked = _stabilized_base_logits(ens, X)
    logits = np.tensordot(ens.weights, stacked, axes=(0, 0))
    delta = nn._softmax_delta(logits, ys)  # (n, 2)
    # dJ/dw_i = mean_n <delta_n, z~_i(x_n)>
    return np.einsum("inj,nj->i", stacked, delta) / X.shape[0]


def simplex_project(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {w : w >= 0, sum w = 1} (sort-based)."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise InputError("simplex_project expects a non-empty 1-D vector")
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    cond = u - (css - 1.0) / idx > 0
    rho = idx[cond][-1]
    theta = (css[rho - 1] - 1.0) / rho
    return np.maximum(v - theta, 0.0)


def optimize_weights(ens: EnsembleModel, X: np.ndarray, y, inner_attack=None,
                     steps: int = 50, beta: float = 0.01) -> EnsembleModel:
    """Projected gradient descent on the adversarial objective over w.

    The base parameters stay frozen. Each step recomputes adversarial
    examples from the current weights via ``inner_attack(ens, X, y) -> X_adv``
    (clean-only objective when None), then descends holding them fixed.
    """
    if steps <= 0:
        raise ConfigError("optimize_weights needs steps >= 1")
    if beta <= 0:
        raise ConfigError("optimize_weights needs beta > 0")
    ens = EnsembleModel(ens.bases, simplex_project(ens.weights))
    ys = np.asarray(y, dtype=int)
    for _ in range(steps):
        g = weight_gradient(ens, X, ys)
        if inner_attack is not None:
            g = g + weight_gradient(ens, inner_attack(ens, X, ys), ys)
        ens = EnsembleModel(ens.bases, simplex_project(ens.weights - beta * g))
    return ens


def save_ensemble(ens: EnsembleModel, dirpath) -> None:
    """Directory with one file per base plus a binary weights record."""
    import os

    os.makedirs(dirpath, exist_ok=True)
    for i, base in enumerate(ens.bases):
        nn.save_model(base, os.path.join(dirpath, f"base_{i:03d}.mlp"))
    with open(os.path.join(dirpath, "weights.bin"), "wb") as fh:
        fh.write(b"ENS1")
        fh.write(np.asarray([len(ens.bases)], dtype="<u4").tobytes())
        fh.write(np.ascontiguousarray(ens.weights, dtype="<f8").tobytes())


def load_ensemble(dirpath) -> EnsembleModel:
    import os

    wpath = os.path.join(dirpath, "weights.bin")
    with open(wpath, "rb") as fh:
        if fh.read(4) != b"ENS1":
            raise ParseError(wpath, 0, "not an ensemble weights file (bad magic)")
        (l,) = np.frombuffer(fh.read(4), dtype="<u4")
        weights = np.frombuffer(fh.read(8 * int(l)), dtype="<f8").copy()
    bases = [nn.load_model(os.path.join(dirpath, f"base_{i:03d}.mlp"))
             for i in range(int(l))]
    return EnsembleModel(bases, weights)
