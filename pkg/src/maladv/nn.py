"""Fully-connected ReLU classifier with exact closed-form gradients.

Everything is plain numpy in float64. The architecture is fixed: dense
layers with rectified-linear hidden activations and a 2-logit identity
output (label 0 = benign, 1 = malicious). Inputs may be single vectors
``(d,)`` or batches ``(n, d)``; outputs follow the input's leading shape.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InputError, ParseError

LOG_FLOOR = 1e-12  # floor inside log() so saturated softmax never yields -inf


@dataclass
class MlpModel:
    """Parameters of one feed-forward network.

    weights[k] has shape (layer_dims[k], layer_dims[k+1]); the forward pass
    is ``a @ W + b``. The output dimension is always 2.
    """

    layer_dims: list[int]
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    @property
    def input_dim(self) -> int:
        return self.layer_dims[0]

    def copy(self) -> "MlpModel":
        return MlpModel(
            list(self.layer_dims),
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
        )


@dataclass
class AdamState:
    """Adam moment estimates, one array per parameter array."""

    step_count: int
    first_moment: list[np.ndarray]
    second_moment: list[np.ndarray]
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8


def init_params(layer_dims, seed: int) -> MlpModel:
    """Deterministically initialize a model: W ~ N(0, 1/sqrt(fan_in)), b = 0."""
    if not layer_dims or any(int(d) <= 0 for d in layer_dims):
        raise ConfigError(f"layer dims must be positive, got {layer_dims}")
    if layer_dims[-1] != 2:
        raise ConfigError(f"output dimension must be 2, got {layer_dims[-1]}")
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        scale = 1.0 / np.sqrt(fan_in)
        weights.append(rng.normal(0.0, scale, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return MlpModel(list(int(d) for d in layer_dims), weights, biases)


def adam_init(model: MlpModel, learning_rate: float = 1e-3) -> AdamState:
    zeros = lambda arrs: [np.zeros_like(a) for a in arrs]
    return AdamState(0, zeros(model.weights + model.biases),
                     zeros(model.weights + model.biases), learning_rate)


def _as_batch(x: np.ndarray, d: int):
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        if x.shape[0] != d:
            raise InputError(f"input length {x.shape[0]} != model input dim {d}")
        return x[None, :], True
    if x.ndim != 2 or x.shape[1] != d:
        raise InputError(f"input shape {x.shape} incompatible with input dim {d}")
    return x, False


def _forward_cache(model: MlpModel, X: np.ndarray):
    """Forward pass keeping post-activation values for backprop."""
    acts = [X]
    a = X
    last = len(model.weights) - 1
    for k, (W, b) in enumerate(zip(model.weights, model.biases)):
        z = a @ W + b
        a = z if k == last else np.maximum(z, 0.0)
        acts.append(a)
    return acts  # acts[-1] are the raw logits


def forward(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Raw logits Z(x). Stabilization happens only inside softmax/loss."""
    X, single = _as_batch(x, model.input_dim)
    logits = _forward_cache(model, X)[-1]
    return logits[0] if single else logits


def softmax(logits: np.ndarray) -> np.ndarray:
    """Shift-stable softmax over the last axis."""
    z = np.asarray(logits, dtype=float)
    z = z - np.max(z, axis=-1, keepdims=True)
    e = np.exp(z)
    return e / np.sum(e, axis=-1, keepdims=True)


def predict_logits(logits: np.ndarray) -> np.ndarray:
    """Argmax label; ties resolve to the smaller label (0)."""
    return np.argmax(softmax(logits), axis=-1)


def predict(model: MlpModel, x: np.ndarray) -> np.ndarray | int:
    p = predict_logits(forward(model, x))
    return int(p) if np.ndim(p) == 0 else p


def loss_from_logits(logits: np.ndarray, y) -> np.ndarray:
    p = softmax(logits)
    y = np.asarray(y, dtype=int)
    py = np.take_along_axis(p, y[..., None], axis=-1)[..., 0] if p.ndim > 1 else p[y]
    return -np.log(np.maximum(py, LOG_FLOOR))


def loss(model: MlpModel, x: np.ndarray, y) -> float | np.ndarray:
    """Cross-entropy of the stable softmax against label y."""
    X, single = _as_batch(x, model.input_dim)
    ys = np.atleast_1d(np.asarray(y, dtype=int))
    vals = loss_from_logits(_forward_cache(model, X)[-1], ys)
    return float(vals[0]) if single else vals


def _backprop(model: MlpModel, acts, delta: np.ndarray, want_params: bool):
    """Backpropagate an output-side delta (n, 2).

    Returns (input_grads, weight_grads, bias_grads); the parameter grads are
    sums over the batch (caller divides for means) and None when not asked.
    """
    dW = [None] * len(model.weights) if want_params else None
    db = [None] * len(model.biases) if want_params else None
    for k in range(len(model.weights) - 1, -1, -1):
        if want_params:
            dW[k] = acts[k].T @ delta
            db[k] = delta.sum(axis=0)
        delta = delta @ model.weights[k].T
        if k > 0:
            delta = delta * (acts[k] > 0.0)  # ReLU subgradient, 0 at the kink
    return delta, dW, db


def _softmax_delta(logits: np.ndarray, y: np.ndarray) -> np.ndarray:
    p = softmax(logits)
    p[np.arange(p.shape[0]), y] -= 1.0
    return p


def input_gradient(model: MlpModel, x: np.ndarray, y) -> np.ndarray:
    """Exact dL/dx, treating x as a real vector."""
    X, single = _as_batch(x, model.input_dim)
    ys = np.atleast_1d(np.asarray(y, dtype=int))
    acts = _forward_cache(model, X)
    grad, _, _ = _backprop(model, acts, _softmax_delta(acts[-1], ys), False)
    return grad[0] if single else grad


def _prob_delta(logits: np.ndarray, target: int) -> np.ndarray:
    # d softmax_target / d logits_j = p_t (1[t=j] - p_j)
    p = softmax(logits)
    delta = -p[:, target:target + 1] * p
    delta[:, target] += p[:, target]
    return delta


def prob_input_gradient(model: MlpModel, x: np.ndarray, target: int) -> np.ndarray:
    """Gradient of the softmax output for `target` with respect to x."""
    X, single = _as_batch(x, model.input_dim)
    acts = _forward_cache(model, X)
    grad, _, _ = _backprop(model, acts, _prob_delta(acts[-1], target), False)
    return grad[0] if single else grad


def param_gradient(model: MlpModel, X: np.ndarray, y):
    """Mean gradient of the loss over a batch; shapes mirror the parameters."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise InputError("param_gradient needs a non-empty (n, d) batch")
    ys = np.asarray(y, dtype=int)
    acts = _forward_cache(model, X)
    _, dW, db = _backprop(model, acts, _softmax_delta(acts[-1], ys), True)
    n = X.shape[0]
    return [g / n for g in dW], [g / n for g in db]


def grad_zeros_like(model: MlpModel):
    return ([np.zeros_like(w) for w in model.weights],
            [np.zeros_like(b) for b in model.biases])


def adam_step(state: AdamState, model: MlpModel, grads) -> None:
    """One in-place Adam update with bias correction."""
    dW, db = grads
    params = model.weights + model.biases
    gs = list(dW) + list(db)
    if len(gs) != len(params) or any(g.shape != p.shape for g, p in zip(gs, params)):
        raise InputError("gradient shapes do not mirror the parameters")
    state.step_count += 1
    t = state.step_count
    b1, b2 = state.beta1, state.beta2
    for p, g, m, v in zip(params, gs, state.first_moment, state.second_moment):
        m *= b1
        m += (1 - b1) * g
        v *= b2
        v += (1 - b2) * g * g
        m_hat = m / (1 - b1 ** t)
        v_hat = v / (1 - b2 ** t)
        p -= state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)


_MAGIC = b"MLP1"


def save_model(model: MlpModel, path) -> None:
    """Versioned flat binary: dims, then row-major W and b per layer (little-endian f8)."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", len(model.layer_dims)))
        fh.write(np.asarray(model.layer_dims, dtype="<i8").tobytes())
        for W, b in zip(model.weights, model.biases):
            fh.write(np.ascontiguousarray(W, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(b, dtype="<f8").tobytes())


def load_model(path) -> MlpModel:
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ParseError(path, 0, "not a model file (bad magic)")
        (n_dims,) = struct.unpack("<I", fh.read(4))
        dims = np.frombuffer(fh.read(8 * n_dims), dtype="<i8").tolist()
        weights, biases = [], []
        for fan_in, fan_out in zip(dims[:-1], dims[1:]):
            W = np.frombuffer(fh.read(8 * fan_in * fan_out), dtype="<f8")
            weights.append(W.reshape(fan_in, fan_out).copy())
            biases.append(np.frombuffer(fh.read(8 * fan_out), dtype="<f8").copy())
        if fh.read(1):
            raise ParseError(path, 0, "trailing bytes after model payload")
    return MlpModel(dims, weights, biases)
