"""Training regimes: standard, adversarial (minmax), and the two ensemble
variants (joint adversarial ensemble, and its diversity-regularized form).

All regimes share the mini-batch Adam loop and the model-selection rule:
keep the epoch checkpoint with the best validation score, where adversarial
regimes score by the equal-weighted mean of clean and adversarial validation
accuracy. Runs are deterministic given (seed, data, config); adversarial
example substreams are keyed by (maximizer seed, dataset row, epoch) so the
batch schedule does not change results.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from . import ensemble as ens_mod
from . import model_ops as ops
from . import nn
from .attacks import AttackConfig, run_max_batch
from .errors import ConfigError, InputError
from .metrics import accuracy
from .perturb import ManipulationSpec, union_specs

REGIMES = ("standard", "at", "ade", "dade")

_VAL_ROUND = 1_000_000  # epoch offset separating validation crafting streams


@dataclass
class TrainingConfig:
    regime: str = "standard"
    epochs: int = 20
    batch_size: int = 128
    learning_rate: float = 1e-3
    hidden: tuple = (160, 160)
    inner_maximizers: tuple = ()
    specs: tuple = ()              # manipulation sets; their union is used
    gamma: float = 0.0             # dade diversity weight
    ensemble_size: int = 1
    seed: int = 0
    base_seeds: tuple | None = None
    weight_steps: int = 5
    weight_beta: float = 0.01
    select_best: bool = True

    def validate(self) -> None:
        if self.regime not in REGIMES:
            raise ConfigError(f"unknown regime {self.regime!r}")
        if self.epochs < 1 or self.batch_size < 1:
            raise ConfigError("epochs and batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.regime != "standard":
            if not self.inner_maximizers:
                raise ConfigError(f"{self.regime} training needs inner maximizers")
            if not self.specs:
                raise ConfigError(f"{self.regime} training needs manipulation specs")
        if self.regime in ("ade", "dade") and self.ensemble_size < 2:
            raise ConfigError("ensemble regimes need ensemble_size >= 2")
        if self.regime == "dade":
            if len(self.inner_maximizers) < self.ensemble_size - 1:
                raise ConfigError("dade needs at least ensemble_size-1 maximizers")
        if self.regime != "dade" and self.gamma:
            raise ConfigError("gamma is only meaningful for the dade regime")


@dataclass
class EpochStats:
    epoch: int
    clean_loss: float
    adv_loss: float
    val_acc: float
    val_adv_acc: float


@dataclass
class TrainResult:
    model: object
    history: list
    selected_epoch: int
    config: TrainingConfig = field(repr=False, default=None)


def epoch_batches(n: int, batch_size: int, seed: int, epoch: int):
    """Deterministic shuffled mini-batch index lists for one epoch."""
    rng = np.random.default_rng(np.random.SeedSequence((int(seed), 2**33, int(epoch))))
    perm = rng.permutation(n)
    return [perm[s:s + batch_size] for s in range(0, n, batch_size)]


def inner_maximize(model, X, y, maximizers, union_spec: ManipulationSpec,
                   benign_pool=None, example_indices=None, round_index=0):
    """Loss-maximizing perturbation per malware row; benign rows pass through."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    X_adv = X.copy()
    mal = y == 1
    if mal.any() and maximizers:
        idx = example_indices[mal] if example_indices is not None else None
        outs = run_max_batch(model, X[mal], y[mal], list(maximizers),
                             [union_spec], benign_pool, idx,
                             round_index=round_index)
        X_adv[mal] = np.stack([o.x_adv for o in outs])
    return X_adv


def _select(history, score_fn):
    best_epoch, best_score = -1, -np.inf
    for st in history:
        s = score_fn(st)
        if s > best_score:
            best_score, best_epoch = s, st.epoch
    return best_epoch


def _val_score(st: EpochStats, adversarial: bool) -> float:
    return (st.val_acc + st.val_adv_acc) / 2.0 if adversarial else st.val_acc


def _train_single(data, config: TrainingConfig, adversarial: bool) -> TrainResult:
    Xtr, ytr = data.part("train")
    Xva, yva = data.part("validation")
    if len(Xtr) == 0:
        raise InputError("empty training split")
    pool = data.benign_pool("train")
    union = union_specs(config.specs) if config.specs else None
    maxers = tuple(config.inner_maximizers) if adversarial else ()

    model = nn.init_params([data.d, *config.hidden, 2], seed=config.seed)
    adam = nn.adam_init(model, config.learning_rate)
    history, snapshots = [], []
    for epoch in range(config.epochs):
        clean_sum = adv_sum = 0.0
        batches = epoch_batches(len(Xtr), config.batch_size, config.seed, epoch)
        for idx in batches:
            Xb, yb = Xtr[idx], ytr[idx]
            clean_sum += float(np.mean(nn.loss(model, Xb, yb)))
            gW, gb = nn.param_gradient(model, Xb, yb)
            if adversarial:
                Xadv = inner_maximize(model, Xb, yb, maxers, union, pool,
                                      example_indices=idx, round_index=epoch)
                adv_sum += float(np.mean(nn.loss(model, Xadv, yb)))
                gW2, gb2 = nn.param_gradient(model, Xadv, yb)
                gW = [a + b for a, b in zip(gW, gW2)]
                gb = [a + b for a, b in zip(gb, gb2)]
            nn.adam_step(adam, model, (gW, gb))
        val_acc = accuracy(model, Xva, yva)
        if adversarial:
            Xva_adv = inner_maximize(model, Xva, yva, maxers, union, pool,
                                     round_index=_VAL_ROUND + epoch)
            val_adv = accuracy(model, Xva_adv, yva)
        else:
            val_adv = val_acc
        history.append(EpochStats(epoch, clean_sum / len(batches),
                                  (adv_sum / len(batches)) if adversarial else 0.0,
                                  val_acc, val_adv))
        snapshots.append(model.copy() if config.select_best else None)
    if config.select_best:
        sel = _select(history, lambda st: _val_score(st, adversarial))
        model = snapshots[sel]
    else:
        sel = config.epochs - 1
    return TrainResult(model, history, sel, config)


def train_standard(data, config: TrainingConfig) -> TrainResult:
    config.validate()
    if config.regime != "standard":
        raise ConfigError("train_standard needs regime='standard'")
    return _train_single(data, config, adversarial=False)


def train_adversarial(data, config: TrainingConfig) -> TrainResult:
    config.validate()
    if config.regime != "at":
        raise ConfigError("train_adversarial needs regime='at'")
    return _train_single(data, config, adversarial=True)


def _ensemble_param_grads(base, Xb, delta_scaled):
    acts = nn._forward_cache(base, Xb)
    _, dW, db = nn._backprop(base, acts, delta_scaled, True)
    n = Xb.shape[0]
    return [g / n for g in dW], [g / n for g in db]


def _train_ensemble(data, config: TrainingConfig, diversity: bool) -> TrainResult:
    Xtr, ytr = data.part("train")
    Xva, yva = data.part("validation")
    if len(Xtr) == 0:
        raise InputError("empty training split")
    pool = data.benign_pool("train")
    union = union_specs(config.specs)
    maxers = tuple(config.inner_maximizers)
    l = config.ensemble_size
    use_div = diversity and config.gamma != 0.0

    base_seeds = config.base_seeds or tuple(config.seed + 1000 * i for i in range(l))
    if len(base_seeds) != l:
        raise ConfigError("base_seeds length must equal ensemble_size")
    bases = [nn.init_params([data.d, *config.hidden, 2], s) for s in base_seeds]
    adams = [nn.adam_init(b, config.learning_rate) for b in bases]
    w = np.full(l, 1.0 / l)
    ens = ens_mod.EnsembleModel(bases, w)

    history, snapshots = [], []
    for epoch in range(config.epochs):
        clean_sum = adv_sum = 0.0
        batches = epoch_batches(len(Xtr), config.batch_size, config.seed, epoch)
        adv_rows = np.empty_like(Xtr)
        for idx in batches:
            Xb, yb = Xtr[idx], ytr[idx]
            Xadv = inner_maximize(ens, Xb, yb, maxers, union, pool,
                                  example_indices=idx, round_index=epoch)
            adv_rows[idx] = Xadv
            clean_sum += float(np.mean(ens_mod.loss(ens, Xb, yb)))
            adv_sum += float(np.mean(ens_mod.loss(ens, Xadv, yb)))
            d_clean = nn._softmax_delta(ens_mod.ensemble_logits(ens, Xb), yb)
            d_adv = nn._softmax_delta(ens_mod.ensemble_logits(ens, Xadv), yb)
            for i, base in enumerate(bases):
                gW, gb = _ensemble_param_grads(base, Xb, d_clean * w[i])
                gW2, gb2 = _ensemble_param_grads(base, Xadv, d_adv * w[i])
                gW = [a + b for a, b in zip(gW, gW2)]
                gb = [a + b for a, b in zip(gb, gb2)]
                if use_div:
                    if i < l - 1:
                        # base i perceives its own maximizer's examples
                        Xd = inner_maximize(base, Xb, yb, (maxers[i],), union,
                                            pool, example_indices=idx,
                                            round_index=epoch)
                    else:
                        Xd = Xb  # the last base trains on pristine data
                    gW3, gb3 = nn.param_gradient(base, Xd, yb)
                    gW = [a + config.gamma * b for a, b in zip(gW, gW3)]
                    gb = [a + config.gamma * b for a, b in zip(gb, gb3)]
                nn.adam_step(adams[i], base, (gW, gb))

        # one weight-update pass per epoch, adversarial examples held fixed
        for _ in range(config.weight_steps):
            gw = (ens_mod.weight_gradient(ens, Xtr, ytr) +
                  ens_mod.weight_gradient(ens, adv_rows, ytr))
            w = ens_mod.simplex_project(w - config.weight_beta * gw)
            ens = ens_mod.EnsembleModel(bases, w)

        val_acc = accuracy(ens, Xva, yva)
        Xva_adv = inner_maximize(ens, Xva, yva, maxers, union, pool,
                                 round_index=_VAL_ROUND + epoch)
        val_adv = accuracy(ens, Xva_adv, yva)
        history.append(EpochStats(epoch, clean_sum / len(batches),
                                  adv_sum / len(batches), val_acc, val_adv))
        snapshots.append(ens.copy() if config.select_best else None)
    if config.select_best:
        sel = _select(history, lambda st: _val_score(st, True))
        ens = snapshots[sel]
    else:
        sel = config.epochs - 1
    return TrainResult(ens, history, sel, config)


def train_ade(data, config: TrainingConfig) -> TrainResult:
    config.validate()
    if config.regime != "ade":
        raise ConfigError("train_ade needs regime='ade'")
    return _train_ensemble(data, config, diversity=False)


def train_dade(data, config: TrainingConfig) -> TrainResult:
    config.validate()
    if config.regime != "dade":
        raise ConfigError("train_dade needs regime='dade'")
    return _train_ensemble(data, config, diversity=True)


def train(data, config: TrainingConfig) -> TrainResult:
    """Dispatch on config.regime."""
    config.validate()
    fn = {"standard": train_standard, "at": train_adversarial,
          "ade": train_ade, "dade": train_dade}[config.regime]
    return fn(data, config)


def save_checkpoint(result: TrainResult, dirpath) -> str:
    """Write metrics.csv plus the selected model; returns the model path."""
    os.makedirs(dirpath, exist_ok=True)
    with open(os.path.join(dirpath, "metrics.csv"), "w", encoding="utf-8",
              newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "clean_loss", "adv_loss", "val_acc", "val_adv_acc"])
        for st in result.history:
            writer.writerow([st.epoch, repr(st.clean_loss), repr(st.adv_loss),
                             repr(st.val_acc), repr(st.val_adv_acc)])
    if isinstance(result.model, ens_mod.EnsembleModel):
        mpath = os.path.join(dirpath, "model.ens")
        ens_mod.save_ensemble(result.model, mpath)
    else:
        mpath = os.path.join(dirpath, "model.mlp")
        nn.save_model(result.model, mpath)
    return mpath
