"""Numeric checks on ensemble robustness bounds and logit correlations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

BOUND_SLACK = 1e-12


@dataclass
class Theorem2Result:
    error_ensemble: float
    bound: float
    holds: bool
    hypothesis_ok: bool
    base_errors: np.ndarray
    min_cross_moment: float


def theorem2_check(ideal_logits, base_logits_list, weights) -> Theorem2Result:
    """Ensemble logit error vs the best-base/l lower bound.

    Offsets eta_i = Z* - Z_i; errors are mean squared offsets over examples
    and logit components. The non-negative-correlation hypothesis is the
    pairwise cross-moment E(eta_i * eta_j) >= 0; when it holds, the bound
    min_i E(eta_i^2) / l cannot exceed the ensemble error.
    """
    ideal = np.asarray(ideal_logits, dtype=float)
    bases = [np.asarray(b, dtype=float) for b in base_logits_list]
    w = np.asarray(weights, dtype=float)
    if len(bases) == 0 or w.shape != (len(bases),):
        raise InputError("need one weight per base logit array")
    if any(b.shape != ideal.shape for b in bases):
        raise InputError("base logit shapes must match the ideal's")

    etas = [ideal - b for b in bases]
    base_errors = np.asarray([float(np.mean(e * e)) for e in etas])
    min_cross = np.inf
    for i in range(len(etas)):
        for j in range(i + 1, len(etas)):
            min_cross = min(min_cross, float(np.mean(etas[i] * etas[j])))
    hypothesis_ok = (min_cross >= 0.0) if len(etas) > 1 else True

    eta_ens = sum(w_i * e for w_i, e in zip(w, etas))
    error_ensemble = float(np.mean(eta_ens * eta_ens))
    bound = float(base_errors.min() / len(bases))
    holds = error_ensemble >= bound - BOUND_SLACK
    return Theorem2Result(error_ensemble, bound, holds, hypothesis_ok,
                          base_errors, float(min_cross) if len(etas) > 1 else 0.0)


def optimal_error_weights(base_errors) -> np.ndarray:
    """Weights minimizing sum w_i^2 e_i over the simplex: w_i proportional to 1/e_i."""
    e = np.asarray(base_errors, dtype=float)
    if np.any(e <= 0):
        raise InputError("base errors must be positive")
    inv = 1.0 / e
    return inv / inv.sum()


def pearson_correlation(series_a, series_b) -> float:
    """Standard Pearson coefficient; nan when either series has zero variance."""
    a = np.asarray(series_a, dtype=float)
    b = np.asarray(series_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1 or a.size < 2:
        raise InputError("need two equal-length 1-D series with >= 2 points")
    da = a - a.mean()
    db = b - b.mean()
    va = float(np.sqrt((da * da).sum()))
    vb = float(np.sqrt((db * db).sum()))
    if va == 0.0 or vb == 0.0:
        return float("nan")  # undefined: flagged to the caller as nan
    return float(np.clip((da * db).sum() / (va * vb), -1.0, 1.0))


def base_logit_correlations(ens, X_adv: np.ndarray):
    """Pairwise Pearson correlations of base label-1 logits on given points.

    Returns (pairs, values) where pairs[k] = (i, j). nan entries mark
    degenerate (zero-variance) series.
    """
    from . import nn

    series = [nn.forward(b, X_adv)[:, 1] for b in ens.bases]
    pairs, vals = [], []
    for i in range(len(series)):
        for j in range(i + 1, len(series)):
            pairs.append((i, j))
            vals.append(pearson_correlation(series[i], series[j]))
    return pairs, np.asarray(vals)
