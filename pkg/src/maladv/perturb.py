"""Feasible perturbations of binary feature vectors.

A ManipulationSpec says, per feature, whether an attacker may flip 0->1
(add) and/or 1->0 (remove). For a concrete input x this induces a box
[lower, upper] in {0,1}^d; every attack in the package must stay inside it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParseError


@dataclass
class ManipulationSpec:
    d: int
    can_add: np.ndarray
    can_remove: np.ndarray

    def __post_init__(self):
        self.can_add = np.asarray(self.can_add, dtype=bool)
        self.can_remove = np.asarray(self.can_remove, dtype=bool)
        if self.can_add.shape != (self.d,) or self.can_remove.shape != (self.d,):
            raise InputError("permission vectors must have length d")


@dataclass
class AttackOutcome:
    """Result of one attack on one example."""

    x_adv: np.ndarray
    success: bool
    final_loss: float
    l0: int
    l1: float
    iterations_used: int


def _check_binary(x: np.ndarray, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not np.all((x == 0.0) | (x == 1.0)):
        raise InputError(f"{name} must be a binary vector")
    return x


def bounds(spec: ManipulationSpec, x: np.ndarray):
    """Box [lower, upper] reachable from x under the spec."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.d:
        raise InputError(f"vector length {x.shape[-1]} != spec dimension {spec.d}")
    lower = np.where((x == 1.0) & spec.can_remove, 0.0, x)
    upper = np.where((x == 0.0) & spec.can_add, 1.0, x)
    return lower, upper


def is_feasible(x_prime: np.ndarray, x: np.ndarray, spec: ManipulationSpec) -> bool:
    """True iff every differing coordinate flips in a permitted direction."""
    x_prime = _check_binary(x_prime, "x_prime")
    x = _check_binary(x, "x")
    if x_prime.shape != x.shape or x.shape[-1] != spec.d:
        raise InputError("vector lengths must match the spec dimension")
    added = (x == 0.0) & (x_prime == 1.0)
    removed = (x == 1.0) & (x_prime == 0.0)
    return bool(np.all(spec.can_add[added]) and np.all(spec.can_remove[removed]))


def union_specs(specs) -> ManipulationSpec:
    """Componentwise OR of the permissions (the largest manipulation set)."""
    specs = list(specs)
    if not specs:
        raise InputError("union_specs needs at least one spec")
    d = specs[0].d
    if any(s.d != d for s in specs):
        raise InputError("specs disagree on dimension")
    can_add = np.zeros(d, dtype=bool)
    can_remove = np.zeros(d, dtype=bool)
    for s in specs:
        can_add |= s.can_add
        can_remove |= s.can_remove
    return ManipulationSpec(d, can_add, can_remove)


def clip_to_box(x_cont: np.ndarray, x: np.ndarray, spec: ManipulationSpec) -> np.ndarray:
    lower, upper = bounds(spec, x)
    return np.clip(np.asarray(x_cont, dtype=float), lower, upper)


def feasible_nearest(x_cont: np.ndarray, x: np.ndarray, spec: ManipulationSpec) -> np.ndarray:
    """Euclidean-nearest feasible binary point to a relaxed vector.

    Coordinates are independent, so box-clipping then rounding each one is
    exact; ties at 0.5 round up.
    """
    clipped = clip_to_box(x_cont, x, spec)
    return np.where(clipped >= 0.5, 1.0, 0.0)


def randomized_round(x_cont: np.ndarray, x: np.ndarray, spec: ManipulationSpec,
                     rng: np.random.Generator) -> np.ndarray:
    """Round each coordinate to 1 with probability equal to its clipped value."""
    clipped = clip_to_box(x_cont, x, spec)
    draw = rng.random(clipped.shape)
    return np.where(draw < clipped, 1.0, 0.0)


def default_spec(d: int, seed: int, profile=(0.8, 0.1, 0.1)) -> ManipulationSpec:
    """Random spec: fractions of (add-only, add+remove, immutable) features."""
    add_only, add_remove, immutable = profile
    if abs(add_only + add_remove + immutable - 1.0) > 1e-9:
        raise InputError("profile fractions must sum to 1")
    rng = np.random.default_rng(seed)
    kinds = rng.choice(3, size=d, p=[add_only, add_remove, immutable])
    can_add = kinds != 2
    can_remove = kinds == 1
    return ManipulationSpec(d, can_add, can_remove)


def save_spec(spec: ManipulationSpec, path) -> None:
    """Text format: `d=<dim>` header, then `<index> <can_add> <can_remove>`
    for every feature that is not immutable."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"d={spec.d}\n")
        for i in range(spec.d):
            a, r = int(spec.can_add[i]), int(spec.can_remove[i])
            if a or r:
                fh.write(f"{i} {a} {r}\n")


def load_spec(path) -> ManipulationSpec:
    can_add = can_remove = None
    d = None
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if d is None:
                if not line.startswith("d="):
                    raise ParseError(path, line_no, "expected `d=<dim>` header")
                try:
                    d = int(line[2:])
                except ValueError:
                    raise ParseError(path, line_no, f"bad dimension {line[2:]!r}")
                if d <= 0:
                    raise ParseError(path, line_no, "dimension must be positive")
                can_add = np.zeros(d, dtype=bool)
                can_remove = np.zeros(d, dtype=bool)
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(path, line_no, "expected `<index> <add> <remove>`")
            try:
                idx, a, r = (int(p) for p in parts)
            except ValueError:
                raise ParseError(path, line_no, f"non-integer field in {line!r}")
            if not 0 <= idx < d:
                raise ParseError(path, line_no, f"index {idx} out of range [0, {d})")
            if a not in (0, 1) or r not in (0, 1):
                raise ParseError(path, line_no, "permissions must be 0 or 1")
            can_add[idx] = bool(a)
            can_remove[idx] = bool(r)
    if d is None:
        raise ParseError(path, 0, "empty spec file")
    return ManipulationSpec(d, can_add, can_remove)
