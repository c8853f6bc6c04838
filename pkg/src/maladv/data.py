"""Datasets: a synthetic binary-feature generator and a sparse text format.

On disk, a dataset is a directory with `train.txt`, `validation.txt`, and
`test.txt`. Each file starts with a `d=<dim>` header; every following line
is `<label> <idx> <idx> ...` listing the indices of the 1-valued features
in ascending order. `#` starts a comment. The splits are disjoint by
construction (60/20/20 by default).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError, ParseError
from .perturb import ManipulationSpec, default_spec

SPLITS = ("train", "validation", "test")


@dataclass
class Dataset:
    d: int
    X: np.ndarray          # (n, d) float64 in {0.0, 1.0}
    y: np.ndarray          # (n,) int
    split: np.ndarray      # (n,) index into SPLITS

    def part(self, name: str):
        """(X, y) of one split."""
        if name not in SPLITS:
            raise InputError(f"unknown split {name!r}")
        m = self.split == SPLITS.index(name)
        return self.X[m], self.y[m]

    def benign_pool(self, name: str = "train") -> np.ndarray:
        X, y = self.part(name)
        return X[y == 0]

    def malware(self, name: str = "test"):
        X, y = self.part(name)
        return X[y == 1]


def generate_synthetic(d: int, n_per_class: int, separation: float, seed: int,
                       spec_profile=(0.8, 0.1, 0.1),
                       split_fractions=(0.6, 0.2, 0.2)):
    """Two Bernoulli-mixture classes with a tunable per-feature probability gap.

    Each feature gets a random direction and strength; `separation` scales
    the benign/malware probability gap (0 = identical classes). Returns the
    dataset and a manipulation spec drawn from `spec_profile`.
    """
    if d < 4 or n_per_class < 10:
        raise ConfigError("need d >= 4 and n_per_class >= 10")
    if abs(sum(split_fractions) - 1.0) > 1e-9:
        raise ConfigError("split fractions must sum to 1")
    rng = np.random.default_rng(seed)
    sign = rng.choice([-1.0, 1.0], size=d)
    strength = rng.uniform(0.05, 0.5, size=d)
    gap = sign * strength * separation
    p_benign = np.clip(0.5 - gap / 2.0, 0.01, 0.99)
    p_malware = np.clip(0.5 + gap / 2.0, 0.01, 0.99)

    Xb = (rng.random((n_per_class, d)) < p_benign).astype(float)
    Xm = (rng.random((n_per_class, d)) < p_malware).astype(float)
    X = np.concatenate([Xb, Xm])
    y = np.concatenate([np.zeros(n_per_class, dtype=int),
                        np.ones(n_per_class, dtype=int)])

    # per-class shuffled split so the proportions hold within each class
    split = np.empty(2 * n_per_class, dtype=int)
    n_tr = int(round(split_fractions[0] * n_per_class))
    n_va = int(round(split_fractions[1] * n_per_class))
    for cls in (0, 1):
        idx = rng.permutation(n_per_class) + cls * n_per_class
        split[idx[:n_tr]] = 0
        split[idx[n_tr:n_tr + n_va]] = 1
        split[idx[n_tr + n_va:]] = 2

    spec = default_spec(d, seed=seed + 1, profile=spec_profile)
    return Dataset(d, X, y, split), spec


def _parse_split_file(path):
    d = None
    rows, labels = [], []
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
                continue
            parts = line.split()
            try:
                vals = [int(p) for p in parts]
            except ValueError:
                raise ParseError(path, line_no, f"non-integer field in {line!r}")
            label, idxs = vals[0], vals[1:]
            if label not in (0, 1):
                raise ParseError(path, line_no, f"label must be 0 or 1, got {label}")
            x = np.zeros(d)
            for i in idxs:
                if not 0 <= i < d:
                    raise ParseError(path, line_no, f"index {i} out of range [0, {d})")
                if x[i] == 1.0:
                    raise ParseError(path, line_no, f"duplicate index {i}")
                x[i] = 1.0
            rows.append(x)
            labels.append(label)
    if d is None:
        raise ParseError(path, 0, "empty dataset file")
    X = np.stack(rows) if rows else np.zeros((0, d))
    return d, X, np.asarray(labels, dtype=int)


def load_dataset(path) -> Dataset:
    """Load a dataset directory (or a single split file, tagged as test)."""
    if os.path.isfile(path):
        d, X, y = _parse_split_file(path)
        return Dataset(d, X, y, np.full(len(y), SPLITS.index("test")))
    parts = []
    d = None
    for si, name in enumerate(SPLITS):
        fp = os.path.join(path, f"{name}.txt")
        if not os.path.exists(fp):
            raise ParseError(fp, 0, "missing split file")
        dd, X, y = _parse_split_file(fp)
        if d is None:
            d = dd
        elif dd != d:
            raise ParseError(fp, 0, f"dimension {dd} disagrees with {d}")
        parts.append((X, y, np.full(len(y), si)))
    X = np.concatenate([p[0] for p in parts])
    y = np.concatenate([p[1] for p in parts])
    split = np.concatenate([p[2] for p in parts])
    return Dataset(d, X, y, split)


def _write_split_file(path, d, X, y):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"d={d}\n")
        for x, label in zip(X, y):
            idxs = np.flatnonzero(x == 1.0)
            fh.write(" ".join([str(int(label))] + [str(int(i)) for i in idxs]) + "\n")


def save_dataset(ds: Dataset, dirpath) -> None:
    os.makedirs(dirpath, exist_ok=True)
    for name in SPLITS:
        X, y = ds.part(name)
        _write_split_file(os.path.join(dirpath, f"{name}.txt"), ds.d, X, y)
