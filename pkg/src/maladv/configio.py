"""Key-value config files (INI sections) for attacks and training.

An attack suite file holds one section per attack; keys mirror the
AttackConfig fields. `components`, `init`, and `specs` reference other
sections / spec files. A training file adds a `[training]` section whose
`inner_maximizers` key references attack sections in the same file.

    [pgd_l1]
    method = pgd_l1
    iterations = 50
    step_size = 1.0

    [max_pgds]
    method = max
    components = pgd_l1 pgd_linf

    [training]
    regime = at
    epochs = 30
    inner_maximizers = max_pgds
"""

from __future__ import annotations

import configparser
import os

from .attacks import AttackConfig
from .errors import ConfigError
from .perturb import load_spec
from .training import TrainingConfig

_ATTACK_KEYS = {
    "method": str, "iterations": int, "step_size": float, "random_start": bool,
    "lam": float, "bandwidth": float, "n_ben": int, "n_rept": int,
    "eps_max": float, "n_s": int, "max_flips": int, "n_rounds": int,
    "epsilon": float, "seed": int,
    # reference keys handled separately
    "components": None, "init": None, "specs": None,
}

_TRAINING_KEYS = {
    "regime": str, "epochs": int, "batch_size": int, "learning_rate": float,
    "gamma": float, "ensemble_size": int, "seed": int, "weight_steps": int,
    "weight_beta": float, "select_best": bool,
    "hidden": None, "base_seeds": None, "inner_maximizers": None, "specs": None,
}


def _parse_value(kind, raw, key):
    if kind is bool:
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {raw!r}")
    try:
        return kind(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {raw!r}")


def _split_list(raw):
    return [tok for tok in raw.replace(",", " ").split() if tok]


def _read_ini(path) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.optionxform = str
    read = cp.read(path, encoding="utf-8")
    if not read:
        raise ConfigError(f"config file not found: {path}")
    return cp


def _build_attack(cp, section, base_dir, stack=()) -> AttackConfig:
    if section in stack:
        raise ConfigError(f"circular attack reference through [{section}]")
    if not cp.has_section(section):
        raise ConfigError(f"missing attack section [{section}]")
    kwargs = {"name": section}
    for key, raw in cp.items(section):
        if key not in _ATTACK_KEYS:
            raise ConfigError(f"[{section}] unknown key {key!r}")
        if key == "components":
            kwargs["components"] = tuple(
                _build_attack(cp, ref, base_dir, stack + (section,))
                for ref in _split_list(raw))
        elif key == "init":
            kwargs["init_attack"] = _build_attack(cp, raw.strip(), base_dir,
                                                  stack + (section,))
        elif key == "specs":
            kwargs["specs"] = tuple(
                load_spec(os.path.join(base_dir, p)) for p in _split_list(raw))
        else:
            kwargs[key] = _parse_value(_ATTACK_KEYS[key], raw, f"[{section}] {key}")
    if "method" not in kwargs:
        raise ConfigError(f"[{section}] is missing the `method` key")
    cfg = AttackConfig(**kwargs)
    cfg.validate()
    return cfg


def load_attack_suite(path) -> list[AttackConfig]:
    """All attack sections of a suite file, in file order."""
    cp = _read_ini(path)
    base_dir = os.path.dirname(os.path.abspath(path))
    names = [s for s in cp.sections() if s != "training"]
    if not names:
        raise ConfigError(f"no attack sections in {path}")
    # only top-level sections become suite rows; referenced ones stay components
    referenced = set()
    for s in names:
        for key in ("components", "init"):
            if cp.has_option(s, key):
                referenced.update(_split_list(cp.get(s, key)))
    return [_build_attack(cp, s, base_dir) for s in names if s not in referenced]


def load_attack_section(path, name) -> AttackConfig:
    cp = _read_ini(path)
    return _build_attack(cp, name, os.path.dirname(os.path.abspath(path)))


def load_training_config(path, seed_override=None) -> TrainingConfig:
    cp = _read_ini(path)
    if not cp.has_section("training"):
        raise ConfigError(f"{path} has no [training] section")
    base_dir = os.path.dirname(os.path.abspath(path))
    kwargs = {}
    for key, raw in cp.items("training"):
        if key not in _TRAINING_KEYS:
            raise ConfigError(f"[training] unknown key {key!r}")
        if key == "hidden":
            kwargs["hidden"] = tuple(int(t) for t in _split_list(raw))
        elif key == "base_seeds":
            kwargs["base_seeds"] = tuple(int(t) for t in _split_list(raw))
        elif key == "inner_maximizers":
            kwargs["inner_maximizers"] = tuple(
                _build_attack(cp, ref, base_dir) for ref in _split_list(raw))
        elif key == "specs":
            kwargs["specs"] = tuple(
                load_spec(os.path.join(base_dir, p)) for p in _split_list(raw))
        else:
            kwargs[key] = _parse_value(_TRAINING_KEYS[key], raw, f"[training] {key}")
    if seed_override is not None:
        kwargs["seed"] = int(seed_override)
    cfg = TrainingConfig(**kwargs)
    return cfg
