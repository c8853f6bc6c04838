"""Reference attack settings.

Two families: `training_config` returns the reduced-budget maximizers used
inside adversarial training; `eval_config` returns the heavier attack-time
settings used by the benchmark suite. `max_pgds` builds the standard
four-maximizer mixture.
"""

from __future__ import annotations

from .attacks import AttackConfig
from .errors import ConfigError

_TRAINING = {
    "pgd_l1": dict(iterations=50, step_size=1.0),
    "pgd_l2": dict(iterations=100, step_size=1.0),
    "pgd_linf": dict(iterations=100, step_size=0.01),
    "pgd_adam": dict(iterations=100, step_size=0.02, random_start=True),
    "rfgsm": dict(iterations=100, step_size=0.01),
}

_EVAL = {
    "pgd_l1": dict(iterations=100, step_size=1.0),
    "pgd_l2": dict(iterations=1000, step_size=1.0),
    "pgd_linf": dict(iterations=1000, step_size=0.01),
    "pgd_adam": dict(iterations=1000, step_size=0.01, random_start=True),
    "rfgsm": dict(iterations=1000, step_size=0.01),
    "grosse": dict(iterations=100),
    "jsma": dict(iterations=100),
    "bca": dict(iterations=100),
    "bga": dict(iterations=100),
    "gdkde": dict(iterations=1000, step_size=0.01),
    "salt_pepper": dict(n_rept=10, eps_max=1.0, n_s=1000),
}


def training_config(method: str, seed: int = 0, **overrides) -> AttackConfig:
    if method not in _TRAINING:
        raise ConfigError(f"no training preset for {method!r}")
    kw = dict(_TRAINING[method])
    kw.update(overrides)
    return AttackConfig(method=method, seed=seed, name=method, **kw)


def eval_config(method: str, seed: int = 0, **overrides) -> AttackConfig:
    if method not in _EVAL:
        raise ConfigError(f"no eval preset for {method!r}")
    kw = dict(_EVAL[method])
    kw.update(overrides)
    return AttackConfig(method=method, seed=seed, name=method, **kw)


def max_pgds(kind: str = "training", seed: int = 0, **overrides) -> tuple[AttackConfig, ...]:
    """The four-PGD mixture (l1, l2, linf, adam)."""
    make = training_config if kind == "training" else eval_config
    return tuple(make(m, seed=seed, **overrides)
                 for m in ("pgd_l1", "pgd_l2", "pgd_linf", "pgd_adam"))
