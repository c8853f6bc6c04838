"""Feature-space evasion attacks over binary vectors.

Every attack takes a classifier (single model or ensemble), an example
(x, y), and a ManipulationSpec, and returns a feasible AttackOutcome.
Gradient attacks relax x to a continuous point inside the induced box,
ascend the classifier loss, and keep the best feasible rounded candidate
seen across all iterations. Gradient-free attacks operate on binary
points directly.

Batch entry points (`run_attack_batch`, `run_max_batch`, ...) vectorize
over examples; single-example functions wrap them. Randomized attacks
draw from a per-example substream derived from (seed, example index,
round index), so batch results do not depend on scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import model_ops as ops
from .errors import ConfigError, InputError
from .perturb import (AttackOutcome, ManipulationSpec, bounds, clip_to_box,
                      feasible_nearest, is_feasible)

GRADIENT_METHODS = ("pgd_l1", "pgd_l2", "pgd_linf", "pgd_adam", "rfgsm",
                    "grosse", "jsma", "bca", "bga", "gdkde")
METHODS = GRADIENT_METHODS + ("mimicry", "salt_pepper", "pointwise",
                              "max", "iter_max", "none")


@dataclass(frozen=True)
class AttackConfig:
    """Parameters for one attack method (or mixture of methods)."""

    method: str
    iterations: int = 100
    step_size: float = 0.01
    random_start: bool = False
    lam: float = 100.0            # gdkde density weight
    bandwidth: float = 10.0       # gdkde Laplacian kernel bandwidth
    n_ben: int = 1                # mimicry guide count
    n_rept: int = 10              # salt_pepper repetitions
    eps_max: float = 1.0          # salt_pepper initial budget
    n_s: int = 1000               # salt_pepper scalars per sweep
    max_flips: int | None = None  # grosse total-flip cap (defaults to iterations)
    components: tuple = ()        # mixture members (AttackConfigs)
    specs: tuple | None = None    # mixture manipulation sets (default: runner's)
    init_attack: "AttackConfig | None" = None  # pointwise initializer
    n_rounds: int = 5             # iter_max rounds
    epsilon: float = 1e-9         # iter_max convergence threshold
    seed: int = 0
    name: str = ""

    def validate(self) -> None:
        if self.method not in METHODS:
            raise ConfigError(f"unknown attack method {self.method!r}")
        if self.iterations < 0:
            raise ConfigError("iterations must be non-negative")
        if self.step_size <= 0:
            raise ConfigError("step_size must be positive")
        if self.method == "gdkde" and (self.lam < 0 or self.bandwidth <= 0):
            raise ConfigError("gdkde needs lam >= 0 and bandwidth > 0")
        if self.method == "mimicry" and self.n_ben < 1:
            raise ConfigError("mimicry needs n_ben >= 1")
        if self.method == "salt_pepper":
            if not 0.0 <= self.eps_max <= 1.0:
                raise ConfigError("salt_pepper needs 0 <= eps_max <= 1")
            if self.n_s < 1 or self.n_rept < 1:
                raise ConfigError("salt_pepper needs n_s >= 1 and n_rept >= 1")
        if self.method in ("max", "iter_max"):
            if not self.components:
                raise ConfigError(f"{self.method} needs a non-empty component list")
            for c in self.components:
                c.validate()
        if self.method == "iter_max":
            if self.n_rounds < 1:
                raise ConfigError("iter_max needs n_rounds >= 1")
            if self.epsilon <= 0:
                raise ConfigError("iter_max needs epsilon > 0")
        if self.method == "pointwise" and self.init_attack is not None:
            self.init_attack.validate()

    def label(self) -> str:
        return self.name or self.method


def derive_rng(seed: int, example_index: int = 0, round_index: int = 0) -> np.random.Generator:
    """Per-example substream; results are independent of batch scheduling."""
    return np.random.default_rng(
        np.random.SeedSequence((int(seed), int(example_index), int(round_index))))


def _loss_batch(model, X, y) -> np.ndarray:
    return np.atleast_1d(np.asarray(ops.loss(model, X, y), dtype=float))


def _outcomes(model, X, y, X_adv, iterations) -> list[AttackOutcome]:
    """Build outcomes, recomputing success and perturbation sizes."""
    preds = np.atleast_1d(ops.predict(model, X_adv))
    losses = _loss_batch(model, X_adv, y)
    iters = np.broadcast_to(np.asarray(iterations, dtype=int), (X.shape[0],))
    out = []
    for i in range(X.shape[0]):
        diff = X_adv[i] != X[i]
        out.append(AttackOutcome(
            x_adv=X_adv[i].copy(),
            success=bool(preds[i] != y[i]),
            final_loss=float(losses[i]),
            l0=int(diff.sum()),
            l1=float(np.abs(X_adv[i] - X[i]).sum()),
            iterations_used=int(iters[i]),
        ))
    return out


def _prep_batch(model, X, y, x_start):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    y = np.broadcast_to(np.asarray(y, dtype=int), (X.shape[0],))
    if X.shape[1] != ops.input_dim(model):
        raise InputError("example dimension does not match the model")
    start = X if x_start is None else np.asarray(x_start, dtype=float).reshape(X.shape)
    return X, y, start


class _BestTracker:
    """Best feasible rounded candidate per example, by strict loss improvement."""

    def __init__(self, model, X, y, start_cand):
        self.model, self.y = model, y
        self.best = start_cand.copy()
        self.best_loss = _loss_batch(model, start_cand, y)

    def consider(self, cand):
        losses = _loss_batch(self.model, cand, self.y)
        better = losses > self.best_loss
        self.best[better] = cand[better]
        self.best_loss[better] = losses[better]


def _pgd_batch(model, X, y, spec, norm, iterations, step_size, x_start=None):
    X, y, start = _prep_batch(model, X, y, x_start)
    lower, upper = bounds(spec, X)
    xc = np.clip(start, lower, upper)
    tracker = _BestTracker(model, X, y, feasible_nearest(xc, X, spec))
    rows = np.arange(X.shape[0])
    for _ in range(iterations):
        g = np.atleast_2d(ops.input_gradient(model, xc, y))
        if norm == "linf":
            xc = np.clip(xc + step_size * np.sign(g), lower, upper)
        elif norm == "l2":
            nrm = np.linalg.norm(g, axis=1, keepdims=True)
            xc = np.clip(xc + step_size * g / np.where(nrm == 0.0, 1.0, nrm) *
                         (nrm > 0.0), lower, upper)
        elif norm == "l1":
            # one coordinate per iteration: largest |g| pointing in an allowed direction
            allowed = ((g > 0) & (xc < upper - 1e-12)) | ((g < 0) & (xc > lower + 1e-12))
            scores = np.where(allowed, np.abs(g), -np.inf)
            idx = np.argmax(scores, axis=1)
            movable = np.isfinite(scores[rows, idx])
            r, c = rows[movable], idx[movable]
            xc[r, c] += step_size * np.sign(g[r, c])
            xc = np.clip(xc, lower, upper)
        else:
            raise ConfigError(f"unknown pgd norm {norm!r}")
        tracker.consider(feasible_nearest(xc, X, spec))
    return tracker.best, tracker.best_loss


def _pgd_adam_batch(model, X, y, spec, iterations, step_size, random_start,
                    rngs, x_start=None, beta1=0.9, beta2=0.999, eps=1e-8):
    X, y, start = _prep_batch(model, X, y, x_start)
    lower, upper = bounds(spec, X)
    xc = np.clip(start, lower, upper)
    if random_start:
        u = np.stack([rng.random(X.shape[1]) for rng in rngs])
        xc = lower + u * (upper - lower)
    tracker = _BestTracker(model, X, y, feasible_nearest(xc, X, spec))
    m = np.zeros_like(xc)
    v = np.zeros_like(xc)
    for t in range(1, iterations + 1):
        g = np.atleast_2d(ops.input_gradient(model, xc, y))
        m = beta1 * m + (1 - beta1) * g
        v = beta2 * v + (1 - beta2) * g * g
        m_hat = m / (1 - beta1 ** t)
        v_hat = v / (1 - beta2 ** t)
        xc = np.clip(xc + step_size * m_hat / (np.sqrt(v_hat) + eps), lower, upper)
        tracker.consider(feasible_nearest(xc, X, spec))
    return tracker.best, tracker.best_loss


def _rfgsm_batch(model, X, y, spec, iterations, step_size, rngs, x_start=None):
    """linf ascent with randomized rounding of each iterate."""
    X, y, start = _prep_batch(model, X, y, x_start)
    lower, upper = bounds(spec, X)
    xc = np.clip(start, lower, upper)
    tracker = _BestTracker(model, X, y, feasible_nearest(xc, X, spec))
    for _ in range(iterations):
        g = np.atleast_2d(ops.input_gradient(model, xc, y))
        xc = np.clip(xc + step_size * np.sign(g), lower, upper)
        draws = np.stack([rng.random(X.shape[1]) for rng in rngs])
        tracker.consider(np.where(draws < xc, 1.0, 0.0))
    return tracker.best, tracker.best_loss


def _saliency_batch(model, X, y, spec, variant, max_iters, max_flips=None,
                    x_start=None):
    """One 0->1 flip per iteration, scored by the variant's gradient."""
    X, y, start = _prep_batch(model, X, y, x_start)
    cur = feasible_nearest(start, X, spec)
    cap = max_iters if variant != "grosse" else (max_flips or max_iters)
    active = np.ones(X.shape[0], dtype=bool)
    flips = np.zeros(X.shape[0], dtype=int)
    rows = np.arange(X.shape[0])
    for _ in range(max_iters):
        active &= np.atleast_1d(ops.predict(model, cur)) == y
        if not active.any():
            break
        if variant in ("grosse", "bca"):
            scores = np.atleast_2d(ops.input_gradient(model, cur, y))
        elif variant == "jsma":
            scores = np.atleast_2d(ops.prob_gradient(model, cur, target=0))
        else:
            raise ConfigError(f"unknown saliency variant {variant!r}")
        eligible = (cur == 0.0) & spec.can_add & (scores > 0.0)
        eligible[~active] = False
        has_move = eligible.any(axis=1)
        active &= has_move  # no positively-scored flippable coordinate: stop
        idx = np.argmax(np.where(eligible, scores, -np.inf), axis=1)
        r = rows[active]
        cur[r, idx[active]] = 1.0
        flips[r] += 1
        active &= flips < cap
    return cur, _loss_batch(model, cur, y), flips


def _bga_batch(model, X, y, spec, max_iters, x_start=None):
    """Flip every eligible coordinate whose gradient clears ||g||_2/sqrt(d)."""
    X, y, start = _prep_batch(model, X, y, x_start)
    cur = feasible_nearest(start, X, spec)
    d = X.shape[1]
    active = np.ones(X.shape[0], dtype=bool)
    iters = np.zeros(X.shape[0], dtype=int)
    for t in range(max_iters):
        active &= np.atleast_1d(ops.predict(model, cur)) == y
        if not active.any():
            break
        g = np.atleast_2d(ops.input_gradient(model, cur, y))
        thresh = np.linalg.norm(g, axis=1, keepdims=True) / np.sqrt(d)
        flips = (cur == 0.0) & spec.can_add & (g >= thresh) & (g > 0.0)
        flips[~active] = False
        progressed = flips.any(axis=1)
        cur[flips] = 1.0
        iters[active & progressed] = t + 1
        active &= progressed
    return cur, _loss_batch(model, cur, y), iters


def kde_values(X, pool, bandwidth: float) -> np.ndarray:
    """Mean Laplacian kernel exp(-||x - b||_1 / h) over the pool."""
    vals, _ = _kde_and_grad(np.atleast_2d(np.asarray(X, dtype=float)),
                            np.asarray(pool, dtype=float), bandwidth)
    return vals if np.ndim(X) > 1 else float(vals[0])


def _kde_and_grad(X, pool, h, chunk=256):
    n, d = X.shape
    vals = np.zeros(n)
    grads = np.zeros((n, d))
    for s in range(0, len(pool), chunk):
        diff = X[:, None, :] - pool[None, s:s + chunk, :]
        k = np.exp(-np.abs(diff).sum(-1) / h)
        vals += k.sum(axis=1)
        grads -= np.einsum("nc,ncd->nd", k, np.sign(diff)) / h
    return vals / len(pool), grads / len(pool)


def _gdkde_batch(model, X, y, spec, benign_pool, lam, bandwidth, iterations,
                 step_size, x_start=None):
    """Sign-step ascent on loss + lam * benign-pool density."""
    if benign_pool is None or len(benign_pool) == 0:
        raise ConfigError("gdkde needs a non-empty benign pool")
    pool = np.asarray(benign_pool, dtype=float)
    X, y, start = _prep_batch(model, X, y, x_start)
    lower, upper = bounds(spec, X)
    xc = np.clip(start, lower, upper)
    tracker = _BestTracker(model, X, y, feasible_nearest(xc, X, spec))
    for _ in range(iterations):
        g = np.atleast_2d(ops.input_gradient(model, xc, y))
        if lam > 0:
            _, kg = _kde_and_grad(xc, pool, bandwidth)
            g = g + lam * kg
        xc = np.clip(xc + step_size * np.sign(g), lower, upper)
        tracker.consider(feasible_nearest(xc, X, spec))
    return tracker.best, tracker.best_loss


def _mimicry_one(model, x, y, spec, pool, n_ben, rng):
    if pool is None or len(pool) == 0:
        raise ConfigError("mimicry needs a non-empty benign pool")
    pool = np.asarray(pool, dtype=float)
    if n_ben > len(pool):
        raise ConfigError(f"n_ben={n_ben} exceeds pool size {len(pool)}")
    guides = pool[rng.choice(len(pool), size=n_ben, replace=False)]
    lower, upper = bounds(spec, x)
    cands = np.clip(guides, lower, upper)  # benign value where movable, x elsewhere
    preds = np.atleast_1d(ops.predict(model, cands))
    losses = _loss_batch(model, cands, np.full(n_ben, y))
    hit = preds != y
    if hit.any():
        l0 = (cands != x).sum(axis=1).astype(float)
        pick = int(np.argmin(np.where(hit, l0, np.inf)))
    else:
        pick = int(np.argmax(losses))
    return cands[pick]


def _salt_pepper_one(model, x, y, spec, n_rept, eps_max, n_s, rng):
    d = spec.d
    eligible = np.flatnonzero((spec.can_add & (x == 0.0)) |
                              (spec.can_remove & (x == 1.0)))
    x_star = x.copy()
    evals = 0
    budget = eps_max
    for _ in range(n_rept):
        for eps in np.linspace(0.0, budget, n_s):
            k = min(int(eps * d), eligible.size)
            xp = x.copy()
            if k > 0:
                flip = rng.choice(eligible, size=k, replace=False)
                xp[flip] = 1.0 - xp[flip]
            evals += 1
            if ops.predict(model, xp) != y:
                x_star = xp
                budget = eps
                break
    return x_star, evals


def _pointwise_one(model, x, y, x_adv, spec, rng):
    x_adv = np.asarray(x_adv, dtype=float)
    if not is_feasible(x_adv, x, spec):
        raise InputError("pointwise needs a feasible starting point")
    cur = x_adv.copy()
    if ops.predict(model, cur) == y:
        return cur, 0  # nothing to shrink: input is not adversarial
    passes = 0
    while True:
        passes += 1
        snapshot = cur.copy()
        for i in rng.permutation(spec.d):
            if cur[i] == x[i]:
                continue
            old = cur[i]
            cur[i] = x[i]
            if not is_feasible(cur, x, spec) or ops.predict(model, cur) == y:
                cur[i] = old
        if np.array_equal(cur, snapshot):
            return cur, passes


def run_attack_batch(model, X, y, spec, config: AttackConfig, benign_pool=None,
                     example_indices=None, x_start=None, round_index=0):
    """Run one configured attack over a batch; returns one outcome per row."""
    config.validate()
    X, y, start = _prep_batch(model, X, y, x_start)
    n = X.shape[0]
    if example_indices is None:
        example_indices = np.arange(n)

    def rngs():
        return [derive_rng(config.seed, ei, round_index) for ei in example_indices]

    m = config.method

    if m == "none":
        return _outcomes(model, X, y, X.copy(), 0)
    if m in ("pgd_l1", "pgd_l2", "pgd_linf"):
        adv, _ = _pgd_batch(model, X, y, spec, m.split("_")[1],
                            config.iterations, config.step_size, start)
        return _outcomes(model, X, y, adv, config.iterations)
    if m == "pgd_adam":
        adv, _ = _pgd_adam_batch(model, X, y, spec, config.iterations,
                                 config.step_size, config.random_start,
                                 rngs() if config.random_start else [], start)
        return _outcomes(model, X, y, adv, config.iterations)
    if m == "rfgsm":
        adv, _ = _rfgsm_batch(model, X, y, spec, config.iterations,
                              config.step_size, rngs(), start)
        return _outcomes(model, X, y, adv, config.iterations)
    if m in ("grosse", "jsma", "bca"):
        adv, _, flips = _saliency_batch(model, X, y, spec, m, config.iterations,
                                        config.max_flips, start)
        return _outcomes(model, X, y, adv, flips)
    if m == "bga":
        adv, _, iters = _bga_batch(model, X, y, spec, config.iterations, start)
        return _outcomes(model, X, y, adv, iters)
    if m == "gdkde":
        adv, _ = _gdkde_batch(model, X, y, spec, benign_pool, config.lam,
                              config.bandwidth, config.iterations,
                              config.step_size, start)
        return _outcomes(model, X, y, adv, config.iterations)
    if m == "mimicry":
        rs = rngs()
        advs = [_mimicry_one(model, X[i], y[i], spec, benign_pool,
                             config.n_ben, rs[i]) for i in range(n)]
        return _outcomes(model, X, y, np.stack(advs), config.n_ben)
    if m == "salt_pepper":
        rs = rngs()
        advs, evals = [], []
        for i in range(n):
            adv, ev = _salt_pepper_one(model, X[i], y[i], spec, config.n_rept,
                                       config.eps_max, config.n_s, rs[i])
            advs.append(adv)
            evals.append(ev)
        return _outcomes(model, X, y, np.stack(advs), evals)
    if m == "pointwise":
        if config.init_attack is None:
            raise ConfigError("pointwise needs an init_attack to refine")
        inits = run_attack_batch(model, X, y, spec, config.init_attack,
                                 benign_pool, example_indices, None, round_index)
        rs = rngs()
        advs, passes = [], []
        for i in range(n):
            adv, p = _pointwise_one(model, X[i], y[i], inits[i].x_adv, spec, rs[i])
            advs.append(adv)
            passes.append(p)
        return _outcomes(model, X, y, np.stack(advs), passes)
    if m == "max":
        specs = config.specs if config.specs else (spec,)
        return run_max_batch(model, X, y, list(config.components), list(specs),
                             benign_pool, example_indices, start, round_index)
    if m == "iter_max":
        specs = config.specs if config.specs else (spec,)
        outs, _ = run_iter_max_batch(model, X, y, list(config.components),
                                     list(specs), config.n_rounds, config.epsilon,
                                     benign_pool, example_indices)
        return outs
    raise ConfigError(f"unknown attack method {m!r}")


def run_max_batch(model, X, y, methods, specs, benign_pool=None,
                  example_indices=None, x_start=None, round_index=0):
    """Per example, the (method, spec) pair whose output maximizes the loss."""
    if not methods or not specs:
        raise ConfigError("max attack needs at least one method and one spec")
    X, y, start = _prep_batch(model, X, y, x_start)
    n = X.shape[0]
    pair_adv, pair_loss, pair_iters = [], [], []
    for cfg in methods:
        for sp in specs:
            outs = run_attack_batch(model, X, y, sp, cfg, benign_pool,
                                    example_indices, start, round_index)
            pair_adv.append(np.stack([o.x_adv for o in outs]))
            pair_loss.append([o.final_loss for o in outs])
            pair_iters.append([o.iterations_used for o in outs])
    losses = np.asarray(pair_loss)           # (pairs, n)
    sel = np.argmax(losses, axis=0)          # ties: first-listed pair
    rows = np.arange(n)
    adv = np.stack(pair_adv)[sel, rows]
    iters = np.asarray(pair_iters)[sel, rows]
    return _outcomes(model, X, y, adv, iters)


def run_iter_max_batch(model, X, y, methods, specs, n_rounds=5, epsilon=1e-9,
                       benign_pool=None, example_indices=None):
    """Greedy repeated max attack, each round restarting from the last point.

    Returns (outcomes, loss_trace) where loss_trace[0] is the starting loss
    and loss_trace[k] the loss after round k. A round's result is kept only
    when it improves the loss, so rows of the trace are non-decreasing.
    """
    if n_rounds < 1:
        raise ConfigError("iter_max needs n_rounds >= 1")
    if epsilon <= 0:
        raise ConfigError("iter_max needs epsilon > 0")
    X, y, _ = _prep_batch(model, X, y, None)
    n = X.shape[0]
    if example_indices is None:
        example_indices = np.arange(n)
    example_indices = np.asarray(example_indices)
    cur = X.copy()
    cur_loss = _loss_batch(model, X, y)
    trace = [cur_loss.copy()]
    rounds_used = np.zeros(n, dtype=int)
    active = np.ones(n, dtype=bool)
    for k in range(1, n_rounds + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        outs = run_max_batch(model, X[idx], y[idx], methods, specs, benign_pool,
                             example_indices[idx], cur[idx], round_index=k - 1)
        new_adv = np.stack([o.x_adv for o in outs])
        new_loss = np.asarray([o.final_loss for o in outs])
        improved = new_loss > cur_loss[idx]
        gain = np.abs(np.maximum(new_loss, cur_loss[idx]) - cur_loss[idx])
        cur[idx[improved]] = new_adv[improved]
        cur_loss[idx] = np.maximum(new_loss, cur_loss[idx])
        rounds_used[idx] = k
        active[idx[gain < epsilon]] = False
        trace.append(cur_loss.copy())
    return _outcomes(model, X, y, cur, rounds_used), np.asarray(trace)


# single-example entry points ------------------------------------------------

def _single(outs):
    return outs[0]


def pgd(model, x, y, spec, norm, config: AttackConfig) -> AttackOutcome:
    cfg = AttackConfig(method=f"pgd_{norm}", iterations=config.iterations,
                       step_size=config.step_size, seed=config.seed)
    return _single(run_attack_batch(model, x, y, spec, cfg))


def pgd_adam(model, x, y, spec, config: AttackConfig) -> AttackOutcome:
    cfg = AttackConfig(method="pgd_adam", iterations=config.iterations,
                       step_size=config.step_size,
                       random_start=config.random_start, seed=config.seed)
    return _single(run_attack_batch(model, x, y, spec, cfg))


def saliency_flip(model, x, y, spec, variant: str, max_iters: int,
                  max_flips: int | None = None) -> AttackOutcome:
    cfg = AttackConfig(method=variant, iterations=max_iters, max_flips=max_flips)
    return _single(run_attack_batch(model, x, y, spec, cfg))


def bga(model, x, y, spec, max_iters: int) -> AttackOutcome:
    cfg = AttackConfig(method="bga", iterations=max_iters)
    return _single(run_attack_batch(model, x, y, spec, cfg))


def gdkde(model, x, y, spec, benign_pool, lam: float, bandwidth: float,
          config: AttackConfig) -> AttackOutcome:
    cfg = AttackConfig(method="gdkde", iterations=config.iterations,
                       step_size=config.step_size, lam=lam, bandwidth=bandwidth,
                       seed=config.seed)
    return _single(run_attack_batch(model, x, y, spec, cfg, benign_pool))


def mimicry(model, x, y, spec, benign_pool, n_ben: int,
            rng: np.random.Generator) -> AttackOutcome:
    x = np.asarray(x, dtype=float)
    adv = _mimicry_one(model, x, y, spec, benign_pool, n_ben, rng)
    return _single(_outcomes(model, x[None], np.asarray([y]), adv[None], n_ben))


def salt_pepper(model, x, y, spec, n_rept: int, eps_max: float, n_s: int,
                rng: np.random.Generator) -> AttackOutcome:
    x = np.asarray(x, dtype=float)
    adv, evals = _salt_pepper_one(model, x, y, spec, n_rept, eps_max, n_s, rng)
    return _single(_outcomes(model, x[None], np.asarray([y]), adv[None], evals))


def pointwise(model, x, y, x_adv, spec,
              rng: np.random.Generator | None = None) -> AttackOutcome:
    x = np.asarray(x, dtype=float)
    rng = rng if rng is not None else derive_rng(0)
    adv, passes = _pointwise_one(model, x, y, x_adv, spec, rng)
    return _single(_outcomes(model, x[None], np.asarray([y]), adv[None], passes))


def max_attack(model, x, y, methods, specs, benign_pool=None,
               example_index: int = 0) -> AttackOutcome:
    return _single(run_max_batch(model, x, y, list(methods), list(specs),
                                 benign_pool, np.asarray([example_index])))


def iter_max_attack(model, x, y, methods, specs, n_rounds: int = 5,
                    epsilon: float = 1e-9, benign_pool=None,
                    example_index: int = 0) -> AttackOutcome:
    outs, _ = run_iter_max_batch(model, x, y, list(methods), list(specs),
                                 n_rounds, epsilon, benign_pool,
                                 np.asarray([example_index]))
    return _single(outs)
