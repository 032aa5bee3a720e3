"""Recurrent contrastive training with hand-written gradients.

A training batch is one rollout: N (history, program) pairs where each
history is a fixed-length sequence of serialized example records (the
first record is always the domain's start signal).  After each prefix the
attention module intersects the per-example Gaussians and an InfoNCE loss
scores the batch; the reported loss is the mean over steps.

Optimization is plain gradient descent with global-norm clipping.  The
query-selection side of a rollout is not differentiated; gradients flow
only through the encoders applied to the frozen histories.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .encoders import (
    EncoderConfig,
    EncoderParams,
    attention_backward,
    attention_forward,
    encode_example_batch,
    encode_program_batch,
    infonce_backward,
    infonce_forward,
    zero_grads,
)

_F = np.float64


class TrainingDivergedError(RuntimeError):
    pass


@dataclass
class BatchResult:
    loss: float
    step_losses: list[float]
    grads: dict[str, np.ndarray] | None
    attention_entropy: float


def _ex_backward(params: EncoderParams, cache, dmu, dlv, grads) -> None:
    feats, h = cache
    a = params.arrays
    dout = np.concatenate([dmu, dlv], axis=1)
    grads["ex_w2"] += h.T @ dout
    grads["ex_b2"] += dout.sum(axis=0)
    dh = (dout @ a["ex_w2"].T) * (1.0 - h * h)
    grads["ex_w1"] += feats.T @ dh
    grads["ex_b1"] += dh.sum(axis=0)


def _pr_backward(params: EncoderParams, cache, dv, grads) -> None:
    feats, h = cache
    a = params.arrays
    grads["pr_w2"] += h.T @ dv
    grads["pr_b2"] += dv.sum(axis=0)
    dh = (dv @ a["pr_w2"].T) * (1.0 - h * h)
    grads["pr_w1"] += feats.T @ dh
    grads["pr_b1"] += dh.sum(axis=0)


def recurrent_loss_and_grad(
    params: EncoderParams,
    history_feats: list[np.ndarray],
    program_feats: np.ndarray,
    compute_grad: bool = True,
) -> BatchResult:
    """Per-step InfoNCE over growing history prefixes, plus gradients.

    history_feats: one (K, example_dim) array per batch item, same K for
    all items; row 0 is the start signal.  Steps run over prefix lengths
    2..K so every scored prefix contains at least one real query.

    The optimization objective accumulates the step losses (gradients are
    for the sum); the reported loss is the per-step mean so histories stay
    comparable to log batch-size regardless of step count.
    """
    n = len(history_feats)
    if n == 0:
        raise ValueError("empty batch")
    program_feats = np.atleast_2d(np.asarray(program_feats, dtype=_F))
    if program_feats.shape[0] != n:
        raise ValueError("need one program per history")
    k = history_feats[0].shape[0]
    if any(h.shape[0] != k for h in history_feats):
        raise ValueError("histories must share a common length")
    if k < 2:
        raise ValueError("histories need at least one query beyond the start signal")

    mus, lvs, ex_caches = [], [], []
    for feats in history_feats:
        mu, lv, cache = encode_example_batch(params, feats)
        mus.append(mu)
        lvs.append(lv)
        ex_caches.append(cache)
    v, pr_cache = encode_program_batch(params, program_feats)

    steps = range(2, k + 1)
    att_caches: dict[tuple[int, int], tuple] = {}
    step_losses = []
    nce_caches = []
    att_entropies = []
    for t in steps:
        set_mu = np.empty((n, params.config.embed_dim), dtype=_F)
        set_lv = np.empty((n, params.config.embed_dim), dtype=_F)
        for i in range(n):
            mu_out, lv_out, weights, cache = attention_forward(params, mus[i][:t], lvs[i][:t])
            set_mu[i] = mu_out
            set_lv[i] = lv_out
            att_caches[(i, t)] = cache
            att_entropies.append(float(-np.sum(weights * np.log(weights + 1e-300))))
        loss_t, nce_cache = infonce_forward(set_mu, set_lv, v)
        step_losses.append(loss_t)
        nce_caches.append(nce_cache)

    loss = float(np.mean(step_losses))
    att_entropy = float(np.mean(att_entropies))
    if not compute_grad:
        return BatchResult(loss, step_losses, None, att_entropy)

    grads = zero_grads(params)
    dmu_ex = [np.zeros_like(m) for m in mus]
    dlv_ex = [np.zeros_like(m) for m in lvs]
    dv_total = np.zeros_like(v)
    for t, nce_cache in zip(steps, nce_caches):
        dmu_set, dlv_set, dv = infonce_backward(nce_cache)
        dv_total += dv
        for i in range(n):
            dmu_i, dlv_i = attention_backward(
                params, att_caches[(i, t)], dmu_set[i], dlv_set[i], grads
            )
            dmu_ex[i][:t] += dmu_i
            dlv_ex[i][:t] += dlv_i
    for i in range(n):
        _ex_backward(params, ex_caches[i], dmu_ex[i], dlv_ex[i], grads)
    _pr_backward(params, pr_cache, dv_total, grads)
    return BatchResult(loss, step_losses, grads, att_entropy)


def global_grad_norm(grads: dict[str, np.ndarray]) -> float:
    return math.sqrt(sum(float(np.sum(g * g)) for g in grads.values()))


def clip_grads(grads: dict[str, np.ndarray], max_norm: float) -> float:
    """Scale gradients in place to the given global norm; returns the raw norm."""
    norm = global_grad_norm(grads)
    if norm > max_norm > 0.0:
        factor = max_norm / norm
        for g in grads.values():
            g *= factor
    return norm


RolloutFn = Callable[
    ["EncoderParams", int, np.random.Generator], tuple[list[np.ndarray], np.ndarray]
]


@dataclass
class TrainingResult:
    params: EncoderParams
    losses: list[float]
    grad_norms: list[float]


def train_recurrent(
    params: EncoderParams,
    rollout_fn: RolloutFn,
    iterations: int,
    learning_rate: float = 0.05,
    clip_norm: float = 5.0,
    seed: int = 0,
    loss_csv_path: str | None = None,
    divergence_factor: float = 50.0,
) -> TrainingResult:
    """Gradient descent on fresh rollouts; mutates and returns params.

    Divergence (non-finite loss, or loss blowing up past divergence_factor
    times the first iteration's) raises TrainingDivergedError rather than
    silently continuing.
    """
    rng = np.random.default_rng(seed)
    losses: list[float] = []
    grad_norms: list[float] = []
    rows = []
    first_loss: float | None = None
    for it in range(iterations):
        history_feats, program_feats = rollout_fn(params, it, rng)
        result = recurrent_loss_and_grad(params, history_feats, program_feats)
        if not math.isfinite(result.loss) or (
            first_loss is not None and result.loss > divergence_factor * max(first_loss, 1.0)
        ):
            raise TrainingDivergedError(f"loss {result.loss} at iteration {it}")
        if first_loss is None:
            first_loss = result.loss
        raw_norm = clip_grads(result.grads, clip_norm)
        for name, g in result.grads.items():
            params.arrays[name] -= learning_rate * g
        losses.append(result.loss)
        grad_norms.append(raw_norm)
        rows.append((it, result.loss, raw_norm, result.attention_entropy))
    if loss_csv_path is not None:
        with open(loss_csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "loss", "grad_norm", "attention_entropy"])
            for row in rows:
                writer.writerow([row[0], f"{row[1]:.10f}", f"{row[2]:.10f}", f"{row[3]:.10f}"])
    return TrainingResult(params=params, losses=losses, grad_norms=grad_norms)


def make_entropy_rollout(
    program_feats: np.ndarray,
    start_record: np.ndarray,
    respond: Callable[[int, object], object],
    featurize: Callable[[object, object], np.ndarray],
    candidate_queries: Callable[[np.random.Generator], list],
    steps: int,
) -> RolloutFn:
    """Rollout that proposes each query by greedy posterior-entropy scoring.

    Per step a shared candidate set is drawn; for each batch item every
    candidate's actual oracle response is featurized and the candidate whose
    appended record yields the lowest intersected-Gaussian entropy is kept.
    Selection is not differentiated; it only shapes the histories the loss
    sees.
    """
    from .gaussian import DiagGaussian, entropy
    from .encoders import attention_forward, encode_example_batch

    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = program_feats.shape[0]

    def rollout(params: EncoderParams, iteration: int, rng: np.random.Generator):
        records: list[list[np.ndarray]] = [[start_record] for _ in range(n)]
        for _ in range(steps):
            candidates = candidate_queries(rng)
            if not candidates:
                raise ValueError("candidate_queries returned an empty pool")
            for i in range(n):
                cand_feats = [featurize(q, respond(i, q)) for q in candidates]
                best_idx = 0
                best_entropy = math.inf
                for c, feats in enumerate(cand_feats):
                    stacked = np.stack(records[i] + [feats])
                    mu, lv, _ = encode_example_batch(params, stacked)
                    mu_out, lv_out, _, _ = attention_forward(params, mu, lv)
                    h = entropy(DiagGaussian(mu_out, lv_out))
                    if h < best_entropy:
                        best_entropy = h
                        best_idx = c
                records[i].append(cand_feats[best_idx])
        return [np.stack(r) for r in records], program_feats

    return rollout


# --- checkpoints -----------------------------------------------------------


def save_checkpoint(path: str, params: EncoderParams) -> None:
    """Two-line text file: JSON config header, then the flat parameter vector."""
    flat = params.flatten()
    with open(path, "w") as fh:
        fh.write(json.dumps({"config": params.config.to_dict(), "size": int(flat.size)}))
        fh.write("\n")
        fh.write(" ".join(f"{x:.17g}" for x in flat))
        fh.write("\n")


def load_checkpoint(path: str) -> EncoderParams:
    with open(path) as fh:
        header = json.loads(fh.readline())
        flat = np.array([float(x) for x in fh.readline().split()], dtype=_F)
    if flat.size != header["size"]:
        raise ValueError(f"checkpoint claims {header['size']} values, found {flat.size}")
    return EncoderParams.from_flat(EncoderConfig.from_dict(header["config"]), flat)


# --- verification helper ---------------------------------------------------


def finite_difference_grad(f: Callable[[np.ndarray], float], x: np.ndarray, eps: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of a scalar function of a flat vector."""
    x = np.asarray(x, dtype=_F)
    out = np.zeros_like(x)
    for i in range(x.size):
        bumped = x.copy()
        bumped[i] += eps
        hi = f(bumped)
        bumped[i] -= 2 * eps
        lo = f(bumped)
        out[i] = (hi - lo) / (2 * eps)
    return out
