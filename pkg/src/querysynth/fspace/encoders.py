"""Feed-forward encoders, attention intersection, and the contrastive loss.

Example records and programs are hand-serialized to fixed-length feature
vectors elsewhere; this module maps features to diagonal Gaussians (example
sets) and embedding points (programs), combines per-example Gaussians with a
learned attention-weighted sum over [mu, log_var] pairs, and scores batches
with an InfoNCE loss whose logits are Gaussian log-densities.  All gradients
are computed analytically with plain numpy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .gaussian import LOG_TWO_PI, DiagGaussian

_F = np.float64


@dataclass(frozen=True)
class EncoderConfig:
    example_dim: int
    program_dim: int
    embed_dim: int = 32
    hidden_dim: int = 64
    attention_hidden_dim: int = 32
    init_scale: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("example_dim", "program_dim", "embed_dim", "hidden_dim", "attention_hidden_dim"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        return {
            "example_dim": self.example_dim,
            "program_dim": self.program_dim,
            "embed_dim": self.embed_dim,
            "hidden_dim": self.hidden_dim,
            "attention_hidden_dim": self.attention_hidden_dim,
            "init_scale": self.init_scale,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EncoderConfig":
        return cls(**d)


def _array_shapes(cfg: EncoderConfig) -> list[tuple[str, tuple[int, ...]]]:
    d2 = 2 * cfg.embed_dim
    return [
        ("ex_w1", (cfg.example_dim, cfg.hidden_dim)),
        ("ex_b1", (cfg.hidden_dim,)),
        ("ex_w2", (cfg.hidden_dim, d2)),
        ("ex_b2", (d2,)),
        ("at_w1", (d2, cfg.attention_hidden_dim)),
        ("at_b1", (cfg.attention_hidden_dim,)),
        ("at_w2", (cfg.attention_hidden_dim, 1)),
        ("at_b2", (1,)),
        ("pr_w1", (cfg.program_dim, cfg.hidden_dim)),
        ("pr_b1", (cfg.hidden_dim,)),
        ("pr_w2", (cfg.hidden_dim, cfg.embed_dim)),
        ("pr_b2", (cfg.embed_dim,)),
    ]


@dataclass
class EncoderParams:
    config: EncoderConfig
    arrays: dict[str, np.ndarray] = field(repr=False)

    @property
    def size(self) -> int:
        return sum(a.size for a in self.arrays.values())

    def flatten(self) -> np.ndarray:
        return np.concatenate([self.arrays[name].ravel() for name, _ in _array_shapes(self.config)])

    @classmethod
    def from_flat(cls, cfg: EncoderConfig, flat: np.ndarray) -> "EncoderParams":
        shapes = _array_shapes(cfg)
        total = sum(int(np.prod(s)) for _, s in shapes)
        flat = np.asarray(flat, dtype=_F)
        if flat.shape != (total,):
            raise ValueError(f"expected flat vector of length {total}, got {flat.shape}")
        arrays = {}
        offset = 0
        for name, shape in shapes:
            n = int(np.prod(shape))
            arrays[name] = flat[offset : offset + n].reshape(shape).copy()
            offset += n
        return cls(config=cfg, arrays=arrays)

    def copy(self) -> "EncoderParams":
        return EncoderParams(self.config, {k: v.copy() for k, v in self.arrays.items()})


def init_params(cfg: EncoderConfig) -> EncoderParams:
    """Zero-mean scaled-uniform weights, zero biases.

    The scale shrinks with fan-in, so freshly initialized encoders emit
    mu and log_var close to zero: example sets start near the standard
    Gaussian and the contrastive loss starts near log batch-size.
    """
    rng = np.random.default_rng(cfg.seed)
    arrays = {}
    for name, shape in _array_shapes(cfg):
        if len(shape) == 1:
            arrays[name] = np.zeros(shape, dtype=_F)
        else:
            bound = cfg.init_scale / math.sqrt(shape[0])
            arrays[name] = rng.uniform(-bound, bound, size=shape).astype(_F)
    return EncoderParams(config=cfg, arrays=arrays)


def zero_grads(params: EncoderParams) -> dict[str, np.ndarray]:
    return {name: np.zeros_like(a) for name, a in params.arrays.items()}


# ---------------------------------------------------------------------------
# Forward passes


def _mlp_forward(x: np.ndarray, w1, b1, w2, b2):
    pre = x @ w1 + b1
    h = np.tanh(pre)
    out = h @ w2 + b2
    return out, h


def _mlp_backward(dout, x, h, w1, w2, grads, names):
    n_w1, n_b1, n_w2, n_b2 = names
    grads[n_w2] += h.T @ dout
    grads[n_b2] += dout.sum(axis=0)
    dh = (dout @ w2.T) * (1.0 - h * h)
    grads[n_w1] += x.T @ dh
    grads[n_b1] += dh.sum(axis=0)
    return dh @ w1.T


def encode_example_batch(params: EncoderParams, feats: np.ndarray):
    """Features (K, example_dim) to per-example (mu, log_var), each (K, D)."""
    a = params.arrays
    feats = np.atleast_2d(np.asarray(feats, dtype=_F))
    out, h = _mlp_forward(feats, a["ex_w1"], a["ex_b1"], a["ex_w2"], a["ex_b2"])
    d = params.config.embed_dim
    return out[:, :d], out[:, d:], (feats, h)


def encode_example(params: EncoderParams, feats: np.ndarray) -> DiagGaussian:
    """Single serialized example to its embedding-space Gaussian."""
    mu, lv, _ = encode_example_batch(params, np.asarray(feats, dtype=_F)[None, :])
    return DiagGaussian(mu[0], lv[0])


def encode_program_batch(params: EncoderParams, feats: np.ndarray):
    a = params.arrays
    feats = np.atleast_2d(np.asarray(feats, dtype=_F))
    out, h = _mlp_forward(feats, a["pr_w1"], a["pr_b1"], a["pr_w2"], a["pr_b2"])
    return out, (feats, h)


def encode_program(params: EncoderParams, feats: np.ndarray) -> np.ndarray:
    out, _ = encode_program_batch(params, np.asarray(feats, dtype=_F)[None, :])
    return out[0]


def _softmax(x: np.ndarray) -> np.ndarray:
    z = x - x.max()
    e = np.exp(z)
    return e / e.sum()


def attention_forward(params: EncoderParams, mu: np.ndarray, lv: np.ndarray):
    """Weighted [mu, log_var] sum with learned softmax scores over examples."""
    a = params.arrays
    stacked = np.concatenate([mu, lv], axis=1)  # (K, 2D)
    scores_out, h = _mlp_forward(stacked, a["at_w1"], a["at_b1"], a["at_w2"], a["at_b2"])
    scores = scores_out[:, 0]
    weights = _softmax(scores)
    combined = weights @ stacked  # (2D,)
    d = params.config.embed_dim
    cache = (stacked, h, weights)
    return combined[:d], combined[d:], weights, cache


def attention_backward(params: EncoderParams, cache, dmu_out, dlv_out, grads):
    """Backprop through the weighted sum and the score MLP; returns (dmu, dlv)."""
    a = params.arrays
    stacked, h, weights = cache
    dout = np.concatenate([dmu_out, dlv_out])  # (2D,)
    dweights = stacked @ dout  # (K,)
    dstacked = np.outer(weights, dout)  # direct path
    # softmax jacobian: dz_k = w_k (dw_k - sum_j w_j dw_j)
    dscores = weights * (dweights - float(weights @ dweights))
    dstacked += _mlp_backward(
        dscores[:, None], stacked, h, a["at_w1"], a["at_w2"], grads,
        ("at_w1", "at_b1", "at_w2", "at_b2"),
    )
    d = params.config.embed_dim
    return dstacked[:, :d], dstacked[:, d:]


def intersect_attention(params: EncoderParams, gaussians: list[DiagGaussian]) -> DiagGaussian:
    """Combine per-example Gaussians into one example-set Gaussian."""
    if not gaussians:
        raise ValueError("need at least one Gaussian")
    dims = {g.dim for g in gaussians}
    if len(dims) != 1 or dims != {params.config.embed_dim}:
        raise ValueError("Gaussian dimensions must all equal the embed dim")
    mu = np.stack([g.mu for g in gaussians])
    lv = np.stack([g.log_var for g in gaussians])
    mu_out, lv_out, _, _ = attention_forward(params, mu, lv)
    return DiagGaussian(mu_out, lv_out)


# ---------------------------------------------------------------------------
# InfoNCE


def _logits(mu: np.ndarray, lv: np.ndarray, v: np.ndarray) -> np.ndarray:
    """logits[i, j] = log density of embedding j under Gaussian i."""
    prec = np.exp(-lv)  # (N, D)
    diff = v[None, :, :] - mu[:, None, :]  # (N, N, D)
    quad = np.einsum("ijd,id->ij", diff * diff, prec)
    const = -0.5 * np.sum(LOG_TWO_PI + lv, axis=1)  # (N,)
    return const[:, None] - 0.5 * quad


def infonce_forward(mu: np.ndarray, lv: np.ndarray, v: np.ndarray):
    n = mu.shape[0]
    logits = _logits(mu, lv, v)
    row_max = logits.max(axis=1, keepdims=True)
    lse = row_max[:, 0] + np.log(np.exp(logits - row_max).sum(axis=1))
    loss = float(np.mean(lse - np.diag(logits)))
    softmax = np.exp(logits - lse[:, None])
    return loss, (mu, lv, v, softmax)


def infonce_backward(cache):
    """Gradients of the mean InfoNCE loss w.r.t. mu, log_var, and embeddings.

    With logits L[i, j] = log N(v_j; mu_i, exp(lv_i)) the loss gradient
    passes through dL = (softmax - I) / N and then the density's partials:
    dL_ij/dmu = diff * prec, dL_ij/dlv = -1/2 + diff^2 prec / 2,
    dL_ij/dv = -diff * prec, where diff = v_j - mu_i, prec = exp(-lv_i).
    """
    mu, lv, v, softmax = cache
    n = mu.shape[0]
    dlogits = (softmax - np.eye(n)) / n
    prec = np.exp(-lv)
    diff = v[None, :, :] - mu[:, None, :]
    dmu = np.einsum("ij,ijd->id", dlogits, diff) * prec
    dlv = 0.5 * np.einsum("ij,ijd->id", dlogits, diff * diff) * prec \
        - 0.5 * dlogits.sum(axis=1)[:, None]
    dv = -np.einsum("ij,ijd,id->jd", dlogits, diff, prec)
    return dmu, dlv, dv


def infonce_loss(gaussians: list[DiagGaussian], embeddings: np.ndarray) -> tuple[float, float]:
    """Contrastive loss over matched (example set, program) pairs.

    Row i of the logit matrix scores every program embedding under example
    set i's Gaussian; the loss is the mean cross-entropy of the true match.
    Returns (loss, log N - loss), the second being a lower bound on the
    mutual information captured by the batch.
    """
    embeddings = np.atleast_2d(np.asarray(embeddings, dtype=_F))
    n = len(gaussians)
    if n == 0 or embeddings.shape[0] != n:
        raise ValueError("need one embedding per Gaussian")
    dims = {g.dim for g in gaussians} | {embeddings.shape[1]}
    if len(dims) != 1:
        raise ValueError("dimension mismatch between Gaussians and embeddings")
    mu = np.stack([g.mu for g in gaussians])
    lv = np.stack([g.log_var for g in gaussians])
    loss, _ = infonce_forward(mu, lv, embeddings)
    return loss, math.log(n) - loss
