"""Diagonal-Gaussian algebra for example-set embeddings.

An example set is represented as a diagonal Gaussian over a D-dimensional
embedding space; a program is a point in the same space.  Combining two
example sets multiplies their densities: the normalized product of two
Gaussians is again a Gaussian, with a closed-form normalizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG_TWO_PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class DiagGaussian:
    """Mean and log-variance per dimension; arrays are read-only float64."""

    mu: np.ndarray
    log_var: np.ndarray

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu, dtype=np.float64)
        log_var = np.asarray(self.log_var, dtype=np.float64)
        if mu.ndim != 1 or mu.shape != log_var.shape:
            raise ValueError("mu and log_var must be 1-d arrays of equal length")
        if mu.size == 0:
            raise ValueError("dimension must be positive")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(log_var))):
            raise ValueError("non-finite Gaussian parameters")
        mu = mu.copy()
        log_var = log_var.copy()
        mu.setflags(write=False)
        log_var.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "log_var", log_var)

    @property
    def dim(self) -> int:
        return self.mu.size

    @property
    def var(self) -> np.ndarray:
        return np.exp(self.log_var)


def standard_gaussian(dim: int) -> DiagGaussian:
    return DiagGaussian(np.zeros(dim), np.zeros(dim))


def gaussian_product_exact(a: DiagGaussian, b: DiagGaussian) -> tuple[DiagGaussian, float]:
    """Normalized pointwise product of two diagonal Gaussians.

    Returns (product, log_alpha) where densities satisfy, for every x,
    N(x; a) * N(x; b) = exp(log_alpha) * N(x; product).  The product's
    variance never exceeds either factor's, componentwise.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    va = a.var
    vb = b.var
    vsum = va + vb
    mu = (a.mu * vb + b.mu * va) / vsum
    var = va * vb / vsum
    diff = a.mu - b.mu
    log_alpha = float(np.sum(-0.5 * (LOG_TWO_PI + np.log(vsum)) - diff * diff / (2.0 * vsum)))
    return DiagGaussian(mu, np.log(var)), log_alpha


def gaussian_product_fold(gaussians: list[DiagGaussian]) -> DiagGaussian:
    """Exact product of several Gaussians, normalizer discarded."""
    if not gaussians:
        raise ValueError("need at least one Gaussian")
    acc = gaussians[0]
    for g in gaussians[1:]:
        acc, _ = gaussian_product_exact(acc, g)
    return acc


def entropy(g: DiagGaussian) -> float:
    """Differential entropy in nats: half the log-variance sum plus a constant."""
    return float(0.5 * np.sum(g.log_var) + 0.5 * g.dim * (1.0 + LOG_TWO_PI))


def log_density(g: DiagGaussian, v: np.ndarray) -> float:
    """Log density of a point under the Gaussian."""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != g.mu.shape:
        raise ValueError(f"point shape {v.shape} does not match dim {g.dim}")
    diff = v - g.mu
    return float(np.sum(-0.5 * (LOG_TWO_PI + g.log_var) - diff * diff / (2.0 * g.var)))


def product_entropy_trace(gaussians: list[DiagGaussian]) -> list[float]:
    """Entropy of the exact-product fold after each prefix.

    Product variances never exceed either factor's, so the trace is
    non-increasing; useful as a monotone uncertainty monitor over a
    growing evidence set.
    """
    if not gaussians:
        raise ValueError("need at least one Gaussian")
    trace = []
    acc = gaussians[0]
    trace.append(entropy(acc))
    for g in gaussians[1:]:
        acc, _ = gaussian_product_exact(acc, g)
        trace.append(entropy(acc))
    return trace
