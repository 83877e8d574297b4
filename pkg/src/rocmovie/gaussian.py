"""Seeded four-variate Gaussian samples for validation runs.

Columns are ``(Y, X, X', X'')``. Draws use numpy's PCG64 generator: 53-bit
integers are mapped to open-interval uniforms and pushed through the normal
quantile function, then correlated with the Cholesky factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special

from .errors import NotPositiveDefinite

DEFAULT_COVARIANCE = np.array(
    [
        [1.0, 0.8, 0.5, 0.2],
        [0.8, 1.0, 0.8, 0.5],
        [0.5, 0.8, 1.0, 0.8],
        [0.2, 0.5, 0.8, 1.0],
    ]
)
COLUMNS = ("y", "x1", "x2", "x3")


@dataclass(frozen=True, eq=False)
class GaussianSpec:
    sample_size: int
    seed: int = 0
    covariance: np.ndarray = field(default_factory=lambda: DEFAULT_COVARIANCE.copy())

    def cholesky(self) -> np.ndarray:
        cov = np.asarray(self.covariance, dtype=np.float64)
        if cov.shape != (4, 4):
            raise NotPositiveDefinite(f"covariance must be 4x4, got {cov.shape}")
        if not np.array_equal(cov, cov.T):
            raise NotPositiveDefinite("covariance matrix is not symmetric")
        if not np.all(np.diag(cov) == 1.0):
            raise NotPositiveDefinite("covariance matrix must have unit diagonal")
        try:
            return np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise NotPositiveDefinite("covariance matrix is not positive definite") from exc


def standard_normals(rng: np.random.Generator, shape) -> np.ndarray:
    bits = rng.integers(0, 2**53, size=shape, dtype=np.int64)
    u = (bits + 0.5) / 2.0**53
    return special.ndtri(u)


def sample_gaussian(spec: GaussianSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Draw ``spec.sample_size`` rows; returns the columns ``(Y, X, X', X'')``."""
    if spec.sample_size < 1:
        raise ValueError("sample size must be positive")
    factor = spec.cholesky()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    z = standard_normals(rng, (spec.sample_size, 4))
    data = z @ factor.T
    return tuple(np.ascontiguousarray(data[:, k]) for k in range(4))


def threshold_event(outcomes, theta: float) -> np.ndarray:
    """Indicator ``1{y >= theta}`` as int64."""
    return (np.asarray(outcomes, dtype=np.float64) >= theta).astype(np.int64)


def population_cpa(r: float) -> float:
    """CPA of a Gaussian feature with correlation ``r`` to a Gaussian outcome."""
    from .assoc import gaussian_spearman_from_pearson

    return 0.5 * (gaussian_spearman_from_pearson(r) + 1.0)


def population_auc(r: float, theta: float) -> float:
    """AUC of ``X`` for the event ``Y >= theta`` when ``(X, Y)`` is standard bivariate normal.

    Numerical double integral of ``P(X1 > X2)`` over a positive ``Y1 >= theta``
    and a negative ``Y2 < theta``.
    """
    if abs(r) >= 1.0:
        return 1.0 if r > 0 else 0.0
    scale = math.sqrt(2.0 * (1.0 - r * r))
    p_pos = special.ndtr(-theta)

    def integrand(y_neg: float, y_pos: float) -> float:
        phi = math.exp(-0.5 * (y_pos * y_pos + y_neg * y_neg)) / (2.0 * math.pi)
        return special.ndtr(r * (y_pos - y_neg) / scale) * phi

    value, _ = integrate.dblquad(integrand, theta, theta + 12.0, lambda _: theta - 12.0, lambda _: theta,
                                 epsabs=1e-11, epsrel=1e-10)
    return value / (p_pos * (1.0 - p_pos))
