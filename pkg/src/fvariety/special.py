"""Special functions for Beta-distribution bin probabilities and densities.

Self-contained (math module only) so the exact bin probabilities the
simulator relies on do not depend on an external numerics stack; tests
cross-check against a binomial-sum oracle and scipy.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_MAX_CF_ITERATIONS = 300
_CF_EPS = 1e-16
_TINY = 1e-300


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_CF_ITERATIONS + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise DomainError(
        f"incomplete beta continued fraction did not converge for "
        f"a={a}, b={b}, x={x}"
    )


def log_beta(a: float, b: float) -> float:
    """log B(a, b)."""
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), the Beta(a, b) CDF at x.

    Evaluated by continued fraction on the side where it converges fast,
    using the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) otherwise.  Absolute
    accuracy is well below 1e-10 over positive parameters.
    """
    if not (a > 0.0 and b > 0.0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"parameters must be finite and positive, got a={a}, b={b}")
    if math.isnan(x) or x < 0.0 or x > 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    front = math.exp(a * math.log(x) + b * math.log1p(-x) - log_beta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def beta_pdf(x: np.ndarray, a: float, b: float) -> np.ndarray:
    """Beta(a, b) density, vectorized; endpoints get their limit values."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    interior = (x > 0.0) & (x < 1.0)
    if np.any(interior):
        xi = x[interior]
        out[interior] = np.exp(
            (a - 1.0) * np.log(xi) + (b - 1.0) * np.log1p(-xi) - log_beta(a, b)
        )
    # density at the closed endpoints: finite only when the exponent is 0
    if np.any(x == 0.0):
        out[x == 0.0] = math.exp(-log_beta(a, b)) if a == 1.0 else (0.0 if a > 1.0 else math.inf)
    if np.any(x == 1.0):
        out[x == 1.0] = math.exp(-log_beta(a, b)) if b == 1.0 else (0.0 if b > 1.0 else math.inf)
    return out
