"""Special-function kernels: real-order Laguerre polynomials, log-gamma, quadrature.

Nothing here knows about the Nikiforov-Uvarov reduction; these kernels are the
independent side of the cross-checks against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "LaguerreSpec",
    "IntegrationError",
    "laguerre",
    "log_gamma",
    "integrate_semiinf",
]


class IntegrationError(ArithmeticError):
    """Raised when a quadrature integrand produces non-finite values."""


@dataclass(frozen=True)
class LaguerreSpec:
    """Degree ``n`` and (real) order ``a`` of an associated Laguerre polynomial."""

    n: int
    a: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"Laguerre degree must be a non-negative integer, got {self.n!r}")
        if not self.a > -1:
            raise ValueError(f"Laguerre order must satisfy a > -1, got {self.a!r}")


def laguerre(spec: LaguerreSpec, x):
    """Evaluate the associated Laguerre polynomial L_n^a(x).

    Uses the upward three-term recurrence

        k L_k = (2k - 1 + a - x) L_{k-1} - (k - 1 + a) L_{k-2}

    seeded with L_0 = 1 and L_1 = 1 + a - x, which is stable for x >= 0.

    Parameters
    ----------
    spec : LaguerreSpec
        degree and order; the order need not be an integer
    x : float or numpy.ndarray
        evaluation points, x >= 0

    Returns
    -------
    float or numpy.ndarray
        L_n^a(x), same shape as ``x``
    """
    n, a = spec.n, spec.a
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0):
        raise ValueError("laguerre is defined here for x >= 0 only")
    prev = np.ones_like(xa)
    if n == 0:
        return prev if xa.ndim else float(prev)
    cur = 1.0 + a - xa
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + a - xa) * cur - (k - 1 + a) * prev) / k
    return cur if xa.ndim else float(cur)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


@lru_cache(maxsize=None)
def _gauss_legendre(npoints: int):
    return np.polynomial.legendre.leggauss(npoints)


def integrate_semiinf(f, scale: float, npoints: int = 32, panels: int = 16, grading: int = 100) -> float:
    """Integrate ``f`` over (0, inf) by composite Gauss-Legendre in a mapped variable.

    The substitution x = scale * t / (1 - t) maps t in (0, 1) onto the half
    line; ``scale`` should sit near where the integrand carries its mass.
    The t interval is split into ``panels`` equal panels with an
    ``npoints``-point rule on each. The first panel is further split
    geometrically (ratio 1/10, ``grading`` levels) so that algebraic
    endpoint behaviour x**a with -1 < a < 0 is integrated accurately.

    ``f`` must accept a numpy array and return an array of the same shape.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")
    if npoints < 16:
        raise ValueError("npoints must be at least 16")
    if panels < 4:
        raise ValueError("at least 4 panels are required")
    nodes, weights = _gauss_legendre(int(npoints))
    first = 1.0 / panels
    graded = first * 10.0 ** -np.arange(grading + 1, dtype=float)
    edges = np.concatenate([[0.0], graded[::-1], np.linspace(first, 1.0, panels + 1)[1:]])
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    one_minus = 1.0 - t
    x = scale * t / one_minus
    jac = scale / one_minus**2
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        vals = np.asarray(f(x), dtype=float) * jac
    if not np.all(np.isfinite(vals)):
        raise IntegrationError("integrand returned non-finite values")
    return float(np.dot(w, vals))
