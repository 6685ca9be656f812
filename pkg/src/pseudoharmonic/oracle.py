"""Numerical radial eigensolvers, independent of the closed-form spectrum.

Both solvers work with u(r) = r R(r), for which the radial equation reads

    -(hbar**2 / 2 mu) u'' + V_eff(r) u = E u,   V_eff = V + l(l+1) hbar**2 / (2 mu r**2)

with Dirichlet conditions at the ends of a uniform grid. The finite
difference route builds the symmetric tridiagonal three-point matrix and
extracts its lowest eigenvalues by Sturm-sequence bisection; the Numerov
route shoots from both ends and finds the zero of the Casoratian at a
matching point inside the well.

Potentials are plain callables of r, so the same code runs on the harmonic
oscillator, hydrogen, or the pseudoharmonic well.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .units import hbar2_over

__all__ = [
    "RadialGrid",
    "Method",
    "NumericSpectrum",
    "BoundaryTruncationError",
    "BoundaryTruncationWarning",
    "BracketError",
    "WrongStateError",
    "default_grid",
    "sturm_count",
    "bisect_eigenvalues",
    "radial_fd",
    "fd_spectrum",
    "radial_numerov",
    "numerov_shoot",
    "numerov_node_count",
    "richardson",
    "count_nodes",
]

Potential = Callable[[np.ndarray], np.ndarray]

# eigenvector amplitude at a Dirichlet edge, relative to its maximum
BOUNDARY_TOL = 1e-10
EIGEN_TOL = 1e-12


class BoundaryTruncationWarning(RuntimeWarning):
    pass


class BoundaryTruncationError(RuntimeError):
    pass


class BracketError(ValueError):
    pass


class WrongStateError(ValueError):
    pass


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid with ``m`` interior points strictly between r_min and r_max."""

    r_min: float
    r_max: float
    m: int

    def __post_init__(self):
        if not (self.r_min > 0 and self.r_max > self.r_min):
            raise ValueError("need 0 < r_min < r_max")
        if self.m < 100:
            raise ValueError("need at least 100 interior points")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.m + 1)

    @property
    def r(self) -> np.ndarray:
        return self.r_min + self.h * np.arange(1, self.m + 1)

    def halved(self) -> "RadialGrid":
        """Same interval with the spacing halved."""
        return RadialGrid(self.r_min, self.r_max, 2 * self.m + 1)


class Method(enum.Enum):
    FD_STURM = "fd_sturm"
    NUMEROV_SHOOT = "numerov_shoot"


@dataclass(frozen=True)
class NumericSpectrum:
    l: int
    eigenvalues: tuple[float, ...]
    grid: RadialGrid
    method: Method
    vectors: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValueError("eigenvalues must be strictly increasing")


def default_grid(p, l: int = 0, m: int = 4000) -> RadialGrid:
    """Grid for a pseudoharmonic molecule ``p`` (a model.MolecularParams).

    The outer edge sits where exp(-alpha r**2) is negligible:
    r_max = r0 * max(4, 1 + 8 / sqrt(alpha r0**2)). Near the origin u grows
    like r**(2q + 1/2); the inner edge is r0/50, pulled closer to zero when
    that power is small enough for u(r0/50) to matter.
    """
    beta0 = 0.5 * p.V0 / hbar2_over(p.mu, p.r0, p.constants)
    alpha_r0sq = math.sqrt(beta0)
    two_q = 2.0 * math.sqrt(beta0 + 0.25 * l * (l + 1) + 1.0 / 16.0)
    r_min = p.r0 * min(1.0 / 50.0, 10.0 ** (-14.0 / (two_q + 0.5)))
    r_max = p.r0 * max(4.0, 1.0 + 8.0 / math.sqrt(alpha_r0sq))
    return RadialGrid(r_min, r_max, m)


def _pseudoharmonic(p) -> Potential:
    def v(r):
        x = r / p.r0
        return p.V0 * (x - 1.0 / x) ** 2

    return v


def _hbar2_mass(p) -> float:
    return hbar2_over(p.mu, 1.0, p.constants)


def sturm_count(diag, off, x) -> np.ndarray:
    """Number of eigenvalues below ``x`` of the symmetric tridiagonal (diag, off).

    Counts negative pivots of the LDL^T factorization of T - x I; ``x`` may
    be an array of shifts, processed together.
    """
    diag = np.asarray(diag, dtype=float)
    off2 = np.asarray(off, dtype=float) ** 2
    x = np.asarray(x, dtype=float)
    tiny = np.finfo(float).tiny ** 0.5
    piv = diag[0] - x
    count = (piv < 0).astype(int)
    for i in range(1, diag.size):
        piv = np.where(piv == 0, tiny, piv)
        piv = diag[i] - x - off2[i - 1] / piv
        count += piv < 0
    return count


def bisect_eigenvalues(diag, off, count: int, tol: float = EIGEN_TOL, splits: int = 32) -> np.ndarray:
    """Lowest ``count`` eigenvalues by Sturm-sequence multisection.

    Every sweep evaluates ``splits`` shifts per bracket at once, shrinking
    each bracket by that factor, until all brackets are narrower than ``tol``.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    rad = np.abs(np.concatenate([[0.0], off])) + np.abs(np.concatenate([off, [0.0]]))
    lo0, hi0 = float(np.min(diag - rad)), float(np.max(diag + rad))
    lo = np.full(count, lo0)
    hi = np.full(count, hi0)
    target = np.arange(1, count + 1)
    frac = np.arange(1, splits) / splits
    while np.max(hi - lo) > tol:
        pts = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
        c = sturm_count(diag, off, pts.ravel()).reshape(pts.shape)
        # eigenvalue k (1-based) lies where the count first reaches k
        below = c < target[:, None]
        nlo = below.sum(axis=1)
        new_lo = np.where(nlo > 0, pts[np.arange(count), np.maximum(nlo - 1, 0)], lo)
        new_hi = np.where(nlo < splits - 1, pts[np.arange(count), np.minimum(nlo, splits - 2)], hi)
        if np.array_equal(new_lo, lo) and np.array_equal(new_hi, hi):
            break
        lo, hi = new_lo, new_hi
    return 0.5 * (lo + hi)


def _check_boundary(vectors: np.ndarray, grid: RadialGrid, strict: bool):
    amp = np.abs(vectors)
    peak = amp.max(axis=0)
    edges = [amp[-1]]
    # a grid reaching (to within a step) the origin imposes the physical u(0) = 0
    if grid.r_min > grid.h:
        edges.append(amp[0])
    worst = max(float(np.max(e / peak)) for e in edges)
    if worst > BOUNDARY_TOL:
        msg = f"eigenfunction amplitude {worst:.2e} of its maximum at a grid edge; widen the grid"
        if strict:
            raise BoundaryTruncationError(msg)
        warnings.warn(msg, BoundaryTruncationWarning, stacklevel=3)


def radial_fd(
    potential: Potential,
    l: int,
    grid: RadialGrid,
    count: int,
    hbar2_mass: float = 1.0,
    strict: bool = False,
    solver: str = "lapack",
    vectors: bool = False,
) -> NumericSpectrum:
    """Lowest ``count`` eigenvalues of the three-point discretization.

    ``hbar2_mass`` is hbar**2 / mu in (energy * length**2). ``solver`` picks
    LAPACK's Sturm bisection (dstebz, with inverse iteration for vectors) or
    the pure numpy :func:`bisect_eigenvalues`.
    """
    if count < 1 or count > grid.m // 4:
        raise ValueError("count must be between 1 and m/4")
    r = grid.r
    t = 0.5 * hbar2_mass / grid.h**2
    veff = potential(r) + 0.5 * l * (l + 1) * hbar2_mass / r**2
    diag = 2.0 * t + veff
    off = np.full(grid.m - 1, -t)
    if solver == "lapack":
        w, v = eigh_tridiagonal(
            diag, off, select="i", select_range=(0, count - 1),
            lapack_driver="stebz", tol=EIGEN_TOL,
        )
    elif solver == "bisect":
        w = bisect_eigenvalues(diag, off, count)
        v = None
        if vectors or strict:
            _, v = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1), lapack_driver="stebz")
    else:
        raise ValueError(f"unknown solver {solver!r}")
    if v is not None:
        _check_boundary(v, grid, strict)
    return NumericSpectrum(
        l=l, eigenvalues=tuple(float(e) for e in w), grid=grid,
        method=Method.FD_STURM, vectors=v if vectors else None,
    )


def fd_spectrum(p, l: int, grid: Optional[RadialGrid] = None, count: int = 6, **kw) -> NumericSpectrum:
    """Finite-difference spectrum of the pseudoharmonic molecule ``p`` at angular momentum ``l``."""
    grid = grid or default_grid(p, l)
    return radial_fd(_pseudoharmonic(p), l, grid, count, hbar2_mass=_hbar2_mass(p), **kw)


class _Numerov:
    """Numerov recurrence for u'' = f u on one grid, f = (2/hbar2_mass) (V_eff - E)."""

    def __init__(self, potential: Potential, l: int, grid: RadialGrid, hbar2_mass: float, e_ref: float):
        r = np.concatenate([[grid.r_min], grid.r, [grid.r_max]])
        self.h2 = grid.h**2
        self.scale = 2.0 / hbar2_mass
        with np.errstate(divide="ignore", over="ignore"):
            self.veff = potential(r) + 0.5 * l * (l + 1) * hbar2_mass / r**2
        # points where h^2 f / 12 is not small sit deep in a forbidden region,
        # where the recurrence would change sign spuriously; u is taken as
        # zero there (and at r_min, r_max themselves)
        g = self.h2 * self.scale * (self.veff - e_ref) / 12.0
        bad = np.nonzero(~(g < 0.5))[0]
        bottom = int(np.nanargmin(self.veff))
        inner, outer = bad[bad < bottom], bad[bad > bottom]
        self.start = int(inner.max()) + 1 if inner.size else 1
        self.last = int(outer.min()) if outer.size else grid.m + 1
        # match at the well bottom; a well whose minimum is the first point
        # (l = 0 with a monotone potential) is matched just inside it
        self.match = max(bottom, self.start + 2)
        if not self.match < self.last - 1:
            raise ValueError("grid does not resolve the potential well")

    def coefficients(self, E: float) -> list[float]:
        g = self.h2 * self.scale * (self.veff - E) / 12.0
        # w_{i+1} + w_{i-1} = b_i w_i with w = (1 - g) u
        return (2.0 + 12.0 * g / (1.0 - g)).tolist()

    def outward(self, b, stop: int):
        """Sweep w from start (w_{start-1} = 0) to index ``stop``; return (nodes, w_{stop-1}, w_stop)."""
        prev, cur = 0.0, 1.0
        nodes = 0
        for i in range(self.start, stop):
            nxt = b[i] * cur - prev
            if (nxt < 0) != (cur < 0):
                nodes += 1
            prev, cur = cur, nxt
            if abs(cur) > 1e150:
                prev *= 1e-150
                cur *= 1e-150
        return nodes, prev, cur

    def inward(self, b, stop: int):
        """Sweep w from last (w_last = 0) down to index ``stop``; return (w_stop, w_{stop+1})."""
        nxt, cur = 0.0, 1.0
        for i in range(self.last - 1, stop, -1):
            prv = b[i] * cur - nxt
            nxt, cur = cur, prv
            if abs(cur) > 1e150:
                nxt *= 1e-150
                cur *= 1e-150
        return cur, nxt

    def node_count(self, E: float) -> int:
        """Number of discrete eigenvalues below E (sign changes up to and including r_max)."""
        nodes, _, _ = self.outward(self.coefficients(E), self.last)
        return nodes

    def mismatch(self, E: float) -> float:
        """Normalized Casoratian of the outward and inward solutions at the match point."""
        b = self.coefficients(E)
        M = self.match
        _, wo_m, wo_m1 = self.outward(b, M + 1)
        wi_m, wi_m1 = self.inward(b, M)
        cas = wo_m * wi_m1 - wo_m1 * wi_m
        return cas / ((abs(wo_m) + abs(wo_m1)) * (abs(wi_m) + abs(wi_m1)))


def radial_numerov(
    potential: Potential,
    l: int,
    n: int,
    grid: RadialGrid,
    bracket: tuple[float, float],
    hbar2_mass: float = 1.0,
) -> float:
    """Eigenvalue of the n-th state (n nodes) inside ``bracket`` by Numerov shooting.

    The bracket is checked by node counting: the count must be n at the
    lower end and n + 1 at the upper end. The eigenvalue is then the zero
    of the matching Casoratian, found by Brent's bisection/secant method.
    """
    e_lo, e_hi = bracket
    if not e_lo < e_hi:
        raise BracketError("bracket must satisfy E_lo < E_hi")
    sh = _Numerov(potential, l, grid, hbar2_mass, e_lo)
    n_lo, n_hi = sh.node_count(e_lo), sh.node_count(e_hi)
    if (n_lo, n_hi) != (n, n + 1):
        raise WrongStateError(
            f"bracket ({e_lo}, {e_hi}) holds states {n_lo}..{n_hi - 1}, not exactly state {n}"
        )
    f_lo, f_hi = sh.mismatch(e_lo), sh.mismatch(e_hi)
    if f_lo == 0:
        return e_lo
    if f_hi == 0:
        return e_hi
    if (f_lo < 0) == (f_hi < 0):
        raise BracketError("matching function does not change sign across the bracket")
    return float(brentq(sh.mismatch, e_lo, e_hi, xtol=EIGEN_TOL, rtol=4 * np.finfo(float).eps, maxiter=200))


def numerov_node_count(potential: Potential, l: int, grid: RadialGrid, E: float, hbar2_mass: float = 1.0) -> int:
    return _Numerov(potential, l, grid, hbar2_mass, E).node_count(E)


def numerov_shoot(p, l: int, qn_n: int, grid: Optional[RadialGrid] = None, bracket=None) -> float:
    """Numerov eigenvalue (eV) of state (qn_n, l) of the pseudoharmonic molecule ``p``.

    Without an explicit bracket one is taken from the finite-difference
    spectrum on the same grid, halfway to the neighbouring levels.
    """
    grid = grid or default_grid(p, l)
    if bracket is None:
        fd = fd_spectrum(p, l, grid, count=qn_n + 2).eigenvalues
        below = fd[qn_n - 1] if qn_n > 0 else fd[0] - (fd[1] - fd[0])
        bracket = (0.5 * (below + fd[qn_n]), 0.5 * (fd[qn_n] + fd[qn_n + 1]))
    return radial_numerov(_pseudoharmonic(p), l, qn_n, grid, bracket, hbar2_mass=_hbar2_mass(p))


def richardson(e_h: float, e_h2: float, order: int) -> float:
    """Extrapolate results at spacings h and h/2 of a method with error O(h**order)."""
    f = 2.0**order
    return (f * e_h2 - e_h) / (f - 1.0)


def count_nodes(values, rel_tol: float = 1e-10) -> int:
    """Sign changes in a sampled function.

    Samples with magnitude below ``rel_tol`` times the peak are ignored, so
    round-off in exponentially small tails is not mistaken for nodes.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return 0
    v = v[np.abs(v) > rel_tol * np.abs(v).max()]
    s = np.sign(v)
    return int(np.count_nonzero(s[1:] != s[:-1]))
