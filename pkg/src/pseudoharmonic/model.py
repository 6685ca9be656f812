"""Pseudoharmonic diatomic potential V(r) = V0 (r/r0 - r0/r)**2.

Closed-form bound-state energies and normalized radial wavefunctions, plus the
route that derives the same spectrum by instantiating the generic NU engine.
With s = r**2 the radial equation becomes

    R'' + (3/2)/s R' + (-alpha**2 s**2 + eps s - beta)/s**2 R = 0

    alpha**2 = mu V0 / (2 hbar**2 r0**2)
    eps      = mu (E + 2 V0) / (2 hbar**2)
    beta     = mu V0 r0**2 / (2 hbar**2) + l (l + 1) / 4

and the physical NU branch gives eps_n = (2n + 1 + 2q) alpha with
q = sqrt(beta + 1/16).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import nu
from .special import LaguerreSpec, integrate_semiinf, laguerre, log_gamma
from .units import CODATA2018, PhysicalConstants, hbar2_over

__all__ = [
    "MolecularParams",
    "QuantumNumbers",
    "PhDimensionless",
    "RadialWavefunction",
    "NUAssembly",
    "potential",
    "effective_potential",
    "dimensionless",
    "spacing",
    "energy",
    "epsilon_of_energy",
    "wavefunction",
    "overlap",
    "assemble_pseudoharmonic",
    "assemble_via_nu",
]


@dataclass(frozen=True)
class MolecularParams:
    """Potential depth ``V0`` (eV), equilibrium separation ``r0`` (Angstrom), reduced mass ``mu`` (amu)."""

    V0: float
    r0: float
    mu: float
    constants: PhysicalConstants = field(default=CODATA2018, repr=False)

    def __post_init__(self):
        for name in ("V0", "r0", "mu"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def hbar2_over_mu_r0sq(self) -> float:
        """hbar**2 / (mu r0**2) in eV."""
        return hbar2_over(self.mu, self.r0, self.constants)


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self):
        for name in ("n", "l"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")


@dataclass(frozen=True)
class PhDimensionless:
    """alpha in 1/A**2; beta, gamma, q dimensionless per the s = r**2 reduction.

    ``gamma`` carries units of alpha (it is 2 alpha q); ``epsilon`` stays None
    until an energy is attached.
    """

    alpha: float
    beta: float
    gamma: float
    q: float
    epsilon: Optional[float] = None


def potential(p: MolecularParams, r):
    """V0 (r/r0 - r0/r)**2 in eV for r > 0 in Angstrom."""
    ra = np.asarray(r, dtype=float)
    if np.any(ra <= 0):
        raise ValueError("the pseudoharmonic potential is defined for r > 0 only")
    x = ra / p.r0
    v = p.V0 * (x - 1.0 / x) ** 2
    return v if ra.ndim else float(v)


def effective_potential(p: MolecularParams, l: int, r):
    """Potential plus the centrifugal barrier l(l+1) hbar**2 / (2 mu r**2)."""
    ra = np.asarray(r, dtype=float)
    v = potential(p, ra) + 0.5 * l * (l + 1) * p.hbar2_over_mu_r0sq * (p.r0 / ra) ** 2
    return v if ra.ndim else float(v)


def _beta0(p: MolecularParams) -> float:
    return 0.5 * p.V0 / p.hbar2_over_mu_r0sq


def dimensionless(p: MolecularParams, l: int) -> PhDimensionless:
    if int(l) != l or l < 0:
        raise ValueError(f"l must be a non-negative integer, got {l!r}")
    b0 = _beta0(p)
    alpha = math.sqrt(b0) / p.r0**2
    beta = b0 + 0.25 * l * (l + 1)
    q = math.sqrt(beta + 1.0 / 16.0)
    return PhDimensionless(alpha=alpha, beta=beta, gamma=2.0 * alpha * q, q=q)


def spacing(p: MolecularParams) -> float:
    """E(n+1, l) - E(n, l) = (2 hbar / r0) sqrt(2 V0 / mu), in eV."""
    return 2.0 * math.sqrt(2.0 * p.V0 * p.hbar2_over_mu_r0sq)


def energy(p: MolecularParams, qn: QuantumNumbers) -> float:
    """Bound-state energy E_nl in eV.

    E = -2 V0 + (hbar/r0) sqrt(2 V0/mu) [(2n + 1) + 2 sqrt(mu/(2 hbar**2) (V0 r0**2 + l(l+1) hbar**2/(2 mu)) + 1/16)]
    """
    h = p.hbar2_over_mu_r0sq
    c = math.sqrt(2.0 * p.V0 * h)
    inner = (p.V0 + 0.5 * qn.l * (qn.l + 1) * h) / (2.0 * h)
    return -2.0 * p.V0 + c * ((2 * qn.n + 1) + 2.0 * math.sqrt(inner + 1.0 / 16.0))


def epsilon_of_energy(p: MolecularParams, E: float) -> float:
    """(E + 2 V0) mu / (2 hbar**2) in 1/A**2."""
    return 0.5 * (E + 2.0 * p.V0) / hbar2_over(p.mu, 1.0, p.constants)


@dataclass(frozen=True)
class RadialWavefunction:
    """R(r) = norm * s**power * exp(-rate s) * L_n^a(2 rate s), s = r**2.

    Normalized so that the integral of R**2 r**2 over (0, inf) is one. The
    prefactor is evaluated in log space; ``norm`` alone may under- or
    overflow for heavy molecules, ``log_norm`` does not.
    """

    power: float
    rate: float
    laguerre: LaguerreSpec
    log_norm: float
    qn: QuantumNumbers

    @property
    def norm(self) -> float:
        return math.exp(self.log_norm)

    def signed_log(self, r):
        """Return (sign, log|R|) at ``r``; sign is 0 where R vanishes."""
        ra = np.asarray(r, dtype=float)
        s = ra * ra
        lag = np.asarray(laguerre(self.laguerre, 2.0 * self.rate * s))
        with np.errstate(divide="ignore"):
            logabs = self.log_norm + self.power * np.log(s) - self.rate * s + np.log(np.abs(lag))
        sign = np.sign(lag) * (s > 0)
        return sign, logabs

    def __call__(self, r):
        sign, logabs = self.signed_log(r)
        with np.errstate(under="ignore"):
            out = np.where(sign == 0, 0.0, sign * np.exp(np.where(sign == 0, 0.0, logabs)))
        return out if np.ndim(r) else float(out)


def wavefunction(p: MolecularParams, qn: QuantumNumbers) -> RadialWavefunction:
    """Normalized radial wavefunction of state (n, l).

    With x = 2 alpha s the norm integral reduces to Laguerre orthogonality,
    giving N**2 = 2 (2 alpha)**(2q + 1) n! / Gamma(n + 2q + 1).
    """
    d = dimensionless(p, qn.l)
    a = 2.0 * d.q
    log_norm = 0.5 * (
        math.log(2.0)
        + (a + 1.0) * math.log(2.0 * d.alpha)
        + log_gamma(qn.n + 1.0)
        - log_gamma(qn.n + a + 1.0)
    )
    return RadialWavefunction(
        power=-0.25 + d.q,
        rate=d.alpha,
        laguerre=LaguerreSpec(qn.n, a),
        log_norm=log_norm,
        qn=qn,
    )


def overlap(a: RadialWavefunction, b: RadialWavefunction, scale: float, panels: int = 64) -> float:
    """Integral of a(r) b(r) r**2 over (0, inf) by mapped Gauss-Legendre quadrature.

    ``scale`` is where the quadrature mapping centres its resolution, e.g. r0.
    """

    def f(r):
        sa, la = a.signed_log(r)
        sb, lb = b.signed_log(r)
        with np.errstate(divide="ignore", under="ignore"):
            return sa * sb * np.exp(la + lb + 2.0 * np.log(r))

    return integrate_semiinf(f, scale, npoints=32, panels=panels)


@dataclass(frozen=True)
class NUAssembly:
    """Physical NU branch for one (alpha, beta) and the resulting eps ladder.

    ``solution`` is the engine output for the problem with eps = 0; pi, tau
    and the weight do not depend on eps, only k shifts with it.
    """

    problem: nu.NUProblem
    solution: nu.NUSolution
    lambdas: tuple[float, ...]
    epsilons: tuple[float, ...]


def _ph_problem(alpha: float, beta: float, eps: float) -> nu.NUProblem:
    return nu.NUProblem(
        sigma=nu.Poly2(0.0, 1.0),
        sigma_tilde=nu.Poly2(-beta, eps, -alpha * alpha),
        tau_tilde=nu.Poly2(1.5),
    )


def assemble_pseudoharmonic(alpha: float, beta: float, n_max: int = 10) -> NUAssembly:
    """Derive the eps ladder from the engine, treating eps as the unknown.

    For this problem lambda = k + pi' is affine in eps (k shifts one-for-one
    with eps, pi does not move). The engine is run at two eps values to
    read off that line, then lambda(eps) = lambda_n is solved per n.
    """
    sol0 = nu.solve(_ph_problem(alpha, beta, 0.0))
    # second point on the scale of lambda keeps the slope free of cancellation
    eps1 = abs(sol0.lam) + 1.0
    sol1 = nu.solve(_ph_problem(alpha, beta, eps1))
    b0, b1 = sol0.branch, sol1.branch
    if (b0.k_index, b0.sign_choice) != (b1.k_index, b1.sign_choice):
        raise nu.NUError("physical branch changed with eps; lambda is not affine in eps")
    slope = (sol1.lam - sol0.lam) / eps1
    sigma = nu.Poly2(0.0, 1.0)
    lambdas = tuple(nu.eigenvalue_ladder(b0, sigma, n) for n in range(n_max + 1))
    epsilons = tuple((lam - sol0.lam) / slope for lam in lambdas)
    return NUAssembly(
        problem=_ph_problem(alpha, beta, 0.0),
        solution=sol0,
        lambdas=lambdas,
        epsilons=epsilons,
    )


def assemble_via_nu(p: MolecularParams, l: int, n_max: int = 10) -> NUAssembly:
    d = dimensionless(p, l)
    return assemble_pseudoharmonic(d.alpha, d.beta, n_max)
