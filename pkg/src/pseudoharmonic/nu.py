"""Nikiforov-Uvarov reduction for equations of hypergeometric type.

Handles

    psi'' + (tau_t / sigma) psi' + (sigma_t / sigma**2) psi = 0

with sigma of degree <= 1, tau_t of degree <= 1 and sigma_t of degree <= 2.
The reduction looks for a linear polynomial

    pi(s) = (sigma' - tau_t)/2 +/- sqrt(((sigma' - tau_t)/2)**2 - sigma_t + k sigma)

which requires the radicand to be a perfect square; that fixes k. Each
admissible (k, sign) pair gives tau = tau_t + 2 pi and lambda = k + pi'.
Bound states come from the branch with tau' < 0 whose weight function
rho, solving (sigma rho)' = tau rho, is integrable on (0, inf).

Degree-2 sigma is rejected rather than half supported.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

__all__ = [
    "NUError",
    "NoBranchError",
    "AmbiguousBranchError",
    "UnsupportedSigmaError",
    "Poly2",
    "NUProblem",
    "Sign",
    "NUBranch",
    "NUSolution",
    "k_candidates",
    "resolve_branch",
    "select_physical",
    "eigenvalue_ladder",
    "weight_function",
    "square_residual",
    "all_branches",
    "rodrigues_polynomial",
    "solve",
]

# relative tolerance for the perfect-square check of a branch
SQUARE_RTOL = 1e-12


class NUError(ValueError):
    pass


class NoBranchError(NUError):
    pass


class AmbiguousBranchError(NUError):
    pass


class UnsupportedSigmaError(NUError):
    pass


@dataclass(frozen=True)
class Poly2:
    """Real polynomial c0 + c1 s + c2 s**2."""

    c0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0

    @property
    def degree(self) -> int:
        # structural degree; the zero polynomial reports 0
        if self.c2 != 0:
            return 2
        if self.c1 != 0:
            return 1
        return 0

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    def __call__(self, s):
        return self.c0 + s * (self.c1 + s * self.c2)

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Poly2") -> "Poly2":
        return Poly2(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "Poly2":
        return Poly2(-self.c0, -self.c1, -self.c2)

    def scale(self, factor: float) -> "Poly2":
        return Poly2(factor * self.c0, factor * self.c1, factor * self.c2)

    def square(self) -> "Poly2":
        if self.c2 != 0:
            raise ValueError("square of a degree-2 Poly2 does not fit in Poly2")
        return Poly2(self.c0 * self.c0, 2 * self.c0 * self.c1, self.c1 * self.c1)

    def deriv(self) -> "Poly2":
        return Poly2(self.c1, 2 * self.c2, 0.0)

    def coefficients(self) -> tuple[float, float, float]:
        return (self.c0, self.c1, self.c2)


@dataclass(frozen=True)
class NUProblem:
    sigma: Poly2
    sigma_tilde: Poly2
    tau_tilde: Poly2

    def __post_init__(self):
        if self.sigma.is_zero():
            raise NUError("sigma must not vanish identically")
        if self.sigma.degree > 1:
            raise UnsupportedSigmaError("only sigma of degree <= 1 is supported")
        if self.tau_tilde.degree > 1:
            raise NUError("tau_tilde must have degree <= 1")

    @property
    def half_gap(self) -> Poly2:
        """(sigma' - tau_tilde) / 2."""
        return (self.sigma.deriv() - self.tau_tilde).scale(0.5)

    def radicand(self, k: float) -> Poly2:
        return self.half_gap.square() - self.sigma_tilde + self.sigma.scale(k)


class Sign(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def factor(self) -> float:
        return 1.0 if self is Sign.PLUS else -1.0


@dataclass(frozen=True)
class NUBranch:
    k: float
    pi: Poly2
    tau: Poly2
    sign_choice: Sign
    k_index: int = 0  # position of k in k_candidates output, to match branches across problems


@dataclass(frozen=True)
class NUSolution:
    branch: NUBranch
    lam: float
    weight_exponents: tuple[float, float]  # rho(s) = s**a * exp(-c s)

    @property
    def tau_slope(self) -> float:
        return self.branch.tau.c1


def k_candidates(p: NUProblem) -> list[tuple[float, Poly2]]:
    """Values of k that make the radicand a perfect square, with its square root.

    Writing the radicand as A s**2 + B(k) s + C(k) with B and C affine in k,
    a real square root exists for A > 0 when B**2 - 4 A C = 0, a quadratic
    in k solved in closed form. When A = 0 the radicand must reduce to a
    non-negative constant, which fixes k through B(k) = 0.
    """
    r0 = p.radicand(0.0)
    r1 = p.radicand(1.0)
    A = r0.c2
    b0, b1 = r0.c1, r1.c1 - r0.c1
    c0, c1 = r0.c0, r1.c0 - r0.c0

    if A == 0:
        if b1 == 0:
            if b0 != 0:
                raise NoBranchError("radicand is linear in s for every k")
            ks = [None]
        else:
            ks = [-b0 / b1]
        out = []
        for k in ks:
            kk = 0.0 if k is None else k
            const = c0 + c1 * kk
            if const < 0:
                raise NoBranchError("radicand reduces to a negative constant")
            out.append((kk, Poly2(math.sqrt(const))))
        return out

    if A < 0:
        raise NoBranchError("leading radicand coefficient is negative; no real square root")

    # B(k)**2 - 4 A C(k) = qa k**2 + qb k + qc
    qa = b1 * b1
    qb = 2 * b0 * b1 - 4 * A * c1
    qc = b0 * b0 - 4 * A * c0
    if qa == 0:
        if qb == 0:
            raise NoBranchError("discriminant does not depend on k")
        ks = [-qc / qb]
    else:
        # qb**2 - 4 qa qc expanded to avoid cancellation between large terms
        disc = 16 * A * (b1 * b1 * c0 - b0 * b1 * c1 + A * c1 * c1)
        if disc < 0:
            raise NoBranchError("k roots are complex; no NU-reducible branch")
        sq = math.sqrt(disc)
        # sorted ascending so callers see (k_minus, k_plus)
        ks = sorted([(-qb - sq) / (2 * qa), (-qb + sq) / (2 * qa)])

    root_a = math.sqrt(A)
    out = []
    for k in ks:
        B = b0 + b1 * k
        out.append((k, Poly2(B / (2 * root_a), root_a)))
    return out


def resolve_branch(p: NUProblem, k: float, rootpoly: Poly2, k_index: int = 0) -> list[NUBranch]:
    """Both sign choices of pi for one admissible k."""
    out = []
    for sign in (Sign.PLUS, Sign.MINUS):
        pi = p.half_gap + rootpoly.scale(sign.factor)
        tau = p.tau_tilde + pi.scale(2.0)
        out.append(NUBranch(k=k, pi=pi, tau=tau, sign_choice=sign, k_index=k_index))
    return out


def all_branches(p: NUProblem) -> list[NUBranch]:
    out = []
    for i, (k, root) in enumerate(k_candidates(p)):
        out.extend(resolve_branch(p, k, root, k_index=i))
    return out


def square_residual(p: NUProblem, b: NUBranch) -> float:
    """Largest coefficient of radicand(k) - (pi - half_gap)**2, relative to the radicand.

    Zero (to rounding) for every branch built by :func:`resolve_branch`.
    """
    rad = p.radicand(b.k)
    diff = rad - (b.pi - p.half_gap).square()
    scale = max(abs(c) for c in rad.coefficients()) or 1.0
    return max(abs(c) for c in diff.coefficients()) / scale


def weight_function(b: NUBranch, sigma: Poly2) -> tuple[float, float]:
    """Exponents (a, c) of rho(s) = s**a exp(-c s) solving (sigma rho)' = tau rho.

    Only sigma = s is supported: then (s rho)' = (a + 1 - c s) rho, so
    a = tau(0) - 1 and c = -tau'.
    """
    if not (sigma.c0 == 0 and sigma.c1 == 1 and sigma.c2 == 0):
        raise UnsupportedSigmaError("weight_function supports sigma(s) = s only")
    return b.tau.c0 - 1.0, -b.tau.c1


def _normalizable(b: NUBranch, sigma: Poly2) -> bool:
    a, c = weight_function(b, sigma)
    return c > 0 and a > -1


def select_physical(branches: list[NUBranch], sigma: Poly2) -> NUBranch:
    """The unique branch with tau' < 0 and a weight integrable on (0, inf)."""
    good = [b for b in branches if b.tau.c1 < 0 and _normalizable(b, sigma)]
    if not good:
        raise NoBranchError("no physical branch: need tau' < 0 and an integrable weight")
    if len(good) > 1:
        desc = ", ".join(f"(k={b.k:.6g}, {b.sign_choice.value})" for b in good)
        raise AmbiguousBranchError(f"several branches qualify as physical: {desc}")
    return good[0]


def eigenvalue_ladder(b: NUBranch, sigma: Poly2, n: int) -> float:
    """lambda_n = -n tau' - n (n - 1)/2 sigma''."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return -n * b.tau.c1 - 0.5 * n * (n - 1) * (2 * sigma.c2)


def solve(p: NUProblem) -> NUSolution:
    """Run the full reduction and return the physical branch with lambda and rho."""
    b = select_physical(all_branches(p), p.sigma)
    return NUSolution(branch=b, lam=b.k + b.pi.c1, weight_exponents=weight_function(b, p.sigma))


def rodrigues_polynomial(n: int, a: float, c: float) -> Polynomial:
    """(1/rho) d^n/ds^n [s^n rho] for rho = s**a exp(-c s), with B_n = 1.

    Intermediate derivatives stay of the form exp(-c s) sum_k b_k s**(a + k),
    and d/ds [s**(a+k) e**(-cs)] = (a + k) s**(a+k-1) e**(-cs) - c s**(a+k) e**(-cs),
    so the coefficient array is updated exactly and dividing by rho leaves
    sum_k b_k s**k.

    Lemma: with x = c s, (1/rho) d^n/ds^n [s^n rho] = n! L_n^a(c s). The
    powers of c cancel between d^n/ds^n = c^n d^n/dx^n and s^(n+a) = x^(n+a) c^-(n+a),
    leaving exactly the standard Laguerre Rodrigues formula.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    b = np.zeros(n + 1)
    b[n] = 1.0
    for _ in range(n):
        nb = np.zeros(n + 1)
        k = np.arange(n + 1)
        nb[:-1] += ((a + k) * b)[1:]
        nb -= c * b
        b = nb
    return Polynomial(b)
