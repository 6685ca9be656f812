"""
From the radial equation to Laguerre polynomials
=================================================

The radial equation in s = r**2 has hypergeometric type. Here the generic
reduction engine receives only the three polynomials (sigma, sigma~, tau~)
and finds pi, tau, the weight function and the eigenvalue ladder itself.
"""

import math

import numpy as np

import pseudoharmonic as ph
from pseudoharmonic import nu
from pseudoharmonic.special import LaguerreSpec, laguerre

# Natural units: hbar = mu = r0 = 1 and V0 = 1/2, so alpha = 1/2 and beta = 1/4 at l = 0.
p = ph.MolecularParams(0.5, 1.0, 1.0, ph.NATURAL)
d = ph.dimensionless(p, 0)
print(f"alpha = {d.alpha}, beta = {d.beta}, q = sqrt(beta + 1/16) = {d.q:.10f}")

# Each admissible k gives two linear pi(s); only one choice has tau' < 0 and a
# normalizable weight.
problem = nu.NUProblem(
    sigma=nu.Poly2(0.0, 1.0),
    sigma_tilde=nu.Poly2(-d.beta, 0.0, -d.alpha**2),
    tau_tilde=nu.Poly2(1.5),
)
for b in nu.all_branches(problem):
    print(f"k = {b.k:+.6f} ({b.sign_choice.name.lower():5s})  pi = {b.pi.coefficients()[:2]}  tau = {b.tau.coefficients()[:2]}")
sol = nu.solve(problem)
print("physical branch:", sol.branch.sign_choice.name.lower(), "with weight s^a exp(-c s), (a, c) =", sol.weight_exponents)

# Treating eps as the unknown turns the lambda ladder into the energy ladder.
asm = ph.assemble_via_nu(p, 0, n_max=3)
for n, eps in enumerate(asm.epsilons):
    print(f"n = {n}: eps = {eps:.10f}   E = {ph.energy(p, ph.QuantumNumbers(n, 0)):.10f} (2n + sqrt(5)/2 = {2 * n + math.sqrt(5) / 2:.10f})")

# The Rodrigues formula gives n! times the associated Laguerre polynomial.
a, c = sol.weight_exponents
s = np.linspace(0.0, 6.0, 5)
for n in range(4):
    rod = nu.rodrigues_polynomial(n, a, c)(s)
    lag = math.factorial(n) * laguerre(LaguerreSpec(n, a), c * s)
    print(f"n = {n}: max |Rodrigues - n! L| = {np.max(np.abs(rod - lag)):.1e}")
