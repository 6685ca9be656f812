"""
Recovering potential parameters from observed levels
====================================================

Given energies E(n, l) and the reduced mass, the n-spacing and one l-splitting
fix V0 and r0 in closed form; a least-squares pass then uses every level.
Here the fit sees only the n <= 2 reference rows and predicts the rest.
"""

import pseudoharmonic as ph
from pseudoharmonic import molecules as mol

mu = mol.reduced_mass("C", "O")
levels = mol.table1_levels("CO")
fit = mol.fit_parameters([o for o in levels if o.n <= 2], mu)
p = fit.params
print(f"CO: V0 = {p.V0:.6f} eV, r0 = {p.r0:.6f} A (mu = {mu:.6f} amu)")
print(f"seed: half-spacing c = {fit.half_spacing:.8f} eV, D = {fit.D:.2f}; max residual {fit.max_residual:.1e} eV")

# Held-out rows are genuine predictions.
print("\n n  l   predicted    reference    diff")
for o in levels:
    if o.n > 2:
        e = ph.energy(p, ph.QuantumNumbers(o.n, o.l))
        print(f"{o.n:2d} {o.l:2d}  {e:.8f}  {o.energy:.8f}  {e - o.energy:+.1e}")

# A level that does not fit the model is rejected, with the failing stage named.
bad = [o for o in levels if o.n <= 2]
bad[2] = mol.ObservedLevel(bad[2].n, bad[2].l, bad[2].energy + 1e-4)
try:
    mol.fit_parameters(bad, mu)
except mol.FitError as exc:
    print(f"\nrejected at stage {exc.stage!r}: {exc}")
