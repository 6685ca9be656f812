"""
Energy levels of four diatomic molecules
========================================

Closed-form bound-state energies of the pseudoharmonic well
V(r) = V0 (r/r0 - r0/r)**2 for N2, CO, NO and CH, using the parameters in the
bundled registry.
"""

import pseudoharmonic as ph
from pseudoharmonic import molecules as mol

# The registry holds (V0 in eV, r0 in Angstrom, mu in amu) per molecule.
registry = {r.name: r for r in mol.load_default_registry()}
for rec in registry.values():
    p = rec.params
    print(f"{rec.name:3s} V0 = {p.V0:9.5f} eV  r0 = {p.r0:.5f} A  mu = {p.mu:.5f} amu")

# Energies on the reference grid of states, next to the tabulated values.
n2 = registry["N2"]
print("\n n  l   closed form    reference")
for ref in mol.table1_levels("N2"):
    e = ph.energy(n2.params, ph.QuantumNumbers(ref.n, ref.l))
    print(f"{ref.n:2d} {ref.l:2d}  {e:.8f}   {ref.energy:.8f}")

# Vibrational levels are exactly equally spaced ...
print("\nn-spacing:", round(ph.spacing(n2.params), 8), "eV")

# ... and the rotational shift does not depend on n.
for n in range(4):
    shift = ph.energy(n2.params, ph.QuantumNumbers(n, 1)) - ph.energy(n2.params, ph.QuantumNumbers(n, 0))
    print(f"E({n},1) - E({n},0) = {shift:.10f} eV")
