"""
Checking the closed form with two numerical eigensolvers
========================================================

A finite-difference matrix and Numerov shooting solve the radial equation
directly, without the closed form. Their grid-halved, Richardson-extrapolated
energies should agree with it to far better than 1e-6 eV.
"""

import pseudoharmonic as ph
from pseudoharmonic import oracle
from pseudoharmonic.molecules import load_default_registry
from pseudoharmonic.validation import check_states, table_states

n2 = {r.name: r for r in load_default_registry()}["N2"].params

# The default grid spans r0/50 .. 4 r0 with 4000 interior points.
grid = oracle.default_grid(n2, l=0)
print(f"grid: r in [{grid.r_min:.4f}, {grid.r_max:.4f}] A, h = {grid.h:.2e} A")

# Lowest few l = 0 levels from the tridiagonal matrix.
fd = oracle.fd_spectrum(n2, 0, grid, count=4)
for n, e in enumerate(fd.eigenvalues):
    print(f"n = {n}: FD {e:.10f}   closed {ph.energy(n2, ph.QuantumNumbers(n, 0)):.10f}")

# Full comparison: FD extrapolated as O(h^2), Numerov as O(h^4).
print("\n n  l    closed          FD-Richardson   Numerov-Richardson  FD order")
for c in check_states(n2, table_states(3)):
    print(f"{c.n:2d} {c.l:2d}  {c.closed:.10f}  {c.fd:.10f}  {c.numerov:.10f}      {c.fd_order:.3f}")
