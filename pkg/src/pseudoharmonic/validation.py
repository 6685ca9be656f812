"""Closed-form energies checked against the numerical eigensolvers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from . import oracle
from .model import MolecularParams, QuantumNumbers, energy

__all__ = ["StateCheck", "check_states", "table_states", "error_order"]


@dataclass(frozen=True)
class StateCheck:
    """One state: closed form against Richardson-extrapolated FD and Numerov values (eV).

    ``fd_h`` and ``fd_h2`` are the raw finite-difference values at spacing h
    and h/2, kept for convergence-order reporting.
    """

    n: int
    l: int
    closed: float
    fd: float
    numerov: float
    fd_h: float
    fd_h2: float

    @property
    def deviation(self) -> float:
        return max(abs(self.closed - self.fd), abs(self.closed - self.numerov))

    @property
    def fd_order(self) -> float:
        return error_order(self.fd_h - self.closed, self.fd_h2 - self.closed)


def error_order(err_h: float, err_h2: float) -> float:
    """Observed convergence order from errors at spacings h and h/2."""
    return math.log2(abs(err_h) / abs(err_h2))


def table_states(n_max: int, l_max: Optional[int] = None) -> list[QuantumNumbers]:
    """All (n, l) with n <= n_max and l <= min(n, l_max), n outer."""
    l_max = n_max if l_max is None else l_max
    return [QuantumNumbers(n, l) for n in range(n_max + 1) for l in range(min(n, l_max) + 1)]


def check_states(p: MolecularParams, states: Iterable[QuantumNumbers], m: int = 4000) -> list[StateCheck]:
    """Solve every state numerically at spacings h and h/2 of the default grid.

    FD values are extrapolated assuming O(h**2) and Numerov values assuming
    O(h**4). Numerov brackets come from the FD levels on the same grid.
    Each l is independent; results follow the order of ``states``.
    """
    states = list(states)
    by_l: dict[int, list[int]] = {}
    for q in states:
        by_l.setdefault(q.l, []).append(q.n)
    found = {}
    for l, ns in by_l.items():
        grid = oracle.default_grid(p, l, m)
        count = max(ns) + 2
        fd = {}
        nv = {}
        for g in (grid, grid.halved()):
            ev = oracle.fd_spectrum(p, l, g, count=count).eigenvalues
            fd[g] = ev
            for n in ns:
                below = ev[n - 1] if n > 0 else ev[0] - (ev[1] - ev[0])
                bracket = (0.5 * (below + ev[n]), 0.5 * (ev[n] + ev[n + 1]))
                nv[g, n] = oracle.numerov_shoot(p, l, n, g, bracket)
        g1, g2 = grid, grid.halved()
        for n in ns:
            found[n, l] = StateCheck(
                n=n,
                l=l,
                closed=energy(p, QuantumNumbers(n, l)),
                fd=oracle.richardson(fd[g1][n], fd[g2][n], 2),
                numerov=oracle.richardson(nv[g1, n], nv[g2, n], 4),
                fd_h=fd[g1][n],
                fd_h2=fd[g2][n],
            )
    return [found[q.n, q.l] for q in states]
