"""Bound states of the pseudoharmonic diatomic potential V0 (r/r0 - r0/r)**2.

Closed-form spectrum and wavefunctions from the Nikiforov-Uvarov reduction,
checked against independent finite-difference and Numerov eigensolvers.
"""

from .model import (
    MolecularParams,
    QuantumNumbers,
    assemble_via_nu,
    dimensionless,
    energy,
    potential,
    spacing,
    wavefunction,
)
from .molecules import fit_parameters, load_default_registry, predict_table
from .units import CODATA2018, NATURAL, PhysicalConstants

__version__ = "0.1.0"

__all__ = [
    "MolecularParams",
    "QuantumNumbers",
    "PhysicalConstants",
    "CODATA2018",
    "NATURAL",
    "assemble_via_nu",
    "dimensionless",
    "energy",
    "potential",
    "spacing",
    "wavefunction",
    "fit_parameters",
    "load_default_registry",
    "predict_table",
]
