"""Physical constants in the internal (eV, Angstrom, amu) unit system.

Every energy in this package is in eV, every length in Angstrom and every
mass in unified atomic mass units. Planck's constant only ever enters
through :func:`hbar2_over`.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "CODATA2018",
    "NATURAL",
    "hbar2_over",
    "to_ev",
    "from_ev",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar*c in eV*Angstrom and the atomic mass unit energy m_u*c**2 in eV."""

    hbar_c: float
    amu_c2: float

    def __post_init__(self):
        if not (self.hbar_c > 0 and self.amu_c2 > 0):
            raise ValueError("physical constants must be strictly positive")

    @property
    def hbar2_over_amu_A2(self) -> float:
        """hbar**2 / (1 amu * 1 Angstrom**2), in eV."""
        return self.hbar_c**2 / self.amu_c2


# CODATA 2018: hbar*c = 197.3269804 MeV fm, m_u c^2 = 931.49410242 MeV.
CODATA2018 = PhysicalConstants(hbar_c=1973.269804, amu_c2=931.49410242e6)

# hbar = mass unit = 1; used for dimensionless model problems.
NATURAL = PhysicalConstants(hbar_c=1.0, amu_c2=1.0)

# eV per unit; eV is the internal unit so its entry must stay exactly 1.
_ENERGY_UNITS = {
    "eV": 1.0,
    "meV": 1e-3,
    "Ha": 27.211386245988,  # CODATA 2018 Hartree energy
}


def hbar2_over(m: float, L: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Return hbar**2 / (m L**2) in eV for a mass ``m`` in amu and length ``L`` in Angstrom."""
    if not (m > 0 and L > 0):
        raise ValueError(f"hbar2_over needs m > 0 and L > 0, got m={m!r}, L={L!r}")
    return constants.hbar2_over_amu_A2 / (m * L * L)


def to_ev(value: float, unit: str) -> float:
    try:
        return value * _ENERGY_UNITS[unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {unit!r}; known: {sorted(_ENERGY_UNITS)}") from None


def from_ev(value: float, unit: str) -> float:
    try:
        return value / _ENERGY_UNITS[unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {unit!r}; known: {sorted(_ENERGY_UNITS)}") from None
