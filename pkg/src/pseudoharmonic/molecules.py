"""Molecule registry, parameter files, and back-fitting (V0, r0) from level energies.

Registry file grammar (one molecule per line, ``#`` starts a comment)::

    [molecule] name=N2  V0_eV=11.93  r0_A=1.094  mu_amu=7.0015  provenance="..."

Keys carry their unit as a suffix; ``name``, ``V0_eV``, ``r0_A`` and
``mu_amu`` are required and ``provenance`` is optional. Values may be
quoted with shell rules. Unknown keys, a known quantity with another unit
suffix, missing or non-positive values all raise :class:`RegistryError`.

The spectrum fixes V0 and the product mu*r0**2 but not mu and r0 apart, so
fitting takes mu as an input and the fitted r0 is only meaningful together
with that mu.
"""

from __future__ import annotations

import csv
import io
import math
import shlex
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq, least_squares

from .model import MolecularParams, QuantumNumbers, energy
from .units import CODATA2018, PhysicalConstants, hbar2_over

__all__ = [
    "MoleculeRecord",
    "ObservedLevel",
    "RegistryError",
    "FitError",
    "UnderdeterminedError",
    "InconsistentDataError",
    "FitResult",
    "ATOMIC_MASSES",
    "TABLE1_MOLECULES",
    "reduced_mass",
    "parse_registry",
    "load_registry",
    "load_default_registry",
    "format_record",
    "format_registry",
    "read_observations",
    "parse_observations",
    "table1_levels",
    "table1_states",
    "fit_parameters",
    "predict_table",
    "build_default_registry",
]

# most abundant isotopes, amu (AME 2016 / CODATA)
ATOMIC_MASSES = {
    "H": 1.00782503223,
    "C": 12.0,
    "N": 14.00307400443,
    "O": 15.99491461957,
}

# column order of the reference table
TABLE1_MOLECULES = ("N2", "CO", "NO", "CH")
_TABLE1_ATOMS = {"N2": ("N", "N"), "CO": ("C", "O"), "NO": ("N", "O"), "CH": ("C", "H")}

DEFAULT_TOLERANCE = 1e-6  # eV


def reduced_mass(a: str, b: str) -> float:
    ma, mb = ATOMIC_MASSES[a], ATOMIC_MASSES[b]
    return ma * mb / (ma + mb)


@dataclass(frozen=True)
class MoleculeRecord:
    name: str
    params: MolecularParams
    provenance: str = ""


@dataclass(frozen=True)
class ObservedLevel:
    n: int
    l: int
    energy: float  # eV


class RegistryError(ValueError):
    """Malformed parameter file; ``line`` and ``field`` locate the problem."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


_NUMERIC = {"V0": "eV", "r0": "A", "mu": "amu"}
_KEYS = {"name", "provenance"} | {f"{k}_{u}" for k, u in _NUMERIC.items()}
_REQUIRED = ("name", "V0_eV", "r0_A", "mu_amu")


def _parse_line(text: str, lineno: int) -> Optional[MoleculeRecord]:
    try:
        tokens = shlex.split(text, comments=True)
    except ValueError as exc:
        raise RegistryError(str(exc), lineno) from None
    if not tokens:
        return None
    if tokens[0] != "[molecule]":
        raise RegistryError(f"expected '[molecule]', got {tokens[0]!r}", lineno)
    fields = {}
    for tok in tokens[1:]:
        key, sep, value = tok.partition("=")
        if not sep:
            raise RegistryError("expected key=value", lineno, key)
        if key not in _KEYS:
            stem, _, unit = key.partition("_")
            if stem in _NUMERIC and unit:
                raise RegistryError(f"wrong unit {unit!r}, expected {_NUMERIC[stem]!r}", lineno, key)
            raise RegistryError("unknown key", lineno, key)
        if key in fields:
            raise RegistryError("duplicate key", lineno, key)
        fields[key] = value
    for key in _REQUIRED:
        if key not in fields:
            raise RegistryError("missing field", lineno, key)
    values = {}
    for key in ("V0_eV", "r0_A", "mu_amu"):
        try:
            v = float(fields[key])
        except ValueError:
            raise RegistryError(f"not a number: {fields[key]!r}", lineno, key) from None
        if not (math.isfinite(v) and v > 0):
            raise RegistryError(f"must be positive, got {v!r}", lineno, key)
        values[key] = v
    params = MolecularParams(values["V0_eV"], values["r0_A"], values["mu_amu"])
    return MoleculeRecord(fields["name"], params, fields.get("provenance", ""))


def parse_registry(text: str) -> list[MoleculeRecord]:
    records = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        rec = _parse_line(line, lineno)
        if rec is None:
            continue
        if rec.name in seen:
            raise RegistryError(f"duplicate molecule {rec.name!r}", lineno, "name")
        seen.add(rec.name)
        records.append(rec)
    return records


def load_registry(source: Union[str, Path]) -> list[MoleculeRecord]:
    return parse_registry(Path(source).read_text())


def load_default_registry() -> list[MoleculeRecord]:
    return parse_registry(resources.files(__package__).joinpath("data/registry.txt").read_text())


def format_record(rec: MoleculeRecord) -> str:
    p = rec.params
    return (
        f"[molecule] name={rec.name}  V0_eV={float(p.V0)!r}  r0_A={float(p.r0)!r}  mu_amu={float(p.mu)!r}"
        f"  provenance={shlex.quote(rec.provenance)}"
    )


def format_registry(records: Iterable[MoleculeRecord], header: str = "") -> str:
    lines = [f"# {h}" if h else "#" for h in header.splitlines()]
    lines += [format_record(r) for r in records]
    return "\n".join(lines) + "\n"


def parse_observations(text: str) -> list[ObservedLevel]:
    """Parse ``n,l,energy_eV`` lines; ``#`` starts a comment."""
    out = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise RegistryError("expected 'n,l,energy_eV'", lineno)
        try:
            n, l, e = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise RegistryError(f"cannot parse {line!r}", lineno) from None
        if n < 0 or l < 0:
            raise RegistryError("quantum numbers must be non-negative", lineno)
        if (n, l) in seen:
            raise RegistryError(f"duplicate level ({n}, {l})", lineno)
        seen.add((n, l))
        out.append(ObservedLevel(n, l, e))
    return out


def read_observations(path: Union[str, Path]) -> list[ObservedLevel]:
    return parse_observations(Path(path).read_text())


def _table1_rows():
    text = resources.files(__package__).joinpath("data/table1.csv").read_text()
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    return rows[0], rows[1:]


def table1_states() -> list[QuantumNumbers]:
    """(n, l) rows of the bundled reference table, in file order."""
    _, rows = _table1_rows()
    return [QuantumNumbers(int(r[0]), int(r[1])) for r in rows]


def table1_levels(name: str) -> list[ObservedLevel]:
    header, rows = _table1_rows()
    try:
        col = header.index(name)
    except ValueError:
        raise KeyError(f"{name!r} is not a Table 1 column; columns are {header[2:]}") from None
    return [ObservedLevel(int(r[0]), int(r[1]), float(r[col])) for r in rows]


class FitError(ValueError):
    stage = "fit"


class UnderdeterminedError(FitError):
    stage = "seed"


class InconsistentDataError(FitError):
    stage = "least-squares"

    def __init__(self, message: str, result: "FitResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class FitResult:
    """Fitted parameters with diagnostics.

    ``half_spacing`` is c = (hbar/r0) sqrt(2 V0/mu) and ``D`` is
    mu V0 r0**2 / hbar**2, both from the closed-form seed. ``ground_check``
    is (predicted, observed) E(0,0) from the seed alone when (0,0) was
    observed, which tests the data against the model with no fitting.
    """

    params: MolecularParams
    seed: MolecularParams
    residuals: tuple[float, ...]
    max_residual: float
    half_spacing: float
    D: float
    ground_check: Optional[tuple[float, float]]
    notes: tuple[str, ...] = field(default=())


def _shift(c: float, D: float, l: int, l_ref: int) -> float:
    # 2c [sqrt(D/2 + l(l+1)/4 + 1/16) - sqrt(D/2 + lr(lr+1)/4 + 1/16)] without cancellation
    a = 0.5 * D + 0.25 * l * (l + 1) + 1.0 / 16.0
    b = 0.5 * D + 0.25 * l_ref * (l_ref + 1) + 1.0 / 16.0
    return 2.0 * c * (a - b) / (math.sqrt(a) + math.sqrt(b))


def _seed(obs: Sequence[ObservedLevel]) -> tuple[float, float]:
    by_l: dict[int, list[ObservedLevel]] = {}
    for o in obs:
        by_l.setdefault(o.l, []).append(o)
    ladders = [l for l, lv in sorted(by_l.items()) if len({o.n for o in lv}) >= 2]
    if not ladders:
        raise UnderdeterminedError("need at least two distinct n at a fixed l")
    if not any(o.l >= 1 for o in obs):
        raise UnderdeterminedError("need at least one level with l >= 1")
    lv = by_l[ladders[0]]
    n = np.array([o.n for o in lv], dtype=float)
    e = np.array([o.energy for o in lv])
    c = 0.5 * float(np.polyfit(n, e, 1)[0])
    if not c > 0:
        raise FitError("energies do not increase with n")

    # the largest l splitting within one n is the best conditioned
    best = None
    for o in obs:
        for ref in obs:
            if ref.n == o.n and ref.l < o.l:
                key = o.l * (o.l + 1) - ref.l * (ref.l + 1)
                if best is None or key > best[0]:
                    best = (key, o, ref)
    if best is None:
        # fall back to a reference level at another n, corrected by the spacing
        o = max(obs, key=lambda x: x.l)
        ref = min((x for x in obs if x.l < o.l), key=lambda x: x.l, default=None)
        if ref is None:
            raise UnderdeterminedError("need levels at two different l")
        best = (None, o, ref)
    _, o, ref = best
    delta = o.energy - ref.energy - 2.0 * c * (o.n - ref.n)

    def g(D):
        return _shift(c, D, o.l, ref.l) - delta

    if not (delta > 0 and g(0.0) > 0):
        raise FitError(f"l splitting {delta:.3e} eV is outside the range the model allows")
    hi = 1.0
    while g(hi) > 0:
        hi *= 4.0
        if hi > 1e30:
            raise FitError("l splitting too small to determine D")
    D = brentq(g, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    return c, float(D)


def fit_parameters(
    obs: Sequence[ObservedLevel],
    mu: float,
    tolerance: float = DEFAULT_TOLERANCE,
    constants: PhysicalConstants = CODATA2018,
) -> FitResult:
    """Back-fit (V0, r0) for a given reduced mass from observed E_nl.

    Stage 1 reads the parameters off the spectrum in closed form: the n
    spacing is 2c, and an l splitting fixes D = mu V0 r0**2 / hbar**2
    through a monotone equation solved by bracketing. Then V0 = c sqrt(D/2)
    and r0**2 = D hbar**2 / (mu V0). Stage 2 refines (V0, r0) by
    Levenberg-Marquardt against every level. Raises
    :class:`InconsistentDataError` when the refined fit still misses some
    level by more than ``tolerance`` eV.
    """
    if not mu > 0:
        raise ValueError("mu must be positive")
    obs = list(obs)
    if len({(o.n, o.l) for o in obs}) != len(obs):
        raise FitError("duplicate (n, l) in observations")
    c, D = _seed(obs)
    V0 = c * math.sqrt(0.5 * D)
    r0 = math.sqrt(D * hbar2_over(mu, 1.0, constants) / V0)
    seed = MolecularParams(V0, r0, mu, constants)

    qns = [QuantumNumbers(o.n, o.l) for o in obs]
    target = np.array([o.energy for o in obs])

    def resid(x):
        p = MolecularParams(x[0] * V0, x[1] * r0, mu, constants)
        return np.array([energy(p, q) for q in qns]) - target

    if len(obs) >= 2:
        sol = least_squares(resid, [1.0, 1.0], method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        x = sol.x if sol.cost <= 0.5 * np.sum(resid([1.0, 1.0]) ** 2) else np.array([1.0, 1.0])
    else:
        x = np.array([1.0, 1.0])
    params = MolecularParams(float(x[0] * V0), float(x[1] * r0), mu, constants)
    r = resid(x)

    ground = None
    for o in obs:
        if (o.n, o.l) == (0, 0):
            ground = (float(energy(seed, QuantumNumbers(0, 0))), o.energy)
    notes = (
        "the spectrum fixes V0 and mu*r0**2 only; r0 is tied to the supplied mu",
    )
    result = FitResult(
        params=params,
        seed=seed,
        residuals=tuple(float(v) for v in r),
        max_residual=float(np.max(np.abs(r))),
        half_spacing=c,
        D=D,
        ground_check=ground,
        notes=notes,
    )
    if result.max_residual > tolerance:
        worst = obs[int(np.argmax(np.abs(r)))]
        raise InconsistentDataError(
            f"residual {result.max_residual:.3e} eV at (n={worst.n}, l={worst.l}) exceeds {tolerance:g} eV",
            result,
        )
    return result


def predict_table(rec: MoleculeRecord, states: Iterable[QuantumNumbers]) -> list[ObservedLevel]:
    """Closed-form energies for ``states``, ordered n first then l."""
    ordered = sorted(states, key=lambda q: (q.n, q.l))
    return [ObservedLevel(q.n, q.l, energy(rec.params, q)) for q in ordered]


def build_default_registry(max_n: int = 2) -> list[MoleculeRecord]:
    """Fit every Table 1 column on its rows with n <= ``max_n``."""
    out = []
    for name in TABLE1_MOLECULES:
        a, b = _TABLE1_ATOMS[name]
        mu = reduced_mass(a, b)
        obs = [o for o in table1_levels(name) if o.n <= max_n]
        fit = fit_parameters(obs, mu)
        prov = (
            f"back-fitted from the n<={max_n} rows of the bundled reference table (data/table1.csv); "
            f"mu from {a}/{b} isotopic masses; r0 valid only with this mu"
        )
        if name == "CH":
            prov += "; the source labels this column inconsistently (CH vs NH)"
        out.append(MoleculeRecord(name, fit.params, prov))
    return out
