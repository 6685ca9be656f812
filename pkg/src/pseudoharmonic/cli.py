"""Command-line interface.

Subcommands: ``spectrum``, ``table1``, ``wavefunction``, ``validate`` and
``fit``. Exit status is 0 on success, 1 when a validation or fit fails and
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import difflib
import math
import sys
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Optional, Sequence

import numpy as np

from . import molecules as mol
from .model import MolecularParams, QuantumNumbers, effective_potential, energy, wavefunction
from .oracle import default_grid
from .units import NATURAL
from .validation import check_states, table_states

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# built-in dimensionless test problem: hbar = mu = r0 = 1, V0 = 1/2, E_n0 = 2n + sqrt(5)/2
NATURAL_NAME = "natural"
NATURAL_PARAMS = MolecularParams(0.5, 1.0, 1.0, NATURAL)


class UsageError(Exception):
    pass


@dataclass
class OutputTable:
    """Named columns rendered as aligned text or CSV.

    ``formats`` maps a column to a format spec or to a callable returning
    the cell text; floats default to 8 significant digits.
    """

    columns: dict
    formats: dict
    precision: int = 8

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError("all columns must have equal length")

    def _cell(self, name, value) -> str:
        spec = self.formats.get(name)
        if callable(spec):
            return spec(value)
        if spec is not None:
            return format(value, spec)
        if isinstance(value, (int, np.integer)):
            return str(value)
        return format(value, f".{self.precision - 1}e")

    def rows(self) -> list[list[str]]:
        names = list(self.columns)
        n = len(self.columns[names[0]]) if names else 0
        return [[self._cell(k, self.columns[k][i]) for k in names] for i in range(n)]

    def render(self, fmt: str = "text") -> str:
        names = list(self.columns)
        body = self.rows()
        if fmt == "csv":
            return "\n".join(",".join(r) for r in [names] + body) + "\n"
        widths = [max([len(names[j])] + [len(r[j]) for r in body]) for j in range(len(names))]
        lines = ["  ".join(s.rjust(w) for s, w in zip(r, widths)) for r in [names] + body]
        return "\n".join(lines) + "\n"


def table_cell(x: float) -> str:
    """Reference-table style: 8 significant figures (at most 8 decimals), padded to 8 decimals.

    Values below 1 keep 8 decimals; values in [1, 10) keep 7 and print a
    trailing zero, e.g. 1.1235099 -> "1.12350990". Ties round half to even.
    """
    d = Decimal(repr(float(x)))
    places = min(8, 7 - d.adjusted())
    return f"{d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN):.8f}"


def _registry(path: Optional[str]) -> list[mol.MoleculeRecord]:
    try:
        return mol.load_registry(path) if path else mol.load_default_registry()
    except OSError as exc:
        raise UsageError(f"cannot read registry: {exc}") from None
    except mol.RegistryError as exc:
        raise UsageError(f"bad registry: {exc}") from None


def _lookup(name: str, path: Optional[str]) -> MolecularParams:
    if name == NATURAL_NAME:
        return NATURAL_PARAMS
    recs = {r.name: r for r in _registry(path)}
    if name in recs:
        return recs[name].params
    hint = difflib.get_close_matches(name, list(recs) + [NATURAL_NAME], n=1, cutoff=0.5)
    msg = f"unknown molecule {name!r}"
    if hint:
        msg += f"; did you mean {hint[0]!r}?"
    raise UsageError(msg)


def cmd_spectrum(args) -> int:
    p = _lookup(args.molecule, args.registry)
    states = table_states(args.nmax, args.lmax)
    table = OutputTable(
        {"n": [q.n for q in states], "l": [q.l for q in states], "E_eV": [energy(p, q) for q in states]},
        {"E_eV": ".8f"},
    )
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def cmd_table1(args) -> int:
    recs = {r.name: r for r in _registry(args.registry)}
    missing = [m for m in mol.TABLE1_MOLECULES if m not in recs]
    if missing:
        raise UsageError(f"registry lacks {', '.join(missing)}")
    states = mol.table1_states()
    cols = {"n": [q.n for q in states], "l": [q.l for q in states]}
    for name in mol.TABLE1_MOLECULES:
        cols[name] = [e.energy for e in mol.predict_table(recs[name], states)]
    table = OutputTable(cols, {name: table_cell for name in mol.TABLE1_MOLECULES})
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def _plot_range(p: MolecularParams, qn: QuantumNumbers) -> tuple[float, float]:
    # where r**2 R**2 is within exp(-70) of its peak
    wf = wavefunction(p, qn)
    g = default_grid(p, qn.l, 4000)
    r = np.linspace(g.r_min, g.r_max, 20001)
    _, logabs = wf.signed_log(r)
    logdens = 2.0 * (logabs + np.log(r))
    keep = np.nonzero(logdens > np.max(logdens) - 70.0)[0]
    return float(r[keep[0]]), float(r[keep[-1]])


def cmd_wavefunction(args) -> int:
    p = _lookup(args.molecule, args.registry)
    if args.n < 0 or args.l < 0:
        raise UsageError("n and l must be non-negative")
    if args.points < 2:
        raise UsageError("need at least 2 points")
    qn = QuantumNumbers(args.n, args.l)
    lo, hi = _plot_range(p, qn)
    lo = args.rmin if args.rmin is not None else lo
    hi = args.rmax if args.rmax is not None else hi
    if not 0 < lo < hi:
        raise UsageError("need 0 < rmin < rmax")
    r = np.linspace(lo, hi, args.points)
    R = wavefunction(p, qn)(r)
    table = OutputTable(
        {"r_A": r, "R": R, "r2R2": r * r * R * R, "Veff_eV": effective_potential(p, qn.l, r)},
        {"r_A": ".8f"},
    )
    sys.stdout.write(table.render(args.format))
    return EXIT_OK


def cmd_validate(args) -> int:
    p = _lookup(args.molecule, args.registry)
    states = table_states(args.nmax, args.lmax)
    checks = check_states(p, states, m=args.grid_points)
    table = OutputTable(
        {
            "n": [c.n for c in checks],
            "l": [c.l for c in checks],
            "E_closed": [c.closed for c in checks],
            "E_fd": [c.fd for c in checks],
            "E_numerov": [c.numerov for c in checks],
            "deviation": [c.deviation for c in checks],
            "fd_order": [c.fd_order for c in checks],
        },
        {"E_closed": ".10f", "E_fd": ".10f", "E_numerov": ".10f", "deviation": ".2e", "fd_order": ".2f"},
    )
    sys.stdout.write(table.render(args.format))
    worst = max(checks, key=lambda c: c.deviation)
    orders = [c.fd_order for c in checks if math.isfinite(c.fd_order)]
    print(f"fd error ratio on grid halving: order {min(orders):.2f} .. {max(orders):.2f}")
    print(f"max deviation {worst.deviation:.3e} eV at (n={worst.n}, l={worst.l}); tolerance {args.tolerance:g} eV")
    if worst.deviation > args.tolerance:
        print(f"FAIL: state (n={worst.n}, l={worst.l}) deviates by {worst.deviation:.3e} eV", file=sys.stderr)
        return EXIT_FAIL
    print("PASS")
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        obs = mol.read_observations(args.observations)
    except OSError as exc:
        raise UsageError(f"cannot read observations: {exc}") from None
    except mol.RegistryError as exc:
        raise UsageError(f"bad observations: {exc}") from None
    if not args.mu > 0:
        raise UsageError("--mu must be positive")
    try:
        fit = mol.fit_parameters(obs, args.mu, tolerance=args.tolerance)
    except mol.InconsistentDataError as exc:
        print(f"fit failed at stage {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except mol.FitError as exc:
        print(f"fit failed at stage {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rec = mol.MoleculeRecord(args.name, fit.params, f"fitted from {args.observations}")
    print(mol.format_record(rec))
    print(f"# levels fitted: {len(obs)}")
    print(f"# max residual: {fit.max_residual:.3e} eV")
    print(f"# half spacing c: {fit.half_spacing:.10f} eV; D = mu V0 r0^2 / hbar^2: {fit.D:.8g}")
    if fit.ground_check:
        pred, seen = fit.ground_check
        print(f"# E(0,0) from closed-form seed: {pred:.10f} eV (observed {seen:.10f} eV)")
    for note in fit.notes:
        print(f"# note: {note}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pseudoharmonic",
        description="Bound states of the pseudoharmonic diatomic potential V0 (r/r0 - r0/r)^2.",
        epilog="exit status: 0 success, 1 validation or fit failure, 2 usage or input error",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv"), default="text")
    common.add_argument("--registry", help="molecule parameter file (default: bundled registry)")

    sp = sub.add_parser("spectrum", parents=[common], help="closed-form energies E_nl")
    sp.add_argument("molecule")
    sp.add_argument("--nmax", type=int, default=5)
    sp.add_argument("--lmax", type=int, default=None)
    sp.set_defaults(func=cmd_spectrum)

    tp = sub.add_parser("table1", parents=[common], help="reproduce the four-molecule table")
    tp.set_defaults(func=cmd_table1)

    wp = sub.add_parser("wavefunction", parents=[common], help="sample a normalized radial wavefunction")
    wp.add_argument("molecule")
    wp.add_argument("n", type=int)
    wp.add_argument("l", type=int)
    wp.add_argument("--points", type=int, default=500)
    wp.add_argument("--rmin", type=float, default=None)
    wp.add_argument("--rmax", type=float, default=None)
    wp.set_defaults(func=cmd_wavefunction)

    vp = sub.add_parser("validate", parents=[common], help="closed form against numerical eigensolvers")
    vp.add_argument("molecule")
    vp.add_argument("--nmax", type=int, default=5)
    vp.add_argument("--lmax", type=int, default=None)
    vp.add_argument("--tolerance", type=float, default=1e-6)
    vp.add_argument("--grid-points", type=int, default=4000)
    vp.set_defaults(func=cmd_validate)

    fp = sub.add_parser("fit", help="back-fit V0 and r0 from observed levels")
    fp.add_argument("observations", help="file of 'n,l,energy_eV' lines")
    fp.add_argument("--mu", type=float, required=True, help="reduced mass in amu")
    fp.add_argument("--name", default="fitted")
    fp.add_argument("--tolerance", type=float, default=mol.DEFAULT_TOLERANCE)
    fp.set_defaults(func=cmd_fit)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("nmax", "lmax", "grid_points"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            print(f"error: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
