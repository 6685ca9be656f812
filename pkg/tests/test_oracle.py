import math
import warnings

import numpy as np
import pytest

from pseudoharmonic import model as m
from pseudoharmonic import oracle as o
from pseudoharmonic.model import MolecularParams, QuantumNumbers as QN
from pseudoharmonic.units import NATURAL

SQRT5_2 = math.sqrt(5) / 2


def ho(r):
    return 0.5 * r**2


def coulomb(r):
    return -1.0 / r


def test_grid_contract():
    g = o.RadialGrid(0.1, 10.1, 999)
    assert g.h == pytest.approx(0.01)
    assert g.r[0] == pytest.approx(0.11) and g.r[-1] == pytest.approx(10.09)
    assert g.halved().h == pytest.approx(g.h / 2)
    for bad in [(0.0, 1.0, 200), (1.0, 0.5, 200), (0.1, 1.0, 99)]:
        with pytest.raises(ValueError):
            o.RadialGrid(*bad)


def test_default_grid(n2, natural):
    g = o.default_grid(n2)
    assert g.r_min == pytest.approx(n2.r0 / 50) and g.r_max == pytest.approx(4 * n2.r0) and g.m == 4000
    gn = o.default_grid(natural)
    # alpha r0^2 = 1/2 here, so the outer edge moves out to 1 + 8 sqrt(2)
    assert gn.r_max == pytest.approx(1 + 8 * math.sqrt(2))
    assert gn.r_min < 1e-8


def test_sturm_count_and_bisection(rng):
    for size in (5, 40, 150):
        d = rng.normal(size=size)
        e = rng.normal(size=size - 1)
        ref = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
        x = rng.normal(size=7) * 2
        np.testing.assert_array_equal(o.sturm_count(d, e, x), [(ref < xi).sum() for xi in x])
        np.testing.assert_allclose(o.bisect_eigenvalues(d, e, min(5, size)), ref[: min(5, size)], atol=1e-11)


def test_fd_harmonic_oscillator_3d():
    g = o.RadialGrid(1e-9, 10.0, 2000)
    e1 = o.radial_fd(ho, 0, g, 3).eigenvalues
    e2 = o.radial_fd(ho, 0, g.halved(), 3).eigenvalues
    np.testing.assert_allclose(e2, [1.5, 3.5, 5.5], atol=1e-4)
    np.testing.assert_allclose(o.richardson(np.array(e1), np.array(e2), 2), [1.5, 3.5, 5.5], atol=1e-8)


def test_fd_hydrogen():
    g = o.RadialGrid(1e-9, 60.0, 6000)
    e = o.radial_fd(coulomb, 0, g, 2).eigenvalues
    np.testing.assert_allclose(e, [-0.5, -0.125], atol=1e-3)


def test_fd_pseudoharmonic_natural(natural):
    g = o.default_grid(natural)
    e1 = np.array(o.fd_spectrum(natural, 0, g, count=2).eigenvalues)
    e2 = np.array(o.fd_spectrum(natural, 0, g.halved(), count=2).eigenvalues)
    np.testing.assert_allclose(o.richardson(e1, e2, 2), [SQRT5_2, 2 + SQRT5_2], atol=1e-6)
    assert SQRT5_2 == pytest.approx(1.1180340, abs=1e-7)


def test_fd_bisect_solver_matches_lapack(natural):
    g = o.RadialGrid(1e-9, 12.0, 400)
    a = o.fd_spectrum(natural, 1, g, count=4).eigenvalues
    b = o.fd_spectrum(natural, 1, g, count=4, solver="bisect").eigenvalues
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_fd_eigenvector_nodes(n2):
    spec = o.fd_spectrum(n2, 2, count=6, vectors=True)
    for k in range(6):
        assert o.count_nodes(spec.vectors[:, k]) == k


def test_fd_error_order_natural(natural):
    g = o.RadialGrid(o.default_grid(natural).r_min, o.default_grid(natural).r_max, 400)
    errs = []
    for grid in (g, g.halved()):
        errs.append(o.fd_spectrum(natural, 0, grid, count=2).eigenvalues[0] - SQRT5_2)
    assert math.log2(errs[0] / errs[1]) == pytest.approx(2.0, abs=0.2)


def test_numerov_error_order(natural, n2):
    # l = 2 keeps u ~ r^(2q + 1/2) smooth enough at the origin for the O(h^4) term to dominate
    g = o.RadialGrid(o.default_grid(natural, 2).r_min, o.default_grid(natural, 2).r_max, 400)
    exact = m.energy(natural, QN(0, 2))
    errs = [o.numerov_shoot(natural, 2, 0, grid) - exact for grid in (g, g.halved())]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(4.0, abs=0.4)
    g = o.default_grid(n2, 0, 1000)
    exact = m.energy(n2, QN(1, 0))
    errs = [o.numerov_shoot(n2, 0, 1, grid) - exact for grid in (g, g.halved())]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(4.0, abs=0.4)


def test_numerov_harmonic_oscillator():
    g = o.RadialGrid(1e-9, 10.0, 2000)
    assert o.radial_numerov(ho, 0, 0, g, (1.0, 2.0)) == pytest.approx(1.5, abs=1e-8)


def test_numerov_natural_n1(natural):
    g = o.default_grid(natural)
    e1 = o.numerov_shoot(natural, 0, 1, g)
    e2 = o.numerov_shoot(natural, 0, 1, g.halved())
    assert o.richardson(e1, e2, 4) == pytest.approx(3.1180340, abs=1e-6)


def test_numerov_n2_table_state(n2):
    assert o.numerov_shoot(n2, 2, 4) == pytest.approx(0.98340031, abs=5e-7)


def test_numerov_bracket_errors():
    g = o.RadialGrid(1e-9, 10.0, 1000)
    with pytest.raises(o.BracketError):
        o.radial_numerov(ho, 0, 0, g, (2.0, 1.0))
    with pytest.raises(o.WrongStateError):
        o.radial_numerov(ho, 0, 0, g, (1.0, 4.0))
    with pytest.raises(o.WrongStateError):
        o.radial_numerov(ho, 0, 1, g, (1.0, 2.0))


def test_numerov_node_count_counts_levels_below():
    g = o.RadialGrid(1e-9, 10.0, 1000)
    for E, expected in [(1.0, 0), (2.0, 1), (4.0, 2), (6.0, 3)]:
        assert o.numerov_node_count(ho, 0, g, E) == expected


def test_richardson():
    assert o.richardson(1.25, 1.25, 2) == 1.25
    assert o.richardson(1.6, 1.525, 2) == pytest.approx(1.5, abs=1e-14)
    g = o.RadialGrid(1e-9, 10.0, 400)
    e1 = o.radial_fd(ho, 0, g, 1).eigenvalues[0]
    e2 = o.radial_fd(ho, 0, g.halved(), 1).eigenvalues[0]
    assert abs(o.richardson(e1, e2, 2) - 1.5) * 10 < abs(e2 - 1.5)


def test_boundary_truncation(n2):
    narrow = o.RadialGrid(n2.r0 / 50, 1.05 * n2.r0, 2000)
    with pytest.warns(o.BoundaryTruncationWarning):
        o.fd_spectrum(n2, 0, narrow, count=2)
    with pytest.raises(o.BoundaryTruncationError):
        o.fd_spectrum(n2, 0, narrow, count=2, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        o.fd_spectrum(n2, 0, count=6, strict=True)


def test_fd_count_limits(natural):
    g = o.RadialGrid(1e-9, 12.0, 200)
    with pytest.raises(ValueError):
        o.fd_spectrum(natural, 0, g, count=51)
    with pytest.raises(ValueError):
        o.fd_spectrum(natural, 0, g, count=0)


def test_spectrum_record(natural):
    s = o.fd_spectrum(natural, 0, count=3)
    assert s.method is o.Method.FD_STURM and s.l == 0 and len(s.eigenvalues) == 3
    with pytest.raises(ValueError):
        o.NumericSpectrum(0, (1.0, 1.0), s.grid, o.Method.FD_STURM)


def test_oracle_does_not_use_closed_form():
    import inspect

    src = inspect.getsource(o)
    assert "import model" not in src and "from .model" not in src and "energy(" not in src


@pytest.mark.xfail(
    strict=True,
    reason="u ~ r^(2q+1/2) = r^1.618 at the origin is not smooth; Numerov converges only as h^2.24 here",
)
def test_numerov_order_four_natural_l0(natural):
    g = o.RadialGrid(o.default_grid(natural).r_min, o.default_grid(natural).r_max, 400)
    exact = m.energy(natural, QN(0, 0))
    errs = [o.numerov_shoot(natural, 0, 0, grid) - exact for grid in (g, g.halved())]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(4.0, abs=0.4)


def test_numerov_order_natural_l0_is_fractional(natural):
    # the observed order tracks the smoothness of u at the origin instead
    g = o.RadialGrid(o.default_grid(natural).r_min, o.default_grid(natural).r_max, 400)
    exact = m.energy(natural, QN(0, 0))
    errs = [o.numerov_shoot(natural, 0, 0, grid) - exact for grid in (g, g.halved())]
    assert math.log2(errs[0] / errs[1]) == pytest.approx(2.24, abs=0.05)


def test_numerov_coarse_molecular_grid(n2):
    # V_eff at r_max reaches ~170 eV here; the deep-forbidden tail is cut off
    g = o.default_grid(n2, 0, 400)
    assert o.numerov_shoot(n2, 0, 0, g) == pytest.approx(m.energy(n2, QN(0, 0)), abs=1e-5)
