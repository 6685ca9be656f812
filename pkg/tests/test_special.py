import math

import numpy as np
import pytest

from pseudoharmonic.special import IntegrationError, LaguerreSpec, integrate_semiinf, laguerre, log_gamma


def laguerre_series(n, a, x):
    """Explicit sum: L_n^a(x) = sum_i (-1)^i Gamma(n+a+1)/(Gamma(n-i+1) Gamma(a+i+1)) x^i / i!."""
    return sum(
        (-1) ** i * math.exp(math.lgamma(n + a + 1) - math.lgamma(n - i + 1) - math.lgamma(a + i + 1)) * x**i / math.factorial(i)
        for i in range(n + 1)
    )


def test_laguerre_examples():
    assert laguerre(LaguerreSpec(0, 7.3), 2.5) == 1.0
    assert laguerre(LaguerreSpec(1, 0.5), 2.0) == pytest.approx(-0.5, abs=1e-15)
    # x^2/2 - (a+2) x + (a+1)(a+2)/2 at a = 0.5, x = 2
    assert laguerre(LaguerreSpec(2, 0.5), 2.0) == pytest.approx(-1.125, abs=1e-14)


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("a", [-0.5, 0.0, 1.3, 7.25, 40.0])
def test_laguerre_matches_series(n, a):
    x = np.linspace(0.0, 3.0 * (n + a + 2), 13)
    expected = np.array([laguerre_series(n, a, xi) for xi in x])
    got = laguerre(LaguerreSpec(n, a), x)
    scale = np.max(np.abs(expected))
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-11 * scale)


def test_laguerre_array_shape():
    x = np.linspace(0, 5, 7).reshape(7, 1)
    assert laguerre(LaguerreSpec(3, 1.0), x).shape == (7, 1)


def test_laguerre_domain():
    with pytest.raises(ValueError):
        LaguerreSpec(2, -1.0)
    with pytest.raises(ValueError):
        LaguerreSpec(-1, 0.0)
    with pytest.raises(ValueError):
        laguerre(LaguerreSpec(2, 0.5), -0.1)


def test_laguerre_derivative_identity(rng):
    h = 1e-6
    for _ in range(20):
        n = int(rng.integers(1, 8))
        a = float(rng.uniform(-0.9, 10))
        x = float(rng.uniform(0.1, 15))
        spec = LaguerreSpec(n, a)
        fd = (laguerre(spec, x + h) - laguerre(spec, x - h)) / (2 * h)
        assert fd == pytest.approx(-laguerre(LaguerreSpec(n - 1, a + 1), x), abs=1e-6)


def test_laguerre_orthogonality(rng):
    for a in rng.uniform(-0.9, 10, size=5):
        for m in range(7):
            for n in range(m, 7):
                f = lambda x: x**a * np.exp(-x) * laguerre(LaguerreSpec(m, a), x) * laguerre(LaguerreSpec(n, a), x)
                val = integrate_semiinf(f, scale=a + n + 1, npoints=32, panels=16)
                expected = math.exp(math.lgamma(n + a + 1) - math.lgamma(n + 1)) if m == n else 0.0
                assert abs(val - expected) <= 1e-8 * math.exp(math.lgamma(n + a + 1) - math.lgamma(n + 1))


def test_log_gamma_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)
    assert log_gamma(6.0) == pytest.approx(math.log(120.0), rel=1e-14)


def test_log_gamma_recurrence(rng):
    for x in rng.uniform(0.1, 50, size=50):
        assert log_gamma(x + 1) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_log_gamma_domain(x):
    with pytest.raises(ValueError):
        log_gamma(x)


def test_integrate_examples():
    assert integrate_semiinf(lambda x: np.exp(-x), 1.0) == pytest.approx(1.0, abs=1e-10)
    assert integrate_semiinf(lambda x: x**2 * np.exp(-x), 1.0) == pytest.approx(2.0, abs=1e-10)


def test_integrate_fractional_power():
    # Gamma(5.6) / 2^5.6; frozen from a 4e6-point trapezoid rule on [0, 80] and mpmath.quad
    expected = 1.2690762154662651
    got = integrate_semiinf(lambda x: x**4.6 * np.exp(-2 * x), 0.5)
    assert got == pytest.approx(expected, rel=1e-10)
    assert got == pytest.approx(math.exp(log_gamma(5.6)) / 2**5.6, rel=1e-10)


def test_integrate_rejects_bad_input():
    with pytest.raises(IntegrationError):
        integrate_semiinf(lambda x: np.full_like(x, np.nan), 1.0)
    with pytest.raises(ValueError):
        integrate_semiinf(lambda x: np.exp(-x), 0.0)
    with pytest.raises(ValueError):
        integrate_semiinf(lambda x: np.exp(-x), 1.0, npoints=8)
