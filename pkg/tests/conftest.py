import numpy as np
import pytest

from pseudoharmonic import molecules as mol
from pseudoharmonic.model import MolecularParams
from pseudoharmonic.units import NATURAL


@pytest.fixture(scope="session")
def registry():
    return {r.name: r for r in mol.load_default_registry()}


@pytest.fixture(scope="session")
def n2(registry):
    return registry["N2"].params


@pytest.fixture
def natural():
    """hbar = mu = r0 = 1, V0 = 1/2: alpha = 1/2, beta(l=0) = 1/4, E_n0 = 2n + sqrt(5)/2."""
    return MolecularParams(0.5, 1.0, 1.0, NATURAL)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
