import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import wahtor as w


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture(scope="session")
def h2_sto3g():
    """Small 4-qubit system: integrals, qubit Hamiltonian, FCI solution."""
    ints, meta = w.load_fixture("h2_sto3g")
    h = w.jordan_wigner(w.spatial_to_spin_hamiltonian(ints))
    return ints, meta, h


@pytest.fixture(scope="session")
def h2_fixture():
    ints, meta = w.load_fixture("h2")
    h = w.jordan_wigner(w.spatial_to_spin_hamiltonian(ints))
    return ints, meta, h


@pytest.fixture(scope="session")
def toy_integrals():
    """One spatial orbital: h1 = -1, (00|00) = 0.5."""
    return w.SpatialIntegrals(
        m=1, n_electrons=2, ms2=0, core_energy=0.0,
        h1=np.array([[-1.0]]), h2=np.full((1, 1, 1, 1), 0.5))
