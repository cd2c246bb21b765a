import numpy as np
import pytest

from bhtransport import build_drive_coupling, build_hamiltonian, chain_params, enumerate_basis


@pytest.fixture(scope="session")
def basis33():
    return enumerate_basis(3, 3)


@pytest.fixture(scope="session")
def chain33(basis33):
    """Full-coupling small chain used across modules: N=M=3, U=20J."""
    params = chain_params(3, J=1.0, U=20.0)
    h_base = build_hamiltonian(params, basis33)
    h_drive = build_drive_coupling(basis33)
    return params, h_base, h_drive


def random_unit_vector(rng, n, complex_=False):
    v = rng.standard_normal(n)
    if complex_:
        v = v + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)
