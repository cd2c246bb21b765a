import math

import numpy as np
import pytest

from bhtransport import BasisLookupError, CapacityError, OccupationState, enumerate_basis


def test_single_atom_single_site():
    table = enumerate_basis(1, 1)
    assert table.dim == 2
    states = table.states
    assert OccupationState((1,), (0,)) in states
    assert OccupationState((0,), (1,)) in states


@pytest.mark.parametrize("M,N,dim", [(5, 5, 2002), (3, 3, 56)])
def test_known_dimensions(M, N, dim):
    assert enumerate_basis(M, N).dim == dim


def test_dimension_formula_exhaustive():
    for M in range(1, 7):
        for N in range(0, 7):
            table = enumerate_basis(M, N)
            assert table.dim == math.comb(2 * M + N - 1, N)


def test_rank_unrank_bijection_exhaustive():
    for M in range(1, 5):
        for N in range(0, 5):
            table = enumerate_basis(M, N)
            for k in range(table.dim):
                assert table.rank(table.state(k)) == k


def test_rank_matches_linear_scan():
    table = enumerate_basis(3, 3)
    states = table.states
    for k, s in enumerate(states):
        found = next(i for i, t in enumerate(states) if t == s)
        assert found == k == table.rank(s)


def test_lexicographic_order_and_first_state():
    table = enumerate_basis(3, 2)
    keys = [s.key() for s in table.states]
    assert keys == sorted(keys)
    assert table.rank(table.state(0)) == 0
    # lexicographically smallest: everything in the last lower-state slot
    assert table.state(0) == OccupationState((0, 0, 0), (0, 0, 2))


def test_determinism():
    a = enumerate_basis(4, 3)
    b = enumerate_basis(4, 3)
    assert a.states == b.states


def test_state_invariants():
    table = enumerate_basis(4, 3)
    for s in table:
        assert s.total == 3
        assert all(n >= 0 for n in s.key())


def test_rank_rejects_foreign_state():
    table = enumerate_basis(3, 3)
    with pytest.raises(BasisLookupError):
        table.rank(OccupationState((1, 0, 0), (0, 0, 0)))  # wrong total N


def test_capacity_error():
    with pytest.raises(CapacityError):
        enumerate_basis(12, 12, max_dim=10_000)


def test_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_basis(0, 1)
    with pytest.raises(ValueError):
        enumerate_basis(2, -1)


def test_occupation_arrays_consistent():
    table = enumerate_basis(3, 2)
    assert np.array_equal(table.occ_total, table.occ_e + table.occ_g)
    assert table.occ_e.shape == (table.dim, 3)
    total = table.occ_e.sum(axis=1) + table.occ_g.sum(axis=1)
    assert np.all(total == 2)
