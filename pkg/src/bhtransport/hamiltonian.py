"""Sparse Hamiltonian of the driven two-component Bose-Hubbard chain.

The full operator is the sum of the lattice part (tunneling, on-site and
inter-component interactions, site energies) and the laser part (detuning
plus a per-site coupling that converts atoms between the two internal
states).  All couplings are real, so the operator is stored as a real
symmetric CSR matrix; dynamics promotes amplitudes to complex where
needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse

from .basis import BasisTable

__all__ = [
    "ModelParams",
    "harmonic_profile",
    "edge_drive",
    "chain_params",
    "build_hamiltonian",
    "build_drive_coupling",
    "matvec",
]


@dataclass(frozen=True)
class ModelParams:
    """All couplings of the chain, in units of the reference hopping J.

    ``eps_e``, ``eps_g`` and ``Omega`` are per-site arrays of length M.
    ``Delta`` is the laser detuning; ``Omega[i]`` the coupling strength
    at site i+1.
    """

    J_e: float
    J_g: float
    U_e: float
    U_g: float
    U_eg: float
    eps_e: tuple[float, ...]
    eps_g: tuple[float, ...]
    Delta: float = 0.0
    Omega: tuple[float, ...] = field(default=())

    def __post_init__(self):
        M = len(self.eps_e)
        omega = self.Omega if self.Omega else tuple(0.0 for _ in range(M))
        object.__setattr__(self, "eps_e", tuple(float(x) for x in self.eps_e))
        object.__setattr__(self, "eps_g", tuple(float(x) for x in self.eps_g))
        object.__setattr__(self, "Omega", tuple(float(x) for x in omega))
        if not (len(self.eps_g) == M and len(self.Omega) == M):
            raise ValueError("eps_e, eps_g and Omega must all have length M")
        scalars = (self.J_e, self.J_g, self.U_e, self.U_g, self.U_eg, self.Delta)
        if not all(math.isfinite(x) for x in scalars):
            raise ValueError("couplings must be finite")
        for arr in (self.eps_e, self.eps_g, self.Omega):
            if not all(math.isfinite(x) for x in arr):
                raise ValueError("site arrays must be finite")

    @property
    def n_sites(self) -> int:
        return len(self.eps_e)


def harmonic_profile(M: int, strength: float) -> tuple[float, ...]:
    """Site energies (i - c)^2 * strength with the trap centre c = (M+1)/2.

    For M = 5 this is the (i - 3)^2 profile of the five-site chain.
    """
    c = (M + 1) / 2.0
    return tuple(strength * (i - c) ** 2 for i in range(1, M + 1))


def edge_drive(M: int, omega: float) -> tuple[float, ...]:
    """Coupling applied only at the last site of the chain."""
    return tuple(0.0 if i < M - 1 else float(omega) for i in range(M))


def chain_params(
    M: int,
    J: float = 1.0,
    U: float = 20.0,
    delta: float = 0.0,
    trap: float = 0.0,
    omega: float = 0.0,
) -> ModelParams:
    """Common symmetric parameter set: equal hoppings and interactions for
    both components, harmonic trap, drive at the end site."""
    eps = harmonic_profile(M, trap)
    return ModelParams(
        J_e=J,
        J_g=J,
        U_e=U,
        U_g=U,
        U_eg=U,
        eps_e=eps,
        eps_g=eps,
        Delta=delta,
        Omega=edge_drive(M, omega),
    )


def _bonds(M: int, boundary: str) -> list[tuple[int, int]]:
    if boundary not in ("open", "periodic"):
        raise ValueError(f"boundary must be 'open' or 'periodic', got {boundary!r}")
    bonds = [(i, i + 1) for i in range(M - 1)]
    if boundary == "periodic" and M > 1:
        bonds.append((M - 1, 0))
    return bonds


def build_hamiltonian(
    params: ModelParams, basis: BasisTable, boundary: str = "open"
) -> scipy.sparse.csr_matrix:
    """Assemble the full chain-plus-laser Hamiltonian in the Fock basis.

    Hopping carries bosonic matrix elements -J*sqrt((n_i+1)*n_j) for a
    move j -> i; the interaction, trap and detuning terms are diagonal;
    the drive converts a lower-state atom at site i to the upper state
    with element Omega_i*sqrt((n_e+1)*n_g) and conjugate.  The default
    boundary is an open chain; periodic closes the ring.
    """
    M = basis.M
    if params.n_sites != M:
        raise ValueError(f"params describe {params.n_sites} sites, basis has {M}")
    occ_e = basis.occ_e
    occ_g = basis.occ_g

    # Diagonal part, vectorized over the whole table.
    eps_e = np.asarray(params.eps_e)
    eps_g = np.asarray(params.eps_g)
    diag = (
        params.U_eg * np.sum(occ_e * occ_g, axis=1)
        + 0.5 * params.U_e * np.sum(occ_e * (occ_e - 1), axis=1)
        + 0.5 * params.U_g * np.sum(occ_g * (occ_g - 1), axis=1)
        + occ_e @ eps_e
        + occ_g @ eps_g
        + params.Delta * np.sum(occ_e, axis=1)
    )

    rows = list(range(basis.dim))
    cols = list(range(basis.dim))
    vals = list(diag)

    bonds = _bonds(M, boundary)
    rank = basis.rank_key
    occ_e_rows = occ_e.tolist()
    occ_g_rows = occ_g.tolist()
    for k in range(basis.dim):
        ne = occ_e_rows[k]
        ng = occ_g_rows[k]
        key = tuple(ne) + tuple(ng)
        for i, j in bonds:
            # move an upper-state atom j -> i and i -> j
            if params.J_e != 0.0:
                for a, b in ((i, j), (j, i)):
                    if ne[b] > 0:
                        new = list(key)
                        new[a] += 1
                        new[b] -= 1
                        rows.append(rank(tuple(new)))
                        cols.append(k)
                        vals.append(-params.J_e * math.sqrt((ne[a] + 1) * ne[b]))
            if params.J_g != 0.0:
                for a, b in ((i, j), (j, i)):
                    if ng[b] > 0:
                        new = list(key)
                        new[M + a] += 1
                        new[M + b] -= 1
                        rows.append(rank(tuple(new)))
                        cols.append(k)
                        vals.append(-params.J_g * math.sqrt((ng[a] + 1) * ng[b]))
        for i, omega in enumerate(params.Omega):
            if omega == 0.0:
                continue
            if ng[i] > 0:  # lower -> upper at site i
                new = list(key)
                new[i] += 1
                new[M + i] -= 1
                rows.append(rank(tuple(new)))
                cols.append(k)
                vals.append(omega * math.sqrt((ne[i] + 1) * ng[i]))
            if ne[i] > 0:  # upper -> lower at site i
                new = list(key)
                new[i] -= 1
                new[M + i] += 1
                rows.append(rank(tuple(new)))
                cols.append(k)
                vals.append(omega * math.sqrt((ng[i] + 1) * ne[i]))

    H = scipy.sparse.coo_matrix(
        (vals, (rows, cols)), shape=(basis.dim, basis.dim), dtype=np.float64
    ).tocsr()
    H.sum_duplicates()
    H.eliminate_zeros()
    return H


def build_drive_coupling(basis: BasisTable, site: int | None = None) -> scipy.sparse.csr_matrix:
    """Unit-strength internal-state coupling at one site (default: the end
    site), used to scale the drive without reassembling the full operator."""
    M = basis.M
    if site is None:
        site = M
    if not 1 <= site <= M:
        raise ValueError(f"site must be in 1..{M}, got {site}")
    params = ModelParams(
        J_e=0.0,
        J_g=0.0,
        U_e=0.0,
        U_g=0.0,
        U_eg=0.0,
        eps_e=(0.0,) * M,
        eps_g=(0.0,) * M,
        Delta=0.0,
        Omega=tuple(1.0 if i == site - 1 else 0.0 for i in range(M)),
    )
    return build_hamiltonian(params, basis)


def matvec(op: scipy.sparse.spmatrix, v: np.ndarray) -> np.ndarray:
    """Apply the operator to an amplitude vector."""
    v = np.asarray(v)
    if v.shape[0] != op.shape[1]:
        raise ValueError(f"vector length {v.shape[0]} does not match dim {op.shape[1]}")
    return op @ v
