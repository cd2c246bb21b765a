"""Measured quantities of a chain state: site occupations, two-site
parity correlations, Schmidt spectra and von Neumann entropy, energy gap.

All functions are pure; a :class:`StateVector` couples an amplitude array
to the basis it lives in.  Site indices are 1-based, matching the
physical labelling of the chain, and the drive sits at site M.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisTable
from .eigensolver import EigenSolution

__all__ = [
    "StateVector",
    "SchmidtSpectrum",
    "site_occupation",
    "site_occupations",
    "parity_correlation",
    "schmidt_spectrum",
    "entanglement_entropy",
    "entropy_at_cut",
    "energy_gap",
]

# Singular values below this are pure SVD noise; clamp before taking logs.
SCHMIDT_CLAMP = 1e-12


@dataclass
class StateVector:
    """Complex (or real) amplitudes over a basis table, unit norm."""

    amplitudes: np.ndarray
    basis: BasisTable

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes)
        if self.amplitudes.shape != (self.basis.dim,):
            raise ValueError(
                f"amplitude vector has shape {self.amplitudes.shape}, basis "
                f"dimension is {self.basis.dim}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @classmethod
    def from_basis_state(cls, basis: BasisTable, k: int) -> "StateVector":
        amps = np.zeros(basis.dim)
        amps[k] = 1.0
        return cls(amps, basis)


@dataclass
class SchmidtSpectrum:
    """Schmidt coefficients across a cut keeping ``cut`` sites on the right,
    sorted descending; their squares sum to one."""

    cut: int
    coefficients: np.ndarray


def _check_site(basis: BasisTable, i: int):
    if not 1 <= i <= basis.M:
        raise ValueError(f"site index must be in 1..{basis.M}, got {i}")


def site_occupation(psi: StateVector, i: int) -> tuple[float, float, float]:
    """Expected atom numbers (upper, lower, total) at 1-based site i."""
    _check_site(psi.basis, i)
    p = psi.probabilities()
    n_e = float(p @ psi.basis.occ_e[:, i - 1])
    n_g = float(p @ psi.basis.occ_g[:, i - 1])
    return n_e, n_g, n_e + n_g


def site_occupations(psi: StateVector) -> np.ndarray:
    """Total occupation expectation at every site, as an array of length M."""
    p = psi.probabilities()
    return p @ psi.basis.occ_total


def parity_correlation(psi: StateVector, d: int) -> float:
    """Two-site parity correlation |<s_M s_{M-d}> - <s_M><s_{M-d}>|.

    The parity s_i = exp(i*pi*n_i) uses the total occupation at site i,
    both components counted.  A state that factorizes across any cut
    separating the two sites gives exactly zero.
    """
    M = psi.basis.M
    if not 1 <= d <= M - 1:
        raise ValueError(f"distance must be in 1..{M - 1}, got {d}")
    p = psi.probabilities()
    par_m = 1.0 - 2.0 * (psi.basis.occ_total[:, M - 1] % 2)
    par_j = 1.0 - 2.0 * (psi.basis.occ_total[:, M - 1 - d] % 2)
    joint = float(p @ (par_m * par_j))
    return abs(joint - float(p @ par_m) * float(p @ par_j))


def _cut_groups(basis: BasisTable, l: int):
    """Index every basis state by its (left, right) occupation patterns for
    a cut keeping the last l sites on the right."""
    M = basis.M
    left_index: dict[tuple, int] = {}
    right_index: dict[tuple, int] = {}
    rows = np.empty(basis.dim, dtype=np.int64)
    cols = np.empty(basis.dim, dtype=np.int64)
    split = M - l
    for k in range(basis.dim):
        e = basis.occ_e[k]
        g = basis.occ_g[k]
        left = (tuple(e[:split]), tuple(g[:split]))
        right = (tuple(e[split:]), tuple(g[split:]))
        rows[k] = left_index.setdefault(left, len(left_index))
        cols[k] = right_index.setdefault(right, len(right_index))
    return rows, cols, len(left_index), len(right_index)


def schmidt_spectrum(psi: StateVector, l: int) -> SchmidtSpectrum:
    """Schmidt coefficients of the bipartition with the last l sites on the
    right, from the singular values of the reshaped amplitude matrix.

    SVD of the coefficient matrix is numerically stabler for near-zero
    coefficients than diagonalizing a reduced density matrix.
    """
    M = psi.basis.M
    if not 1 <= l <= M - 1:
        raise ValueError(f"cut size must be in 1..{M - 1}, got {l}")
    rows, cols, n_left, n_right = _cut_groups(psi.basis, l)
    A = np.zeros((n_left, n_right), dtype=psi.amplitudes.dtype)
    A[rows, cols] = psi.amplitudes
    coeffs = np.linalg.svd(A, compute_uv=False)
    coeffs = np.where(coeffs < SCHMIDT_CLAMP, 0.0, coeffs)
    return SchmidtSpectrum(cut=l, coefficients=coeffs)


def entanglement_entropy(spec: SchmidtSpectrum) -> float:
    """Von Neumann entropy -sum(lambda^2 * ln(lambda^2)), with 0*ln(0) = 0."""
    lam2 = spec.coefficients**2
    lam2 = lam2[lam2 > 0.0]
    if lam2.size == 0:
        return 0.0
    return float(-np.sum(lam2 * np.log(lam2)))


def entropy_at_cut(psi: StateVector, l: int) -> float:
    """Entanglement entropy across the cut keeping l sites on the right."""
    return entanglement_entropy(schmidt_spectrum(psi, l))


def energy_gap(sol: EigenSolution) -> float:
    """Gap between the two lowest eigenvalues."""
    if sol.k < 2:
        raise ValueError("need at least two eigenpairs to form a gap")
    return float(sol.energies[1] - sol.energies[0])
