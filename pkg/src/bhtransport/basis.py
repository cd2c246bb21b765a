"""Number-conserving Fock basis for two-component bosons on a chain.

Each basis state records how many atoms sit in the upper internal state
and how many in the lower one, site by site.  The basis is restricted to
a fixed total atom number N, which both the lattice Hamiltonian and the
laser drive conserve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CapacityError",
    "BasisLookupError",
    "OccupationState",
    "BasisTable",
    "enumerate_basis",
]

# Soft guard against accidental huge enumerations; the hard limit is the
# platform index range checked separately.
DEFAULT_MAX_DIM = 10_000_000


class CapacityError(ValueError):
    """Requested basis is too large to enumerate and index."""


class BasisLookupError(KeyError):
    """Occupation state does not belong to the basis table."""


@dataclass(frozen=True)
class OccupationState:
    """Per-site occupations of the two internal components.

    ``occ_e[i]`` and ``occ_g[i]`` count atoms in the upper and lower
    state at site i (0-based internally).
    """

    occ_e: tuple[int, ...]
    occ_g: tuple[int, ...]

    def __post_init__(self):
        if len(self.occ_e) != len(self.occ_g):
            raise ValueError("occ_e and occ_g must have the same length")
        if any(n < 0 for n in self.occ_e) or any(n < 0 for n in self.occ_g):
            raise ValueError("occupation numbers must be non-negative")

    @property
    def n_sites(self) -> int:
        return len(self.occ_e)

    @property
    def total(self) -> int:
        return sum(self.occ_e) + sum(self.occ_g)

    def site_total(self, i: int) -> int:
        """Total occupation at 1-based site i."""
        return self.occ_e[i - 1] + self.occ_g[i - 1]

    def key(self) -> tuple[int, ...]:
        """Concatenated occupation sequence used for ordering and lookup."""
        return self.occ_e + self.occ_g


def _compositions(total, parts):
    """Yield all ways to write ``total`` as ``parts`` non-negative integers,
    in ascending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class BasisTable:
    """Ordered, indexed enumeration of all occupation states at fixed (M, N).

    States are sorted lexicographically on the concatenated
    (occ_e ++ occ_g) sequence, so two enumerations always agree.  Rank
    lookup is a hash map, O(1) amortized.  Instances are immutable after
    construction and safe to share between threads.
    """

    def __init__(self, M: int, N: int, max_dim: int = DEFAULT_MAX_DIM):
        if M < 1:
            raise ValueError(f"need at least one site, got M={M}")
        if N < 0:
            raise ValueError(f"atom number must be non-negative, got N={N}")
        dim = math.comb(2 * M + N - 1, N)
        if dim > max_dim:
            raise CapacityError(
                f"basis for M={M}, N={N} has {dim} states, above the cap {max_dim}"
            )
        if dim > np.iinfo(np.intp).max:
            raise CapacityError(
                f"basis dimension {dim} exceeds the platform index range"
            )
        self.M = M
        self.N = N
        self.dim = dim
        occ = np.empty((dim, 2 * M), dtype=np.int64)
        for k, comp in enumerate(_compositions(N, 2 * M)):
            occ[k] = comp
        # occ rows are already in lexicographic order by construction
        self.occ_e = occ[:, :M].copy()
        self.occ_g = occ[:, M:].copy()
        self.occ_total = self.occ_e + self.occ_g
        self._index = {tuple(row): k for k, row in enumerate(occ.tolist())}

    def state(self, k: int) -> OccupationState:
        """Occupation state at position k (unrank)."""
        return OccupationState(
            tuple(self.occ_e[k].tolist()), tuple(self.occ_g[k].tolist())
        )

    def rank(self, s: OccupationState) -> int:
        """Position of state ``s`` in the table."""
        try:
            return self._index[s.key()]
        except KeyError:
            raise BasisLookupError(
                f"state with occupations {s.key()} is not in the (M={self.M}, "
                f"N={self.N}) basis"
            ) from None

    def rank_key(self, key: tuple[int, ...]) -> int:
        """Rank lookup on a raw concatenated occupation tuple."""
        return self._index[key]

    @property
    def states(self) -> list[OccupationState]:
        return [self.state(k) for k in range(self.dim)]

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return (self.state(k) for k in range(self.dim))

    def __repr__(self) -> str:
        return f"BasisTable(M={self.M}, N={self.N}, dim={self.dim})"


def enumerate_basis(M: int, N: int, max_dim: int = DEFAULT_MAX_DIM) -> BasisTable:
    """Enumerate the fixed-N Fock basis of two-component bosons on M sites.

    The dimension is C(2M + N - 1, N); a :class:`CapacityError` is raised
    when that exceeds ``max_dim`` or the platform index range.
    """
    return BasisTable(M, N, max_dim=max_dim)
