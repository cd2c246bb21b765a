"""Closed-form transport thresholds and localized-branch energies.

In the strongly interacting chain with the drive at the end site, the
ground state switches from n to n+1 atoms localized at that site at a
coupling strength where the two branch energies cross.  These formulas
serve as oracles for the zero-hopping numerics and as markers on the
sweep outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ThresholdSet", "omega_star", "ground_energy_localized", "threshold_set"]


def omega_star(n: int, U: float, Delta: float = 0.0) -> float:
    """Coupling strength at which the n and n+1 localized branches cross.

    Returns (1/2) * sqrt((2*U*n + Delta)^2 - Delta^2); for zero detuning
    this reduces to n*U.
    """
    if n < 1:
        raise ValueError(f"branch index must be positive, got n={n}")
    if U <= 0:
        raise ValueError(f"interaction strength must be positive, got U={U}")
    radicand = (2.0 * U * n + Delta) ** 2 - Delta**2
    if radicand < 0:
        raise ValueError(
            f"no real crossing for n={n}, U={U}, Delta={Delta} (negative radicand)"
        )
    return 0.5 * math.sqrt(radicand)


def ground_energy_localized(n: int, U: float, Delta: float, Omega: float) -> float:
    """Energy of the branch with n atoms localized at the driven site.

    Valid at zero hopping when the remaining atoms occupy distinct sites:
    Delta*n/2 - (n/2)*sqrt(Delta^2 + 4*Omega^2) + (U/2)*n*(n-1).
    """
    if n < 0:
        raise ValueError(f"atom count must be non-negative, got n={n}")
    return (
        0.5 * Delta * n
        - 0.5 * n * math.sqrt(Delta**2 + 4.0 * Omega**2)
        + 0.5 * U * n * (n - 1)
    )


@dataclass(frozen=True)
class ThresholdSet:
    """The first N-1 branch-crossing couplings for a given U and detuning."""

    U: float
    Delta: float
    thresholds: tuple[float, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("thresholds must be strictly increasing")


def threshold_set(N: int, U: float, Delta: float = 0.0) -> ThresholdSet:
    """Crossings omega_star(1..N-1) for a chain loaded with N atoms."""
    if N < 1:
        raise ValueError(f"need at least one atom, got N={N}")
    values = tuple(omega_star(n, U, Delta) for n in range(1, N))
    return ThresholdSet(U=U, Delta=Delta, thresholds=values)
