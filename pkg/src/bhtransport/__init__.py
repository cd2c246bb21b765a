"""Exact diagonalization of a driven two-component Bose-Hubbard chain.

A laser coupling the two internal states of the atoms at one end of the
chain pulls atoms to that site step by step; this package computes the
resulting ground-state transport staircase, particle-hole parity
correlations, bipartite entanglement entropy, energy-gap scaling, and
adiabatic ramp dynamics at desk scale.
"""

from .basis import (
    BasisLookupError,
    BasisTable,
    CapacityError,
    OccupationState,
    enumerate_basis,
)
from .dynamics import PropagationError, RampSchedule, SampledSeries, evolve
from .eigensolver import (
    ConvergenceError,
    EigenSolution,
    dense_spectrum,
    lowest_eigenpairs,
)
from .hamiltonian import (
    ModelParams,
    build_drive_coupling,
    build_hamiltonian,
    chain_params,
    edge_drive,
    harmonic_profile,
    matvec,
)
from .observables import (
    SchmidtSpectrum,
    StateVector,
    energy_gap,
    entanglement_entropy,
    entropy_at_cut,
    parity_correlation,
    schmidt_spectrum,
    site_occupation,
    site_occupations,
)
from .sweeps import KINDS, ResultTable, SweepSpec, SweepValidationError, run_sweep
from .thresholds import ThresholdSet, ground_energy_localized, omega_star, threshold_set

__version__ = "0.1.0"

__all__ = [
    "BasisLookupError",
    "BasisTable",
    "CapacityError",
    "OccupationState",
    "enumerate_basis",
    "ModelParams",
    "build_drive_coupling",
    "build_hamiltonian",
    "chain_params",
    "edge_drive",
    "harmonic_profile",
    "matvec",
    "ConvergenceError",
    "EigenSolution",
    "dense_spectrum",
    "lowest_eigenpairs",
    "StateVector",
    "SchmidtSpectrum",
    "site_occupation",
    "site_occupations",
    "parity_correlation",
    "schmidt_spectrum",
    "entanglement_entropy",
    "entropy_at_cut",
    "energy_gap",
    "ThresholdSet",
    "omega_star",
    "ground_energy_localized",
    "threshold_set",
    "PropagationError",
    "RampSchedule",
    "SampledSeries",
    "evolve",
    "KINDS",
    "ResultTable",
    "SweepSpec",
    "SweepValidationError",
    "run_sweep",
    "__version__",
]
