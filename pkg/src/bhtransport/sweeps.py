"""Parameter sweeps behind the command-line experiments.

Each sweep solves the chain point by point over a drive-strength grid
(or propagates one ramp trajectory) and collects a plain numeric table.
Grid points are independent pure computations, dispatched to a thread
pool and reassembled in grid order, so results do not depend on the
worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .basis import BasisTable, enumerate_basis
from .dynamics import RampSchedule, evolve
from .eigensolver import ConvergenceError, lowest_eigenpairs
from .hamiltonian import build_drive_coupling, build_hamiltonian, chain_params
from .observables import (
    StateVector,
    entropy_at_cut,
    parity_correlation,
    site_occupations,
)
from .thresholds import omega_star

__all__ = ["SweepValidationError", "SweepSpec", "ResultTable", "run_sweep", "KINDS"]

KINDS = ("occupation", "parity", "entropy", "gap", "excited", "ramp", "thresholds")


class SweepValidationError(ValueError):
    """A sweep specification violates one of its invariants."""


@dataclass(frozen=True)
class SweepSpec:
    """Fully resolved description of one experiment run."""

    kind: str
    sites: int = 5
    atoms: int | None = None  # None: one atom per site
    hopping: float = 1.0
    interaction: float = 20.0
    detuning: float = 0.0
    trap: float = 0.0
    boundary: str = "open"
    omega_min: float = 0.0
    omega_max: float | None = None  # None: 1.2 * U * (N - 1)
    omega_step: float = 0.25
    cut: int | None = None  # None: every bipartition
    distance: int | None = None  # None: every distance
    states: int = 5
    ramp_rate: float = 1.0
    t_final: float | None = None  # None: ramp to 1.2 * last threshold
    threads: int = 1
    out: str | None = None

    @property
    def n_atoms(self) -> int:
        return self.sites if self.atoms is None else self.atoms

    def validate(self) -> "SweepSpec":
        if self.kind not in KINDS:
            raise SweepValidationError(
                f"kind must be one of {', '.join(KINDS)}; got {self.kind!r}"
            )
        if self.sites < 1:
            raise SweepValidationError("sites must be at least 1")
        if self.n_atoms < 0:
            raise SweepValidationError("atoms must be non-negative")
        if self.interaction < 0:
            raise SweepValidationError("interaction must be non-negative")
        if not math.isfinite(self.hopping):
            raise SweepValidationError("hopping must be finite")
        if self.boundary not in ("open", "periodic"):
            raise SweepValidationError("boundary must be 'open' or 'periodic'")
        if self.omega_step <= 0:
            raise SweepValidationError("omega_step must be positive")
        if self.omega_max is not None and self.omega_max < self.omega_min:
            raise SweepValidationError("omega grid is empty (omega_max < omega_min)")
        if self.cut is not None and not 1 <= self.cut <= self.sites - 1:
            raise SweepValidationError(f"cut must be in 1..{self.sites - 1}")
        if self.distance is not None and not 1 <= self.distance <= self.sites - 1:
            raise SweepValidationError(f"distance must be in 1..{self.sites - 1}")
        if self.states < 1:
            raise SweepValidationError("states must be at least 1")
        if self.kind == "ramp" and self.ramp_rate <= 0:
            raise SweepValidationError("ramp_rate must be positive")
        if self.t_final is not None and self.t_final <= 0:
            raise SweepValidationError("t_final must be positive")
        if self.threads < 1:
            raise SweepValidationError("threads must be at least 1")
        return self

    def resolved_omega_max(self) -> float:
        if self.omega_max is not None:
            return self.omega_max
        return 1.2 * self.interaction * max(self.n_atoms - 1, 1)

    def omega_grid(self) -> np.ndarray:
        lo = self.omega_min
        hi = self.resolved_omega_max()
        count = int(math.floor((hi - lo) / self.omega_step + 1e-9)) + 1
        grid = lo + self.omega_step * np.arange(count)
        if grid.size == 0:
            raise SweepValidationError("omega grid is empty")
        return grid

    def threshold_values(self) -> list[float]:
        if self.interaction <= 0 or self.n_atoms < 2:
            return []
        return [
            omega_star(n, self.interaction, self.detuning)
            for n in range(1, self.n_atoms)
        ]

    def model(self, omega: float = 0.0):
        return chain_params(
            self.sites,
            J=self.hopping,
            U=self.interaction,
            delta=self.detuning,
            trap=self.trap,
            omega=omega,
        )


@dataclass
class ResultTable:
    """Numeric sweep output: named columns, one row per grid point."""

    kind: str
    columns: list[str]
    rows: np.ndarray
    meta: dict


def _base_meta(spec: SweepSpec, basis: BasisTable | None) -> dict:
    meta = {
        "kind": spec.kind,
        "sites": spec.sites,
        "atoms": spec.n_atoms,
        "hopping": spec.hopping,
        "interaction": spec.interaction,
        "detuning": spec.detuning,
        "trap": spec.trap,
        "boundary": spec.boundary,
    }
    if basis is not None:
        meta["dimension"] = basis.dim
    for n, value in enumerate(spec.threshold_values(), start=1):
        meta[f"omega_star_{n}"] = value
    return meta


def _solve_point(h_base, h_drive, omega: float, k: int):
    op = h_base if omega == 0.0 else h_base + omega * h_drive
    return lowest_eigenpairs(op, k)


def _static_columns(spec: SweepSpec) -> tuple[list[str], int]:
    M = spec.sites
    if spec.kind == "occupation":
        cols = ["energy"] + [f"n_{i}" for i in range(1, M + 1)]
        return cols, 1
    if spec.kind == "parity":
        dists = [spec.distance] if spec.distance else list(range(1, M))
        return [f"C_{d}" for d in dists], 1
    if spec.kind == "entropy":
        cuts = [spec.cut] if spec.cut else list(range(1, M))
        return [f"S_{l}" for l in cuts], 1
    if spec.kind == "gap":
        return ["energy_0", "energy_1", "gap"], 2
    if spec.kind == "excited":
        k = spec.states
        return (
            [f"energy_{j}" for j in range(1, k + 1)]
            + [f"n_M_{j}" for j in range(1, k + 1)],
            k,
        )
    raise SweepValidationError(f"{spec.kind!r} is not a static sweep kind")


def _static_row(spec: SweepSpec, basis: BasisTable, h_base, h_drive, omega: float):
    cols, k = _static_columns(spec)
    try:
        sol = _solve_point(h_base, h_drive, omega, k)
    except ConvergenceError:
        return [omega, 1.0] + [math.nan] * len(cols)
    M = spec.sites
    if spec.kind == "occupation":
        psi = StateVector(sol.vectors[:, 0], basis)
        values = [sol.energies[0], *site_occupations(psi)]
    elif spec.kind == "parity":
        psi = StateVector(sol.vectors[:, 0], basis)
        dists = [spec.distance] if spec.distance else list(range(1, M))
        values = [parity_correlation(psi, d) for d in dists]
    elif spec.kind == "entropy":
        psi = StateVector(sol.vectors[:, 0], basis)
        cuts = [spec.cut] if spec.cut else list(range(1, M))
        values = [entropy_at_cut(psi, l) for l in cuts]
    elif spec.kind == "gap":
        values = [sol.energies[0], sol.energies[1], sol.energies[1] - sol.energies[0]]
    else:  # excited
        occ_m = [
            site_occupations(StateVector(sol.vectors[:, j], basis))[-1]
            for j in range(sol.k)
        ]
        values = list(sol.energies) + occ_m
    return [omega, 0.0] + [float(v) for v in values]


def _run_static(spec: SweepSpec) -> ResultTable:
    basis = enumerate_basis(spec.sites, spec.n_atoms)
    h_base = build_hamiltonian(spec.model(0.0), basis, spec.boundary)
    h_drive = build_drive_coupling(basis)
    grid = spec.omega_grid()
    cols, _ = _static_columns(spec)

    def point(omega):
        return _static_row(spec, basis, h_base, h_drive, float(omega))

    if spec.threads > 1:
        with ThreadPoolExecutor(max_workers=spec.threads) as pool:
            rows = list(pool.map(point, grid))
    else:
        rows = [point(omega) for omega in grid]

    meta = _base_meta(spec, basis)
    meta["omega_min"] = grid[0]
    meta["omega_max"] = grid[-1]
    meta["omega_step"] = spec.omega_step
    if spec.kind == "excited":
        meta["states"] = spec.states
    return ResultTable(
        kind=spec.kind,
        columns=["omega", "status"] + cols,
        rows=np.asarray(rows, dtype=float),
        meta=meta,
    )


def _run_ramp(spec: SweepSpec, n_samples: int = 400) -> ResultTable:
    basis = enumerate_basis(spec.sites, spec.n_atoms)
    params = spec.model(0.0)
    if spec.t_final is not None:
        t_final = spec.t_final
    else:
        if spec.n_atoms < 2 or spec.interaction <= 0:
            raise SweepValidationError(
                "t_final must be given when no transport threshold exists"
            )
        t_final = 1.2 * omega_star(
            spec.n_atoms - 1, spec.interaction, spec.detuning
        ) / spec.ramp_rate
    ground = lowest_eigenpairs(
        build_hamiltonian(params, basis, spec.boundary), 1
    )
    psi0 = StateVector(ground.vectors[:, 0], basis)
    M = spec.sites

    def occ_fn(i):
        return lambda psi: float(site_occupations(psi)[i])

    record = {f"n_{i + 1}": occ_fn(i) for i in range(M)}
    ramp = RampSchedule(rate=spec.ramp_rate, t_final=t_final)
    series = evolve(
        params, basis, ramp, psi0, record, boundary=spec.boundary,
        n_samples=n_samples,
    )

    cols = ["time", "omega"] + list(record) + ["norm"]
    rows = np.column_stack(
        [series.times, spec.ramp_rate * series.times]
        + [series.columns[name] for name in record]
        + [series.columns["norm"]]
    )
    meta = _base_meta(spec, basis)
    meta["ramp_rate"] = spec.ramp_rate
    meta["t_final"] = t_final
    return ResultTable(kind="ramp", columns=cols, rows=rows, meta=meta)


def _run_thresholds(spec: SweepSpec) -> ResultTable:
    if spec.interaction <= 0:
        raise SweepValidationError("thresholds require a positive interaction")
    if spec.n_atoms < 2:
        raise SweepValidationError("thresholds require at least two atoms")
    rows = [
        [float(n), omega_star(n, spec.interaction, spec.detuning)]
        for n in range(1, spec.n_atoms)
    ]
    return ResultTable(
        kind="thresholds",
        columns=["n", "omega_star"],
        rows=np.asarray(rows, dtype=float),
        meta=_base_meta(spec, None),
    )


def run_sweep(spec: SweepSpec) -> ResultTable:
    """Execute a validated sweep and return its result table.

    Grid points where the eigensolver fails to converge are flagged with
    status 1 and NaN observables; the sweep continues.
    """
    spec = spec.validate()
    if spec.kind == "thresholds":
        return _run_thresholds(spec)
    if spec.kind == "ramp":
        return _run_ramp(spec)
    return _run_static(spec)
