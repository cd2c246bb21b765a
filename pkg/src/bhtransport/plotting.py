"""Render sweep tables to figure files next to the CSV output.

Uses the Agg backend so rendering works headless.  Threshold markers
recorded in the table header are drawn as vertical dashed lines on the
drive-strength axis.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweeps import ResultTable

__all__ = ["render_figure"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

plt.rcParams.update(
    {
        "figure.figsize": (6.0, 6.0 * _GOLDEN),
        "font.size": 10,
        "axes.labelsize": 10,
        "legend.fontsize": 8,
        "lines.linewidth": 1.4,
        "savefig.dpi": 150,
        "savefig.bbox": "tight",
    }
)


def _thresholds(meta: dict) -> list[float]:
    marks = []
    n = 1
    while f"omega_star_{n}" in meta:
        marks.append(float(meta[f"omega_star_{n}"]))
        n += 1
    return marks


def _mark_thresholds(ax, meta):
    for w in _thresholds(meta):
        ax.axvline(w, color="red", ls="--", lw=0.7, alpha=0.6)


def _col(table: ResultTable, name: str):
    return table.rows[:, table.columns.index(name)]


def render_figure(table: ResultTable, path) -> None:
    """Draw the figure matching the table's sweep kind and save it."""
    fig, ax = plt.subplots()
    kind = table.kind
    meta = table.meta
    M = int(meta.get("sites", 0))

    if kind == "occupation":
        ax.plot(_col(table, "omega"), _col(table, f"n_{M}"), color="black")
        _mark_thresholds(ax, meta)
        ax.set_xlabel(r"$\Omega$")
        ax.set_ylabel(rf"$\langle n_{{{M}}} \rangle$")
    elif kind == "parity":
        omega = _col(table, "omega")
        for name in table.columns:
            if name.startswith("C_"):
                ax.plot(omega, _col(table, name), label=f"d={name[2:]}")
        _mark_thresholds(ax, meta)
        ax.set_xlabel(r"$\Omega$")
        ax.set_ylabel(r"$C(d)$")
        ax.legend()
    elif kind == "entropy":
        omega = _col(table, "omega")
        for name in table.columns:
            if name.startswith("S_"):
                ax.plot(omega, _col(table, name), label=f"l={name[2:]}")
        _mark_thresholds(ax, meta)
        ax.set_xlabel(r"$\Omega$")
        ax.set_ylabel(r"$E(\rho)$")
        ax.legend()
    elif kind == "gap":
        ax.semilogy(_col(table, "omega"), _col(table, "gap"), color="black")
        _mark_thresholds(ax, meta)
        ax.set_xlabel(r"$\Omega$")
        ax.set_ylabel(r"$\Delta E$")
    elif kind == "excited":
        omega = _col(table, "omega")
        for name in table.columns:
            if name.startswith("n_M_"):
                ax.plot(omega, _col(table, name), label=f"state {name[4:]}")
        _mark_thresholds(ax, meta)
        ax.set_xlabel(r"$\Omega$")
        ax.set_ylabel(rf"$\langle n_{{{M}}} \rangle$")
        ax.legend()
    elif kind == "ramp":
        ax.plot(_col(table, "time"), _col(table, f"n_{M}"), color="black")
        ax.set_xlabel(r"$Jt$")
        ax.set_ylabel(rf"$\langle n_{{{M}}} \rangle$")
    elif kind == "thresholds":
        ax.stem(_col(table, "n"), _col(table, "omega_star"))
        ax.set_xlabel("n")
        ax.set_ylabel(r"$\Omega^*_n$")
    else:
        plt.close(fig)
        raise ValueError(f"no renderer for sweep kind {kind!r}")

    fig.savefig(path)
    plt.close(fig)
