"""Figure rendering for entscale sweep tables.

Four figure kinds:

* ``lambda_curve``      entropy against the Ising coupling
* ``scaling_collapse``  entropy against the chord-length abscissa
* ``slope_check``       entropy against correlation length, log axis, with
                        reference slopes A c / 6 drawn from table metadata
* ``crossover``         half-split oscillator entropy across the gap range

Rendering is deterministic: fixed style, fixed size, no timestamps in the
output metadata, so repeated runs on one platform produce identical files.
Every figure carries the generating command line (echoed from the table
metadata) in a small caption footer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import PlotInputError, Table, load_table, require_rows

PLOT_KINDS = ("lambda_curve", "scaling_collapse", "slope_check", "crossover")

# reference central charges of the two lattice models shipped by the solver
MODEL_CHARGE = {"ising": 0.5, "figure": 0.5, "boson": 1.0}

_STYLE = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 130,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: input tables, figure kind, output file, overlays."""

    inputs: tuple[str, ...]
    kind: str
    output: str
    reference_lines: bool = True

    def __post_init__(self) -> None:
        if self.kind not in PLOT_KINDS:
            raise PlotInputError(f"unknown plot kind {self.kind!r}; pick one of {PLOT_KINDS}")
        if not self.inputs:
            raise PlotInputError("at least one input table is required")


def reference_slope(table: Table) -> tuple[float, Fraction] | None:
    """Reference d S / d ln(xi) for a sweep table: A times c over 6.

    The boundary-point count A and the generating command are read from the
    table metadata; returns None when either is unavailable.
    """
    command = str(table.meta.get("command", ""))
    charge = MODEL_CHARGE.get(command)
    points = table.meta.get("boundary_points")
    if charge is None or points is None:
        return None
    slope = points * charge / 6.0
    return slope, Fraction(points * int(round(charge * 2)), 12)


def _footer(tables: list[Table], spec: PlotSpec) -> str:
    parts = []
    for table in tables:
        argv = table.meta.get("argv")
        if argv:
            parts.append(f"entscale {argv}")
    parts.append(f"entscale-plots {spec.kind}")
    return " | ".join(parts)


def _save(fig, spec: PlotSpec) -> str:
    path = Path(spec.output)
    suffix = path.suffix.lower()
    metadata: dict = {}
    if suffix == ".png":
        metadata = {"Software": "entscale-plots"}
    elif suffix == ".svg":
        metadata = {"Date": None}
    elif suffix == ".pdf":
        metadata = {"CreationDate": None}
    fig.savefig(path, metadata=metadata)
    plt.close(fig)
    return str(path)


def _new_figure():
    fig, ax = plt.subplots()
    return fig, ax


def _draw_lambda_curve(ax, tables: list[Table], overlay: bool) -> None:
    for table in tables:
        lam = table.floats("lam")
        entropy = table.floats("entropy")
        n_sites = table.meta.get("n_sites", "?")
        ax.plot(lam, entropy, marker="o", markersize=3, linewidth=1.0, label=f"N = {n_sites}")
    if overlay:
        ax.axvline(1.0, color="crimson", linestyle="--", linewidth=1.0, label="critical coupling")
    ax.set_xlabel("coupling")
    ax.set_ylabel("block entropy S")
    ax.set_title("Half-block entropy across the transition")
    ax.legend(loc="best")


def _draw_scaling_collapse(ax, tables: list[Table], overlay: bool) -> None:
    for table in tables:
        ells = np.array(table.floats("ell"))
        entropy = np.array(table.floats("entropy"))
        size = table.meta.get("n_sites")
        if size is None:
            raise PlotInputError(f"{table.source}: scaling collapse needs n_sites metadata")
        chord = np.log((float(size) / math.pi) * np.sin(math.pi * ells / float(size)))
        ax.plot(chord, entropy, marker="o", markersize=3, linewidth=0.8, label=f"N = {size}")
        if overlay:
            charge = MODEL_CHARGE.get(str(table.meta.get("command", "")), 0.5)
            guide = entropy.mean() + (charge / 3.0) * (chord - chord.mean())
            ax.plot(chord, guide, linestyle="--", linewidth=1.0, color="gray",
                    label=f"slope c/3, c = {charge}")
    ax.set_xlabel("ln[(N/pi) sin(pi l/N)]")
    ax.set_ylabel("block entropy S")
    ax.set_title("Critical scaling collapse")
    ax.legend(loc="best")


def _draw_slope_check(ax, tables: list[Table], overlay: bool) -> None:
    for table in tables:
        xi = np.array(table.floats("xi"), dtype=float)
        entropy = np.array(table.floats("entropy"), dtype=float)
        order = np.argsort(xi)
        xi, entropy = xi[order], entropy[order]
        # a coupling sweep may hit each xi twice (both sides of the
        # transition); average the branches for the displayed curve
        uniq = np.unique(xi)
        if uniq.size != xi.size:
            entropy = np.array([entropy[xi == value].mean() for value in uniq])
            xi = uniq
        command = table.meta.get("command", table.source)
        points = table.meta.get("boundary_points", "?")
        ax.semilogx(xi, entropy, marker="o", markersize=3.5, linewidth=0.8,
                    label=f"{command}, A = {points}")
        if overlay:
            ref = reference_slope(table)
            if ref is not None:
                slope, name = ref
                guide = entropy.mean() + slope * (np.log(xi) - np.log(xi).mean())
                ax.semilogx(xi, guide, linestyle="--", linewidth=1.0,
                            label=f"reference slope {name}")
    ax.set_xlabel("correlation length")
    ax.set_ylabel("block entropy S")
    ax.set_title("Saturation entropy against correlation length")
    ax.legend(loc="best")


def _draw_crossover(ax, tables: list[Table], overlay: bool) -> None:
    for table in tables:
        xi = np.array(table.floats("xi"), dtype=float)
        entropy = np.array(table.floats("entropy"), dtype=float)
        size = table.meta.get("n_sites")
        if size is None:
            raise PlotInputError(f"{table.source}: crossover plot needs n_sites metadata")
        ratio = xi / float(size)
        order = np.argsort(ratio)
        ratio, entropy = ratio[order], entropy[order]
        ax.semilogx(ratio, entropy, marker="o", markersize=3.5, linewidth=0.8,
                    label=f"L = {size}")
        if overlay:
            massive = ratio <= 0.05
            if massive.sum() >= 2:
                xi_m = ratio[massive] * float(size)
                offset = float(np.mean(entropy[massive] - np.log(xi_m) / 6.0))
                guide = np.log(xi_m) / 6.0 + offset
                ax.semilogx(ratio[massive], guide, linestyle="--", linewidth=1.0,
                            color="gray", label="(1/6) ln xi + const")
    ax.set_xlabel("xi / L")
    ax.set_ylabel("half-split entropy S")
    ax.set_title("Massive-to-critical crossover")
    ax.legend(loc="best")


_DRAWERS = {
    "lambda_curve": _draw_lambda_curve,
    "scaling_collapse": _draw_scaling_collapse,
    "slope_check": _draw_slope_check,
    "crossover": _draw_crossover,
}


def render(spec: PlotSpec) -> str:
    """Render the figure described by ``spec``; returns the output path.

    All inputs are parsed and validated before anything is written, so a
    bad input never leaves a file behind.
    """
    tables = [require_rows(load_table(path)) for path in spec.inputs]
    drawer = _DRAWERS[spec.kind]
    with plt.rc_context(_STYLE):
        fig, ax = _new_figure()
        try:
            drawer(ax, tables, spec.reference_lines)
            fig.text(0.01, 0.005, _footer(tables, spec), fontsize=5, color="gray")
            fig.tight_layout(rect=(0.0, 0.02, 1.0, 1.0))
            return _save(fig, spec)
        except Exception:
            plt.close(fig)
            raise
