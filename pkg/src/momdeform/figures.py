"""Figure datasets and rendered plots.

Each figure writes its data as deterministic CSV (one file per panel, header
row, 17 significant digits, LF endings) plus a matplotlib PNG rendered from
exactly those columns.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import susy  # noqa: E402
from .susy import Family, ZeroMode  # noqa: E402
from .verify import FAMILY1_GAMMAS, FAMILY2_GAMMAS  # noqa: E402


def format_value(x):
    return f"{float(x):.17g}"


def write_csv(path, header, columns):
    """Write columns (equal-length 1-d arrays) as CSV with LF endings."""
    rows = len(columns[0])
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(format_value(col[i]) for col in columns) + "\n")


def _render(path, p, curves, ylabel, ylim=None):
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, values in curves:
        ax.plot(p, values, label=label)
    ax.set_xlabel("p")
    ax.set_ylabel(ylabel)
    if ylim is not None:
        ax.set_ylim(*ylim)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_partner_potentials(outdir, pmin=0.01, pmax=10.0, n=1000):
    """The undeformed partner potentials (fig1)."""
    p = np.linspace(pmin, pmax, n)
    v1 = susy.potential(susy.PotentialKind.V1, p)
    v2 = susy.potential(susy.PotentialKind.V2, p)
    csv_path = os.path.join(outdir, "fig1_partner_potentials.csv")
    write_csv(csv_path, ["p", "V1", "V2"], [p, v1, v2])
    _render(os.path.join(outdir, "fig1_partner_potentials.png"), p,
            [("V1", v1), ("V2", v2)], "V(p)")
    return [csv_path]


def figure_deformed_families(outdir, pmin=0.01, pmax=10.0, n=1000,
                             gammas1=FAMILY1_GAMMAS, gammas2=FAMILY2_GAMMAS):
    """Six panels (fig2): superpotential, deformed potential and normalized
    zero mode for each family, one column per deformation parameter."""
    p = np.linspace(pmin, pmax, n)
    written = []
    spec = [
        ("family1", Family.FAMILY1, gammas1),
        ("family2", Family.FAMILY2, gammas2),
    ]
    for tag, family, gammas in spec:
        panels = {
            "W": lambda g: susy.w_deformed(family, g, p),
            "V": lambda g: susy.potential_deformed(family, g, p),
            "psi": lambda g: susy.zeromode(
                ZeroMode(family=family, gamma=g, normalized=True), p),
        }
        for quantity, fn in panels.items():
            cols = [p]
            header = ["p"]
            curves = []
            for g in gammas:
                vals = fn(g)
                cols.append(vals)
                header.append(f"{quantity}[gamma={g:g}]")
                curves.append((f"gamma={g:g}", vals))
            csv_path = os.path.join(outdir, f"fig2_{tag}_{quantity}.csv")
            write_csv(csv_path, header, cols)
            _render(os.path.join(outdir, f"fig2_{tag}_{quantity}.png"),
                    p, curves, quantity)
            written.append(csv_path)
    return written


def figure_bending(outdir, gamma=-1000.0, pmin=0.01, pmax=40.0, n=4000):
    """The bending of the family-2 superpotential onto the -sqrt(p) branch
    (fig3), with the two parabolic branches as references."""
    p = np.linspace(pmin, pmax, n)
    w = susy.w_deformed(Family.FAMILY2, gamma, p)
    root_p = np.sqrt(p)
    csv_path = os.path.join(outdir, "fig3_bending.csv")
    write_csv(csv_path, ["p", f"W[gamma={gamma:g}]", "sqrt_p", "neg_sqrt_p"],
              [p, w, root_p, -root_p])
    _render(os.path.join(outdir, "fig3_bending.png"), p,
            [(f"gamma={gamma:g}", w), ("sqrt(p)", root_p),
             ("-sqrt(p)", -root_p)], "W(p)")
    return [csv_path]


FIGURES = {
    "fig1": figure_partner_potentials,
    "fig2": figure_deformed_families,
    "fig3": figure_bending,
}
