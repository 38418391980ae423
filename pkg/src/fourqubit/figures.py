"""Figure and CSV companions for the report command.

Renders the spectral signature and monotone table as PNGs and the
concurrence / tangle-average tables as CSVs, all into one directory.
Inputs are taken from the assembled report document (plain dicts and
[re, im] pairs) so this module stays decoupled from the dataclasses.
"""

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _signature_png(doc, path):
    quad = [complex(re, im) for re, im in doc["signature"]["quad"]]
    rrt = [complex(re, im) for re, im in doc["signature"]["rrtEigenvalues"]]
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.axhline(0.0, color="0.85", lw=0.8, zorder=0)
    ax.axvline(0.0, color="0.85", lw=0.8, zorder=0)
    ax.scatter(
        [z.real for z in rrt],
        [z.imag for z in rrt],
        marker="s",
        s=60,
        facecolors="none",
        edgecolors="tab:orange",
        label="eig $RR^T$",
    )
    ax.scatter(
        [z.real for z in quad],
        [z.imag for z in quad],
        marker="o",
        s=40,
        color="tab:blue",
        label="signature quad",
    )
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("spectral signature (%s)" % doc["family"]["family"])
    ax.legend(loc="best", fontsize=8)
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={})
    plt.close(fig)


def _monotones_png(doc, path):
    alphas = [row["alpha"] for row in doc["monotones"]]
    values = [row["value"] for row in doc["monotones"]]
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.bar([str(a) for a in alphas], values, color="tab:blue", width=0.6)
    ax.set_xlabel(r"$\alpha$")
    ax.set_ylabel(r"$M_\alpha$")
    ax.set_title("entanglement monotones")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={})
    plt.close(fig)


def _concurrence_csv(doc, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kept_pair", "concurrence"])
        for pair in sorted(doc["concurrences"]):
            writer.writerow([pair, "%.17g" % doc["concurrences"][pair]])


def _tangle_csv(doc, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["traced_qubit", "mean", "std", "decomposition_dependent"]
        )
        for qubit in sorted(doc["tangleAverages"]):
            row = doc["tangleAverages"][qubit]
            writer.writerow(
                [
                    qubit,
                    "%.17g" % row["mean"],
                    "%.17g" % row["std"],
                    int(row["decompositionDependent"]),
                ]
            )


def render_figures(doc, outdir):
    """Write the four companion files; returns their paths keyed by kind."""
    os.makedirs(outdir, exist_ok=True)
    paths = {
        "signature": os.path.join(outdir, "signature.png"),
        "monotones": os.path.join(outdir, "monotones.png"),
        "concurrences": os.path.join(outdir, "concurrences.csv"),
        "tangleAverages": os.path.join(outdir, "tangle_averages.csv"),
    }
    _signature_png(doc, paths["signature"])
    _monotones_png(doc, paths["monotones"])
    _concurrence_csv(doc, paths["concurrences"])
    _tangle_csv(doc, paths["tangleAverages"])
    return paths
