"""Figures for filtration reports (rendered headless to image files)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 6.4

params = {
    "axes.labelsize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}

colors = ["#4eb3d3", "#2b8cbe", "#08589e", "#7bccc4", "#a8ddb5"]


def plot_filtration(F, check, path):
    """Betti numbers and Euler characteristics along the filtration stages.

    The top panel shows reduced Betti numbers (plus torsion rank) of every
    stage; the bottom panel compares the Euler characteristic of each ``X_i``
    with the value predicted by the cone count.
    """
    labels, betti, torsion = [], [], []
    if F.relative:
        from .simplicial import order_complex, reduced_homology

        h = reduced_homology(order_complex(F.poset, F.base)) if F.base else None
        labels.append("A")
        betti.append({d: b for d, b, _ in h.groups} if h else {})
        torsion.append(sum(len(t) for _, _, t in h.groups) if h else 0)
    for s in check.stages:
        for name, h in ((f"X{s.index}", s.homology_attached), (f"X~{s.index}", s.homology_after)):
            labels.append(name)
            betti.append({d: b for d, b, _ in h.groups})
            torsion.append(sum(len(t) for _, _, t in h.groups))
    dims = sorted({d for row in betti for d in row})

    with plt.rc_context(params):
        fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(fig_width, fig_width * golden_mean * 1.4), sharex=True)
        x = np.arange(len(labels))
        width = 0.8 / max(1, len(dims) + 1)
        for k, d in enumerate(dims):
            ax0.bar(x + k * width, [row.get(d, 0) for row in betti], width, color=colors[k % len(colors)],
                    label=f"betti {d}")
        ax0.bar(x + len(dims) * width, torsion, width, color="#d95f02", label="torsion")
        ax0.set_ylabel("reduced rank")
        ax0.legend(frameon=False, ncol=3)

        idx = [labels.index(f"X{s.index}") for s in check.stages]
        ax1.plot(idx, [s.euler_attached for s in check.stages], "o", color=colors[2], label="chi(K(X_i))")
        ax1.plot(idx, [s.euler_expected for s in check.stages], "x", color="#d95f02", markersize=8,
                 label="chi(K(X~_{i-1})) + cone terms")
        ax1.set_ylabel("Euler characteristic")
        ax1.set_xticks(x)
        ax1.set_xticklabels(labels, rotation=45)
        ax1.legend(frameon=False)
        status = "ok" if check.ok else "FAILED"
        fig.suptitle(f"filtration of {len(F.poset)} points, {len(F.critical)} critical ({status})")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
