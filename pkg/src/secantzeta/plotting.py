"""Matplotlib rendering of figure data produced by the CLI.

Renders the scatter of (r, value) samples to a file, optionally overlaid
with the rational pole-structure model on (1/6, 1/2) and its homothety
images covering r < 1/6.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .series import ModelSpec, model_eval, model_validity

_YLIM = {"psi": (-3.0, 4.0), "f": (-2.0, 3.0)}


def _model_segments(max_steps: int = 4, samples: int = 400):
    """(r, value) arrays for the base model and its first homothety images."""
    specs = [ModelSpec("rational_approx")]
    specs += [ModelSpec("homothety_extended", K) for K in range(1, max_steps + 1)]
    segments = []
    for spec in specs:
        lo, hi = model_validity(spec)
        pad = (hi - lo) * 1e-3
        rs = np.linspace(lo + pad, hi - pad, samples)
        segments.append((rs, np.array([model_eval(spec, float(r)) for r in rs])))
    return segments


def render_scatter(rows, which: str, path: str, overlay_model: bool = False) -> None:
    """Scatter plot of sampled series values, written to path."""
    rs = np.array([r for r, _ in rows])
    vs = np.array([v for _, v in rows])
    fig, ax = plt.subplots(figsize=(8.0, 3.2))
    ax.plot(rs, vs, ".", markersize=1.2, color="#1f4e79", alpha=0.5, rasterized=True)
    if overlay_model and which == "f":
        for seg_r, seg_v in _model_segments():
            ax.plot(seg_r, seg_v, "-", color="red", linewidth=1.0)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(*_YLIM[which])
    ax.set_xlabel("r")
    ax.set_ylabel("psi(r)" if which == "psi" else "f(r)")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=200)
    plt.close(fig)
