"""Figures of the head and tail coefficients against the color."""

from __future__ import annotations

import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .stability import Prediction, VerificationReport  # noqa: E402


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name) or "knot"


def plot_report(report: VerificationReport, outdir, predictions: dict[int, Prediction] | None = None) -> Path | None:
    """Write ``<outdir>/<knot>.png`` with |head| and |tail| per color.

    Dashed lines mark the predicted values at the largest color when
    ``predictions`` is given.  Returns the path, or None when no color was
    computed.
    """
    ns = sorted(report.headtails)
    if not ns:
        return None
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharey=True)
    for ax, side in zip(axes, ("head", "tail")):
        for i, marker in zip(range(3), ("o", "s", "^")):
            vals = [getattr(report.headtails[n], f"abs_{side}")[i] for n in ns]
            ax.plot(ns, vals, marker=marker, label=f"coefficient {i + 1}")
            if predictions and ns[-1] in predictions:
                p = predictions[ns[-1]]
                target = (p.head if side == "head" else p.tail)[i]
                if target is not None:
                    ax.axhline(target, ls="--", lw=0.8, color=ax.lines[-1].get_color())
        ax.set_title(f"|{side}| of J'(n)")
        ax.set_xlabel("color n")
        ax.set_xticks(ns)
        ax.grid(alpha=0.3)
    axes[0].set_ylabel("absolute value")
    axes[1].legend(loc="best", fontsize=8)
    fig.suptitle(f"{report.knot or 'knot'} ({report.crossings} crossings)")
    fig.tight_layout()
    path = outdir / f"{_safe(report.knot or 'knot')}.png"
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
