"""Figure rendering for scan reports.

Rendered next to the CSV so a grid scan leaves both a machine-readable table
and a picture of the measured extremal constant against both envelopes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_scan_plot(rows: list[dict], path: str) -> None:
    """lambda_max vs N, one line per Q, with envelope curves dashed."""
    qs = sorted({r["Q"] for r in rows})
    fig, ax = plt.subplots(figsize=(7, 5))
    for q in qs:
        cells = sorted((r for r in rows if r["Q"] == q), key=lambda r: r["N"])
        ns = [r["N"] for r in cells]
        ax.plot(ns, [r["lambda_max"] for r in cells], "o-", label=f"Q={q} measured")
        ax.plot(ns, [r["trivial_envelope"] for r in cells], "--", alpha=0.5,
                label=f"Q={q} trivial env")
        ax.plot(ns, [r["theorem_envelope"] for r in cells], ":", alpha=0.5,
                label=f"Q={q} theorem env")
    ax.set_xlabel("N")
    ax.set_ylabel("extremal constant / envelope (unit norm)")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.legend(fontsize=7)
    ax.set_title("Measured sieve constant vs envelopes")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
