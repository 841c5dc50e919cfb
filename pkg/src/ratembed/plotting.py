"""Static figures for plane embeddings."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402

from ratembed.regularizer import PlaneEmbedding  # noqa: E402

STYLE = {
    "svg.hashsalt": "ratembed",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def render_plane_embedding(
    pe: PlaneEmbedding,
    path,
    highlight: PlaneEmbedding | None = None,
    title: str | None = None,
) -> None:
    """Write a figure of ``pe`` to ``path``; edges of ``highlight`` drawn on top.

    Output is byte-stable for identical input (fixed hash salt, no date).
    """
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 6))
        segs = [(pe.coords[u], pe.coords[v]) for u, v in pe.graph.edges]
        ax.add_collection(LineCollection(segs, colors="0.6", linewidths=0.6))
        xs = [p[0] for p in pe.coords.values()]
        ys = [p[1] for p in pe.coords.values()]
        ax.scatter(xs, ys, s=6, color="0.2", zorder=3)
        if highlight is not None:
            hsegs = [(highlight.coords[u], highlight.coords[v]) for u, v in highlight.graph.edges]
            ax.add_collection(LineCollection(hsegs, colors="tab:red", linewidths=1.6, zorder=4))
            hx = [p[0] for p in highlight.coords.values()]
            hy = [p[1] for p in highlight.coords.values()]
            ax.scatter(hx, hy, s=14, color="tab:red", zorder=5)
        ax.set_aspect("equal")
        ax.autoscale()
        if title:
            ax.set_title(title)
        fmt = str(path).rsplit(".", 1)[-1].lower()
        metadata = {"Date": None} if fmt == "svg" else None
        fig.savefig(path, metadata=metadata, bbox_inches="tight")
        plt.close(fig)
