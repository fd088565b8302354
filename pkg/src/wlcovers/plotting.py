"""Figure rendering for report paths: colored graph drawings and distance
heatmaps, always written to files (Agg backend, nothing is shown)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .graph_core import Graph


def spring_layout(g: Graph, seed: int = 0, iterations: int = 200) -> np.ndarray:
    """Deterministic force-directed layout; returns an (n, 2) position array."""
    n = g.vertex_count
    if n == 0:
        return np.zeros((0, 2))
    rng = np.random.default_rng(seed)
    pos = rng.uniform(-1.0, 1.0, size=(n, 2))
    if n == 1:
        return pos
    adjacency = np.zeros((n, n))
    for v, row in enumerate(g.adjacency):
        for u in row:
            adjacency[v, u] = 1.0
    k = 1.0 / np.sqrt(n)
    temperature = 0.1
    for step in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-6)
        repulsion = (k * k / dist**2)[:, :, None] * delta
        attraction = (adjacency * dist / k)[:, :, None] * delta
        disp = repulsion.sum(axis=1) - attraction.sum(axis=1)
        length = np.maximum(np.linalg.norm(disp, axis=1, keepdims=True), 1e-9)
        pos += disp / length * min(temperature, float(length.max()))
        temperature *= 0.98
    pos -= pos.mean(axis=0)
    span = np.abs(pos).max()
    if span > 0:
        pos /= span
    return pos


def save_graph_figure(g: Graph, path, colors=None, title=None, seed: int = 0):
    """Draw a graph to ``path`` with nodes colored by ``colors`` (or uniform)."""
    pos = spring_layout(g, seed=seed)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    for u, w in g.edges():
        ax.plot(
            [pos[u, 0], pos[w, 0]],
            [pos[u, 1], pos[w, 1]],
            color="0.6",
            linewidth=1.0,
            zorder=1,
        )
    if colors is None:
        node_colors = ["#4878d0"] * g.vertex_count
    else:
        cmap = plt.get_cmap("tab20")
        node_colors = [cmap(c % 20) for c in colors]
    ax.scatter(pos[:, 0], pos[:, 1], s=160, c=node_colors, edgecolors="black", zorder=2)
    labels = range(g.vertex_count) if colors is None else colors
    for v, text in enumerate(labels):
        ax.annotate(
            str(text), pos[v], ha="center", va="center", fontsize=7, zorder=3
        )
    if title:
        ax.set_title(title)
    ax.set_axis_off()
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_distance_heatmap(distances, path, labels=None, title=None):
    """Render a pairwise-distance matrix as an annotated heatmap."""
    distances = np.asarray(distances, dtype=float)
    k = distances.shape[0]
    fig, ax = plt.subplots(figsize=(1.0 + 0.8 * k, 1.0 + 0.8 * k))
    image = ax.imshow(distances, cmap="viridis")
    fig.colorbar(image, ax=ax, fraction=0.046)
    ticks = list(range(k))
    names = labels if labels is not None else ticks
    ax.set_xticks(ticks, names)
    ax.set_yticks(ticks, names)
    for i in range(k):
        for j in range(k):
            ax.text(
                j, i, f"{distances[i, j]:.1e}", ha="center", va="center",
                color="white", fontsize=6,
            )
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
