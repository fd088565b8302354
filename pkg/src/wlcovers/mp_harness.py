"""Deterministic message-passing embeddings, no training involved.

Two aggregation layers with ReLU followed by stacked mean/max pooling: enough
depth to reproduce the structural blindness of neighborhood aggregation.
Covers of one base receive bit-for-bit identical per-vertex trajectories
under structure-only features (each vertex behaves exactly like its base
image and the pooled means coincide because fibers share one size), while
vertex-identifying features break the symmetry.

All weights come from an explicit 64-bit linear congruential generator so the
numbers are reproducible from the documented recipe alone:

    state_0   = (seed * 6364136223846793005 + 1442695040888963407) mod 2**64
    state_k+1 = (state_k * 6364136223846793005 + 1442695040888963407) mod 2**64
    u_k       = (state_k+1 >> 11) / 2**53          # uniform in [0, 1)

Weight entries are 2*u - 1 scaled by 1/sqrt(fan_in), drawn row-major, W1
before W2, layer by layer. Normal draws (random features) use Box-Muller on
consecutive uniforms: sqrt(-2*ln(1 - u1)) * cos(2*pi*u2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph_core import Graph

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1

FEATURE_KINDS = ("constant", "degree", "random", "one_hot_id")

DEFAULT_TOLERANCE = 1e-6


class _Lcg:
    def __init__(self, seed: int):
        self.state = (seed * _MULT + _INC) & _MASK

    def uniform(self) -> float:
        self.state = (self.state * _MULT + _INC) & _MASK
        return (self.state >> 11) / 2**53

    def symmetric(self) -> float:
        return 2.0 * self.uniform() - 1.0

    def normal(self) -> float:
        u1 = self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def matrix(self, rows: int, cols: int, scale: float) -> np.ndarray:
        return np.array(
            [[self.symmetric() * scale for _ in range(cols)] for _ in range(rows)]
        )


@dataclass(frozen=True)
class FeatureSpec:
    """Per-vertex input features: constant ones, degrees, seeded normal
    scalars, or one-hot vertex indicators."""

    kind: str
    seed: int = 0

    def __post_init__(self):
        if self.kind not in FEATURE_KINDS:
            raise ValueError(f"unknown feature kind {self.kind!r}; pick one of {FEATURE_KINDS}")

    def dimension(self, g: Graph) -> int:
        return g.vertex_count if self.kind == "one_hot_id" else 1

    def features(self, g: Graph) -> np.ndarray:
        n = g.vertex_count
        if self.kind == "constant":
            return np.ones((n, 1))
        if self.kind == "degree":
            return np.array([[float(g.degree(v))] for v in range(n)])
        if self.kind == "random":
            rng = _Lcg(self.seed)
            return np.array([[rng.normal()] for _ in range(n)])
        return np.eye(n)


@dataclass(frozen=True)
class MPModel:
    """Weight recipe for the embedding engine; evaluation is deterministic.

    ``aggregation`` is "sum" (default) or "mean". Weights depend only on
    (seed, layer_count, hidden_dim, input dimension).
    """

    layer_count: int = 2
    hidden_dim: int = 100
    seed: int = 42
    aggregation: str = "sum"

    def __post_init__(self):
        if self.layer_count < 1:
            raise ValueError("at least one layer required")
        if self.aggregation not in ("sum", "mean"):
            raise ValueError("aggregation must be 'sum' or 'mean'")


@lru_cache(maxsize=None)
def _layer_weights(model: MPModel, input_dim: int):
    rng = _Lcg(model.seed)
    weights = []
    fan_in = input_dim
    for _ in range(model.layer_count):
        scale = 1.0 / math.sqrt(fan_in)
        w_self = rng.matrix(model.hidden_dim, fan_in, scale)
        w_neigh = rng.matrix(model.hidden_dim, fan_in, scale)
        weights.append((w_self, w_neigh))
        fan_in = model.hidden_dim
    return tuple(weights)


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.vertex_count, g.vertex_count))
    for v, row in enumerate(g.adjacency):
        for u in row:
            a[v, u] = 1.0
    return a


def embed_graph(g: Graph, features, model: MPModel = MPModel()) -> np.ndarray:
    """Evaluate the message-passing stack and pool to one vector.

    x^{l+1}(v) = relu(W1 x^l(v) + W2 * agg_{u ~ v} x^l(u)); the output is the
    vertex-mean concatenated with the vertex-max of the last layer.
    ``features`` is a FeatureSpec or an explicit (n, c) array.
    """
    if isinstance(features, FeatureSpec):
        x = features.features(g)
    else:
        x = np.asarray(features, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.shape[0] != g.vertex_count:
            raise ValueError(
                f"feature rows ({x.shape[0]}) do not match vertex count ({g.vertex_count})"
            )
    if g.vertex_count == 0:
        return np.zeros(2 * model.hidden_dim)
    adjacency = _adjacency_matrix(g)
    degrees = adjacency.sum(axis=1, keepdims=True)
    for w_self, w_neigh in _layer_weights(model, x.shape[1]):
        aggregated = adjacency @ x
        if model.aggregation == "mean":
            aggregated = aggregated / np.maximum(degrees, 1.0)
        x = np.maximum(x @ w_self.T + aggregated @ w_neigh.T, 0.0)
    return np.concatenate([x.mean(axis=0), x.max(axis=0)])


def expected_indistinguishable(kind: str) -> bool:
    """Structure-only features cannot separate covers of a common base;
    identifying features are expected to."""
    if kind not in FEATURE_KINDS:
        raise ValueError(f"unknown feature kind {kind!r}")
    return kind in ("constant", "degree")


@dataclass
class IndistinguishabilityReport:
    distances: np.ndarray
    tolerance: float
    scale: float
    indistinguishable: bool
    predicted_accuracy: float

    @property
    def verdict(self) -> str:
        return "indistinguishable" if self.indistinguishable else "distinguishable"

    @property
    def max_distance(self) -> float:
        return float(self.distances.max()) if self.distances.size else 0.0


def indistinguishability_report(
    graphs,
    features,
    model: MPModel = MPModel(),
    tolerance: float = DEFAULT_TOLERANCE,
) -> IndistinguishabilityReport:
    """Pairwise max-norm distances between graph embeddings, plus a verdict.

    "indistinguishable" means every pairwise distance stays below
    ``tolerance`` relative to the largest embedding magnitude (floored at 1),
    in which case any readout is constant on the set and a k-class labelling
    can only be predicted at rate 1/k; otherwise the classes are separable.
    """
    graphs = list(graphs)
    if len(graphs) < 2:
        raise ValueError("need at least two graphs to compare")
    embeddings = [embed_graph(g, features, model) for g in graphs]
    k = len(embeddings)
    distances = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            d = float(np.max(np.abs(embeddings[i] - embeddings[j])))
            distances[i, j] = distances[j, i] = d
    scale = max(1.0, max(float(np.max(np.abs(e))) for e in embeddings))
    indist = bool(distances.max() < tolerance * scale)
    return IndistinguishabilityReport(
        distances=distances,
        tolerance=tolerance,
        scale=scale,
        indistinguishable=indist,
        predicted_accuracy=(1.0 / k) if indist else 1.0,
    )
