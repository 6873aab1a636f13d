"""Convenience graph constructors for tests, demos, and experiments."""

from __future__ import annotations

import string

import numpy as np

from .graphs import Graph

__all__ = ["complete_graph", "path_graph", "random_connected_graph"]


def _default_ids(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"v{i}" for i in range(n))


def _vertex_array(value, n: int) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(n, float(arr))
    return arr


def path_graph(n: int, mu=1.0, h=1.0, weight: float = 1.0,
               ids: tuple[str, ...] | None = None) -> Graph:
    """Path on n vertices with uniform edge weight; mu and h may be
    scalars or per-vertex arrays."""
    if n < 1:
        raise ValueError("need at least one vertex")
    edges = tuple((i, i + 1, float(weight)) for i in range(n - 1))
    return Graph(ids or _default_ids(n), _vertex_array(mu, n), _vertex_array(h, n), edges)


def complete_graph(n: int, mu=1.0, h=1.0, weight: float = 1.0,
                   ids: tuple[str, ...] | None = None) -> Graph:
    """Complete graph on n vertices with uniform edge weight."""
    if n < 1:
        raise ValueError("need at least one vertex")
    edges = tuple((i, j, float(weight)) for i in range(n) for j in range(i + 1, n))
    return Graph(ids or _default_ids(n), _vertex_array(mu, n), _vertex_array(h, n), edges)


def random_connected_graph(rng: np.random.Generator, num_vertices: int,
                           mu_range: tuple[float, float] = (0.1, 10.0),
                           w_range: tuple[float, float] = (0.1, 10.0),
                           h_range: tuple[float, float] = (0.1, 10.0),
                           extra_edge_prob: float = 0.3) -> Graph:
    """Random connected graph: a random recursive tree plus independent
    extra edges. Measures, weights, and h are drawn uniformly from the
    given positive ranges."""
    n = int(num_vertices)
    if n < 1:
        raise ValueError("need at least one vertex")
    mu = rng.uniform(*mu_range, size=n)
    h = rng.uniform(*h_range, size=n)
    edges: list[tuple[int, int, float]] = []
    used: set[tuple[int, int]] = set()
    for v in range(1, n):
        parent = int(rng.integers(0, v))
        edges.append((parent, v, float(rng.uniform(*w_range))))
        used.add((parent, v))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in used and rng.random() < extra_edge_prob:
                edges.append((i, j, float(rng.uniform(*w_range))))
                used.add((i, j))
    return Graph(_default_ids(n), mu, h, tuple(edges))
