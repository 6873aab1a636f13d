"""
Discrete calculus on a weighted graph
=====================================

Build a small graph, evaluate the mu-Laplacian, the gradient form, and
the Dirichlet energy, and check the summation-by-parts identity that
ties them together.
"""

import numpy as np

from kwgraph import (
    dirichlet_energy,
    gamma,
    integrate,
    laplacian,
    mu_inner,
    parse_graph,
    path_graph,
    project_mean_zero,
    serialize_graph,
)

# a path on three vertices with unit weights and measures
g = path_graph(3)
print("graph:", g)
print("volume:", g.volume)
print()

# any vertex function is just an array ordered like g.vertex_ids
u = np.array([1.0, 0.0, -1.0])
print("u =", dict(zip(g.vertex_ids, u)))
print("integral of u dmu:", integrate(g, u))
print("Delta u =", laplacian(g, u))
print("Gamma(u, u) =", gamma(g, u, u))
print("Dirichlet energy:", dirichlet_energy(g, u))
print()

# summation by parts: <-Delta u, v>_mu equals integral Gamma(u, v) dmu
rng = np.random.default_rng(7)
v = rng.standard_normal(3)
lhs = mu_inner(g, -laplacian(g, u), v)
rhs = integrate(g, gamma(g, u, v))
print("Green identity gap:", abs(lhs - rhs))
print()

# the mean-zero projection removes the constant component
w = project_mean_zero(g, np.array([5.0, 6.0, 7.0]))
print("mean-zero part of (5, 6, 7):", w)
print("its integral:", integrate(g, w))
print()

# graphs round-trip through a small JSON document
text = serialize_graph(g)
print("serialized form:")
print(text)
assert parse_graph(text) == g
