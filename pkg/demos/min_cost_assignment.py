"""
Minimum cost selection
======================

Pick at most one cell per row and column, exactly two cells in total, at
minimum cost. The flow solver is checked against brute force.
"""
import numpy as np

from polytran import (BoundsSpec, TransportMatrix, brute_min_cost,
                      enumerate_vertices, solve_min_cost)

rng = np.random.default_rng(3)
costs = rng.integers(-5, 10, size=(3, 4))
print(costs)

T = TransportMatrix.from_rows(costs.tolist())
spec = BoundsSpec.substochastic(3, 4, k=2)

G, value = solve_min_cost(T, spec)
print(G)
print("objective:", value)

_, best = brute_min_cost(T, enumerate_vertices(spec))
print("brute force:", best)
