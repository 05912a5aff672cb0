"""
Fixing the total sum
====================

With sigma(A) = k every split keeps the total, so every vertex in the
decomposition has exactly k ones.
"""
from polytran import (BoundsSpec, TransportMatrix, decompose, next_plan,
                      sigma)

spec = BoundsSpec.substochastic(3, 3, k=2)
A = TransportMatrix.from_rows([["1/2", "1/3", 0], [0, "1/3", 0], [0, 0, "5/6"]])
print("sigma:", sigma(A))

# the first split the decomposer would make
plan = next_plan(A, spec)
print("support:", {cell: str(c) for cell, c in plan.support.items()})
print("step sizes:", plan.eps_plus, plan.eps_minus)

trace = []
d = decompose(A, spec, trace=trace)
for weight, V in d.terms:
    print(weight, V, "ones:", sigma(V))
print("intermediate totals:", {str(sigma(mat)) for _, mat in trace})
