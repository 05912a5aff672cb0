"""
Membership, vertices and extreme points
=======================================

Build a small bounded polytope, test a few matrices against it and list
its 0/1 vertices.
"""
from polytran import (BoundsSpec, TransportMatrix, check_membership,
                      enumerate_vertices, is_extreme)

# rows sum to between 1 and 2, columns to at most 1
spec = BoundsSpec.from_bounds(r=[1, 1], R=[2, 2], c=[0, 0, 0], C=[1, 1, 1])

A = TransportMatrix.from_rows([["1/2", "1/2", 0], [0, "1/2", "1/2"]])
print(A)
print("member:", check_membership(A, spec).is_member)
print("extreme:", is_extreme(A, spec))

# a violation is reported line by line
bad = TransportMatrix.from_rows([[1, 1, 0], [1, 0, 0]])
report = check_membership(bad, spec)
print("member:", report.is_member, report.diagnostics)

vs = enumerate_vertices(spec)
print(len(vs), "vertices")
for v in vs:
    print(v, is_extreme(v, spec))
