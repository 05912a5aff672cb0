"""
Doubly stochastic matrices as mixtures of permutations
======================================================
"""
from polytran import (BoundsSpec, decompose, enumerate_vertices,
                      random_hull_point, verify_certificate)

spec = BoundsSpec.doubly_stochastic(3)
A = random_hull_point(enumerate_vertices(spec), seed=42)
print(A)

d = decompose(A, spec)
for weight, P in d.terms:
    print(weight)
    print(P)

# the certificate is checked with exact arithmetic
print("reconstructs exactly:", d.reconstruct() == A)
print("certificate valid:", verify_certificate(A, d, spec))
