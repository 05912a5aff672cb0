"""Brute-force ground truth for small instances.

Nothing here calls the perturbation engine, the decomposer or the flow
solver; tests use these functions to check those modules independently.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import BoundsSpec, TransportMatrix, as_matrix, linear_combination
from .decomposer import Decomposition
from .errors import DimensionMismatch, InstanceTooLarge

DEFAULT_CAP = 20


@dataclass(frozen=True)
class VertexSet:
    spec: BoundsSpec
    vertices: tuple[TransportMatrix, ...]

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __bool__(self):
        return bool(self.vertices)


def _row_patterns(m: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    return [bits for bits in itertools.product((0, 1), repeat=m) if lo <= sum(bits) <= hi]


def enumerate_vertices(spec: BoundsSpec, cap: int = DEFAULT_CAP) -> VertexSet:
    """Every 0/1 matrix satisfying ``spec``, in lexicographic (row-major) order."""
    if spec.n * spec.m > cap:
        raise InstanceTooLarge(
            f"{spec.n}x{spec.m} has {spec.n * spec.m} cells, enumeration cap is {cap}")
    per_row = [_row_patterns(spec.m, spec.row_min[i], spec.row_max[i]) for i in range(spec.n)]
    found = []
    for rows in itertools.product(*per_row):
        cols = [sum(col) for col in zip(*rows)]
        if not all(lo <= s <= hi for s, lo, hi in zip(cols, spec.col_min, spec.col_max)):
            continue
        if spec.k is not None and sum(cols) != spec.k:
            continue
        found.append(TransportMatrix.from_rows(rows))
    return VertexSet(spec, tuple(found))


def phase_one(rows, rhs) -> Optional[list[Fraction]]:
    """Find x >= 0 with rows @ x = rhs, or None if there is none.

    Plain tableau Phase-I simplex with one artificial per equation and
    Bland's smallest-index rule for entering and leaving variables.
    """
    nvar = len(rows[0]) if rows else 0
    neq = len(rows)
    tab = []
    b = []
    for r, (row, val) in enumerate(zip(rows, rhs)):
        row = [Fraction(x) for x in row]
        val = Fraction(val)
        if val < 0:
            row, val = [-x for x in row], -val
        tab.append(row + [Fraction(int(a == r)) for a in range(neq)])
        b.append(val)
    basis = [nvar + r for r in range(neq)]
    width = nvar + neq
    # reduced costs of the phase-one objective sum(artificials)
    red = [-sum(tab[r][col] for r in range(neq)) for col in range(nvar)] + [Fraction(0)] * neq

    while True:
        entering = next((col for col in range(width) if red[col] < 0), None)
        if entering is None:
            break
        best = None
        for r in range(neq):
            a = tab[r][entering]
            if a > 0:
                ratio = b[r] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            break  # unbounded direction cannot occur for a phase-one objective bounded below
        r = best[1]
        piv = tab[r][entering]
        tab[r] = [x / piv for x in tab[r]]
        b[r] /= piv
        for q in range(neq):
            if q != r and tab[q][entering] != 0:
                f = tab[q][entering]
                tab[q] = [x - f * y for x, y in zip(tab[q], tab[r])]
                b[q] -= f * b[r]
        f = red[entering]
        red = [x - f * y for x, y in zip(red, tab[r])]
        basis[r] = entering

    if any(basis[r] >= nvar and b[r] != 0 for r in range(neq)):
        return None
    x = [Fraction(0)] * nvar
    for r in range(neq):
        if basis[r] < nvar:
            x[basis[r]] = b[r]
    return x


def hull_membership(A, vs: VertexSet) -> Optional[Decomposition]:
    """Convex weights over ``vs`` reproducing A, or None if A is outside the hull."""
    A = as_matrix(A)
    if not vs.vertices:
        return None
    if A.shape != vs.vertices[0].shape:
        raise DimensionMismatch(f"matrix {A.shape} vs vertices {vs.vertices[0].shape}")
    rows = [[v[i, j] for v in vs] for i, j in A.cells()]
    rhs = [A[i, j] for i, j in A.cells()]
    rows.append([1] * len(vs))
    rhs.append(1)
    alpha = phase_one(rows, rhs)
    if alpha is None:
        return None
    return Decomposition.merged(zip(alpha, vs.vertices))


def brute_min_cost(T, vs: VertexSet) -> tuple[TransportMatrix, Fraction]:
    """Scan every vertex; the lexicographically first minimiser wins ties."""
    T = as_matrix(T)
    best = None
    for v in vs:
        value = sum((T[i, j] for i, j in v.cells() if v[i, j]), Fraction(0))
        if best is None or value < best[1]:
            best = (v, value)
    if best is None:
        raise ValueError("empty vertex set")
    return best


def random_hull_point(vs: VertexSet, seed: int) -> TransportMatrix:
    """Random convex combination of a random subset of ``vs``.

    Uses numpy's counter-based Philox generator, so a seed yields the same
    matrix on every platform. Weights are integers in [1, 9] normalised to 1.
    """
    if not vs.vertices:
        raise ValueError("empty vertex set")
    rng = np.random.Generator(np.random.Philox(seed))
    size = int(rng.integers(1, len(vs) + 1))
    chosen = rng.permutation(len(vs))[:size]
    weights = [int(w) for w in rng.integers(1, 10, size=size)]
    total = sum(weights)
    return linear_combination(
        (Fraction(w, total), vs.vertices[int(idx)]) for w, idx in zip(weights, sorted(chosen)))
