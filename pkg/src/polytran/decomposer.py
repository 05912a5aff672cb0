"""Convex-combination certificates over integral vertices.

A fractional member A is pushed along a perturbation direction to the
boundary on both sides, A+ = A + e+ N and A- = A - e- N, and rewritten as
t*A+ + (1-t)*A- with t = e- / (e+ + e-). Each side has strictly smaller
fractional potential, so the recursion bottoms out at 0/1 matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (BoundsSpec, TransportMatrix, check_membership, is_integral,
                   linear_combination)
from .errors import DimensionMismatch, NotAMember
from .perturbation import apply_plan, next_plan


@dataclass(frozen=True)
class Decomposition:
    """Positive weights summing to one, each attached to a 0/1 matrix."""

    terms: tuple[tuple[Fraction, TransportMatrix], ...]

    def __len__(self):
        return len(self.terms)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.terms)

    @property
    def vertices(self) -> tuple[TransportMatrix, ...]:
        return tuple(v for _, v in self.terms)

    def reconstruct(self) -> TransportMatrix:
        return linear_combination(self.terms)

    @classmethod
    def merged(cls, terms) -> "Decomposition":
        """Drop zero weights, sum duplicate vertices, sort by vertex."""
        acc: dict[TransportMatrix, Fraction] = {}
        for w, v in terms:
            w = Fraction(w)
            if w:
                acc[v] = acc.get(v, Fraction(0)) + w
        ordered = sorted(acc.items(), key=lambda item: item[0].entries)
        return cls(tuple((w, v) for v, w in ordered))


def _require_member(A: TransportMatrix, spec: BoundsSpec):
    report = check_membership(A, spec)
    if not report.is_member:
        raise NotAMember("; ".join(report.diagnostics))


def is_extreme(A: TransportMatrix, spec: BoundsSpec) -> bool:
    """True iff the member A is a vertex of its polytope, i.e. is 0/1."""
    _require_member(A, spec)
    return is_integral(A)


def decompose(A: TransportMatrix, spec: BoundsSpec, *, trace: Optional[list] = None) -> Decomposition:
    """Write the member A as a convex combination of 0/1 members.

    Sub-matrices reached along several branches are split only once. If
    ``trace`` is a list, every distinct matrix the recursion splits or stops
    at is appended to it as a ``(depth, matrix)`` pair.
    """
    _require_member(A, spec)
    memo: dict[TransportMatrix, dict[TransportMatrix, Fraction]] = {}

    def split(mat: TransportMatrix, depth: int) -> dict[TransportMatrix, Fraction]:
        if mat in memo:
            return memo[mat]
        if trace is not None:
            trace.append((depth, mat))
        if is_integral(mat):
            result = {mat: Fraction(1)}
        else:
            plan = next_plan(mat, spec)
            up = apply_plan(mat, plan, plan.eps_plus, +1)
            down = apply_plan(mat, plan, plan.eps_minus, -1)
            t = plan.eps_minus / (plan.eps_plus + plan.eps_minus)
            result = {}
            for child, share in ((up, t), (down, 1 - t)):
                for v, w in split(child, depth + 1).items():
                    result[v] = result.get(v, Fraction(0)) + share * w
        memo[mat] = result
        return result

    return Decomposition.merged((w, v) for v, w in split(A, 0).items())


def certificate_problems(A: TransportMatrix, d: Decomposition, spec: BoundsSpec) -> list[str]:
    """Everything wrong with ``d`` as a certificate for A; empty when valid."""
    problems = []
    if not d.terms:
        return ["certificate has no terms"]
    total = Fraction(0)
    seen = set()
    for pos, (w, v) in enumerate(d.terms):
        total += w
        if w <= 0:
            problems.append(f"term {pos}: weight {w} is not positive")
        if v.shape != (spec.n, spec.m):
            problems.append(f"term {pos}: vertex shape {v.n}x{v.m} != {spec.n}x{spec.m}")
            continue
        if not is_integral(v):
            problems.append(f"term {pos}: vertex is not a 0/1 matrix")
        report = check_membership(v, spec)
        if not report.is_member:
            problems.append(f"term {pos}: vertex violates the bounds: " + "; ".join(report.diagnostics))
        if v in seen:
            problems.append(f"term {pos}: duplicate vertex")
        seen.add(v)
    if total != 1:
        problems.append(f"weights sum to {total}")
    if not problems:
        try:
            rebuilt = d.reconstruct()
        except DimensionMismatch as exc:
            return [str(exc)]
        if rebuilt.shape != A.shape:
            problems.append(f"reconstruction has shape {rebuilt.shape}, matrix has {A.shape}")
        elif rebuilt != A:
            bad = [(i, j) for i, j in A.cells() if rebuilt[i, j] != A[i, j]]
            problems.append(f"weighted sum differs from the matrix at cells {bad}")
    return problems


def verify_certificate(A: TransportMatrix, d: Decomposition, spec: BoundsSpec) -> bool:
    return not certificate_problems(A, d, spec)

