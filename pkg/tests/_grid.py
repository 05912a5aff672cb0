"""Deterministic grid of small polytope instances shared by the test modules."""
import itertools
import random
from fractions import Fraction

from polytran import BoundsSpec, TransportMatrix, enumerate_vertices

LINE_BOUNDS = [(lo, hi) for lo in range(3) for hi in range(3) if lo <= hi]


def M(*rows):
    """Shorthand: M([1, "1/2"], [0, 0])."""
    return TransportMatrix.from_rows(rows)


def _all_bounds(count, rng, limit):
    space = 6 ** count
    if space <= limit:
        picks = list(range(space))
        rng.shuffle(picks)
    else:
        picks = rng.sample(range(space), limit)
    for code in picks:
        out = []
        for _ in range(count):
            code, digit = divmod(code, 6)
            out.append(LINE_BOUNDS[digit])
        yield out


def spec_grid(per_shape=25, seed=2024, sample=400):
    """Return (feasible, infeasible) spec lists, n, m in 1..3, bounds in {0,1,2}.

    Feasibility here is decided by the oracle's enumeration.
    """
    rng = random.Random(seed)
    feasible, infeasible = [], []
    for n, m in itertools.product(range(1, 4), repeat=2):
        taken = 0
        for bounds in _all_bounds(n + m, rng, sample):
            rows, cols = bounds[:n], bounds[n:]
            spec = BoundsSpec(n, m, tuple(r for r, _ in rows), tuple(R for _, R in rows),
                              tuple(c for c, _ in cols), tuple(C for _, C in cols))
            if enumerate_vertices(spec):
                if taken < per_shape:
                    feasible.append(spec)
                    taken += 1
            elif len(infeasible) < 40 * n * m:
                infeasible.append(spec)
            if taken >= per_shape:
                break
    return feasible, infeasible


def k_values(spec):
    """Every k for which P^k(spec) is non-empty."""
    top = min(sum(spec.row_max), sum(spec.col_max))
    return [k for k in range(1, top + 1) if enumerate_vertices(spec.with_k(k))]


def random_rational_matrix(rng, n, m, lo=-5, hi=5, den=6):
    return TransportMatrix.from_rows(
        [[Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den)) for _ in range(m)]
         for _ in range(n)])
