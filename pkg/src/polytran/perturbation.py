"""Alternating structures on fractional cells and the perturbations they induce.

The fractional cells of a matrix form a bipartite graph whose vertices are
rows and columns. A walk in that graph either closes into an even cycle or
stops at lines carrying a single fractional cell. Signing the visited cells
alternately -1, +1, ... gives a direction N such that A + eps*N and A - eps*N
both remain in the polytope for small eps, so A is their midpoint.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .core import (COL, ROW, BoundsSpec, Cell, Line, TransportMatrix,
                   col_sums, fractional_support, is_fractional, line_sum,
                   row_sums, sigma)
from .errors import (EpsOutOfRange, NoFractionalCell, NoSecondMutableLine,
                     StructureMatrixMismatch)
from .linalg import nullspace


class Kind(enum.Enum):
    EVEN_CYCLE = "even_cycle"
    EVEN_PATH = "even_path"
    ODD_PATH = "odd_path"


@dataclass(frozen=True)
class AlternatingStructure:
    """Cells visited by an alternating walk, in walk order.

    ``start_line`` is the line that seeded a path (None for a closed cycle);
    ``end_line`` is the line where the path stopped.
    """

    cells: tuple[Cell, ...]
    kind: Kind
    start_line: Optional[Line] = None
    end_line: Optional[Line] = None

    def __len__(self):
        return len(self.cells)

    def signs(self, first: int = -1) -> dict[Cell, int]:
        return {cell: first * (-1) ** pos for pos, cell in enumerate(self.cells)}


@dataclass(frozen=True)
class PerturbationPlan:
    """A direction N on fractional cells and how far A can move along +-N.

    ``support`` maps cells to coefficients (+-1 for the walk-based plans).
    ``eps_plus`` / ``eps_minus`` are the largest steps keeping A + eps*N,
    respectively A - eps*N, inside every entry and line-sum bound.
    """

    support: Mapping[Cell, Fraction]
    eps_plus: Fraction
    eps_minus: Fraction
    sigma_delta_per_eps: Fraction
    structures: tuple[AlternatingStructure, ...] = field(default=(), compare=False)
    source: str = field(default="walk", compare=False)


def _other_line(cell: Cell, line: Line) -> Line:
    i, j = cell
    return Line(COL, j) if line.axis == ROW else Line(ROW, i)


def _axis_index(cell: Cell, axis: str) -> int:
    return cell[0] if axis == ROW else cell[1]


def _lines_of(cell: Cell) -> tuple[Line, Line]:
    return Line(ROW, cell[0]), Line(COL, cell[1])


class _FractionalGraph:
    def __init__(self, cells):
        self.by_line: dict[Line, list[Cell]] = {}
        for cell in sorted(cells):
            for line in _lines_of(cell):
                self.by_line.setdefault(line, []).append(cell)

    def degree(self, line: Line) -> int:
        return len(self.by_line.get(line, ()))

    def cells_on(self, line: Line) -> list[Cell]:
        return self.by_line.get(line, [])


def _walk(graph: _FractionalGraph, start: Line, stop_at=frozenset()) -> AlternatingStructure:
    """Walk from ``start``, always taking the lowest-index unused cell.

    Stops when a line repeats (even cycle), when the current line has no
    fractional cell besides the one just used (path), or on entering a line
    in ``stop_at`` (path ending there).
    """
    seen = {start: 0}
    cells: list[Cell] = []
    line, incoming = start, None
    while True:
        options = [c for c in graph.cells_on(line) if c != incoming]
        if not options:
            if not cells:
                raise NoFractionalCell(f"{start} has no fractional cell")
            kind = Kind.ODD_PATH if len(cells) % 2 else Kind.EVEN_PATH
            return AlternatingStructure(tuple(cells), kind, start, line)
        cell = options[0]
        cells.append(cell)
        nxt = _other_line(cell, line)
        if nxt in seen:
            return AlternatingStructure(tuple(cells[seen[nxt]:]), Kind.EVEN_CYCLE)
        if nxt in stop_at:
            kind = Kind.ODD_PATH if len(cells) % 2 else Kind.EVEN_PATH
            return AlternatingStructure(tuple(cells), kind, start, nxt)
        seen[nxt] = len(cells)
        line, incoming = nxt, cell


def find_structure(A: TransportMatrix, spec: BoundsSpec | None = None) -> AlternatingStructure:
    """Find an even cycle or a path between singleton-fractional lines.

    Rows are scanned before columns for a line with exactly one fractional
    cell; without one, the walk starts along the row of the lowest fractional
    cell. ``spec`` is accepted for interface symmetry; the walk depends only on A.
    """
    support = fractional_support(A)
    if not support:
        raise NoFractionalCell("matrix is integral")
    graph = _FractionalGraph(support)
    for line in [Line(ROW, i) for i in range(A.n)] + [Line(COL, j) for j in range(A.m)]:
        if graph.degree(line) == 1:
            return _walk(graph, line)
    first = min(support)
    return _walk(graph, Line(COL, first[1]))


def _line_deltas(support: Mapping[Cell, Fraction]) -> dict[Line, Fraction]:
    deltas: dict[Line, Fraction] = {}
    for cell, coef in support.items():
        for line in _lines_of(cell):
            deltas[line] = deltas.get(line, 0) + coef
    return {line: d for line, d in deltas.items() if d != 0}


def _max_step(A: TransportMatrix, spec: BoundsSpec, support, totals, direction: int) -> Fraction:
    limit = None
    for (i, j), coef in support.items():
        step = direction * coef
        x = A[i, j]
        room = (1 - x) / step if step > 0 else x / -step
        limit = room if limit is None or room < limit else limit
    for line, (d, total) in totals.items():
        lo, hi = spec.line_bounds(line)
        step = direction * d
        room = (hi - total) / step if step > 0 else (total - lo) / -step
        limit = room if limit is None or room < limit else limit
    return Fraction(limit)


def plan_from_support(A: TransportMatrix, spec: BoundsSpec, support: Mapping[Cell, Fraction],
                      structures=(), source="walk") -> PerturbationPlan:
    """Compute both admissible step lengths for an arbitrary direction."""
    support = {cell: Fraction(c) for cell, c in support.items() if c != 0}
    if not support:
        raise StructureMatrixMismatch("empty perturbation support")
    totals = {line: (d, line_sum(A, line)) for line, d in _line_deltas(support).items()}
    return PerturbationPlan(
        support=support,
        eps_plus=_max_step(A, spec, support, totals, +1),
        eps_minus=_max_step(A, spec, support, totals, -1),
        sigma_delta_per_eps=sum(support.values(), Fraction(0)),
        structures=tuple(structures),
        source=source,
    )


def build_plan(A: TransportMatrix, spec: BoundsSpec, s: AlternatingStructure) -> PerturbationPlan:
    """Sign ``s`` alternately starting with -1 and bound the step both ways.

    Slack of every line whose sum the support changes is folded into the
    bound, so cycles and paths are handled identically.
    """
    if not s.cells:
        raise StructureMatrixMismatch("structure has no cells")
    if len(set(s.cells)) != len(s.cells):
        raise StructureMatrixMismatch("structure repeats a cell")
    for cell in s.cells:
        if not (0 <= cell[0] < A.n and 0 <= cell[1] < A.m) or not is_fractional(A[cell]):
            raise StructureMatrixMismatch(f"cell {cell} is not a fractional cell of the matrix")
    plan = plan_from_support(A, spec, s.signs(-1), structures=(s,))
    if plan.eps_plus <= 0 or plan.eps_minus <= 0:
        raise StructureMatrixMismatch(
            f"structure changes a line sum sitting at its bound "
            f"(eps_plus={plan.eps_plus}, eps_minus={plan.eps_minus})")
    return plan


def mutable_lines(A: TransportMatrix, spec: BoundsSpec) -> tuple[frozenset[int], frozenset[int]]:
    """Rows and columns whose sum lies strictly between its two bounds."""
    rows = frozenset(i for i, s in enumerate(row_sums(A))
                     if spec.row_min[i] < s < spec.row_max[i])
    cols = frozenset(j for j, s in enumerate(col_sums(A))
                     if spec.col_min[j] < s < spec.col_max[j])
    graph = _FractionalGraph(fractional_support(A))
    for line, cells in graph.by_line.items():
        if len(cells) == 1:
            assert line.index in (rows if line.axis == ROW else cols), \
                f"{line} holds a single fractional cell but is not mutable"
    return rows, cols


def _changes_only_fractional_lines(A: TransportMatrix, plan: PerturbationPlan) -> bool:
    return all(line_sum(A, line).denominator != 1 for line in _line_deltas(plan.support))


def _usable(A, plan, need_sigma_zero: bool) -> bool:
    return (plan.eps_plus > 0 and plan.eps_minus > 0
            and (not need_sigma_zero or plan.sigma_delta_per_eps == 0)
            and _changes_only_fractional_lines(A, plan))


def build_k_preserving_plan(A: TransportMatrix, spec: BoundsSpec,
                            s: AlternatingStructure) -> PerturbationPlan:
    """Turn an odd path into a direction that keeps the total sum fixed.

    An odd path shifts the total by -eps. A second line of the same
    orientation as the path's seed with a non-integral sum must exist
    (the total is the integer k); it either lies on the path, in which case
    the path is cut to the even prefix ending there, or seeds a second walk
    over the remaining fractional cells. An odd second walk is added with
    signs starting at +1, so the two total-sum shifts cancel; a second walk
    that runs into a line of the first path is joined to the first path's
    segment leading back to its seed.
    """
    if spec.k is None:
        raise ValueError("spec has no total-sum target k")
    if not s.cells:
        raise StructureMatrixMismatch("structure has no cells")
    total = sigma(A)
    if total != spec.k:
        raise NoSecondMutableLine(f"sigma(A) = {total} differs from k = {spec.k}")
    if s.kind is not Kind.ODD_PATH:
        return build_plan(A, spec, s)

    axis = s.start_line.axis
    sums = row_sums(A) if axis == ROW else col_sums(A)
    partners = [idx for idx, v in enumerate(sums)
                if idx != s.start_line.index and v.denominator != 1]
    if not partners:
        raise NoSecondMutableLine(
            f"no second {axis} with non-integral sum besides {s.start_line}")
    partner = Line(axis, partners[0])

    # the walk enters a line of the seed's orientation at every second cell
    for pos in range(1, len(s.cells), 2):
        if _axis_index(s.cells[pos], axis) == partner.index:
            prefix = AlternatingStructure(s.cells[:pos + 1], Kind.EVEN_PATH, s.start_line, partner)
            return build_plan(A, spec, prefix)

    # lines of the first path: path_lines[t] joins s.cells[t-1] and s.cells[t]
    path_lines = [s.start_line]
    for cell in s.cells:
        path_lines.append(_other_line(cell, path_lines[-1]))
    remaining = fractional_support(A) - set(s.cells)
    second = _walk(_FractionalGraph(remaining), partner, stop_at=frozenset(path_lines))
    if second.end_line in path_lines:
        # joined the first path at an interior line: continue back along it
        # to the seed, giving an even path between two non-integral lines
        t = path_lines.index(second.end_line)
        joined = second.cells + tuple(reversed(s.cells[:t]))
        second = AlternatingStructure(joined, Kind.EVEN_PATH, partner, s.start_line)
        plan = plan_from_support(A, spec, second.signs(-1), structures=(second,))
    elif second.kind is Kind.ODD_PATH:
        support = dict(s.signs(-1))
        support.update(second.signs(+1))
        plan = plan_from_support(A, spec, support, structures=(s, second))
    else:
        plan = plan_from_support(A, spec, second.signs(-1), structures=(second,))
    if _usable(A, plan, need_sigma_zero=True):
        assert sigma(apply_plan(A, plan, plan.eps_plus, +1)) == spec.k
        return plan
    fallback = find_direction_nullspace(A, spec)
    if fallback is None:
        raise NoFractionalCell("matrix is integral")
    return fallback


def apply_plan(A: TransportMatrix, p: PerturbationPlan, eps, direction: int) -> TransportMatrix:
    """Return A + direction * eps * N exactly."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    eps = Fraction(eps)
    bound = p.eps_plus if direction == 1 else p.eps_minus
    if eps < 0 or eps > bound:
        raise EpsOutOfRange(f"eps={eps} outside [0, {bound}]")
    rows = A.to_lists()
    for (i, j), coef in p.support.items():
        rows[i][j] += direction * eps * coef
    return TransportMatrix.from_rows(rows)


def find_direction_nullspace(A: TransportMatrix, spec: BoundsSpec) -> Optional[PerturbationPlan]:
    """Exact linear-algebra search for a feasible two-sided direction.

    Unknowns are the fractional cells. Every line whose sum is an integer
    (in particular every line at a bound) keeps its sum, and so does the
    total when k is set. Returns None exactly when A is integral.
    """
    cells = sorted(fractional_support(A))
    if not cells:
        return None
    index = {cell: pos for pos, cell in enumerate(cells)}
    equations = []
    for line, total in ([(Line(ROW, i), s) for i, s in enumerate(row_sums(A))]
                        + [(Line(COL, j), s) for j, s in enumerate(col_sums(A))]):
        if total.denominator != 1:
            continue
        row = [0] * len(cells)
        hit = False
        for cell in cells:
            if _axis_index(cell, line.axis) == line.index:
                row[index[cell]] = 1
                hit = True
        if hit:
            equations.append(row)
    if spec.k is not None:
        equations.append([1] * len(cells))
    basis = nullspace(equations, len(cells))
    if not basis:
        return None
    vec = basis[0]
    scale = -1 / next(v for v in vec if v != 0)
    support = {cell: v * scale for cell, v in zip(cells, vec) if v != 0}
    return plan_from_support(A, spec, support, source="nullspace")


def next_plan(A: TransportMatrix, spec: BoundsSpec) -> PerturbationPlan:
    """The splitting direction the decomposer uses for a fractional member."""
    s = find_structure(A, spec)
    if spec.k is not None and s.kind is Kind.ODD_PATH:
        return build_k_preserving_plan(A, spec, s)
    return build_plan(A, spec, s)
