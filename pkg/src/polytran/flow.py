"""Min-cost circulation with lower bounds encoding the polytope.

Network: source -> row i with bounds [r(i), R(i)], row i -> column j with
bounds [0, 1] and cost T(i, j), column j -> sink with [c(j), C(j)], and a
return arc sink -> source with [0, sum(R)] or [k, k]. Integral feasible
circulations are exactly the 0/1 members, and all bounds are integers, so
an optimal circulation found by augmenting paths is integral.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .core import BoundsSpec, TransportMatrix, as_matrix
from .errors import DimensionMismatch, Infeasible

SOURCE = 0
SINK = 1


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int
    cost: Fraction = Fraction(0)
    flow: int = 0


@dataclass(frozen=True)
class FlowNetwork:
    nodes: tuple[str, ...]
    arcs: tuple[Arc, ...]
    n: int
    m: int

    def row_node(self, i: int) -> int:
        return 2 + i

    def col_node(self, j: int) -> int:
        return 2 + self.n + j

    def cell_arc(self, i: int, j: int) -> Arc:
        return self.arcs[self.n + i * self.m + j]

    @property
    def return_arc(self) -> Arc:
        return self.arcs[-1]

    def assignment(self) -> TransportMatrix:
        return TransportMatrix.from_rows(
            [[self.cell_arc(i, j).flow for j in range(self.m)] for i in range(self.n)])

    def total_cost(self) -> Fraction:
        return sum((a.cost * a.flow for a in self.arcs), Fraction(0))

    def imbalance(self) -> list[int]:
        """Inflow minus outflow at every node; all zero for a circulation."""
        net = [0] * len(self.nodes)
        for a in self.arcs:
            net[a.head] += a.flow
            net[a.tail] -= a.flow
        return net


def build_network(spec: BoundsSpec, cost=None) -> FlowNetwork:
    """Encode ``spec`` (and optionally an n x m cost matrix) as a network."""
    if cost is not None:
        cost = as_matrix(cost)
        if cost.shape != (spec.n, spec.m):
            raise DimensionMismatch(
                f"cost matrix has shape {cost.n}x{cost.m} but spec expects {spec.n}x{spec.m}")
    nodes = (("source", "sink") + tuple(f"row{i}" for i in range(spec.n))
             + tuple(f"col{j}" for j in range(spec.m)))
    arcs = [Arc(SOURCE, 2 + i, spec.row_min[i], spec.row_max[i]) for i in range(spec.n)]
    for i in range(spec.n):
        for j in range(spec.m):
            w = cost[i, j] if cost is not None else Fraction(0)
            arcs.append(Arc(2 + i, 2 + spec.n + j, 0, 1, w))
    arcs += [Arc(2 + spec.n + j, SINK, spec.col_min[j], spec.col_max[j]) for j in range(spec.m)]
    if spec.k is None:
        arcs.append(Arc(SINK, SOURCE, 0, sum(spec.row_max)))
    else:
        arcs.append(Arc(SINK, SOURCE, spec.k, spec.k))
    return FlowNetwork(nodes, tuple(arcs), spec.n, spec.m)


class _Residual:
    __slots__ = ("head", "cap", "cost", "twin", "arc", "sign")

    def __init__(self, head, cap, cost, arc, sign):
        self.head, self.cap, self.cost, self.arc, self.sign = head, cap, cost, arc, sign
        self.twin = None


def min_cost_flow(net: FlowNetwork) -> FlowNetwork:
    """Return a copy of ``net`` carrying a minimum-cost feasible circulation.

    Each arc starts at whichever bound makes its residual costs non-negative
    (lower bound for cost >= 0, upper for cost < 0), so the residual graph has
    no negative cycle. The resulting node imbalances are then cleared with
    successive shortest augmenting paths from a super source to a super
    sink (Bellman-Ford, exact rationals). Raises Infeasible if they cannot be.
    """
    size = len(net.nodes) + 2
    super_s, super_t = size - 2, size - 1
    graph: list[list[_Residual]] = [[] for _ in range(size)]
    flow = []
    excess = [0] * size

    def link(u, v, cap, cost, arc, sign):
        fwd = _Residual(v, cap, cost, arc, sign)
        back = _Residual(u, 0, -cost, arc, -sign)
        fwd.twin, back.twin = back, fwd
        graph[u].append(fwd)
        graph[v].append(back)
        return fwd

    for idx, a in enumerate(net.arcs):
        if a.lower > a.upper:
            raise Infeasible(f"arc {idx} has lower bound {a.lower} > upper {a.upper}")
        start = a.lower if a.cost >= 0 else a.upper
        flow.append(start)
        excess[a.head] += start
        excess[a.tail] -= start
        if a.cost >= 0:
            link(a.tail, a.head, a.upper - start, a.cost, idx, +1)
        else:
            link(a.head, a.tail, start - a.lower, -a.cost, idx, -1)

    need = 0
    for v in range(len(net.nodes)):
        if excess[v] > 0:
            link(super_s, v, excess[v], Fraction(0), None, 0)
            need += excess[v]
        elif excess[v] < 0:
            link(v, super_t, -excess[v], Fraction(0), None, 0)

    sent = 0
    while sent < need:
        dist: list[Optional[Fraction]] = [None] * size
        via: list[Optional[_Residual]] = [None] * size
        dist[super_s] = Fraction(0)
        for _ in range(size - 1):
            changed = False
            for u in range(size):
                if dist[u] is None:
                    continue
                for e in graph[u]:
                    if e.cap > 0:
                        d = dist[u] + e.cost
                        if dist[e.head] is None or d < dist[e.head]:
                            dist[e.head] = d
                            via[e.head] = e
                            changed = True
            if not changed:
                break
        if dist[super_t] is None:
            raise Infeasible(
                f"bounds cannot be met: {need - sent} units of lower-bound demand unrouted")
        path = []
        v = super_t
        while v != super_s:
            e = via[v]
            path.append(e)
            v = e.twin.head
        push = min(e.cap for e in path)
        for e in path:
            e.cap -= push
            e.twin.cap += push
            if e.arc is not None:
                flow[e.arc] += e.sign * push
        sent += push

    arcs = tuple(replace(a, flow=f) for a, f in zip(net.arcs, flow))
    return replace(net, arcs=arcs)


def is_feasible(spec: BoundsSpec) -> bool:
    """True iff U(spec) (or U^k(spec)) is non-empty."""
    try:
        min_cost_flow(build_network(spec))
    except Infeasible:
        return False
    return True


def solve_min_cost(T, spec: BoundsSpec) -> tuple[TransportMatrix, Fraction]:
    """Minimise sum T(i,j) G(i,j) over the polytope; the optimum returned is 0/1."""
    solved = min_cost_flow(build_network(spec, T))
    return solved.assignment(), solved.total_cost()
