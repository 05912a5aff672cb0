"""Exact-arithmetic tools for bounded transportation polytopes.

A polytope instance fixes integral lower/upper bounds on every row sum and
column sum of an n x m matrix with entries in [0, 1], and optionally the
total sum k. Its vertices are exactly its 0/1 members; this package tests
membership, decomposes members into vertices, and solves min-cost
assignment over the polytope.
"""
from .core import (BoundsSpec, Line, MembershipReport, TransportMatrix,
                   check_membership, col_sums, fractional_lines,
                   fractional_support, in_vertex_set, is_integral, is_member,
                   potential, row_sums, sigma)
from .decomposer import (Decomposition, certificate_problems, decompose,
                         is_extreme, verify_certificate)
from .errors import (DimensionMismatch, EpsOutOfRange, Infeasible,
                     InstanceTooLarge, InvalidSpec, NoFractionalCell,
                     NoSecondMutableLine, NotAMember, ParseError,
                     PolytranError, StructureMatrixMismatch)
from .flow import (FlowNetwork, build_network, is_feasible, min_cost_flow,
                   solve_min_cost)
from .oracle import (VertexSet, brute_min_cost, enumerate_vertices,
                     hull_membership, random_hull_point)
from .perturbation import (AlternatingStructure, Kind, PerturbationPlan,
                           apply_plan, build_k_preserving_plan, build_plan,
                           find_direction_nullspace, find_structure,
                           mutable_lines, next_plan)

__version__ = "0.1.0"
