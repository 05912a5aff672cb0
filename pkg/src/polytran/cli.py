"""Command-line front end.

Every command prints one JSON document ``{"status", "payload",
"diagnostics"}`` except ``vertices``, which prints one matrix per line.
Exit codes: 0 ok, 1 violation or infeasible, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import io as pio
from .core import check_membership, is_integral
from .decomposer import certificate_problems, decompose
from .errors import (DimensionMismatch, Infeasible, InstanceTooLarge,
                     NoFractionalCell, ParseError)
from .flow import is_feasible, solve_min_cost
from .oracle import DEFAULT_CAP, enumerate_vertices
from .perturbation import find_structure, next_plan

EXIT_CODES = {"ok": 0, "violation": 1, "infeasible": 1, "error": 2}


@dataclass
class CommandResult:
    status: str
    payload: object = None
    diagnostics: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def _report_json(report) -> dict:
    return {
        "is_member": report.is_member,
        "entry_violations": [{"cell": [i, j], "value": pio.fmt(v)} for i, j, v in report.entry_violations],
        "row_violations": [{"row": i, "sum": pio.fmt(s), "bound": b} for i, s, b in report.row_violations],
        "col_violations": [{"col": j, "sum": pio.fmt(s), "bound": b} for j, s, b in report.col_violations],
        "sigma_violation": (None if report.sigma_violation is None else
                            {"sigma": pio.fmt(report.sigma_violation[0]), "k": report.sigma_violation[1]}),
    }


def _structure_json(s) -> dict:
    return {
        "kind": s.kind.value,
        "cells": [list(c) for c in s.cells],
        "start_line": None if s.start_line is None else {"axis": s.start_line.axis, "index": s.start_line.index},
        "end_line": None if s.end_line is None else {"axis": s.end_line.axis, "index": s.end_line.index},
    }


def _plan_json(p) -> dict:
    return {
        "support": [{"cell": list(c), "coef": pio.fmt(v)} for c, v in sorted(p.support.items())],
        "eps_plus": pio.fmt(p.eps_plus),
        "eps_minus": pio.fmt(p.eps_minus),
        "sigma_delta_per_eps": pio.fmt(p.sigma_delta_per_eps),
        "source": p.source,
    }


def _load_pair(args):
    spec = pio.load_spec(args.spec)
    A = pio.load_matrix(args.matrix)
    if A.shape != (spec.n, spec.m):
        raise DimensionMismatch(f"matrix {args.matrix} is {A.n}x{A.m}, spec {args.spec} is {spec.n}x{spec.m}")
    return spec, A


def cmd_check(args) -> CommandResult:
    spec, A = _load_pair(args)
    report = check_membership(A, spec)
    payload = _report_json(report)
    payload["is_integral"] = is_integral(A)
    return CommandResult("ok" if report.is_member else "violation", payload, list(report.diagnostics))


def cmd_feasible(args) -> CommandResult:
    spec = pio.load_spec(args.spec)
    ok = is_feasible(spec)
    return CommandResult("ok" if ok else "infeasible", {"feasible": ok},
                         [] if ok else ["no matrix satisfies the bounds"])


def _non_member(report) -> CommandResult:
    return CommandResult("violation", _report_json(report), list(report.diagnostics))


def cmd_extreme(args) -> CommandResult:
    spec, A = _load_pair(args)
    report = check_membership(A, spec)
    if not report.is_member:
        return _non_member(report)
    return CommandResult("ok", {"extreme": is_integral(A)})


def cmd_decompose(args) -> CommandResult:
    spec, A = _load_pair(args)
    report = check_membership(A, spec)
    if not report.is_member:
        return _non_member(report)
    doc = pio.decomposition_to_json(decompose(A, spec))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    return CommandResult("ok", doc)


def cmd_verify(args) -> CommandResult:
    spec, A = _load_pair(args)
    cert = pio.load_decomposition(args.cert)
    problems = certificate_problems(A, cert, spec)
    return CommandResult("violation" if problems else "ok",
                         {"valid": not problems, "terms": len(cert.terms)}, problems)


def cmd_solve(args) -> CommandResult:
    spec = pio.load_spec(args.spec)
    T = pio.load_matrix(args.cost)
    if T.shape != (spec.n, spec.m):
        raise DimensionMismatch(f"cost {args.cost} is {T.n}x{T.m}, spec {args.spec} is {spec.n}x{spec.m}")
    try:
        G, value = solve_min_cost(T, spec)
    except Infeasible as exc:
        return CommandResult("infeasible", {"feasible": False}, [str(exc)])
    return CommandResult("ok", {"matrix": pio.matrix_to_json(G), "objective": pio.fmt(value)})


def cmd_explain(args) -> CommandResult:
    spec, A = _load_pair(args)
    report = check_membership(A, spec)
    if not report.is_member:
        return _non_member(report)
    try:
        structure = find_structure(A, spec)
    except NoFractionalCell:
        return CommandResult("ok", {"extreme": True, "structure": None, "plan": None},
                             ["matrix is integral: it is a vertex"])
    plan = next_plan(A, spec)
    return CommandResult("ok", {
        "extreme": False,
        "structure": _structure_json(structure),
        "plan": _plan_json(plan),
        "plan_structures": [_structure_json(s) for s in plan.structures],
    })


def _vertex_cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("POLYTRAN_CAP")
    return int(env) if env else DEFAULT_CAP


def _decimalize(obj, digits: int):
    if isinstance(obj, dict):
        return {k: _decimalize(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decimalize(v, digits) for v in obj]
    if isinstance(obj, str):
        try:
            x = Fraction(obj)
        except (ValueError, ZeroDivisionError):
            return obj
        return f"~{float(x):.{digits}f}" if x.denominator != 1 else obj
    return obj


def _render_pretty(result: CommandResult) -> str:
    lines = [f"status: {result.status}"]

    def grid(rows):
        width = max(len(str(x)) for r in rows for x in r)
        return ["  " + " ".join(str(x).rjust(width) for x in r) for r in rows]

    payload = result.payload
    if isinstance(payload, dict):
        for key, value in payload.items():
            if key == "terms" and isinstance(value, list):
                for term in value:
                    lines.append(f"weight {term['weight']}:")
                    lines.extend(grid(term["vertex"]))
            elif key == "matrix" and isinstance(value, list):
                lines.append("matrix:")
                lines.extend(grid(value))
            else:
                lines.append(f"{key}: {json.dumps(value)}")
    for d in result.diagnostics:
        lines.append(f"! {d}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polytran", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable tables instead of JSON")
    parser.add_argument("--decimal", type=int, metavar="N",
                        help="render non-integers as ~decimals with N digits (inexact)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, matrix=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", required=True)
        if matrix:
            p.add_argument("--matrix", required=True, help="JSON or CSV file, '-' for stdin")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "report violated constraints")
    add("feasible", cmd_feasible, "decide whether the polytope is non-empty", matrix=False)
    add("extreme", cmd_extreme, "is the matrix a vertex")
    add("decompose", cmd_decompose, "convex combination of 0/1 vertices").add_argument("--out")
    add("verify", cmd_verify, "check a decomposition certificate").add_argument("--cert", required=True)
    vp = add("vertices", None, "list all 0/1 vertices as JSON lines", matrix=False)
    vp.add_argument("--cap", type=int)
    add("solve", cmd_solve, "min-cost integral assignment", matrix=False).add_argument("--cost", required=True)
    add("explain", cmd_explain, "show the alternating structure and perturbation plan")
    return parser


def main(argv=None, stdout=None) -> int:
    out = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "vertices":
            spec = pio.load_spec(args.spec)
            for v in enumerate_vertices(spec, cap=_vertex_cap(args)):
                out.write(json.dumps(pio.matrix_to_json(v)) + "\n")
            return 0
        result = args.func(args)
    except (ParseError, DimensionMismatch, InstanceTooLarge, ValueError) as exc:
        result = CommandResult("error", None, [str(exc)])
    payload = result.to_json()
    if args.decimal is not None:
        payload = _decimalize(payload, args.decimal)
        payload["inexact"] = True
    if args.pretty:
        shown = CommandResult(payload["status"], payload["payload"], payload["diagnostics"])
        out.write(_render_pretty(shown) + "\n")
    else:
        out.write(json.dumps(payload, indent=1) + "\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
