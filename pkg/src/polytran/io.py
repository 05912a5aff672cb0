"""Reading and writing specs, matrices and certificates.

Numbers are always written as rational strings ("1/3", "0", "1"), so every
document re-parses to exactly the values it was produced from.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .core import BoundsSpec, TransportMatrix, to_fraction
from .decomposer import Decomposition
from .errors import DimensionMismatch, InvalidSpec, ParseError


def fmt(x) -> str:
    return str(Fraction(x))


def matrix_to_json(A: TransportMatrix) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in A.entries]


def spec_to_json(spec: BoundsSpec) -> dict:
    return {"n": spec.n, "m": spec.m, "r": list(spec.row_min), "R": list(spec.row_max),
            "c": list(spec.col_min), "C": list(spec.col_max), "k": spec.k}


def decomposition_to_json(d: Decomposition) -> dict:
    return {"terms": [{"weight": fmt(w), "vertex": matrix_to_json(v)} for w, v in d.terms]}


def matrix_to_csv(A: TransportMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in A.entries:
        writer.writerow(fmt(x) for x in row)
    return buf.getvalue()


def read_source(path, stdin=None) -> tuple[str, str]:
    """Return (text, display name); ``-`` reads standard input."""
    if str(path) == "-":
        return (stdin or sys.stdin).read(), "<stdin>"
    try:
        return Path(path).read_text(), str(path)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=path) from exc


def _loads(text: str, source: str):
    try:
        # floats keep their literal spelling so "0.1" stays exactly 1/10
        return json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        token = exc.doc[exc.pos:exc.pos + 10].split("\n")[0] or None
        raise ParseError(exc.msg, source=source, line=exc.lineno, token=token) from exc


def _unwrap(doc):
    # accept the CLI's {"status":..,"payload":..} envelope as well as bare documents
    if isinstance(doc, dict) and "payload" in doc and "status" in doc:
        return doc["payload"]
    return doc


def _line_of(text: str, token: str) -> int | None:
    for lineno, line in enumerate(text.splitlines(), 1):
        if token in line:
            return lineno
    return None


def _rational(value, source, text=None, where=""):
    try:
        if isinstance(value, (list, dict)) or value is None:
            raise ValueError
        return to_fraction(value)
    except (ValueError, TypeError):
        token = json.dumps(value) if not isinstance(value, str) else value
        line = _line_of(text, token) if text else None
        raise ParseError(f"not a rational number{where}", source=source, line=line, token=token)


def matrix_from_doc(doc, source="<matrix>", text=None) -> TransportMatrix:
    doc = _unwrap(doc)
    if isinstance(doc, dict) and "matrix" in doc:
        doc = doc["matrix"]
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise ParseError("expected a non-empty JSON array of arrays", source=source)
    rows = [[_rational(x, source, text, f" at ({i},{j})") for j, x in enumerate(row)]
            for i, row in enumerate(doc)]
    try:
        return TransportMatrix.from_rows(rows)
    except DimensionMismatch as exc:
        raise ParseError(str(exc), source=source) from exc


def parse_matrix(text: str, source: str = "<matrix>") -> TransportMatrix:
    """Parse a JSON array-of-arrays or CSV of rational strings."""
    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        return matrix_from_doc(_loads(text, source), source, text)
    rows = []
    for lineno, record in enumerate(csv.reader(io.StringIO(text)), 1):
        if not record or all(not cell.strip() for cell in record):
            continue
        row = []
        for token in record:
            try:
                row.append(to_fraction(token))
            except (ValueError, TypeError):
                raise ParseError("not a rational number", source=source, line=lineno,
                                 token=token.strip()) from None
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix", source=source)
    try:
        return TransportMatrix.from_rows(rows)
    except DimensionMismatch as exc:
        raise ParseError(str(exc), source=source) from exc


def spec_from_doc(doc, source="<spec>") -> BoundsSpec:
    doc = _unwrap(doc)
    if not isinstance(doc, dict):
        raise ParseError("spec must be a JSON object", source=source)
    missing = [key for key in ("r", "R", "c", "C") if key not in doc]
    if missing:
        raise ParseError(f"spec is missing {missing}", source=source)
    try:
        r, R, c, C = (list(doc[key]) for key in ("r", "R", "c", "C"))
        spec = BoundsSpec(doc.get("n", len(r)), doc.get("m", len(c)),
                          tuple(r), tuple(R), tuple(c), tuple(C), doc.get("k"))
    except (InvalidSpec, TypeError) as exc:
        raise ParseError(str(exc), source=source) from exc
    return spec


def parse_spec(text: str, source: str = "<spec>") -> BoundsSpec:
    return spec_from_doc(_loads(text, source), source)


def decomposition_from_doc(doc, source="<certificate>", text=None) -> Decomposition:
    doc = _unwrap(doc)
    if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
        raise ParseError('certificate must be an object with a "terms" array', source=source)
    terms = []
    for pos, term in enumerate(doc["terms"]):
        if not isinstance(term, dict) or "weight" not in term or "vertex" not in term:
            raise ParseError(f'term {pos} needs "weight" and "vertex"', source=source)
        w = _rational(term["weight"], source, text, f" in term {pos} weight")
        terms.append((w, matrix_from_doc(term["vertex"], source, text)))
    # keep terms as written: verification must see duplicates and bad weights
    return Decomposition(tuple(terms))


def parse_decomposition(text: str, source: str = "<certificate>") -> Decomposition:
    return decomposition_from_doc(_loads(text, source), source, text)


def load_spec(path, stdin=None) -> BoundsSpec:
    return parse_spec(*read_source(path, stdin))


def load_matrix(path, stdin=None) -> TransportMatrix:
    return parse_matrix(*read_source(path, stdin))


def load_decomposition(path, stdin=None) -> Decomposition:
    return parse_decomposition(*read_source(path, stdin))
