"""Serialization of structure tables: JSON document, CSV, LaTeX."""

from __future__ import annotations

import json
from fractions import Fraction

from .table import StructureTable

SCHEMA_VERSION = "1"


class SchemaError(ValueError):
    """The document does not match the table schema."""


def format_rational(x: Fraction) -> str:
    """Lowest-terms string: "p" for integers, "p/q" otherwise."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    if isinstance(s, float):
        raise SchemaError("floats are not exact; coefficients must be rational strings")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad rational {s!r}: {e}") from None


def table_to_document(t: StructureTable) -> dict:
    """Canonical JSON-shaped document: brackets sorted by (i, j), zero pairs omitted."""
    pairs = {}
    for (i, j, k), val in t.c.items():
        pairs.setdefault((i, j), {})[k] = val
    brackets = []
    for (i, j) in sorted(pairs):
        coeffs = pairs[(i, j)]
        brackets.append({
            "i": i,
            "j": j,
            "coefficients": {t.names[k]: format_rational(coeffs[k]) for k in sorted(coeffs)},
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": t.dim,
        "names": list(t.names),
        "brackets": brackets,
    }


def document_to_table(doc) -> StructureTable:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version: {doc.get('schema_version')!r}")
    for field in ("dim", "names", "brackets"):
        if field not in doc:
            raise SchemaError(f"missing field: {field}")
    names = doc["names"]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise SchemaError("names must be a list of strings")
    if doc["dim"] != len(names):
        raise SchemaError(f"dim {doc['dim']} does not match {len(names)} names")
    index = {n: k for k, n in enumerate(names)}
    if len(index) != len(names):
        raise SchemaError("duplicate names")
    c = {}
    for rec in doc["brackets"]:
        if not isinstance(rec, dict) or not {"i", "j", "coefficients"} <= set(rec):
            raise SchemaError(f"bad bracket record: {rec!r}")
        i, j = rec["i"], rec["j"]
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < len(names)):
            raise SchemaError(f"bracket indices must satisfy 0 <= i < j < dim: {(i, j)}")
        for name, val in rec["coefficients"].items():
            if name not in index:
                raise SchemaError(f"unknown coefficient name {name!r}")
            c[(i, j, index[name])] = parse_rational(val)
    return StructureTable(names, c)


def to_json_text(t: StructureTable) -> str:
    """Byte-deterministic JSON serialization."""
    return json.dumps(table_to_document(t), indent=2, sort_keys=False) + "\n"


def from_json_text(text: str) -> StructureTable:
    try:
        doc = json.loads(text, parse_float=lambda s: (_ for _ in ()).throw(SchemaError("floats are not exact")))
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {e}") from None
    return document_to_table(doc)


def load_table(path) -> StructureTable:
    with open(path, "r", encoding="utf-8") as f:
        return from_json_text(f.read())


def save_table(t: StructureTable, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json_text(t))


def to_csv(t: StructureTable) -> str:
    """Header of names, then one row per unordered pair (zero brackets included)."""
    if t.dim == 0:
        raise ValueError("empty table")
    lines = ["i,j," + ",".join(t.names)]
    for i in range(t.dim):
        for j in range(i + 1, t.dim):
            vec = t.bracket_vector(i, j)
            lines.append(f"{t.names[i]},{t.names[j]}," + ",".join(format_rational(x) for x in vec))
    return "\n".join(lines) + "\n"


def _latex_name(name: str) -> str:
    # x1 -> x_1, a12 -> a_{12}; anything else is emitted verbatim
    head = name.rstrip("0123456789")
    digits = name[len(head):]
    if not digits:
        return name
    return f"{head}_{digits}" if len(digits) == 1 else f"{head}_{{{digits}}}"


def _latex_cell(t: StructureTable, i: int, j: int) -> str:
    terms = [(k, v) for (a, b, k), v in sorted(t.c.items()) if (a, b) == (i, j)]
    if not terms:
        return "0"
    bits = []
    for k, v in terms:
        coeff = "" if v == 1 else ("-" if v == -1 else format_rational(v))
        term = f"{coeff}{_latex_name(t.names[k])}"
        if bits and not term.startswith("-"):
            term = "+" + term
        bits.append(term)
    return "".join(bits)


def to_latex(t: StructureTable) -> str:
    """Upper-triangular bracket table as a LaTeX tabular."""
    if t.dim == 0:
        raise ValueError("empty table")
    cols = "c|" + "c" * t.dim
    lines = [
        "\\begin{tabular}{" + cols + "}",
        " & " + " & ".join(f"${_latex_name(n)}$" for n in t.names) + " \\\\",
        "\\hline",
    ]
    for i in range(t.dim):
        cells = []
        for j in range(t.dim):
            if j < i:
                cells.append("")
            elif j == i:
                cells.append("$0$")
            else:
                cells.append(f"${_latex_cell(t, i, j)}$")
        lines.append(f"${_latex_name(t.names[i])}$ & " + " & ".join(cells) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"
