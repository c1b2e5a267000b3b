"""JSON formats for algebras, windowed algebras, subspaces and solutions.

Rationals travel as strings "p/q" with positive q (plain "p" accepted on
input); a missing (i, j) table entry means the zero product.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .algebra import AlgebraSpec, make_algebra
from .constructions import PartialAlgebra
from .linalg import Matrix, Subspace, as_scalar


def format_scalar(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text) -> Fraction:
    if isinstance(text, float):
        raise TypeError("floats are not exact; pass rationals as strings 'p/q'")
    return as_scalar(text)


def algebra_to_json(alg: AlgebraSpec) -> dict:
    table = []
    for (i, j) in sorted(alg.table):
        terms = [[k, format_scalar(c)] for k, c in alg.table[(i, j)]]
        table.append([i, j, terms])
    return {
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "flavor": alg.flavor,
        "grading": list(alg.grading) if alg.grading is not None else None,
        "table": table,
    }


def algebra_from_json(doc: Mapping[str, Any]) -> AlgebraSpec:
    dim = int(doc["dim"])
    raw: dict = {}
    for i, j, terms in doc.get("table", []):
        raw[(int(i), int(j))] = [(int(k), parse_scalar(c)) for k, c in terms]
    return make_algebra(
        dim,
        raw,
        basis_names=doc.get("basis"),
        flavor=doc.get("flavor", "unchecked"),
        grading=doc.get("grading"),
    )


def partial_to_json(pa: PartialAlgebra) -> dict:
    table = []
    for (i, j) in sorted(pa.products):
        terms = pa.products[(i, j)]
        if terms is None:
            continue
        table.append([i, j, [[k, format_scalar(c)] for k, c in terms]])
    return {
        "dim": pa.dim,
        "basis": [lab.name for lab in pa.labels],
        "flavor": "partial-anticommutative",
        "grading": [lab.degree for lab in pa.labels],
        "table": table,
        "partial": True,
        "window": pa.window,
        "kinds": [lab.kind for lab in pa.labels],
        "out_of_window": [list(p) for p in pa.out_of_window_pairs()],
    }


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m.data]


def subspace_to_json(s: Subspace) -> dict:
    return {
        "ambient_dim": s.ambient,
        "dim": s.dim,
        "basis": [[format_scalar(x) for x in row] for row in s.basis.data],
    }


def solution_to_json(kind: str, algebra_doc: dict, space: Subspace, maps_shape: int | None = None) -> dict:
    doc = {
        "kind": kind,
        "algebra": algebra_doc,
        "dim": space.dim,
        "basis_maps": [[format_scalar(x) for x in row] for row in space.basis.data],
    }
    if maps_shape is not None:
        doc["map_rows"] = maps_shape
    return doc
