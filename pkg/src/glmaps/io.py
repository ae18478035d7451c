"""JSON (de)serialization of maps, semilinear maps and reports.

Spaces are written as ``"GF(2)^3"`` / ``"GF(2^2)^4"``; field elements, vectors
and matrices as integer encodings, row-major.  A point map's ``domain`` and
``codomain`` name the underlying vector spaces and its table lists codomain
point indices in canonical point order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from glmaps.errors import GLMapsError, ParseError
from glmaps.gf_core import FieldHom, parse_field, parse_space
from glmaps.maps import MappingTable, PointMap
from glmaps.projective import proj_points
from glmaps.semilinear import SemilinearMap


def space_spec(field, n: int) -> str:
    return f"{field.spec}^{n}"


def mapping_to_json(g: MappingTable) -> dict:
    return {
        "type": "mapping_table",
        "domain": space_spec(g.domain_field, g.n),
        "codomain": space_spec(g.codomain_field, g.n_prime),
        "table": [list(v) for v in g.table],
    }


def point_map_to_json(f: PointMap) -> dict:
    return {
        "type": "point_map",
        "domain": space_spec(f.domain.field, f.domain.n),
        "codomain": space_spec(f.codomain.field, f.codomain.n),
        "table": list(f.table),
    }


def semilinear_to_json(l: SemilinearMap) -> dict:
    return {"type": "semilinear_map", **l.to_json()}


def _require(obj: dict, key: str, ctx: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key {key!r}", ctx)
    return obj[key]


def mapping_from_json(obj: dict) -> MappingTable:
    dom_f, n = parse_space(_require(obj, "domain", "mapping_table"))
    cod_f, n2 = parse_space(_require(obj, "codomain", "mapping_table"))
    table = _require(obj, "table", "mapping_table")
    try:
        return MappingTable(dom_f, n, cod_f, n2, tuple(tuple(int(a) for a in v) for v in table))
    except (GLMapsError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), "mapping_table.table") from exc


def point_map_from_json(obj: dict) -> PointMap:
    dom_f, n = parse_space(_require(obj, "domain", "point_map"))
    cod_f, n2 = parse_space(_require(obj, "codomain", "point_map"))
    table = _require(obj, "table", "point_map")
    try:
        return PointMap(proj_points(dom_f, n), proj_points(cod_f, n2), tuple(int(i) for i in table))
    except (GLMapsError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), "point_map.table") from exc


def semilinear_from_json(obj: dict) -> SemilinearMap:
    sig = _require(obj, "sigma", "semilinear_map")
    src = parse_field(_require(sig, "source", "semilinear_map.sigma"))
    tgt = parse_field(_require(sig, "target", "semilinear_map.sigma"))
    try:
        sigma = FieldHom(src, tgt, int(_require(sig, "generator_image", "semilinear_map.sigma")))
    except ValueError as exc:
        raise ParseError(str(exc), "semilinear_map.sigma.generator_image") from exc
    matrix = _require(obj, "matrix", "semilinear_map")
    try:
        return SemilinearMap(sigma, tuple(tuple(int(a) for a in row) for row in matrix))
    except (GLMapsError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), "semilinear_map.matrix") from exc


def from_json(obj: dict) -> MappingTable | PointMap | SemilinearMap:
    kind = obj.get("type") if isinstance(obj, dict) else None
    if kind == "mapping_table":
        return mapping_from_json(obj)
    if kind == "point_map":
        return point_map_from_json(obj)
    if kind == "semilinear_map" or (isinstance(obj, dict) and "sigma" in obj):
        return semilinear_from_json(obj)
    raise ParseError(f"unknown object type {kind!r}", "type")


def to_json(obj: MappingTable | PointMap | SemilinearMap) -> dict:
    if isinstance(obj, MappingTable):
        return mapping_to_json(obj)
    if isinstance(obj, PointMap):
        return point_map_to_json(obj)
    if isinstance(obj, SemilinearMap):
        return semilinear_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical text form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc


def load_mapping(path: str | Path) -> MappingTable | PointMap | SemilinearMap:
    return from_json(loads(Path(path).read_text()))


def save_mapping(obj: MappingTable | PointMap | SemilinearMap, path: str | Path) -> None:
    Path(path).write_text(dumps(to_json(obj)))


def save_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(report))
