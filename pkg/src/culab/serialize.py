"""JSON model files.

Every file is an object with a ``kind`` field:

    {"kind": "finite-table", "size": 2, "names": ["0", "inf"],
     "leq": [[1, 1], [0, 1]], "add": [[0, 1], [1, 1]], "scale": [0, 1]}
    {"kind": "e-k", "k": 2}
    {"kind": "nbar"}
    {"kind": "lsc", "space": {"points": ["u", "v"], "leq": [[1, 0], [1, 1]]}}
    {"kind": "product", "factors": [{"kind": "nbar"}, {"kind": "e-k", "k": 1}]}

Matrices are lists of 0/1 (or index) rows.  Infinity is the string "inf".
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import CuModel, EkModel, FiniteModel, LscModel, NbarModel, ProductModel
from .errors import NotT0, ParseError, ValidationError
from .search import SearchSpec
from .structure import AXIOMS, Scale, is_scale

KINDS = ("finite-table", "e-k", "nbar", "lsc", "product")


def _field(doc: dict, key: str, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def _matrix(rows, n: int, name: str, where: str, cell) -> list[list]:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: {name} must be a list of rows")
    if len(rows) != n:
        raise ParseError(f"{where}: {name} has {len(rows)} rows, expected {n}")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise ParseError(f"{where}: {name} row {i} has {got} entries, expected {n}")
        out.append([cell(v, f"{where}: {name}[{i}][{j}]") for j, v in enumerate(row)])
    return out


def _bit(v, where: str) -> int:
    if v in (0, 1) and not isinstance(v, float):
        return int(v)
    raise ParseError(f"{where} must be 0 or 1, got {v!r}")


def _index(n: int):
    def cell(v, where: str) -> int:
        if isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n:
            return v
        raise ParseError(f"{where} must be an element index in 0..{n - 1}, got {v!r}")

    return cell


def _finite(doc: dict, where: str) -> FiniteModel:
    n = _field(doc, "size", where)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{where}: size must be a positive integer")
    names = doc.get("names", [str(i) for i in range(n)])
    if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
        raise ParseError(f"{where}: names must be a list of {n} strings")
    le = _matrix(_field(doc, "leq", where), n, "leq", where, _bit)
    add = _matrix(_field(doc, "add", where), n, "add", where, _index(n))
    model = FiniteModel(le, add, names)
    if "scale" in doc and doc["scale"] is not None:
        scale = doc["scale"]
        if not isinstance(scale, list):
            raise ParseError(f"{where}: scale must be a list of element indices")
        idx = [_index(n)(v, f"{where}: scale[{i}]") for i, v in enumerate(scale)]
        model.declared_scale = tuple(sorted(set(idx)))
        if not is_scale(model, Scale.subset(model, model.declared_scale)):
            raise ValidationError(["scale: not downward hereditary or does not generate the model"])
    return model


def load_model(doc, where: str = "model") -> CuModel:
    """Build a model from a parsed document."""
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    kind = _field(doc, "kind", where)
    if kind == "finite-table":
        return _finite(doc, where)
    if kind == "e-k":
        k = _field(doc, "k", where)
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ParseError(f"{where}: k must be a positive integer")
        return EkModel(k)
    if kind == "nbar":
        return NbarModel()
    if kind == "lsc":
        space = _field(doc, "space", where)
        if not isinstance(space, dict):
            raise ParseError(f"{where}: space must be an object")
        points = _field(space, "points", f"{where}.space")
        if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
            raise ParseError(f"{where}.space: points must be a list of strings")
        le = _matrix(_field(space, "leq", f"{where}.space"), len(points), "leq", f"{where}.space", _bit)
        try:
            return LscModel(points, le)
        except NotT0 as exc:
            raise ValidationError([str(exc)]) from None
        except ValueError as exc:
            raise ValidationError([str(exc)]) from None
    if kind == "product":
        factors = _field(doc, "factors", where)
        if not isinstance(factors, list) or not factors:
            raise ParseError(f"{where}: factors must be a nonempty list")
        return ProductModel([load_model(f, f"{where}.factors[{i}]") for i, f in enumerate(factors)])
    raise ParseError(f"{where}: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def dump_model(model: CuModel) -> dict:
    if isinstance(model, EkModel):
        return {"kind": "e-k", "k": model.k}
    if isinstance(model, FiniteModel):
        doc = {
            "kind": "finite-table",
            "size": model.size,
            "names": list(model.names),
            "leq": [[int(v) for v in row] for row in model.le],
            "add": [list(row) for row in model.table],
        }
        if model.declared_scale is not None:
            doc["scale"] = list(model.declared_scale)
        return doc
    if isinstance(model, NbarModel):
        return {"kind": "nbar"}
    if isinstance(model, LscModel):
        return {
            "kind": "lsc",
            "space": {"points": list(model.points), "leq": [[int(v) for v in row] for row in model.pleq]},
        }
    if isinstance(model, ProductModel):
        return {"kind": "product", "factors": [dump_model(f) for f in model.factors]}
    raise ParseError(f"cannot serialize a {model.kind} model")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_model_text(text: str, source: str = "model") -> CuModel:
    return load_model(_json(text, source), source)


def parse_model(path) -> CuModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return parse_model_text(text, str(path))


def parse_search_spec(path) -> SearchSpec:
    """{"max_size": 4, "required_axioms": ["O5"], "target": "...", "limit": 10}"""
    path = Path(path)
    try:
        doc = _json(path.read_text(encoding="utf-8"), str(path))
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected an object")
    axioms = doc.get("required_axioms", [])
    if not isinstance(axioms, list) or any(a not in AXIOMS for a in axioms):
        raise ParseError(f"{path}: required_axioms must be a subset of {list(AXIOMS)}")
    size = _field(doc, "max_size", str(path))
    if not isinstance(size, int) or size < 1:
        raise ParseError(f"{path}: max_size must be a positive integer")
    limit = doc.get("limit")
    if limit is not None and (not isinstance(limit, int) or limit < 1):
        raise ParseError(f"{path}: limit must be a positive integer or null")
    min_size = doc.get("min_size", 2)
    if not isinstance(min_size, int) or min_size < 1:
        raise ParseError(f"{path}: min_size must be a positive integer")
    return SearchSpec(size, frozenset(axioms), str(doc.get("target", "true")), limit, min_size)
