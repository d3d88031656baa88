"""JSON file formats: algebras, cubes, morphisms.

Structural problems (bad JSON, indices out of range, unparsable scalars,
duplicate bracket tuples) raise :class:`ParseError`; objects that parse but
fail semantic validation (a matrix that is not a morphism, a non-functorial
cube) raise :class:`SemanticError`.  The serializers are canonical: sorted
keys, lowest-terms scalars, bracket entries sorted by their argument tuples.
"""

from __future__ import annotations

import json
import os

from .exactla import ExactLAError, Field, span
from .nalg import AlgebraError, AlgebraMorphism, NaryAlgebra, ideal_closure
from .exactla import from_columns
from .ext import Cube, CubeError, cube_from_ideals, subsets


class ParseError(ValueError):
    pass


class SemanticError(ValueError):
    pass


def parse_field(s: str) -> Field:
    if s == "Q":
        return Field(0)
    if isinstance(s, str) and s.startswith("F"):
        try:
            p = int(s[1:])
        except ValueError:
            raise ParseError(f"bad field spec {s!r}") from None
        try:
            return Field(p)
        except ExactLAError as e:
            raise ParseError(f"bad field spec {s!r}: {e}") from None
    raise ParseError(f"bad field spec {s!r}")


def format_field(f: Field) -> str:
    return "Q" if f.char == 0 else f"F{f.char}"


def _expect(obj: dict, key: str, typ, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    val = obj[key]
    if typ is not None and not isinstance(val, typ):
        raise ParseError(f"{where}: field {key!r} has wrong type")
    return val


def parse_algebra(obj: dict, field_override: Field | None = None,
                  where: str = "algebra") -> NaryAlgebra:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    name = _expect(obj, "name", str, where)
    n = _expect(obj, "n", int, where)
    dim = _expect(obj, "dim", int, where)
    fld = field_override or parse_field(_expect(obj, "field", str, where))
    if n < 2 or dim < 0:
        raise ParseError(f"{where}: need n >= 2 and dim >= 0")
    labels = None
    if "basis" in obj:
        labels = obj["basis"]
        if (not isinstance(labels, list) or len(labels) != dim
                or not all(isinstance(x, str) for x in labels)):
            raise ParseError(f"{where}: basis must list {dim} labels")
        labels = tuple(labels)
    brackets = _expect(obj, "brackets", list, where)
    structure = {}
    for i, ent in enumerate(brackets):
        spot = f"{where}: brackets[{i}]"
        if not isinstance(ent, dict):
            raise ParseError(f"{spot}: expected an object")
        args = _expect(ent, "args", list, spot)
        if len(args) != n or not all(isinstance(a, int) and 1 <= a <= dim for a in args):
            raise ParseError(f"{spot}: args must be {n} indices in 1..{dim}")
        args = tuple(args)
        if args in structure:
            raise ParseError(f"{spot}: duplicate args {list(args)}")
        value = _expect(ent, "value", dict, spot)
        vec = list(fld.zero_vec(dim))
        for k, s in value.items():
            try:
                ki = int(k)
            except ValueError:
                raise ParseError(f"{spot}: bad value index {k!r}") from None
            if not 1 <= ki <= dim:
                raise ParseError(f"{spot}: value index {ki} out of range 1..{dim}")
            if not isinstance(s, str):
                raise ParseError(f"{spot}: scalars must be strings")
            try:
                vec[ki - 1] = fld.parse(s)
            except ExactLAError as e:
                raise ParseError(f"{spot}: {e}") from None
        structure[args] = tuple(vec)
    try:
        return NaryAlgebra(name, n, dim, fld, structure, basis_labels=labels)
    except AlgebraError as e:
        raise SemanticError(f"{where}: {e}") from None


def serialize_algebra(a: NaryAlgebra) -> str:
    fld = a.field
    brackets = []
    for args in sorted(a.structure):
        val = a.structure[args]
        brackets.append({
            "args": list(args),
            "value": {str(i + 1): fld.fmt(val[i]) for i in range(a.dim) if val[i]},
        })
    doc = {
        "name": a.name,
        "n": a.n,
        "dim": a.dim,
        "field": format_field(fld),
        "brackets": brackets,
    }
    if a.basis_labels is not None:
        doc["basis"] = list(a.basis_labels)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"{path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from None


def load_algebra(path: str, field_override: Field | None = None) -> NaryAlgebra:
    return parse_algebra(load_json(path), field_override, where=path)


def _parse_vector(fld: Field, dim: int, row, where: str) -> tuple:
    if not isinstance(row, list) or len(row) != dim:
        raise ParseError(f"{where}: expected a vector of {dim} scalar strings")
    out = []
    for s in row:
        if not isinstance(s, str):
            raise ParseError(f"{where}: scalars must be strings")
        try:
            out.append(fld.parse(s))
        except ExactLAError as e:
            raise ParseError(f"{where}: {e}") from None
    return tuple(out)


def _parse_matrix(fld: Field, rows: int, cols: int, obj, where: str):
    if not isinstance(obj, list) or len(obj) != rows:
        raise ParseError(f"{where}: expected a {rows}x{cols} matrix")
    return tuple(_parse_vector(fld, cols, r, where) for r in obj)


def _subset_key(s: str, m: int, where: str) -> tuple:
    if not isinstance(s, str) or (s and not s.isdigit()):
        raise ParseError(f"{where}: bad subset key {s!r}")
    idx = tuple(int(ch) for ch in s)
    if sorted(set(idx)) != list(idx) or any(not 1 <= i <= m for i in idx):
        raise ParseError(f"{where}: bad subset key {s!r}")
    return idx


def subset_to_key(s: tuple) -> str:
    return "".join(str(i) for i in s)


def load_cube(path: str, field_override: Field | None = None) -> Cube:
    obj = load_json(path)
    where = path
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    m = _expect(obj, "m", int, where)
    if not 1 <= m <= 9:
        raise ParseError(f"{where}: m must be in 1..9")
    mode = _expect(obj, "mode", str, where)
    if mode == "ideals":
        rel = _expect(obj, "algebra", str, where)
        apath = os.path.join(os.path.dirname(path) or ".", rel)
        a = load_algebra(apath, field_override)
        raw = _expect(obj, "ideals", list, where)
        if len(raw) != m:
            raise ParseError(f"{where}: need {m} ideal spanning lists")
        ideals = []
        for i, vecs in enumerate(raw):
            if not isinstance(vecs, list):
                raise ParseError(f"{where}: ideals[{i}] must be a list of vectors")
            spanned = span(a.field,
                           [_parse_vector(a.field, a.dim, v, f"{where}: ideals[{i}]")
                            for v in vecs], a.dim)
            ideals.append(ideal_closure(a, spanned))
        try:
            return cube_from_ideals(a, ideals)
        except (AlgebraError, CubeError) as e:
            raise SemanticError(f"{where}: {e}") from None
    if mode == "explicit":
        raw_nodes = _expect(obj, "nodes", dict, where)
        nodes = {}
        for key, val in raw_nodes.items():
            s = _subset_key(key, m, where)
            nodes[s] = parse_algebra(val, field_override, where=f"{where}: node {key!r}")
        missing = [s for s in subsets(m) if s not in nodes]
        if missing:
            raise ParseError(f"{where}: missing nodes {missing}")
        raw_arrows = _expect(obj, "arrows", dict, where)
        arrows = {}
        for key, mat in raw_arrows.items():
            if "->" not in key:
                raise ParseError(f"{where}: bad arrow key {key!r}")
            ks, kt = key.split("->", 1)
            s = _subset_key(ks, m, where)
            t = _subset_key(kt, m, where)
            if s not in nodes or t not in nodes:
                raise ParseError(f"{where}: arrow {key!r} references missing nodes")
            src, tgt = nodes[s], nodes[t]
            entries = _parse_matrix(src.field, tgt.dim, src.dim, mat,
                                    f"{where}: arrow {key!r}")
            try:
                arrows[(s, t)] = AlgebraMorphism(
                    src, tgt, from_columns(src.field, tgt.dim,
                                           [tuple(r[j] for r in entries)
                                            for j in range(src.dim)]))
            except AlgebraError as e:
                raise SemanticError(f"{where}: arrow {key!r}: {e}") from None
        try:
            return Cube(m, nodes, arrows)
        except CubeError as e:
            raise SemanticError(f"{where}: {e}") from None
    raise ParseError(f"{where}: unknown cube mode {mode!r}")


def serialize_cube_ideals(algebra_path: str, a: NaryAlgebra, ideals) -> str:
    fld = a.field
    doc = {
        "m": len(list(ideals)),
        "mode": "ideals",
        "algebra": algebra_path,
        "ideals": [[[fld.fmt(x) for x in v] for v in nd.space.basis] for nd in ideals],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_morphism(path: str, field_override: Field | None = None) -> AlgebraMorphism:
    obj = load_json(path)
    where = path
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    base = os.path.dirname(path) or "."
    src = load_algebra(os.path.join(base, _expect(obj, "source", str, where)),
                       field_override)
    tgt = load_algebra(os.path.join(base, _expect(obj, "target", str, where)),
                       field_override)
    entries = _parse_matrix(src.field, tgt.dim, src.dim,
                            _expect(obj, "matrix", list, where), where)
    try:
        return AlgebraMorphism(src, tgt,
                               from_columns(src.field, tgt.dim,
                                            [tuple(r[j] for r in entries)
                                             for j in range(src.dim)]))
    except AlgebraError as e:
        raise SemanticError(f"{where}: {e}") from None


def serialize_morphism(source_path: str, target_path: str, f: AlgebraMorphism) -> str:
    fld = f.source.field
    doc = {
        "source": source_path,
        "target": target_path,
        "matrix": [[fld.fmt(x) for x in row] for row in f.map.entries],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
