"""Text documents (JSON) for patterns, local rules and MLD witnesses.

Every rational is a string "p/q" (or "n"); floats never appear.  Decoding is
strict: unknown fields, wrong types and malformed rationals raise ParseError
with the offending field path (and the line for JSON syntax errors).
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .core import AbstractPattern, Verdict, kind_class
from .geometry import GroupSpec, Isometry, Ball, GammaBall, flat
from .lattice import Lattice
from .shapes import Polygon, Disk
from .regions import FULL
from .instances import (PointSet, Patch, LabeledPatch, Tile, MapPattern, DensityMeasure, Atom, Piece,
                        MapValue, Representation, DiracComb, Plan, Product)
from .derivability import LocalRule, MLDWitness

SCHEMA_VERSION = 1
_RAT = re.compile(r"^-?\d+(/\d+)?$")


class ParseError(ValueError):
    def __init__(self, msg, field="", line=None):
        self.field, self.line = field, line
        where = f" at {field}" if field else ""
        if line is not None:
            where += f" (line {line})"
        super().__init__(msg + where)


class SchemaVersionError(ParseError):
    pass


# ---------------------------------------------------------------- scalars

def enc_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dec_q(s, path="") -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"expected a rational string, got {type(s).__name__}", path)
    s = str(s).strip()
    if not _RAT.match(s):
        raise ParseError(f"malformed rational {s!r}", path)
    if "/" in s:
        n, d = s.split("/")
        if int(d) == 0:
            raise ParseError(f"zero denominator in {s!r}", path)
        return Fraction(int(n), int(d))
    return Fraction(int(s))


def _pt(x):
    return [enc_q(c) for c in x]


def _dpt(v, path, d=None):
    if not isinstance(v, list):
        raise ParseError("expected a coordinate list", path)
    out = tuple(dec_q(c, f"{path}[{i}]") for i, c in enumerate(v))
    if d is not None and len(out) != d:
        raise ParseError(f"expected {d} coordinates", path)
    return out


def _mat(A):
    return [_pt(r) for r in A]


def _dmat(v, path):
    if not isinstance(v, list):
        raise ParseError("expected a matrix", path)
    return tuple(_dpt(r, f"{path}[{i}]") for i, r in enumerate(v))


def _fields(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    extra = set(obj) - set(required) - set(optional)
    if extra:
        raise ParseError(f"unknown field {sorted(extra)[0]!r}", path)
    for k in required:
        if k not in obj:
            raise ParseError(f"missing field {k!r}", path)
    return obj


def _list(v, path):
    if not isinstance(v, list):
        raise ParseError("expected a list", path)
    return v


# ---------------------------------------------------------------- group / lattice

def enc_group(g: GroupSpec) -> dict:
    return {"name": g.name(), "point_group": [_mat(A) for A in g.point_group]}


def dec_group(v, d, path="group") -> GroupSpec:
    _fields(v, path, ("point_group",), ("name",))
    mats = [_dmat(A, f"{path}.point_group[{i}]") for i, A in enumerate(_list(v["point_group"], path))]
    try:
        return GroupSpec(d, tuple(mats))
    except ValueError as exc:
        raise ParseError(str(exc), path) from None


def enc_iso(g: Isometry) -> dict:
    return {"translation": _pt(g.translation), "rotation": _mat(g.rotation)}


def dec_iso(v, path) -> Isometry:
    _fields(v, path, ("translation", "rotation"))
    return Isometry(_dpt(v["translation"], path + ".translation"), _dmat(v["rotation"], path + ".rotation"))


def enc_ball(b) -> dict:
    if isinstance(b, GammaBall):
        return {"gamma_center": enc_iso(b.center), "radius": enc_q(b.radius)}
    return {"center": _pt(b.center), "radius": enc_q(b.radius)}


def dec_ball(v, path):
    if isinstance(v, dict) and "gamma_center" in v:
        _fields(v, path, ("gamma_center", "radius"))
        return GammaBall(dec_iso(v["gamma_center"], path + ".gamma_center"), dec_q(v["radius"], path + ".radius"))
    _fields(v, path, ("center", "radius"))
    return Ball(_dpt(v["center"], path + ".center"), dec_q(v["radius"], path + ".radius"))


# ---------------------------------------------------------------- elements

def _enc_value(v: MapValue) -> dict:
    return {"tag": v.tag, "a": enc_q(v.a), "b": enc_q(v.b), "m": v.m, "vec": _pt(v.vec)}


def _dec_value(v, path) -> MapValue:
    _fields(v, path, ("tag", "a", "b", "m", "vec"))
    if v["tag"] not in ("Q", "S", "E"):
        raise ParseError(f"unknown value tag {v['tag']!r}", path + ".tag")
    if not isinstance(v["m"], int) or isinstance(v["m"], bool):
        raise ParseError("expected an integer", path + ".m")
    return MapValue(v["tag"], dec_q(v["a"], path + ".a"), dec_q(v["b"], path + ".b"), v["m"],
                    _dpt(v["vec"], path + ".vec"))


def _enc_rep(r: Representation) -> dict:
    return {"m": r.m, "table": [[_pt(k), _mat(M)] for k, M in r.table]}


def _dec_rep(v, path) -> Representation:
    _fields(v, path, ("m", "table"))
    rows = []
    for i, row in enumerate(_list(v["table"], path + ".table")):
        p = f"{path}.table[{i}]"
        if not isinstance(row, list) or len(row) != 2:
            raise ParseError("expected [flat matrix, image]", p)
        rows.append((_dpt(row[0], p + "[0]"), _dmat(row[1], p + "[1]")))
    return Representation(v["m"], tuple(sorted(rows)))


def _enc_shape(s) -> dict:
    if isinstance(s, Disk):
        return {"disk": {"center": _pt(s.center), "radius": enc_q(s.radius)}}
    return {"polygon": [_pt(v) for v in s.vertices]}


def _dec_shape(v, path):
    _fields(v, path, (), ("disk", "polygon"))
    try:
        if "disk" in v:
            b = dec_ball(v["disk"], path + ".disk")
            return Disk(b.center, b.radius)
        if "polygon" in v:
            return Polygon(tuple(_dpt(p, f"{path}.polygon[{i}]") for i, p in enumerate(_list(v["polygon"], path))))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), path) from None
    raise ParseError("shape needs 'disk' or 'polygon'", path)


def enc_element(kind: str, e):
    if kind == "PointSet":
        return _pt(e)
    if kind == "DiracComb":
        x, w = e
        return {"x": _pt(x), "w": [enc_q(w[0]), enc_q(w[1])] if isinstance(w, tuple) else enc_q(w)}
    if kind in ("Patch", "LabeledPatch"):
        out = {"shape": _enc_shape(e.shape)}
        if e.punctures:
            out["punctures"] = [_pt(p) for p in e.punctures]
        if e.label is not None:
            out["label"] = str(e.label)
        return out
    if kind in ("MapPattern", "DensityMeasure"):
        a = e.atom
        out = {"profile": a.profile, "center": _pt(a.center), "radius": enc_q(a.radius),
               "value": _enc_value(a.value)}
        if e.parts != FULL:
            out["parts"] = [[enc_ball(b) for b in part] for part in e.part_list()]
        return out
    if kind == "Plan":
        lam, g = e
        return {"index": lam, "gamma": enc_iso(g)}
    raise ParseError(f"no element encoding for kind {kind!r}")


def dec_element(kind: str, v, path, d):
    if kind == "PointSet":
        return _dpt(v, path, d)
    if kind == "DiracComb":
        _fields(v, path, ("x", "w"))
        w = v["w"]
        w = (dec_q(w[0], path + ".w[0]"), dec_q(w[1], path + ".w[1]")) if isinstance(w, list) \
            else dec_q(w, path + ".w")
        return (_dpt(v["x"], path + ".x", d), w)
    if kind in ("Patch", "LabeledPatch"):
        _fields(v, path, ("shape",), ("punctures", "label"))
        label = v.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError("label must be a string", path + ".label")
        punct = [_dpt(p, f"{path}.punctures[{i}]", d) for i, p in enumerate(_list(v.get("punctures", []), path))]
        return Tile(_dec_shape(v["shape"], path + ".shape"), tuple(punct), label)
    if kind in ("MapPattern", "DensityMeasure"):
        _fields(v, path, ("profile", "center", "radius", "value"), ("parts",))
        if v["profile"] not in ("TENT", "EXP", "KRONECKER", "CONST"):
            raise ParseError(f"unknown profile {v['profile']!r}", path + ".profile")
        try:
            atom = Atom(v["profile"], _dpt(v["center"], path + ".center", d), dec_q(v["radius"], path + ".radius"),
                        _dec_value(v["value"], path + ".value"))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), path) from None
        if "parts" not in v:
            return Piece(atom)
        parts = frozenset(tuple(sorted((dec_ball(b, f"{path}.parts[{i}][{j}]") for j, b in enumerate(_list(part, path))),
                                       key=lambda b: b.sort_key()))
                          for i, part in enumerate(_list(v["parts"], path + ".parts")))
        return Piece(atom, parts)
    if kind == "Plan":
        _fields(v, path, ("index", "gamma"))
        if not isinstance(v["index"], int) or isinstance(v["index"], bool):
            raise ParseError("plan index must be an integer", path + ".index")
        return (v["index"], dec_iso(v["gamma"], path + ".gamma"))
    raise ParseError(f"unknown kind {kind!r}", path)


# ---------------------------------------------------------------- patterns

PATTERN_KINDS = ("PointSet", "Patch", "LabeledPatch", "MapPattern", "DensityMeasure", "DiracComb", "Plan", "Product")


def _enc_payload(p) -> dict:
    if isinstance(p, Product):
        return {"kinds": list(p.kinds), "components": [_enc_body(c) for c in p.components]}
    out = {"form": "PERIODIC" if p.lattice is not None else "FINITE"}
    if p.lattice is not None:
        out["basis"] = [_pt(b) for b in p.lattice.basis]
    out["motif" if p.lattice is not None else "elements"] = [enc_element(p.kind, e) for e in p.sorted_elements()]
    if isinstance(p, MapPattern) and (p.rep.m != 1 or not p.rep.is_trivial()):
        out["rep"] = _enc_rep(p.rep)
    return out


def _enc_body(p) -> dict:
    return {"kind": p.kind, "payload": _enc_payload(p)}


def _dec_body(v, group, path):
    _fields(v, path, ("kind", "payload"))
    kind = v["kind"]
    if kind not in PATTERN_KINDS:
        raise ParseError(f"unknown kind {kind!r}", path + ".kind")
    return _dec_payload(kind, v["payload"], group, path + ".payload")


def _dec_payload(kind, v, group, path):
    d = group.dim
    if kind == "Product":
        _fields(v, path, ("kinds", "components"))
        comps = [_dec_body(c, group, f"{path}.components[{i}]") for i, c in enumerate(_list(v["components"], path))]
        return Product(group, comps, v["kinds"])
    _fields(v, path, ("form",), ("basis", "motif", "elements", "rep"))
    form = v["form"]
    if form == "PERIODIC":
        if "basis" not in v or "motif" not in v or "elements" in v:
            raise ParseError("PERIODIC needs 'basis' and 'motif'", path)
        basis = tuple(_dpt(b, f"{path}.basis[{i}]", d) for i, b in enumerate(_list(v["basis"], path)))
        try:
            lattice = Lattice(basis)
        except ValueError as exc:
            raise ParseError(str(exc), path + ".basis") from None
        raw = _list(v["motif"], path + ".motif")
        key = "motif"
    elif form == "FINITE":
        if "basis" in v or "motif" in v or "elements" not in v:
            raise ParseError("FINITE needs 'elements' only", path)
        lattice, raw, key = None, _list(v["elements"], path + ".elements"), "elements"
    else:
        raise ParseError(f"unknown form {form!r}", path + ".form")
    elems = [dec_element(kind, e, f"{path}.{key}[{i}]", d) for i, e in enumerate(raw)]
    kw = {}
    if "rep" in v:
        if kind not in ("MapPattern", "DensityMeasure"):
            raise ParseError("'rep' only applies to map patterns", path + ".rep")
        kw["rep"] = _dec_rep(v["rep"], path + ".rep")
    if kind in ("MapPattern", "DensityMeasure"):
        return kind_class(kind)(group, elems, lattice, **kw)
    if kind == "DiracComb":
        return DiracComb(group, elems, lattice)
    return kind_class(kind)(group, elems, lattice)


def _header(obj: str, group: GroupSpec, metadata) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "object": obj, "dimension": group.dim, "group": enc_group(group)}
    if metadata:
        out["metadata"] = metadata
    return out


# ---------------------------------------------------------------- rules / witnesses

def _enc_param(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return {"q": enc_q(x)}
    if isinstance(x, AbstractPattern):
        return {"pattern": _enc_body(x)}
    if isinstance(x, Representation):
        return {"rep": _enc_rep(x)}
    if isinstance(x, (list, tuple)):
        return [_enc_param(y) for y in x]
    if isinstance(x, dict):
        return {"map": {k: _enc_param(y) for k, y in sorted(x.items())}}
    raise ParseError(f"cannot encode parameter of type {type(x).__name__}")


def _dec_param(v, group, path):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, list):
        return [_dec_param(y, group, f"{path}[{i}]") for i, y in enumerate(v)]
    if isinstance(v, dict) and len(v) == 1:
        (tag, body), = v.items()
        if tag == "q":
            q = dec_q(body, path + ".q")
            return int(q) if q.denominator == 1 and "/" not in body else q
        if tag == "pattern":
            return _dec_body(body, group, path + ".pattern")
        if tag == "rep":
            return _dec_rep(body, path + ".rep")
        if tag == "map":
            if not isinstance(body, dict):
                raise ParseError("expected an object", path + ".map")
            return {k: _dec_param(y, group, f"{path}.map.{k}") for k, y in body.items()}
    raise ParseError("unrecognised parameter value", path)


def _enc_rule(r: LocalRule) -> dict:
    table = sorted(([_enc_body(t), _enc_body(o)] for t, o in r.table.items()),
                   key=lambda row: json.dumps(row, sort_keys=True))
    return {"name": r.name, "margin": enc_q(r.margin), "r_in": enc_q(r.r_in), "r_out": enc_q(r.r_out),
            "source_kind": r.source_kind, "target_kind": r.target_kind,
            "builder": r.builder_name, "params": _enc_param(r.params) if r.params else {"map": {}},
            "target_kwargs": _enc_param(r.target_kwargs) if r.target_kwargs else {"map": {}},
            "table": table}


_RULE_FIELDS = ("name", "margin", "r_in", "r_out", "source_kind", "target_kind", "builder", "params",
                "target_kwargs", "table")


def _dec_rule(v, group, path) -> LocalRule:
    _fields(v, path, _RULE_FIELDS)
    from .derivability import _BUILDERS
    from . import voronoi, decompose  # noqa: F401  (builders register on import)
    if v["builder"] and v["builder"] not in _BUILDERS:
        raise ParseError(f"unknown builder {v['builder']!r}", path + ".builder")
    for k in ("source_kind", "target_kind"):
        if v[k] not in PATTERN_KINDS:
            raise ParseError(f"unknown kind {v[k]!r}", f"{path}.{k}")
    params = _dec_param(v["params"], group, path + ".params")
    kw = _dec_param(v["target_kwargs"], group, path + ".target_kwargs")
    r = LocalRule(dec_q(v["margin"], path + ".margin"), dec_q(v["r_in"], path + ".r_in"),
                  dec_q(v["r_out"], path + ".r_out"), v["source_kind"], v["target_kind"], group,
                  builder_name=v["builder"], params=params, target_kwargs=kw, name=v["name"])
    for i, row in enumerate(_list(v["table"], path + ".table")):
        p = f"{path}.table[{i}]"
        if not isinstance(row, list) or len(row) != 2:
            raise ParseError("expected [template, output]", p)
        r.table[_dec_body(row[0], group, p + "[0]")] = _dec_body(row[1], group, p + "[1]")
    return r


# ---------------------------------------------------------------- top level

def encode_obj(x, metadata=None) -> dict:
    if isinstance(x, AbstractPattern):
        out = _header("pattern", x.group, metadata)
        out.update(_enc_body(x))
        return out
    if isinstance(x, LocalRule):
        out = _header("rule", x.group, metadata)
        out["rule"] = _enc_rule(x)
        return out
    if isinstance(x, MLDWitness):
        out = _header("witness", x.forward.group, metadata)
        out["witness"] = {"name": x.name, "forward": _enc_rule(x.forward), "backward": _enc_rule(x.backward)}
        return out
    raise TypeError(f"cannot encode {type(x).__name__}")


def encode(x, metadata=None) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(encode_obj(x, metadata), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def decode_obj(v, with_metadata=False):
    _fields(v, "", ("schema_version", "object", "dimension", "group"),
            ("metadata", "kind", "payload", "rule", "witness"))
    sv = v["schema_version"]
    if sv != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported schema_version {sv!r} (expected {SCHEMA_VERSION})",
                                 "schema_version")
    d = v["dimension"]
    if d not in (1, 2, 3) or isinstance(d, bool):
        raise ParseError("dimension must be 1, 2 or 3", "dimension")
    group = dec_group(v["group"], d)
    obj = v["object"]
    body_keys = {"pattern": ("kind", "payload"), "rule": ("rule",), "witness": ("witness",)}
    if obj not in body_keys:
        raise ParseError(f"unknown object {obj!r}", "object")
    for k in ("kind", "payload", "rule", "witness"):
        if (k in v) != (k in body_keys[obj]):
            raise ParseError(f"field {k!r} {'missing' if k not in v else 'not allowed'} for {obj}", k)
    if obj == "pattern":
        res = _dec_body({"kind": v["kind"], "payload": v["payload"]}, group, "")
    elif obj == "rule":
        res = _dec_rule(v["rule"], group, "rule")
    else:
        w = _fields(v["witness"], "witness", ("name", "forward", "backward"))
        res = MLDWitness(_dec_rule(w["forward"], group, "witness.forward"),
                         _dec_rule(w["backward"], group, "witness.backward"), w["name"])
    return (res, v.get("metadata", {})) if with_metadata else res


def decode(text: str, with_metadata=False):
    try:
        v = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return decode_obj(v, with_metadata)


def load(path, with_metadata=False):
    with open(path, encoding="utf-8") as fh:
        return decode(fh.read(), with_metadata)


def dump(x, path, metadata=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(encode(x, metadata))


# ---------------------------------------------------------------- reports

def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return enc_q(x)
    if isinstance(x, float):
        return f"{x:.6f}"
    if isinstance(x, Isometry):
        return enc_iso(x)
    if isinstance(x, AbstractPattern):
        return _enc_body(x)
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(y) for y in x]
        return sorted(items, key=lambda y: json.dumps(y, sort_keys=True)) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, dict):
        return {str(k): _jsonable(y) for k, y in x.items()}
    return repr(x)


def verdict_report(v: Verdict, timing: float | None = None, **extra) -> dict:
    """Stable field order: status, reason, counterexample, checked_cases, certificate, details, timing."""
    out = {"status": v.status, "reason": v.reason, "counterexample": _jsonable(v.counterexample),
           "checked_cases": v.checked_cases, "certificate": v.certificate or "none",
           "details": _jsonable(v.details)}
    out["timing"] = None if timing is None else f"{timing:.3f}s"
    out.update({k: _jsonable(x) for k, x in extra.items()})
    return out
