"""JSON input formats, report serialisation and the published report schemas."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from . import catalog
from .complexes import GCWComplex
from .errors import InvalidInput, PseudofixError
from .euler import DeficitVector, EulerProfile
from . import groups
from .groups import FiniteGroup
from .splittings import CoverModel, ExtensionData

SCHEMA_VERSION = 1

# a bundled document refers to its neighbours by file name
_BUNDLE = "@"


def load_json(ref, base: Path | None = None) -> Any:
    """Read a JSON document from a path, or a bundled one written ``@name``.

    Relative paths are taken relative to ``base`` when given, so a file can
    point at its neighbours.
    """
    if isinstance(ref, (dict, list)):
        return ref
    ref = str(ref)
    if base == _BUNDLE and not ref.startswith("@"):
        ref = "@" + Path(ref).stem
    elif base is not None and not ref.startswith("@") and not Path(ref).is_absolute():
        ref = str(base / ref)
    if ref.startswith("@"):
        name = ref[1:]
        data = resources.files("pseudofix").joinpath("data", f"{name}.json")
        if not data.is_file():
            raise InvalidInput(f"no bundled input named {name!r}")
        text = data.read_text(encoding="utf-8")
    else:
        try:
            text = Path(ref).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidInput(f"cannot read {ref}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{ref} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInput(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InvalidInput(f"field {key!r} has the wrong type")
    return val


def _int(x, what="value") -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, str) and x.lstrip("-").isdigit():
            return int(x)
        raise InvalidInput(f"{what} {x!r} is not an integer")
    return x


# groups ----------------------------------------------------------------------------------


def parse_group(doc, order_cap: int | None = None) -> FiniteGroup:
    doc = load_json(doc)
    if order_cap is None:
        order_cap = groups.ORDER_CAP
    kind = _need(doc, "kind", str)
    name = doc.get("name")
    if kind == "table":
        mul = _need(doc, "mul", list)
        return FiniteGroup.from_multiplication_table(mul, name=name)
    if kind == "perm":
        degree = _int(_need(doc, "degree"), "degree")
        gens = doc.get("generators", [])
        return FiniteGroup.from_permutation_generators(degree, gens, cap=order_cap, name=name)
    if kind == "catalog":
        key = _need(doc, "name", str)
        if key not in catalog.GROUPS:
            raise InvalidInput(f"unknown catalog group {key!r}")
        return catalog.group(key)
    raise InvalidInput(f"unknown group kind {kind!r}")


def group_to_json(G: FiniteGroup) -> dict:
    out = {"kind": "table", "mul": [list(r) for r in G.mul]}
    if G.name:
        out["name"] = G.name
    return out


def parse_subgroup(G: FiniteGroup, text):
    if text is None:
        return G.whole
    if isinstance(text, str):
        parts = [p for p in text.replace(" ", "").split(",") if p]
        elems = [_int(p, "subgroup element") for p in parts]
    else:
        elems = [_int(p, "subgroup element") for p in text]
    return G.subgroup(elems)


# complexes ---------------------------------------------------------------------------------


def parse_complex(doc, group: FiniteGroup | None = None) -> GCWComplex:
    base = _base_of(doc)
    doc = load_json(doc)
    if isinstance(doc, dict) and doc.get("kind") == "catalog":
        key = _need(doc, "name", str)
        if key not in catalog.COMPLEXES:
            raise InvalidInput(f"unknown catalog complex {key!r}")
        return catalog.complex_(key)
    cells_doc = _need(doc, "cells", list)
    cells = []
    for c in cells_doc:
        if isinstance(c, dict):
            cells.append((_int(_need(c, "id"), "cell id"), _int(_need(c, "dim"), "dimension")))
        else:
            cells.append((_int(c[0], "cell id"), _int(c[1], "dimension")))
    boundary = {}
    for k, faces in doc.get("boundary", {}).items():
        boundary[_int(k, "cell id")] = [(_int(f, "face id"), _int(x, "incidence")) for f, x in faces]
    if group is None and "group" in doc:
        group = parse_group(load_json(doc["group"], base))
    action = {}
    for g, entries in doc.get("action", {}).items():
        action[_int(g, "group element")] = {
            _int(c, "cell id"): (_int(im, "cell id"), _int(s, "sign")) for c, im, s in entries
        }
    if group is not None and any(not 0 <= g < group.order for g in action):
        raise InvalidInput("action refers to an element outside the group")
    if doc.get("action_on_generators"):
        if group is None:
            raise InvalidInput("an action on generators needs a group")
        return GCWComplex.from_generator_action(cells, boundary, group, action, name=doc.get("name"))
    return GCWComplex(cells, boundary, action, group, name=doc.get("name"))


def complex_to_json(X: GCWComplex, with_group: bool = True) -> dict:
    out = {
        "cells": [{"id": c, "dim": X.dims[c]} for c in X.ids],
        "boundary": {str(c): [[f, k] for f, k in X.raw_boundary[c]] for c in X.ids if X.raw_boundary[c]},
    }
    action = {}
    for g in range(1, X.group.order):
        moved = [[c, im, s] for c, (im, s) in sorted(X.action_of(g).items()) if (im, s) != (c, 1)]
        if moved:
            action[str(g)] = moved
    if action:
        out["action"] = action
    if with_group and X.group.order > 1:
        out["group"] = group_to_json(X.group)
    if X.name:
        out["name"] = X.name
    return out


def _base_of(ref):
    if isinstance(ref, (str, Path)):
        return _BUNDLE if str(ref).startswith("@") else Path(ref).parent
    return None


def parse_profile(doc) -> EulerProfile:
    base = _base_of(doc)
    doc = load_json(doc)
    Y = parse_complex(load_json(_need(doc, "complex"), base))
    values = {_int(k, "cell id"): _int(v) for k, v in _need(doc, "values", dict).items()}
    nonempty = doc.get("nonempty")
    if nonempty is not None and not isinstance(nonempty, bool):
        raise InvalidInput("nonempty must be a boolean")
    return EulerProfile(Y, values, nonempty)


def parse_extension(doc, total: FiniteGroup | None = None) -> ExtensionData:
    base = _base_of(doc)
    doc = load_json(doc)
    gamma = total if total is not None else parse_group(load_json(_need(doc, "gamma"), base))
    pi = [_int(x, "kernel element") for x in _need(doc, "pi", list)]
    onto = doc.get("onto_g")
    if onto:
        G = parse_group(load_json(_need(onto, "g"), base))
        return ExtensionData.build(gamma, pi, G, [_int(x, "image") for x in _need(onto, "map", list)])
    return ExtensionData.build(gamma, pi)


def parse_cover(ref, extension_doc=None) -> CoverModel:
    doc = load_json(ref)
    X = parse_complex(ref)
    if extension_doc is not None:
        E = parse_extension(extension_doc, total=X.group)
    else:
        kernel = doc.get("free_kernel")
        if kernel is None:
            raise InvalidInput("a cover needs either 'free_kernel' or an extension file")
        E = ExtensionData.build(X.group, [_int(x, "kernel element") for x in kernel])
    return CoverModel(X, E)


def parse_deficits(doc) -> DeficitVector:
    doc = load_json(doc)
    if "deficits" in doc:
        items = sorted((_int(k, "component id"), _int(v)) for k, v in _need(doc, "deficits", dict).items())
        return DeficitVector(tuple(k for k, _ in items), tuple(v for _, v in items))
    comps = [_int(c, "component id") for c in _need(doc, "components", list)]
    entries = [_int(x) for x in _need(doc, "entries", list)]
    if len(comps) != len(entries):
        raise InvalidInput("components and entries differ in length")
    return DeficitVector(tuple(comps), tuple(entries))


def parse_fixed_euler(doc) -> dict:
    doc = load_json(doc)
    raw = _need(doc, "fixed_euler", dict)
    return {_int(k, "component id"): (None if v is None else _int(v)) for k, v in raw.items()}


# reports -----------------------------------------------------------------------------------


def envelope(command: str, body: dict) -> dict:
    out = {"schema": f"pseudofix.{command}/{SCHEMA_VERSION}"}
    out.update(body)
    return out


def error_report(exc: Exception) -> dict:
    kind = exc.code if isinstance(exc, PseudofixError) else "invalid_input"
    body = {"type": kind, "message": str(exc)}
    for attr in ("triple", "cells", "pairs"):
        val = getattr(exc, attr, None)
        if val:
            body[attr] = [list(v) if isinstance(v, tuple) else v for v in val]
    violations = getattr(exc, "violations", None)
    if violations:
        body["violations"] = [
            {"kind": v.kind, "message": v.message, "cell": v.cell, "element": v.element} for v in violations
        ]
    return envelope("error", {"error": body})


def dumps(report: dict, compact: bool = False) -> str:
    if compact:
        return json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


# schemas -------------------------------------------------------------------------------------

_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_SUBGROUP = _INT_LIST
_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}


def _report(command: str, properties: dict, required=None) -> dict:
    props = {"schema": {"const": f"pseudofix.{command}/{SCHEMA_VERSION}"}}
    props.update(properties)
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"pseudofix {command} report",
        "type": "object",
        "properties": props,
        "required": ["schema"] + list(required if required is not None else properties),
        "additionalProperties": False,
    }


_SMITH_ENTRY = {
    "type": "object",
    "properties": {
        "subgroup": _SUBGROUP,
        "prime": {"type": "integer"},
        "betti_source": _INT_LIST,
        "betti_target": _INT_LIST,
        "holds": {"type": "boolean"},
    },
    "required": ["subgroup", "prime", "betti_source", "betti_target", "holds"],
}

SCHEMAS = {
    "classify": _report("classify", {
        "group_order": {"type": "integer"},
        "tag": {"enum": ["Zero", "One", "NontrivialUnknown"]},
        "witness": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "properties": {"P": _SUBGROUP, "H": _SUBGROUP}, "required": ["P"],
                 "additionalProperties": False},
            ]
        },
        "m_G": {"type": ["integer", "null"]},
        "n_G": {"type": ["integer", "null"]},
    }),
    "degree-zero": _report("degree-zero", {
        "indices": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
        "coefficients": _INT_LIST,
        "check": {"const": 0},
    }),
    "complex.fixed": _report("complex.fixed", {
        "subgroup": _SUBGROUP,
        "cells": _INT_LIST,
        "euler": {"type": "integer"},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"id": {"type": "integer"}, "cells": _INT_LIST, "euler": {"type": "integer"}},
                "required": ["id", "cells", "euler"],
            },
        },
        "delta": {"type": "integer"},
    }),
    "complex.homology": _report("complex.homology", {
        "subgroup": {"type": ["array", "null"], "items": {"type": "integer"}},
        "integral": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"betti": {"type": "integer"}, "torsion": _INT_LIST},
                "required": ["betti", "torsion"],
            },
        },
        "mod_p": {"type": "object", "additionalProperties": _INT_LIST},
        "euler": {"type": "integer"},
    }),
    "complex.validate": _report("complex.validate", {
        "ok": {"type": "boolean"},
        "regular": {"type": "boolean"},
        "violations": {"type": "array"},
    }),
    "rebalance": _report("rebalance", {
        "modulus": {"type": "integer"},
        "chi_source": {"type": "integer"},
        "chi_target": {"type": "integer"},
        "moves": {"type": "array", "items": {"type": "object"}},
        "final": {"type": "object", "additionalProperties": {"type": "integer"}},
    }),
    "check.smith": _report("check.smith", {
        "holds": {"type": "boolean"},
        "entries": {"type": "array", "items": _SMITH_ENTRY},
    }),
    "check.verdict": _report("check.verdict", {
        "modulus": {"type": ["integer", "null"]},
        "global_congruence": {"enum": ["pass", "fail", "indeterminate"]},
        "local_congruences": {"type": "array"},
        "smith": {"type": ["array", "null"], "items": _SMITH_ENTRY},
        "trace": {"type": "array"},
        "conclusion": {"enum": ["SufficientPass", "NecessaryFail", "DefinitiveExact", "Indeterminate"]},
        "reason": {"type": ["string", "null"]},
        "passed": {"type": ["boolean", "null"]},
        "exit_code": {"enum": [0, 1, 2]},
        "weakly_connected": {"type": ["boolean", "null"]},
    }),
    "trace.rank": _report("trace.rank", {
        "group_order": {"type": "integer"},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "representative": {"type": "integer"},
                    "size": {"type": "integer"},
                    "coefficient": _RATIONAL,
                },
                "required": ["representative", "size", "coefficient"],
            },
        },
    }),
    "check.cyclic": _report("check.cyclic", {
        "holds": {"type": "boolean"},
        "checks": {"type": "array", "items": {"type": "object"}},
    }),
    "check.compwise": _report("check.compwise", {
        "holds": {"type": "boolean"},
        "p_subgroup": _SUBGROUP,
        "groups": {"type": "array", "items": {"type": "object"}},
        "failures": {"type": "array", "items": {"type": "object"}},
    }),
    "catalog.list": _report("catalog.list", {
        "groups": {"type": "array", "items": {"type": "string"}},
        "complexes": {"type": "array", "items": {"type": "string"}},
        "bundled": {"type": "array", "items": {"type": "string"}},
    }),
    "catalog.export": _report("catalog.export", {
        "name": {"type": "string"},
        "kind": {"enum": ["group", "complex"]},
        "document": {"type": "object"},
    }),
    "error": _report("error", {
        "error": {
            "type": "object",
            "properties": {"type": {"type": "string"}, "message": {"type": "string"}},
            "required": ["type", "message"],
        }
    }),
}
