"""JSON encoding and decoding of spaces, objects, presheaves and reports.

Output is canonical: keys are sorted, elements and opens appear in their
canonical order, and there is no insignificant whitespace unless `pretty` is
requested. Decoding validates everything it builds, and wraps malformed input
in `ParseError`.
"""

from __future__ import annotations

import json
from collections import abc
from typing import Any, Dict, List, Optional, Tuple

from ._algebra import (
    AlgMorphism,
    AlgObject,
    CategoryTag,
    element_name,
    validate_object,
)
from ._errors import ParseError
from ._finspace import FinSpace, Open, validate_space
from ._plus import PlusResult
from ._presheaf import NatTrans, Presheaf, SheafFailure, SheafReport, validate_presheaf
from ._reflect import (
    ComparisonReport,
    HypothesisReport,
    ReflectedPresheaf,
    Route3031,
    SheafReflection,
)
from ._stalks import Stalk

__all__ = (
    "dumps",
    "loads",
    "load_space",
    "load_object",
    "load_morphism",
    "load_presheaf",
    "read_presheaf",
    "space_to_json",
    "object_to_json",
    "morphism_to_json",
    "presheaf_to_json",
    "nattrans_to_json",
    "stalk_to_json",
    "sheaf_report_to_json",
    "plus_to_json",
    "reflection_to_json",
    "comparison_to_json",
)

Json = Dict[str, Any]


def dumps(data: Any, pretty: bool = False) -> str:
    """Serialize `data` canonically.

    Examples:
        >>> from sheaflab import dumps
        >>> dumps({"b": [1, 2], "a": "x"})
        '{"a":"x","b":[1,2]}'

    """
    if pretty:
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e}", text) from None


def _field(raw: Any, key: str, kind: type, what: str) -> Any:
    if not isinstance(raw, abc.Mapping):
        raise ParseError(f"{what} should be a JSON object", raw)
    try:
        value = raw[key]
    except KeyError:
        raise ParseError(f"{what} has no `{key}` field", raw) from None
    if not isinstance(value, kind):
        raise ParseError(f"`{key}` of {what} should be a {kind.__name__}", value)
    return value


def _parse_key(space: FinSpace, key: str) -> Open:
    members = [_p.strip() for _p in key.split(",") if _p.strip()]
    return space.get_open(members)


def load_space(raw: Any) -> FinSpace:
    """Decode and validate a space `{"points": [...], "opens": [[...], ...]}`."""
    points = _field(raw, "points", list, "space")
    opens = _field(raw, "opens", list, "space")
    if not all(isinstance(_p, str) for _p in points):
        raise ParseError("points should be strings", points)
    if not all(
        isinstance(_u, list) and all(isinstance(_p, str) for _p in _u) for _u in opens
    ):
        raise ParseError("opens should be lists of point names", opens)
    return validate_space(points, opens)


def load_object(raw: Any, tag: Optional[CategoryTag] = None) -> AlgObject:
    """Decode and validate an object; `tag` is used when `raw` has none."""
    if not isinstance(raw, abc.Mapping):
        raise ParseError("object should be a JSON object", raw)
    if "tag" in raw:
        tag = CategoryTag.parse(str(raw["tag"]))
    if tag is None:
        raise ParseError("object has no `tag`", raw)
    return validate_object(tag, raw)


def load_morphism(raw: Any, source: AlgObject, target: AlgObject) -> AlgMorphism:
    """Decode `{"map": {...}}` between two objects, by element name.

    The result is not validated.
    """
    mapping = _field(raw, "map", abc.Mapping, "morphism")
    try:
        pairs = {source.by_name(_a): target.by_name(_b) for _a, _b in mapping.items()}
    except TypeError:
        raise ParseError("morphism maps names to names", mapping) from None
    return AlgMorphism(source, target, pairs)


def load_presheaf(raw: Any) -> Presheaf:
    """Decode and validate a presheaf.

    Sections are keyed by open key, and may omit their `tag`. Restrictions
    are keyed `"V|U"` for `V ⊆ U`, and map `F(U)` to `F(V)`; identity
    restrictions may be omitted.
    """
    space = load_space(_field(raw, "space", abc.Mapping, "presheaf"))
    tag = CategoryTag.parse(str(_field(raw, "tag", str, "presheaf")))
    raw_sections = _field(raw, "sections", abc.Mapping, "presheaf")
    sections: Dict[str, AlgObject] = {}
    for _key, _raw in raw_sections.items():
        u = _parse_key(space, _key)
        if u.key in sections:
            raise ParseError(f"duplicate section over `{{{u.key}}}`", _key)
        sections[u.key] = load_object(_raw, tag)

    raw_restrictions = raw.get("restrictions", {})
    if not isinstance(raw_restrictions, abc.Mapping):
        raise ParseError("`restrictions` should be a JSON object", raw_restrictions)
    restrictions: Dict[Tuple[str, str], AlgMorphism] = {}
    for _key, _raw in raw_restrictions.items():
        try:
            v_key, u_key = _key.split("|")
        except ValueError:
            raise ParseError(f"invalid restriction key: `{_key}`", _key) from None
        u, v = _parse_key(space, u_key), _parse_key(space, v_key)
        if not v.issubset(u):
            raise ParseError(f"`{{{v.key}}}` is not contained in `{{{u.key}}}`", _key)
        if u.key not in sections or v.key not in sections:
            continue  # reported as a missing section below
        restrictions[(u.key, v.key)] = load_morphism(
            _raw, sections[u.key], sections[v.key]
        )
    return validate_presheaf(space, tag, sections, restrictions)


def read_presheaf(path: str) -> Presheaf:
    try:
        with open(path, encoding="utf-8") as json_file:
            text = json_file.read()
    except OSError as e:
        raise ParseError(f"cannot read `{path}`: {e}", path) from None
    return load_presheaf(loads(text))


def space_to_json(space: FinSpace) -> Json:
    return {
        "points": list(space.points),
        "opens": [list(_u.members) for _u in space.opens],
    }


def object_to_json(obj: AlgObject, with_tag: bool = True) -> Json:
    data: Json = {"elements": obj.names()}
    if with_tag:
        data["tag"] = obj.tag.value
    elements = list(obj)
    if obj.tag.is_algebraic:
        data["table"] = [
            [obj.index(obj.mul(_a, _b)) for _b in elements] for _a in elements
        ]
        data["identity"] = obj.index(obj.identity)
    elif obj.tag is CategoryTag.FinPreord:
        data["leq"] = [
            [_i, _j]
            for _i, _a in enumerate(elements)
            for _j, _b in enumerate(elements)
            if obj.leq(_a, _b)
        ]
    return data


def morphism_to_json(f: AlgMorphism) -> Json:
    return {"map": f.as_names()}


def presheaf_to_json(F: Presheaf) -> Json:
    """Encode `F`, leaving out identity restrictions."""
    restrictions = {}
    for _v, _u in F.space.inclusions():
        if _u != _v:
            key = f"{_v.key}|{_u.key}"
            restrictions[key] = morphism_to_json(F.restriction(_v, _u))
    return {
        "space": space_to_json(F.space),
        "tag": F.tag.value,
        "sections": {
            _u.key: object_to_json(F.section(_u), with_tag=False)
            for _u in F.space.opens
        },
        "restrictions": restrictions,
    }


def nattrans_to_json(theta: NatTrans) -> Json:
    return {
        "components": {
            _k: morphism_to_json(_f) for _k, _f in theta.components.items()
        }
    }


def stalk_to_json(st: Stalk, with_operation: bool = False) -> Json:
    data: Json = {
        "point": st.point,
        "germs": [
            {
                "id": _g.class_id,
                "rep": [_g.representative[0].key, element_name(_g.representative[1])],
            }
            for _g in st.germs
        ],
    }
    if with_operation and st.operation is not None:
        data["operation"] = [list(_row) for _row in st.operation]
    return data


def _failures_to_json(failures: List[SheafFailure]) -> List[Json]:
    return [
        {
            "open": _f.open.key,
            "cover": _f.cover.keys,
            "witness": [element_name(_w) for _w in _f.witness],
        }
        for _f in failures
    ]


def sheaf_report_to_json(report: SheafReport) -> Json:
    return {
        "is_sheaf": report.is_sheaf,
        "mode": report.mode,
        "downgraded": report.downgraded,
        "axiom1_failures": _failures_to_json(report.axiom1_failures),
        "axiom2_failures": _failures_to_json(report.axiom2_failures),
    }


def plus_to_json(result: PlusResult) -> Json:
    return {
        "plus": presheaf_to_json(result.plus),
        "unit": nattrans_to_json(result.p),
        "unit_isomorphic": result.unit_isomorphic(),
    }


def _hypotheses_to_json(hyp: HypothesisReport) -> Json:
    return {
        "unit_mono": dict(hyp.unit_mono),
        "products_preserved": dict(hyp.products_preserved),
        "guaranteed": hyp.guaranteed,
        "sheaf": sheaf_report_to_json(hyp.sheaf),
    }


def reflection_to_json(result: Any) -> Json:
    """Encode the result of `reflect_presheaf` or of either sheaf route."""
    if isinstance(result, ReflectedPresheaf):
        return {
            "presheaf": presheaf_to_json(result.presheaf),
            "unit": nattrans_to_json(result.unit),
        }
    if not isinstance(result, (SheafReflection, Route3031)):
        raise TypeError(f"cannot encode `{type(result).__name__}`")
    data = {
        "sheaf": presheaf_to_json(result.sheaf),
        "unit": nattrans_to_json(result.unit),
    }
    if isinstance(result, Route3031):
        data["hypotheses"] = _hypotheses_to_json(result.hypotheses)
    return data


def comparison_to_json(report: ComparisonReport) -> Json:
    return {
        "route_303": reflection_to_json(report.route_303),
        "route_3031": reflection_to_json(report.route_3031),
        "hypotheses": {
            "unit_mono": report.unit_mono,
            "products_preserved": report.products_preserved,
        },
        "natural_iso_found": report.natural_iso_found,
        "iso": None if report.iso is None else nattrans_to_json(report.iso),
        "method": report.method,
    }
