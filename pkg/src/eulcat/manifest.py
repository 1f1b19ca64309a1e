"""JSON manifests: one envelope, one payload schema per kind.

    {"schema": 1, "kind": "category" | "group" | "diagram" | "pseudo_diagram"
                        | "action" | "complex" | "spectrum",
     "payload": {...}}

All numbers that can be non-integral are strings "p/q"; integers stay JSON
integers.  Serialization is deterministic (object-id order), and
``parse(serialize(x))`` rebuilds an identical structure for every kind.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .errors import ValidationError
from .fincat import CatFunctor, FinCat, NatIso, validate
from .groups import FinGroup, GroupHom
from .groupact import ComplexOfGroups, ScwolAction, validate_action
from .hocolim import CellSpectrum, PseudoDiagram, StrictDiagram

SCHEMA_VERSION = 1
KINDS = ("category", "group", "diagram", "pseudo_diagram", "action", "complex", "spectrum")


class BadManifest(ValidationError):
    pass


def render_rational(value) -> str:
    return str(Fraction(value))


def parse_rational(raw) -> Fraction:
    return Fraction(str(raw))


# -- category -------------------------------------------------------------------


def category_payload(cat: FinCat) -> dict:
    return {
        "name": cat.name,
        "objects": list(cat.objects),
        "morphisms": [
            {"id": m.name, "source": m.source, "target": m.target} for m in cat.morphisms
        ],
        "identity": {x: cat.identity[x] for x in cat.objects},
        "compose": sorted([g, f, gf] for (g, f), gf in cat.composition.items()),
    }


def category_from_payload(payload: Mapping, name: str = "C") -> FinCat:
    return validate(payload, name=name)


# -- group ----------------------------------------------------------------------


def group_payload(group: FinGroup) -> dict:
    return {
        "name": group.name,
        "elements": list(group.labels),
        "table": [[group.mul(a, b) for b in group.labels] for a in group.labels],
        "identity": group.identity,
    }


def group_from_payload(payload: Mapping) -> FinGroup:
    try:
        labels = tuple(str(x) for x in payload["elements"])
        pos = {lab: i for i, lab in enumerate(labels)}
        table = tuple(tuple(pos[str(v)] for v in row) for row in payload["table"])
    except (KeyError, TypeError) as exc:
        raise BadManifest(f"malformed group payload ({exc})") from exc
    group = FinGroup(labels, table, name=str(payload.get("name", "G")))
    declared = payload.get("identity")
    if declared is not None and str(declared) != group.identity:
        raise BadManifest(
            f"declared identity {declared!r} is not the identity of the table"
        )
    return group


# -- functors inside diagram payloads ----------------------------------------------


def _functor_payload(fun: CatFunctor) -> dict:
    return {
        "objects": {x: fun.obj_map[x] for x in fun.source.objects},
        "morphisms": {m.name: fun.mor_map[m.name] for m in fun.source.morphisms},
    }


def _functor_from_payload(payload: Mapping, src: FinCat, tgt: FinCat) -> CatFunctor:
    return CatFunctor(
        src,
        tgt,
        {str(k): str(v) for k, v in payload["objects"].items()},
        {str(k): str(v) for k, v in payload["morphisms"].items()},
    )


def diagram_payload(d: StrictDiagram) -> dict:
    return {
        "index": category_payload(d.index),
        "vertices": {i: category_payload(d.vertex[i]) for i in d.index.objects},
        "edges": {m.name: _functor_payload(d.edge[m.name]) for m in d.index.morphisms},
    }


def diagram_from_payload(payload: Mapping) -> StrictDiagram:
    index = category_from_payload(payload["index"], name="index")
    vertex = {
        str(i): category_from_payload(p, name=f"vertex[{i}]")
        for i, p in payload["vertices"].items()
    }
    edge = {}
    for m in index.morphisms:
        if m.name not in payload["edges"]:
            raise BadManifest(f"no edge functor for morphism {m.name!r}")
        edge[m.name] = _functor_from_payload(
            payload["edges"][m.name], vertex[m.source], vertex[m.target]
        )
    return StrictDiagram(index, vertex, edge)


def pseudo_diagram_payload(d: PseudoDiagram) -> dict:
    out = {
        "index": category_payload(d.index),
        "vertices": {i: category_payload(d.vertex[i]) for i in d.index.objects},
        "edges": {m.name: _functor_payload(d.edge[m.name]) for m in d.index.morphisms},
        "comp": sorted(
            [v, u, {c: iso.components[c] for c in sorted(iso.components)}]
            for (v, u), iso in d.comp.items()
        ),
        "unit": {
            i: {c: d.unit[i].components[c] for c in sorted(d.unit[i].components)}
            for i in d.index.objects
        },
    }
    return out


def pseudo_diagram_from_payload(payload: Mapping) -> PseudoDiagram:
    from .fincat import CatFunctor as CF

    index = category_from_payload(payload["index"], name="index")
    vertex = {
        str(i): category_from_payload(p, name=f"vertex[{i}]")
        for i, p in payload["vertices"].items()
    }
    edge = {}
    for m in index.morphisms:
        edge[m.name] = _functor_from_payload(
            payload["edges"][m.name], vertex[m.source], vertex[m.target]
        )
    comp = {}
    for v, u, components in payload.get("comp", []):
        v, u = str(v), str(u)
        if (v, u) not in index.composition:
            raise BadManifest(f"comp entry for non-composable pair ({v!r}, {u!r})")
        fun = edge[u].then(edge[v])
        comp[(v, u)] = NatIso(
            fun,
            edge[index.composition[(v, u)]],
            {str(c): str(w) for c, w in components.items()},
        )
    unit = {}
    for i, components in payload.get("unit", {}).items():
        i = str(i)
        unit[i] = NatIso(
            CF.identity_functor(vertex[i]),
            edge[index.identity[i]],
            {str(c): str(w) for c, w in components.items()},
        )
    return PseudoDiagram(index, vertex, edge, comp, unit)


# -- actions ------------------------------------------------------------------------


def action_payload(action: ScwolAction) -> dict:
    return {
        "group": group_payload(action.group),
        "scwol": category_payload(action.space),
        "object_action": {
            g: {x: action.act_obj(g, x) for x in action.space.objects}
            for g in action.group.labels
        },
        "morphism_action": {
            g: {m.name: action.act_mor(g, m.name) for m in action.space.morphisms}
            for g in action.group.labels
        },
    }


def action_from_payload(payload: Mapping) -> ScwolAction:
    group = group_from_payload(payload["group"])
    space = category_from_payload(payload["scwol"], name="scwol")
    return validate_action(payload, group, space)


# -- complexes of groups ---------------------------------------------------------------


def complex_payload(cplx: ComplexOfGroups) -> dict:
    base = cplx.base
    return {
        "base": category_payload(base),
        "local": {x: group_payload(cplx.local[x]) for x in base.objects},
        "homs": {
            m.name: {a: cplx.homs[m.name](a) for a in cplx.local[m.source].labels}
            for m in base.morphisms
            if not base.is_identity(m.name)
        },
        "twists": sorted(
            [b, a, g]
            for (b, a), g in cplx.twists.items()
            if not (base.is_identity(a) or base.is_identity(b))
        ),
    }


def complex_from_payload(payload: Mapping) -> ComplexOfGroups:
    base = category_from_payload(payload["base"], name="base")
    local = {
        str(x): group_from_payload(p) for x, p in payload["local"].items()
    }
    homs = {}
    for m in base.morphisms:
        if base.is_identity(m.name):
            homs[m.name] = GroupHom.identity_hom(local[m.source])
        else:
            raw = payload["homs"].get(m.name)
            if raw is None:
                raise BadManifest(f"no structure homomorphism for {m.name!r}")
            homs[m.name] = GroupHom(
                local[m.source],
                local[m.target],
                {str(a): str(b) for a, b in raw.items()},
            )
    twists = {}
    for b, a, g in payload.get("twists", []):
        twists[(str(b), str(a))] = str(g)
    for (b, a) in base.composition:
        if (b, a) not in twists:
            if base.is_identity(a) or base.is_identity(b):
                twists[(b, a)] = local[base.target(b)].identity
            else:
                raise BadManifest(f"no twist for composable pair ({b!r}, {a!r})")
    return ComplexOfGroups(base, local, homs, twists)


# -- spectra -----------------------------------------------------------------------------


def spectrum_payload(spec: CellSpectrum) -> dict:
    return {
        "index": category_payload(spec.index),
        "cells": {i: list(spec.cells[i]) for i in sorted(spec.cells)},
    }


def spectrum_from_payload(payload: Mapping) -> CellSpectrum:
    index = category_from_payload(payload["index"], name="index")
    cells = {
        str(i): tuple(int(v) for v in vec) for i, vec in payload["cells"].items()
    }
    return CellSpectrum(index, cells)


# -- envelope ---------------------------------------------------------------------------


_SERIALIZERS = {
    "category": category_payload,
    "group": group_payload,
    "diagram": diagram_payload,
    "pseudo_diagram": pseudo_diagram_payload,
    "action": action_payload,
    "complex": complex_payload,
    "spectrum": spectrum_payload,
}

_PARSERS = {
    "category": category_from_payload,
    "group": group_from_payload,
    "diagram": diagram_from_payload,
    "pseudo_diagram": pseudo_diagram_from_payload,
    "action": action_from_payload,
    "complex": complex_from_payload,
    "spectrum": spectrum_from_payload,
}


def serialize(kind: str, value) -> dict:
    if kind not in _SERIALIZERS:
        raise BadManifest(f"unknown manifest kind {kind!r}")
    return {"schema": SCHEMA_VERSION, "kind": kind, "payload": _SERIALIZERS[kind](value)}


def parse(manifest: Mapping) -> tuple[str, Any]:
    if not isinstance(manifest, Mapping):
        raise BadManifest("manifest must be a JSON object")
    version = manifest.get("schema")
    if version != SCHEMA_VERSION:
        raise BadManifest(f"unrecognized schema version {version!r}")
    kind = manifest.get("kind")
    if kind not in KINDS:
        raise BadManifest(f"unknown kind {kind!r}; expected one of {KINDS}")
    payload = manifest.get("payload")
    if payload is None:
        raise BadManifest("manifest has no payload")
    try:
        return kind, _PARSERS[kind](payload)
    except (KeyError, TypeError) as exc:
        raise BadManifest(f"malformed {kind} payload ({exc})") from exc


def load_file(path: str) -> tuple[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadManifest(f"{path}: not valid JSON ({exc})") from exc
    return parse(data)


def dump_file(path: str, kind: str, value) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(serialize(kind, value), fh, indent=2, sort_keys=True)
        fh.write("\n")
