"""JSON formats, fixture registries and a canonical byte-stable writer.

A fixture file is a JSON object with any of the registry keys
``groups``, ``homs``, ``chainComplexes``, ``simplicialGroups``,
``simplicialHoms`` and ``sesList``, each mapping labels to objects.
References by label may cross files within one fixture directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .chain import ComplexViolation, ProperChainComplex
from .groups import AxiomViolation, FiniteGroup, GroupHom, validate_group
from .simplicial import (
    SimplicialError,
    SimplicialHom,
    SimplicialSES,
    TruncatedSimplicialGroup,
    validate_ses,
    validate_simplicial,
    validate_simplicial_hom,
)

REGISTRIES = ("groups", "homs", "chainComplexes", "simplicialGroups", "simplicialHoms", "sesList")


class ParseError(Exception):
    def __init__(self, file: str, path: str, message: str):
        super().__init__(f"{file}: {path}: {message}")
        self.file, self.path = file, path


class ValidationError(Exception):
    def __init__(self, file: str, path: str, invariant: str):
        super().__init__(f"{file}: {path}: {invariant}")
        self.file, self.path, self.invariant = file, path, invariant


# ---------------------------------------------------------------- to JSON


def group_to_json(g: FiniteGroup, label: str | None = None) -> dict:
    return {"order": g.order, "table": [list(r) for r in g.table], "label": label or g.label or ""}


def hom_to_json(f: GroupHom, dom: str | dict, cod: str | dict) -> dict:
    return {"dom": dom, "cod": cod, "map": list(f.map)}


def complex_to_json(c: ProperChainComplex) -> dict:
    return {
        "objects": [group_to_json(g, g.label or f"C_{n}") for n, g in enumerate(c.objects)],
        "differentials": [{"map": list(d.map)} for d in c.differentials],
    }


def simplicial_to_json(A: TruncatedSimplicialGroup, name: str | None = None) -> dict:
    """Level groups inline; structure maps as ``{"map": [...]}`` with domain and codomain implied by position."""
    name = name or A.label or "A"
    return {
        "depth": A.depth,
        "label": name,
        "levels": [group_to_json(g, g.label or f"{name}[{n}]") for n, g in enumerate(A.levels)],
        "faces": [[{"map": list(f.map)} for f in row] for row in A.faces],
        "degeneracies": [[{"map": list(s.map)} for s in row] for row in A.degeneracies],
    }


def simplicial_hom_to_json(f: SimplicialHom, dom: str, cod: str) -> dict:
    return {"dom": dom, "cod": cod, "levelMaps": [list(g.map) for g in f.level_maps]}


def ses_to_json(s: SimplicialSES, sub: str, total: str, quot: str) -> dict:
    return {
        "sub": sub,
        "total": total,
        "quot": quot,
        "inclusion": [list(g.map) for g in s.inclusion.level_maps],
        "projection": [list(g.map) for g in s.projection.level_maps],
    }


def _is_flat(x) -> bool:
    return isinstance(x, list) and all(isinstance(v, (int, str, bool)) or v is None for v in x)


def _encode(x, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_encode(x[k], indent + 1)}" for k in sorted(x)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if _is_flat(x):
            return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))
        return "[\n" + ",\n".join(inner + _encode(v, indent + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def canonical_dumps(obj: Any) -> str:
    """Sorted keys, two-space indentation, flat lists kept on one line, trailing newline."""
    return _encode(obj, 0) + "\n"


# ---------------------------------------------------------------- FixtureSet


@dataclass
class FixtureSet:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    homs: dict[str, GroupHom] = field(default_factory=dict)
    chain_complexes: dict[str, ProperChainComplex] = field(default_factory=dict)
    simplicial_groups: dict[str, TruncatedSimplicialGroup] = field(default_factory=dict)
    simplicial_homs: dict[str, SimplicialHom] = field(default_factory=dict)
    ses_list: dict[str, SimplicialSES] = field(default_factory=dict)
    # raw JSON per file, and for each object its file and label references
    sources: dict[str, dict] = field(default_factory=dict)
    origin: dict[tuple[str, str], tuple[str, tuple]] = field(default_factory=dict)

    def names(self) -> dict[str, list[str]]:
        return {
            "groups": sorted(self.groups),
            "homs": sorted(self.homs),
            "chainComplexes": sorted(self.chain_complexes),
            "simplicialGroups": sorted(self.simplicial_groups),
            "simplicialHoms": sorted(self.simplicial_homs),
            "sesList": sorted(self.ses_list),
        }

    def simplicial(self, name: str) -> TruncatedSimplicialGroup:
        try:
            return self.simplicial_groups[name]
        except KeyError:
            raise KeyError(f"no simplicial group named {name!r}") from None

    def simplicial_hom(self, name: str) -> SimplicialHom:
        try:
            return self.simplicial_homs[name]
        except KeyError:
            raise KeyError(f"no simplicial hom named {name!r}") from None

    def ses(self, name: str) -> SimplicialSES:
        try:
            return self.ses_list[name]
        except KeyError:
            raise KeyError(f"no short exact sequence named {name!r}") from None


class _Loader:
    def __init__(self):
        self.fs = FixtureSet()
        self.file = "<memory>"

    def fail(self, path: str, msg: str):
        raise ValidationError(self.file, path, msg)

    def need(self, obj: dict, key: str, path: str):
        if not isinstance(obj, dict) or key not in obj:
            raise ParseError(self.file, path, f"missing field {key!r}")
        return obj[key]

    def group(self, obj, path: str) -> FiniteGroup:
        if isinstance(obj, str):
            if obj not in self.fs.groups:
                self.fail(path, f"unresolved reference {obj!r}")
            return self.fs.groups[obj]
        table = self.need(obj, "table", path)
        order = self.need(obj, "order", path)
        if not isinstance(table, list) or not all(isinstance(r, list) and all(isinstance(v, int) for v in r) for r in table):
            raise ParseError(self.file, path + ".table", "table must be a list of integer rows")
        if order != len(table):
            self.fail(path, f"order {order} does not match table size {len(table)}")
        try:
            return validate_group(table, obj.get("label") or None)
        except AxiomViolation as exc:
            self.fail(path, f"AxiomViolation({exc.axiom}, witness={list(exc.witness)})")

    def hom(self, obj, dom: FiniteGroup, cod: FiniteGroup, path: str) -> GroupHom:
        m = self.need(obj, "map", path)
        if not isinstance(m, list) or not all(isinstance(v, int) for v in m):
            raise ParseError(self.file, path + ".map", "map must be a list of integers")
        if len(m) != dom.order or any(not 0 <= v < cod.order for v in m):
            self.fail(path, "map does not fit domain and codomain")
        f = GroupHom(dom, cod, tuple(m))
        if not f.is_hom():
            self.fail(path, "HomViolation: map is not a homomorphism")
        return f

    def standalone_hom(self, obj, path: str) -> GroupHom:
        dom = self.group(self.need(obj, "dom", path), path + ".dom")
        cod = self.group(self.need(obj, "cod", path), path + ".cod")
        return self.hom(obj, dom, cod, path)

    def complex(self, obj, path: str) -> ProperChainComplex:
        objs = [self.group(g, f"{path}.objects[{i}]") for i, g in enumerate(self.need(obj, "objects", path))]
        diffs = self.need(obj, "differentials", path)
        if not isinstance(diffs, list) or len(diffs) != len(objs) - 1:
            self.fail(path, "need exactly one differential per positive degree")
        ds = [self.hom(d, objs[n + 1], objs[n], f"{path}.differentials[{n}]") for n, d in enumerate(diffs)]
        try:
            return ProperChainComplex(objs, ds)
        except ComplexViolation as exc:
            self.fail(path, f"ComplexViolation: {exc}")

    def simplicial(self, obj, name: str, path: str) -> TruncatedSimplicialGroup:
        depth = self.need(obj, "depth", path)
        levels = [self.group(g, f"{path}.levels[{n}]") for n, g in enumerate(self.need(obj, "levels", path))]
        if len(levels) != depth + 1:
            self.fail(path, f"depth {depth} needs {depth + 1} levels")
        faces_raw = self.need(obj, "faces", path)
        degs_raw = self.need(obj, "degeneracies", path)
        if len(faces_raw) != depth or len(degs_raw) != depth:
            self.fail(path, "need one row of faces and degeneracies per level")
        faces = [
            [self.hom(f, levels[n], levels[n - 1], f"{path}.faces[{n - 1}][{i}]") for i, f in enumerate(faces_raw[n - 1])]
            for n in range(1, depth + 1)
        ]
        degs = [
            [self.hom(s, levels[n], levels[n + 1], f"{path}.degeneracies[{n}][{i}]") for i, s in enumerate(degs_raw[n])]
            for n in range(depth)
        ]
        try:
            return validate_simplicial(levels, faces, degs, obj.get("label", name))
        except SimplicialError as exc:
            self.fail(path, f"{type(exc).__name__}: {exc}")

    def sgrp_ref(self, ref, path: str) -> TruncatedSimplicialGroup:
        if not isinstance(ref, str) or ref not in self.fs.simplicial_groups:
            self.fail(path, f"unresolved reference {ref!r}")
        return self.fs.simplicial_groups[ref]

    def level_maps(self, maps, dom, cod, path: str) -> list[GroupHom]:
        if not isinstance(maps, list) or len(maps) != dom.depth + 1:
            self.fail(path, "need one level map per level")
        return [self.hom({"map": m}, dom.levels[n], cod.levels[n], f"{path}[{n}]") for n, m in enumerate(maps)]

    def simplicial_hom(self, obj, name: str, path: str) -> SimplicialHom:
        dom = self.sgrp_ref(self.need(obj, "dom", path), path + ".dom")
        cod = self.sgrp_ref(self.need(obj, "cod", path), path + ".cod")
        if dom.depth != cod.depth:
            self.fail(path, "domain and codomain depths differ")
        maps = self.level_maps(self.need(obj, "levelMaps", path), dom, cod, path + ".levelMaps")
        try:
            return validate_simplicial_hom(dom, cod, maps, name)
        except SimplicialError as exc:
            self.fail(path, f"{type(exc).__name__}: {exc}")

    def ses(self, obj, name: str, path: str) -> SimplicialSES:
        sub = self.sgrp_ref(self.need(obj, "sub", path), path + ".sub")
        total = self.sgrp_ref(self.need(obj, "total", path), path + ".total")
        quot = self.sgrp_ref(self.need(obj, "quot", path), path + ".quot")
        if not sub.depth == total.depth == quot.depth:
            self.fail(path, "depths differ")
        try:
            inc = validate_simplicial_hom(sub, total, self.level_maps(self.need(obj, "inclusion", path), sub, total, path + ".inclusion"))
            proj = validate_simplicial_hom(total, quot, self.level_maps(self.need(obj, "projection", path), total, quot, path + ".projection"))
            return validate_ses(inc, proj, name)
        except SimplicialError as exc:
            self.fail(path, f"{type(exc).__name__}: {exc}")

    def register(self, registry: dict, name: str, value, path: str):
        if name in registry:
            self.fail(path, f"duplicate label {name!r}")
        registry[name] = value

    def load_documents(self, docs: list[tuple[str, dict]]) -> FixtureSet:
        for fname, doc in docs:
            if not isinstance(doc, dict):
                raise ParseError(fname, "$", "top level must be an object")
            for key in doc:
                if key not in REGISTRIES:
                    raise ParseError(fname, f"$.{key}", "unknown registry")
            self.fs.sources[fname] = doc
        steps = [
            ("groups", self.fs.groups, lambda o, n, p: self.group(o, p)),
            ("homs", self.fs.homs, lambda o, n, p: self.standalone_hom(o, p)),
            ("chainComplexes", self.fs.chain_complexes, lambda o, n, p: self.complex(o, p)),
            ("simplicialGroups", self.fs.simplicial_groups, self.simplicial),
            ("simplicialHoms", self.fs.simplicial_homs, self.simplicial_hom),
            ("sesList", self.fs.ses_list, self.ses),
        ]
        for key, registry, build in steps:
            for fname, doc in docs:
                self.file = fname
                for name, obj in sorted(doc.get(key, {}).items()):
                    path = f"$.{key}.{name}"
                    self.register(registry, name, build(obj, name, path), path)
                    self.fs.origin[(key, name)] = (fname, _references(key, obj))
        return self.fs


def _references(key: str, obj: dict) -> tuple:
    def ref(x):
        return x if isinstance(x, str) else None

    if key == "homs":
        return (ref(obj["dom"]), ref(obj["cod"]))
    if key == "chainComplexes":
        return tuple(ref(g) for g in obj["objects"])
    if key == "simplicialGroups":
        return tuple(ref(g) for g in obj["levels"])
    if key == "simplicialHoms":
        return (obj["dom"], obj["cod"])
    if key == "sesList":
        return (obj["sub"], obj["total"], obj["quot"])
    return ()


def dump_fixture_set(fs: FixtureSet) -> dict[str, str]:
    """Serialize every registry back to canonical text, one entry per source file."""
    docs: dict[str, dict] = {}

    def put(key, name, value):
        fname = fs.origin[(key, name)][0]
        docs.setdefault(fname, {}).setdefault(key, {})[name] = value

    def grp(g, r):
        return r if r is not None else group_to_json(g)

    for name, g in fs.groups.items():
        put("groups", name, group_to_json(g))
    for name, f in fs.homs.items():
        d, c = fs.origin[("homs", name)][1]
        put("homs", name, hom_to_json(f, grp(f.dom, d), grp(f.cod, c)))
    for name, c in fs.chain_complexes.items():
        refs = fs.origin[("chainComplexes", name)][1]
        out = complex_to_json(c)
        out["objects"] = [grp(g, r) for g, r in zip(c.objects, refs)]
        put("chainComplexes", name, out)
    for name, A in fs.simplicial_groups.items():
        refs = fs.origin[("simplicialGroups", name)][1]
        out = simplicial_to_json(A, name)
        out["levels"] = [grp(g, r) for g, r in zip(A.levels, refs)]
        put("simplicialGroups", name, out)
    for name, f in fs.simplicial_homs.items():
        put("simplicialHoms", name, simplicial_hom_to_json(f, *fs.origin[("simplicialHoms", name)][1]))
    for name, s in fs.ses_list.items():
        put("sesList", name, ses_to_json(s, *fs.origin[("sesList", name)][1]))
    return {fname: canonical_dumps(doc) for fname, doc in sorted(docs.items())}


def loads_fixtures(docs: dict[str, dict]) -> FixtureSet:
    """Build a FixtureSet from already-parsed documents keyed by file name."""
    return _Loader().load_documents(sorted(docs.items()))


def load_fixtures(path: str | Path) -> FixtureSet:
    path = Path(path)
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    if not files:
        raise ParseError(str(path), "$", "no fixture files found")
    docs = []
    for f in files:
        try:
            docs.append((f.name, json.loads(f.read_text(encoding="utf-8"))))
        except json.JSONDecodeError as exc:
            raise ParseError(f.name, f"line {exc.lineno} column {exc.colno}", exc.msg) from None
        except OSError as exc:
            raise ParseError(str(f), "$", str(exc)) from None
    return _Loader().load_documents(docs)


def builtin_fixture_dir() -> Path:
    return Path(__file__).parent / "fixtures"


def load_builtin() -> FixtureSet:
    return load_fixtures(builtin_fixture_dir())
