"""JSON documents for simplicial sets, categories, diagrams and maps.

Every document carries a ``"type"`` field.  Simplex and morphism labels are
written as strings: strings stay as they are, anything else is written as
compact JSON of its list form.  Loaded objects therefore carry string labels,
and ``dumps(load(dumps(X))) == dumps(X)`` byte for byte.

Documents may reference other documents by relative path (a JSON string in
place of an inline object); references resolve against the referencing file.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .category import FiniteCategory, ReedyData
from .diagrams import DiagramMap, SimplicialDiagram
from .errors import HocolimError
from .simplicial import OverObject, SimplicialMap, TruncatedSimplicialSet


class SchemaError(HocolimError, ValueError):
    """A document does not match the expected layout."""


def _plain(key):
    if isinstance(key, (tuple, list)):
        return [_plain(k) for k in key]
    if isinstance(key, frozenset):
        return sorted((_plain(k) for k in key), key=lambda v: json.dumps(v, sort_keys=True))
    if key is None or isinstance(key, (bool, int, str)):
        return key
    return repr(key)


def label(key):
    """String form of a simplex or morphism label."""
    if isinstance(key, str):
        return key
    return json.dumps(_plain(key), separators=(",", ":"))


def canonical(doc):
    """Canonical JSON text: sorted keys, compact separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def digest(text):
    if isinstance(text, str):
        text = text.encode()
    return hashlib.sha256(text).hexdigest()


def _labels(seq, what):
    out = [label(k) for k in seq]
    if len(set(out)) != len(out):
        raise SchemaError(f"{what}: labels collide after conversion to strings")
    return out


# ---------------------------------------------------------------- dumping
def sset_doc(X):
    N = X.N
    return {
        "type": "simplicial_set",
        "name": X.name or "",
        "truncation": N,
        "exact_dim": X.exact_dim,
        "levels": [_labels(X.keys[n], f"level {n}") for n in range(N + 1)],
        "faces": {str(n): [list(r) for r in X.faces[n]] for n in range(1, N + 1)},
        "degeneracies": {str(n): [list(r) for r in X.degeneracies[n]] for n in range(N)},
    }


def category_doc(A, reedy=None):
    doc = {
        "type": "category",
        "name": A.name or "",
        "objects": _labels(A.objects, "objects"),
        "morphisms": [{"id": label(f), "src": label(s), "tgt": label(t)}
                      for f, (s, t) in sorted(A.morphisms.items(), key=lambda kv: label(kv[0]))],
        "identities": {label(a): label(A.identity(a)) for a in A.objects},
        "composition": sorted([label(g), label(f), label(h)] for (g, f), h in A.comp.items()),
    }
    if reedy is not None:
        doc["reedy"] = {"degree": {label(a): int(d) for a, d in reedy.degree.items()},
                        "plus": sorted(label(f) for f in reedy.plus),
                        "minus": sorted(label(f) for f in reedy.minus)}
    return doc


def _components(m):
    return [list(c) for c in m.components]


def map_doc(f):
    return {"type": "map", "name": f.name or "", "source": sset_doc(f.source),
            "target": sset_doc(f.target), "components": _components(f)}


def over_doc(ov):
    return {"type": "over", "structure": map_doc(ov.structure)}


def diagram_doc(F):
    A = F.shape
    return {
        "type": "diagram",
        "name": F.name or "",
        "category": category_doc(A),
        "values": {label(a): sset_doc(F[a]) for a in A.objects},
        "actions": {label(f): _components(F.actions[f]) for f in A.morphisms},
    }


def diagram_map_doc(m):
    return {"type": "diagram_map", "name": m.name or "", "source": diagram_doc(m.source),
            "target": diagram_doc(m.target),
            "components": {label(a): _components(m[a]) for a in m.source.shape.objects}}


def to_doc(obj):
    if isinstance(obj, TruncatedSimplicialSet):
        return sset_doc(obj)
    if isinstance(obj, FiniteCategory):
        return category_doc(obj)
    if isinstance(obj, ReedyData):
        return dict(category_doc(obj.category, obj), type="reedy")
    if isinstance(obj, SimplicialMap):
        return map_doc(obj)
    if isinstance(obj, OverObject):
        return over_doc(obj)
    if isinstance(obj, SimplicialDiagram):
        return diagram_doc(obj)
    if isinstance(obj, DiagramMap):
        return diagram_map_doc(obj)
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return canonical(to_doc(obj))


def dump(obj, path):
    Path(path).write_text(dumps(obj))


# ---------------------------------------------------------------- loading
def _need(doc, key, kind, what):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"{what}: missing field {key!r}")
    v = doc[key]
    if not isinstance(v, kind):
        raise SchemaError(f"{what}: field {key!r} should be {kind.__name__ if isinstance(kind, type) else kind}")
    return v


def _int_table(rows, what):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{what}: expected a list of integer rows")
    for r in rows:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in r):
            raise SchemaError(f"{what}: entries must be integers")
    return rows


class Loader:
    """Resolves documents and path references, sharing equal sub-documents.

    Sharing matters for diagrams: a diagram map needs its source and target
    to sit on the same category object.
    """

    def __init__(self, validate=True):
        self.validate = validate
        self._memo = {}
        self.files = {}

    def read(self, path):
        path = Path(path).resolve()
        raw = path.read_bytes()
        self.files[str(path)] = digest(raw)
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
        return doc, path.parent

    def load_path(self, path, expect=None):
        doc, base = self.read(path)
        return self.load(doc, base, expect)

    def load(self, doc, base=Path("."), expect=None):
        if isinstance(doc, str):
            return self.load_path(Path(base) / doc, expect)
        kind = _need(doc, "type", str, "document")
        if expect is not None and kind not in ((expect,) if isinstance(expect, str) else expect):
            raise SchemaError(f"expected a {expect} document, found {kind!r}")
        key = (kind, canonical(doc), str(base))
        hit = self._memo.get(key)
        if hit is None:
            builder = _BUILDERS.get(kind)
            if builder is None:
                raise SchemaError(f"unknown document type {kind!r}")
            hit = builder(self, doc, Path(base))
            self._memo[key] = hit
        return hit


def _build_sset(ld, doc, base):
    N = _need(doc, "truncation", int, "simplicial_set")
    levels = _need(doc, "levels", list, "simplicial_set")
    if N < 0 or len(levels) != N + 1:
        raise SchemaError(f"simplicial_set: expected {N + 1} levels, found {len(levels)}")
    for lev in levels:
        if not isinstance(lev, list) or not all(isinstance(k, str) for k in lev):
            raise SchemaError("simplicial_set: level ids must be strings")
    faces = _need(doc, "faces", dict, "simplicial_set")
    degens = _need(doc, "degeneracies", dict, "simplicial_set")
    ft = [[]] + [_int_table(faces.get(str(n), []), f"faces at level {n}") for n in range(1, N + 1)]
    dt = [_int_table(degens.get(str(n), []), f"degeneracies at level {n}") for n in range(N)] + [[]]
    exact = doc.get("exact_dim")
    if exact is not None and not isinstance(exact, int):
        raise SchemaError("simplicial_set: exact_dim must be an integer or null")
    return TruncatedSimplicialSet(levels, ft, dt, exact_dim=exact, name=doc.get("name", ""),
                                  validate=ld.validate)


def _build_category(ld, doc, base):
    objects = _need(doc, "objects", list, "category")
    morphisms = {}
    for m in _need(doc, "morphisms", list, "category"):
        morphisms[_need(m, "id", str, "morphism")] = (_need(m, "src", str, "morphism"),
                                                     _need(m, "tgt", str, "morphism"))
    identities = _need(doc, "identities", dict, "category")
    comp = {}
    for row in _need(doc, "composition", list, "category"):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(v, str) for v in row)):
            raise SchemaError("category: composition entries are [g, f, g.f] string triples")
        comp[(row[0], row[1])] = row[2]
    A = FiniteCategory(objects, morphisms, identities, comp, name=doc.get("name", ""), validate=ld.validate)
    if "reedy" in doc:
        r = doc["reedy"]
        ReedyData(A, _need(r, "degree", dict, "reedy"), set(_need(r, "plus", list, "reedy")),
                  set(_need(r, "minus", list, "reedy")))
    return A


def _build_reedy(ld, doc, base):
    A = ld.load(doc["category"] if "category" in doc else dict(doc, type="category"), base, "category")
    r = _need(doc, "reedy", dict, "reedy")
    return ReedyData(A, _need(r, "degree", dict, "reedy"), set(_need(r, "plus", list, "reedy")),
                     set(_need(r, "minus", list, "reedy")))


def _build_map(ld, doc, base):
    S = ld.load(_need(doc, "source", (dict, str), "map"), base, "simplicial_set")
    T = ld.load(_need(doc, "target", (dict, str), "map"), base, "simplicial_set")
    comps = _int_table(_need(doc, "components", list, "map"), "map components")
    if len(comps) != S.N + 1:
        raise SchemaError("map: one component row per level is required")
    return SimplicialMap(S, T, comps, validate=ld.validate, name=doc.get("name", ""))


def _build_over(ld, doc, base):
    f = ld.load(_need(doc, "structure", (dict, str), "over"), base, "map")
    return OverObject(f.source, f)


def _build_diagram(ld, doc, base):
    A = ld.load(_need(doc, "category", (dict, str), "diagram"), base, "category")
    vals = _need(doc, "values", dict, "diagram")
    acts = _need(doc, "actions", dict, "diagram")
    values = {}
    for a in A.objects:
        if a not in vals:
            raise SchemaError(f"diagram: no value at object {a!r}")
        values[a] = ld.load(vals[a], base, "simplicial_set")
    actions = {}
    for f, (s, t) in A.morphisms.items():
        if f in acts:
            comps = _int_table(acts[f], f"action of {f}")
        elif A.identity(s) == f:
            comps = [list(range(values[s].size(n))) for n in range(values[s].N + 1)]
        else:
            raise SchemaError(f"diagram: no action for morphism {f!r}")
        actions[f] = SimplicialMap(values[s], values[t], comps, validate=False)
    return SimplicialDiagram(A, values, actions, name=doc.get("name", ""), validate=ld.validate)


def _build_diagram_map(ld, doc, base):
    F = ld.load(_need(doc, "source", (dict, str), "diagram_map"), base, "diagram")
    G = ld.load(_need(doc, "target", (dict, str), "diagram_map"), base, "diagram")
    if F.shape is not G.shape:
        raise SchemaError("diagram_map: source and target live on different categories")
    raw = _need(doc, "components", dict, "diagram_map")
    comps = {}
    for a in F.shape.objects:
        if a not in raw:
            raise SchemaError(f"diagram_map: no component at {a!r}")
        comps[a] = SimplicialMap(F[a], G[a], _int_table(raw[a], f"component at {a}"), validate=False)
    return DiagramMap(F, G, comps, name=doc.get("name", ""), validate=ld.validate)


_BUILDERS = {
    "simplicial_set": _build_sset,
    "category": _build_category,
    "reedy": _build_reedy,
    "map": _build_map,
    "over": _build_over,
    "diagram": _build_diagram,
    "diagram_map": _build_diagram_map,
}

DOCUMENT_TYPES = tuple(_BUILDERS)


def loads(text, expect=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON ({exc.msg})") from None
    return Loader().load(doc, Path("."), expect)


def load(path, expect=None):
    return Loader().load_path(path, expect)
