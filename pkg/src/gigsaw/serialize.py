"""JSON documents for a triangulation, its recipe and its wall report.

A :class:`Document` is plain data: characters are integer tuples, monomials
exponent triples and rationals ``"p/q"`` strings.  ``dumps(loads(text))``
reproduces ``text`` byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .chamber import CURVE, WallReport
from .recipe import Recipe
from .triangulation import Triangulation

SCHEMA_VERSION = 1
STAGES = ("complex", "recipe", "walls")

Char = tuple[int, ...]
Exps = tuple[int, int, int]


class DocumentError(ValueError):
    pass


def fraction_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text) -> Fraction:
    if not isinstance(text, str) or text.count("/") != 1:
        raise DocumentError(f"expected a 'p/q' string, got {text!r}")
    p, q = text.split("/")
    try:
        out = Fraction(int(p), int(q))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {text!r}") from exc
    if fraction_text(out) != text:
        raise DocumentError(f"rational {text!r} is not in lowest terms")
    return out


@dataclass(frozen=True)
class GroupRecord:
    spec: str
    factors: tuple[int, ...]
    weights: tuple[tuple[int, ...], ...]
    characters: tuple[Char, ...]  # position = character index used everywhere else

    def label(self, index: int) -> str:
        c = self.characters[index]
        return str(c[0]) if len(c) == 1 else "(" + ",".join(map(str, c)) + ")"

    def index(self, char: Char) -> int:
        return self.characters.index(tuple(char))


@dataclass(frozen=True)
class VertexRecord:
    coords: tuple[Fraction, Fraction, Fraction]
    kind: str
    marks: tuple[int, ...] | None


@dataclass(frozen=True)
class Ratio:
    top: Exps
    bottom: Exps


@dataclass(frozen=True)
class EdgeRecord:
    v1: int
    v2: int
    curve_type: str
    normal_bundle: tuple[int, int] | None
    character: int | None
    ratio: Ratio | None
    gig: tuple[int, ...] | None


@dataclass(frozen=True)
class TriangleRecord:
    vertices: tuple[int, int, int]
    region: int
    ggraph: tuple[Exps, ...]


@dataclass(frozen=True)
class Source:
    kind: str
    edge: int | None
    vertices: tuple[int, ...]
    character: int | None


@dataclass(frozen=True)
class Certificate:
    kind: str  # "facet", "summands" or "duplicate"
    ref: str | None = None  # duplicate: the inequality carrying the proof
    theta: tuple[Fraction, ...] | None = None
    summands: tuple[tuple[str, int], ...] | None = None
    cone: tuple[tuple[str, Fraction], ...] | None = None


@dataclass(frozen=True)
class InequalityRecord:
    label: str
    coeffs: tuple[tuple[int, int], ...]  # sparse (character, coefficient)
    source: Source
    status: str
    wall_type: str | None
    certificate: Certificate | None


@dataclass(frozen=True)
class WallRecord:
    type: str
    inequality_ref: str
    support_edges: tuple[int, ...]
    divisor: tuple[int, ...]


@dataclass(frozen=True)
class Document:
    stage: str
    group: GroupRecord
    vertices: tuple[VertexRecord, ...]
    edges: tuple[EdgeRecord, ...]
    triangles: tuple[TriangleRecord, ...]
    inequalities: tuple[InequalityRecord, ...] = ()
    walls: tuple[WallRecord, ...] = ()
    quotient_cap: int | None = None


# ---------------------------------------------------------------------------
# building


def build_document(tri: Triangulation, rec: Recipe | None = None, report: WallReport | None = None) -> Document:
    group = tri.group
    if report is not None:
        rec = report.rec
    stage = "walls" if report is not None else "recipe" if rec is not None else "complex"
    grp = GroupRecord(
        group.spec(),
        tuple(group.factors),
        tuple(tuple(w) for w in group.weights),
        tuple(tuple(group.char_tuple(c)) for c in group.characters()),
    )
    verts = []
    for v, p in enumerate(tri.points):
        marks = None
        if rec is not None and v in rec.vertex_marks:
            marks = tuple(sorted(rec.vertex_marks[v]))
        coords = tuple(Fraction(x, group.den) for x in p)
        verts.append(VertexRecord(coords, tri.kinds[v].value, marks))  # type: ignore[arg-type]
    edges = []
    for e in tri.edges:
        chi = ratio = gig = None
        if rec is not None and e.index in rec.edge_marks:
            chi = rec.edge_marks[e.index]
            r = rec.ratios[e.index]
            ratio = Ratio(tuple(r.top), tuple(r.bottom))  # type: ignore[arg-type]
        if report is not None and e.index in report.pieces:
            gig = tuple(sorted(report.pieces[e.index]))
        edges.append(
            EdgeRecord(e.v1, e.v2, tri.curve_types[e.index].value, tri.normal_bundles[e.index], chi, ratio, gig)
        )
    tris = tuple(
        TriangleRecord(tuple(t), tri.triangle_region[i], tuple(tri.graph(i).basis))  # type: ignore[arg-type]
        for i, t in enumerate(tri.triangles)
    )
    ineqs: list[InequalityRecord] = []
    walls: list[WallRecord] = []
    cap = None
    if report is not None:
        cap = report.quotient_cap
        rep_label = {k: report.representative(k).label for k in range(len(report.vectors))}
        for q in report.inequalities:
            verdict = report.vectors[q.key]
            if rep_label[q.key] != q.label:
                cert = Certificate("duplicate", ref=rep_label[q.key])
            elif verdict.facet:
                assert verdict.theta is not None
                cert = Certificate("facet", theta=tuple(verdict.theta))
            else:
                assert verdict.summands is not None and verdict.cone is not None
                cert = Certificate(
                    "summands",
                    summands=tuple((rep_label[k], n) for k, n in sorted(verdict.summands.items())),
                    cone=tuple((rep_label[k], w) for k, w in sorted(verdict.cone.items())),
                )
            src = q.source
            vertices = src.vertices or ((src.vertex,) if src.vertex is not None else ())
            ineqs.append(
                InequalityRecord(
                    q.label,
                    tuple((c, a) for c, a in enumerate(q.coeffs) if a),
                    Source(src.kind, src.edge, tuple(vertices), src.character),
                    q.status,
                    q.wall_type,
                    cert,
                )
            )
        for w in report.walls:
            walls.append(
                WallRecord(w.wall_type, report.inequalities[w.inequality].label, tuple(w.support_edges), tuple(w.divisor))
            )
    return Document(stage, grp, tuple(verts), tuple(edges), tris, tuple(ineqs), tuple(walls), cap)


# ---------------------------------------------------------------------------
# to and from plain JSON values


def _char(doc_group: GroupRecord, c: int | None):
    return None if c is None else list(doc_group.characters[c])


def to_json_value(doc: Document) -> dict:
    g = doc.group
    ch = lambda c: _char(g, c)  # noqa: E731
    out = {
        "schema": SCHEMA_VERSION,
        "stage": doc.stage,
        "group": {
            "spec": g.spec,
            "factors": list(g.factors),
            "weights": [list(w) for w in g.weights],
            "characters": [list(c) for c in g.characters],
        },
        "quotient_cap": doc.quotient_cap,
        "vertices": [
            {
                "coords": [fraction_text(x) for x in v.coords],
                "kind": v.kind,
                "marks": None if v.marks is None else [ch(c) for c in v.marks],
            }
            for v in doc.vertices
        ],
        "edges": [
            {
                "v1": e.v1,
                "v2": e.v2,
                "curve_type": e.curve_type,
                "normal_bundle": None if e.normal_bundle is None else list(e.normal_bundle),
                "character": ch(e.character),
                "ratio": None if e.ratio is None else {"top": list(e.ratio.top), "bottom": list(e.ratio.bottom)},
                "gig": None if e.gig is None else [ch(c) for c in e.gig],
            }
            for e in doc.edges
        ],
        "triangles": [
            {"vertices": list(t.vertices), "region": t.region, "ggraph": [list(m) for m in t.ggraph]}
            for t in doc.triangles
        ],
        "inequalities": [_ineq_value(g, q) for q in doc.inequalities],
        "walls": [
            {
                "type": w.type,
                "inequality_ref": w.inequality_ref,
                "support_edges": list(w.support_edges),
                "divisor": list(w.divisor),
            }
            for w in doc.walls
        ],
    }
    return out


def _ineq_value(g: GroupRecord, q: InequalityRecord) -> dict:
    cert = None
    if q.certificate is not None:
        c = q.certificate
        cert = {"kind": c.kind}
        if c.ref is not None:
            cert["ref"] = c.ref
        if c.theta is not None:
            cert["theta"] = [[list(g.characters[i]), fraction_text(x)] for i, x in enumerate(c.theta)]
        if c.summands is not None:
            cert["summands"] = [{"ref": ref, "multiplicity": n} for ref, n in c.summands]
        if c.cone is not None:
            cert["cone"] = [{"ref": ref, "weight": fraction_text(w)} for ref, w in c.cone]
    return {
        "label": q.label,
        "coeffs": [[list(g.characters[c]), a] for c, a in q.coeffs],
        "source": {
            "kind": q.source.kind,
            "edge": q.source.edge,
            "vertices": list(q.source.vertices),
            "character": _char(g, q.source.character),
        },
        "status": q.status,
        "wall_type": q.wall_type,
        "certificate": cert,
    }


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise DocumentError(f"key {key!r} has type {type(val).__name__}")
    return val


def _ints(seq, n=None) -> tuple[int, ...]:
    if not isinstance(seq, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in seq):
        raise DocumentError(f"expected a list of integers, got {seq!r}")
    if n is not None and len(seq) != n:
        raise DocumentError(f"expected {n} integers, got {len(seq)}")
    return tuple(seq)


def from_json_value(data) -> Document:
    if _need(data, "schema") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema {data.get('schema')!r}")
    stage = _need(data, "stage", str)
    if stage not in STAGES:
        raise DocumentError(f"unknown stage {stage!r}")
    gd = _need(data, "group", dict)
    chars = tuple(_ints(c) for c in _need(gd, "characters", list))
    group = GroupRecord(
        _need(gd, "spec", str),
        _ints(_need(gd, "factors", list)),
        tuple(_ints(w) for w in _need(gd, "weights", list)),
        chars,
    )
    lookup = {c: i for i, c in enumerate(chars)}

    def char(val):
        if val is None:
            return None
        key = _ints(val)
        if key not in lookup:
            raise DocumentError(f"unknown character {val!r}")
        return lookup[key]

    verts = []
    for v in _need(data, "vertices", list):
        marks = _need(v, "marks")
        verts.append(
            VertexRecord(
                tuple(parse_fraction(x) for x in _need(v, "coords", list)),  # type: ignore[arg-type]
                _need(v, "kind", str),
                None if marks is None else tuple(char(c) for c in marks),
            )
        )
    edges = []
    for e in _need(data, "edges", list):
        ratio = _need(e, "ratio")
        nb = _need(e, "normal_bundle")
        gig = _need(e, "gig")
        edges.append(
            EdgeRecord(
                _need(e, "v1", int),
                _need(e, "v2", int),
                _need(e, "curve_type", str),
                None if nb is None else _ints(nb, 2),  # type: ignore[arg-type]
                char(_need(e, "character")),
                None if ratio is None else Ratio(_ints(_need(ratio, "top"), 3), _ints(_need(ratio, "bottom"), 3)),  # type: ignore[arg-type]
                None if gig is None else tuple(char(c) for c in gig),
            )
        )
    tris = tuple(
        TriangleRecord(
            _ints(_need(t, "vertices", list), 3),  # type: ignore[arg-type]
            _need(t, "region", int),
            tuple(_ints(m, 3) for m in _need(t, "ggraph", list)),  # type: ignore[misc]
        )
        for t in _need(data, "triangles", list)
    )
    ineqs = []
    for q in _need(data, "inequalities", list):
        src = _need(q, "source", dict)
        cd = _need(q, "certificate")
        cert = None
        if cd is not None:
            theta = cd.get("theta")
            summands = cd.get("summands")
            cone = cd.get("cone")
            cert = Certificate(
                _need(cd, "kind", str),
                cd.get("ref"),
                None if theta is None else tuple(parse_fraction(x[1]) for x in theta),
                None if summands is None else tuple((_need(s, "ref", str), _need(s, "multiplicity", int)) for s in summands),
                None if cone is None else tuple((_need(s, "ref", str), parse_fraction(_need(s, "weight"))) for s in cone),
            )
        ineqs.append(
            InequalityRecord(
                _need(q, "label", str),
                tuple((char(c), int(a)) for c, a in _need(q, "coeffs", list)),  # type: ignore[misc]
                Source(_need(src, "kind", str), _need(src, "edge"), _ints(_need(src, "vertices", list)), char(_need(src, "character"))),
                _need(q, "status", str),
                _need(q, "wall_type"),
                cert,
            )
        )
    walls = tuple(
        WallRecord(
            _need(w, "type", str),
            _need(w, "inequality_ref", str),
            _ints(_need(w, "support_edges", list)),
            _ints(_need(w, "divisor", list)),
        )
        for w in _need(data, "walls", list)
    )
    cap = _need(data, "quotient_cap")
    if cap is not None and (not isinstance(cap, int) or isinstance(cap, bool)):
        raise DocumentError(f"quotient_cap must be an integer or null, got {cap!r}")
    doc = Document(stage, group, tuple(verts), tuple(edges), tris, tuple(ineqs), walls, cap)
    _check_references(doc)
    return doc


def _check_references(doc: Document) -> None:
    nv, ne = len(doc.vertices), len(doc.edges)
    for i, v in enumerate(doc.vertices):
        if len(v.coords) != 3:
            raise DocumentError(f"vertex {i} needs 3 coordinates")
    for i, e in enumerate(doc.edges):
        if not (0 <= e.v1 < nv and 0 <= e.v2 < nv):
            raise DocumentError(f"edge {i} names a missing vertex")
    for i, t in enumerate(doc.triangles):
        if not all(0 <= v < nv for v in t.vertices):
            raise DocumentError(f"triangle {i} names a missing vertex")
    labels = {q.label for q in doc.inequalities}
    if len(labels) != len(doc.inequalities):
        raise DocumentError("inequality labels repeat")
    for q in doc.inequalities:
        c = q.certificate
        refs = [] if c is None else [c.ref] if c.ref is not None else []
        if c is not None:
            refs += [r for r, _ in c.summands or ()] + [r for r, _ in c.cone or ()]
        if any(r not in labels for r in refs):
            raise DocumentError(f"certificate of {q.label} names an unknown inequality")
        if q.source.edge is not None and not 0 <= q.source.edge < ne:
            raise DocumentError(f"inequality {q.label} names a missing edge")
    for w in doc.walls:
        if w.inequality_ref not in labels:
            raise DocumentError(f"wall names unknown inequality {w.inequality_ref!r}")
        if not all(0 <= e < ne for e in w.support_edges) or not all(0 <= v < nv for v in w.divisor):
            raise DocumentError(f"wall {w.inequality_ref} names a missing edge or vertex")


def _flat(value) -> bool:
    return not isinstance(value, dict) and (not isinstance(value, list) or all(map(_flat, value)))


def _emit(value, indent: int) -> str:
    # dicts go one key per line, lists without dicts stay on one line
    if isinstance(value, dict):
        if not value:
            return "{}"
        pad = " " * (indent + 2)
        body = ",\n".join(f"{pad}{json.dumps(k)}: {_emit(v, indent + 2)}" for k, v in value.items())
        return "{\n" + body + "\n" + " " * indent + "}"
    if isinstance(value, list) and value and not _flat(value):
        pad = " " * (indent + 2)
        body = ",\n".join(pad + _emit(v, indent + 2) for v in value)
        return "[\n" + body + "\n" + " " * indent + "]"
    return json.dumps(value, ensure_ascii=False)


def dumps(doc: Document) -> str:
    return _emit(to_json_value(doc), 0) + "\n"


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not JSON: {exc}") from exc
    return from_json_value(data)


def curve_inequality_labels(doc: Document) -> dict[int, str]:
    """Edge index -> label of the inequality assembled from that curve."""
    return {q.source.edge: q.label for q in doc.inequalities if q.source.kind == CURVE and q.source.edge is not None}
