"""Plain-text tables rendered from a :class:`~gigsaw.serialize.Document`."""

from __future__ import annotations

from .serialize import Document, InequalityRecord


def _theta(doc: Document, c: int) -> str:
    return f"θ{doc.group.label(c)}"


def linear_form(doc: Document, coeffs) -> str:
    terms = [(f"{a}" if a != 1 else "") + _theta(doc, c) for c, a in coeffs]
    return " + ".join(terms) if terms else "0"


def _point(doc: Document, v: int) -> str:
    return "(" + ",".join(str(x) for x in doc.vertices[v].coords) + ")"


def _chars(doc: Document, cs) -> str:
    return "{" + ",".join(doc.group.label(c) for c in cs) + "}"


def render_complex(doc: Document) -> str:
    lines = [f"{doc.group.spec}: {len(doc.vertices)} vertices, {len(doc.edges)} edges, {len(doc.triangles)} triangles"]
    lines.append("")
    lines.append("vertices")
    for i, v in enumerate(doc.vertices):
        marks = "" if v.marks is None else "  " + _chars(doc, v.marks)
        lines.append(f"  v{i:<3} {_point(doc, i):<24} {v.kind}{marks}")
    lines.append("")
    lines.append("edges")
    for i, e in enumerate(doc.edges):
        extra = ""
        if e.character is not None and e.ratio is not None:
            extra = f"  {doc.group.label(e.character):>4}  {_monomial(e.ratio.top)} : {_monomial(e.ratio.bottom)}"
        if e.gig is not None:
            extra += f"  G-ig {_chars(doc, e.gig)}"
        lines.append(f"  e{i:<3} v{e.v1}-v{e.v2}  {e.curve_type:<11}{extra}")
    lines.append("")
    lines.append("triangles")
    for i, t in enumerate(doc.triangles):
        lines.append(f"  t{i:<3} v{t.vertices[0]},v{t.vertices[1]},v{t.vertices[2]}  region {t.region}")
    return "\n".join(lines) + "\n"


def _monomial(m) -> str:
    parts = []
    for var, k in zip("xyz", m):
        if k == 1:
            parts.append(var)
        elif k:
            parts.append(f"{var}^{k}")
    return "".join(parts) or "1"


def _source(doc: Document, q: InequalityRecord) -> str:
    s = q.source
    if s.kind == "curve" and s.edge is not None:
        e = doc.edges[s.edge]
        return f"curve v{e.v1}-v{e.v2} {e.curve_type}"
    return f"{s.kind} " + ",".join(f"v{v}" for v in s.vertices)


def _certificate(q: InequalityRecord) -> str:
    c = q.certificate
    if c is None:
        return ""
    if c.kind == "duplicate":
        return f"same as {c.ref}"
    if c.kind == "summands" and c.summands is not None:
        return "= " + " + ".join((f"{n} " if n > 1 else "") + ref for ref, n in c.summands)
    return ""


def render_walls(doc: Document) -> str:
    kinds: dict[str, int] = {}
    for q in doc.inequalities:
        kinds[q.source.kind] = kinds.get(q.source.kind, 0) + 1
    types: dict[str, int] = {}
    for w in doc.walls:
        types[w.type] = types.get(w.type, 0) + 1
    head = ", ".join(f"{n} {k}" for k, n in sorted(kinds.items()))
    wall_counts = ", ".join(f"{t}: {types[t]}" for t in ("I", "III", "0") if t in types)
    lines = [
        f"{doc.group.spec}: {len(doc.inequalities)} inequalities ({head or 'none'}), "
        f"{len(doc.walls)} walls ({wall_counts or 'none'})",
    ]
    if doc.quotient_cap is not None:
        lines.append(f"quotient divisors capped at {doc.quotient_cap} vertices")
    lines.append("")
    width = max([len(q.label) for q in doc.inequalities] + [5])
    for q in doc.inequalities:
        status = q.status + (f" {q.wall_type}" if q.wall_type else "")
        row = f"{q.label:<{width}}  {status:<13} {linear_form(doc, q.coeffs)} > 0"
        row += f"    [{_source(doc, q)}]"
        cert = _certificate(q)
        if cert:
            row += f"  {cert}"
        lines.append(row)
    lines.append("")
    lines.append("walls")
    by_label = {q.label: q for q in doc.inequalities}
    for w in doc.walls:
        q = by_label[w.inequality_ref]
        divisor = ",".join(f"v{v}" for v in w.divisor) or "-"
        lines.append(f"  {w.type:<4} {w.inequality_ref:<{width}}  {linear_form(doc, q.coeffs)} = 0    divisor {divisor}")
    return "\n".join(lines) + "\n"


def render(doc: Document) -> str:
    if doc.stage == "walls":
        return render_walls(doc)
    return render_complex(doc)
