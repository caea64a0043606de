"""SVG and TikZ drawings of a triangulated junior simplex.

The corners sit at e1=(0,9), e2=(10,-6), e3=(-10,-6) and points are placed
barycentrically.  All coordinates are exact rationals rounded once, with
integer arithmetic, to a fixed number of decimals, so output is stable
across platforms.
"""

from __future__ import annotations

from fractions import Fraction

from .serialize import Document

CORNERS = ((0, 9), (10, -6), (-10, -6))
FLOP = "(-1,-1)"


def project(coords) -> tuple[Fraction, Fraction]:
    x = sum(c * e[0] for c, e in zip(coords, CORNERS))
    y = sum(c * e[1] for c, e in zip(coords, CORNERS))
    return Fraction(x), Fraction(y)


def decimal(q: Fraction, places: int = 3) -> str:
    """Round half away from zero to ``places`` decimals without floats."""
    scale = 10**places
    n = abs(q.numerator) * scale
    d = q.denominator
    units = (2 * n + d) // (2 * d)
    sign = "-" if q < 0 and units else ""
    whole, frac = divmod(units, scale)
    text = f"{whole}.{frac:0{places}d}".rstrip("0").rstrip(".")
    return sign + text


def _vertex_text(doc: Document, marks) -> list[str]:
    return [doc.group.label(c) for c in marks]


def _edge_style(doc: Document, i: int) -> str:
    e = doc.edges[i]
    return "thin" if e.curve_type == FLOP else "bold"


def to_svg(doc: Document, unit: int = 30) -> str:
    margin = 40
    width = 20 * unit + 2 * margin
    height = 15 * unit + 2 * margin

    def xy(coords):
        x, y = project(coords)
        return (x + 10) * unit + margin, (9 - y) * unit + margin

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="serif" font-size="13">',
        f"<title>{doc.group.spec}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    pts = [xy(v.coords) for v in doc.vertices]
    for i, e in enumerate(doc.edges):
        (x1, y1), (x2, y2) = pts[e.v1], pts[e.v2]
        style = 'stroke-width="2.5"' if _edge_style(doc, i) == "bold" else 'stroke-width="0.8" stroke-dasharray="4 3"'
        out.append(
            f'<line x1="{decimal(x1)}" y1="{decimal(y1)}" x2="{decimal(x2)}" y2="{decimal(y2)}" stroke="black" {style}/>'
        )
    for e in doc.edges:
        if e.character is None:
            continue
        (x1, y1), (x2, y2) = pts[e.v1], pts[e.v2]
        out.extend(_svg_box((x1 + x2) / 2, (y1 + y2) / 2, [doc.group.label(e.character)], frame=False))
    for v, (x, y) in zip(doc.vertices, pts):
        if v.marks:
            out.extend(_svg_box(x, y, _vertex_text(doc, v.marks), frame=True))
        else:
            out.append(f'<circle cx="{decimal(x)}" cy="{decimal(y)}" r="2.5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _svg_box(x: Fraction, y: Fraction, lines: list[str], frame: bool) -> list[str]:
    w = 8 * max(len(t) for t in lines) + 6
    h = 15 * len(lines) + 2
    stroke = ' stroke="black" stroke-width="0.8"' if frame else ""
    out = [
        f'<rect x="{decimal(x - Fraction(w, 2))}" y="{decimal(y - Fraction(h, 2))}" '
        f'width="{w}" height="{h}" fill="white"{stroke}/>'
    ]
    top = y - Fraction(h, 2) + 13
    for k, t in enumerate(lines):
        out.append(f'<text x="{decimal(x)}" y="{decimal(top + 15 * k)}" text-anchor="middle">{t}</text>')
    return out


def to_tikz(doc: Document, scale: str = "0.5") -> str:
    out = [
        f"% {doc.group.spec}",
        f"\\begin{{tikzpicture}}[scale={scale}]",
        "\\footnotesize",
    ]
    pts = [project(v.coords) for v in doc.vertices]
    for i, (x, y) in enumerate(pts):
        out.append(f"\\coordinate (v{i}) at ({decimal(x)},{decimal(y)});")
    for i, e in enumerate(doc.edges):
        style = "line width=1.1pt" if _edge_style(doc, i) == "bold" else "thin, dashed"
        out.append(f"\\draw[{style}] (v{e.v1}) -- (v{e.v2});")
    for e in doc.edges:
        if e.character is None:
            continue
        (x1, y1), (x2, y2) = pts[e.v1], pts[e.v2]
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        out.append(
            f"\\node[fill=white,inner sep=1pt] at ({decimal(mx)},{decimal(my)}) "
            f"{{${doc.group.label(e.character)}$}};"
        )
    for i, v in enumerate(doc.vertices):
        if v.marks:
            text = _vertex_text(doc, v.marks)
            body = text[0] if len(text) == 1 else "\\begin{matrix}" + " \\\\ ".join(text) + "\\end{matrix}"
            out.append(f"\\node[draw,fill=white,inner sep=2pt] at (v{i}) {{${body}$}};")
        else:
            out.append(f"\\node at (v{i}) {{$\\bullet$}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def emit_figure(doc: Document, fmt: str) -> str:
    if fmt == "svg":
        return to_svg(doc)
    if fmt == "tikz":
        return to_tikz(doc)
    raise ValueError(f"unknown figure format {fmt!r}")
