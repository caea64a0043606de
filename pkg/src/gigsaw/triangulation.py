"""The fan of G-Hilb as a triangulated junior simplex.

Vertex indices are positions in ``group.junior_points``; triangle indices
agree with the fan's cone order, so ``fan.graphs[t]`` is the G-graph of
triangle ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .gclusters import Fan, FanError, GGraph, on_sigma_boundary, walk_fan
from .groups import Group, Point


class CurveType(str, Enum):
    MINUS_ONE_MINUS_ONE = "(-1,-1)"
    ZERO_MINUS_TWO = "(0,-2)"
    ONE_MINUS_THREE = "(1,-3)"
    NON_COMPACT = "non-compact"


class VertexKind(str, Enum):
    TRIVALENT = "trivalent"
    HIRZEBRUCH = "hirzebruch"
    DEL_PEZZO = "delpezzo6"
    BOUNDARY = "boundary"
    CORNER = "corner"


class ComplexError(RuntimeError):
    pass


@dataclass(frozen=True)
class Edge:
    index: int
    v1: int
    v2: int
    triangles: tuple[int, ...]

    @property
    def compact(self) -> bool:
        return len(self.triangles) == 2

    def other(self, v: int) -> int:
        return self.v2 if v == self.v1 else self.v1


@dataclass(frozen=True)
class RegularTriangle:
    index: int
    triangles: frozenset[int]
    side: int
    corners: tuple[int, int, int]
    corner_of_simplex: int | None  # junior corner vertex, None for champions
    vertices: frozenset[int]
    interior_vertices: frozenset[int]

    @property
    def is_champions(self) -> bool:
        return self.corner_of_simplex is None


@dataclass
class Triangulation:
    group: Group
    fan: Fan
    points: tuple[Point, ...]
    triangles: list[tuple[int, int, int]]
    edges: list[Edge]
    edge_index: dict[tuple[int, int], int]
    vertex_edges: list[list[int]]
    vertex_triangles: list[list[int]]
    normal_bundles: list[tuple[int, int] | None] = field(default_factory=list)
    curve_types: list[CurveType] = field(default_factory=list)
    regions: list[RegularTriangle] = field(default_factory=list)
    triangle_region: list[int] = field(default_factory=list)
    kinds: list[VertexKind] = field(default_factory=list)

    # -- geometry helpers -------------------------------------------------

    def graph(self, t: int) -> GGraph:
        return self.fan.graphs[t]

    def edge(self, a: int, b: int) -> Edge:
        return self.edges[self.edge_index[(min(a, b), max(a, b))]]

    def vertex_name(self, v: int) -> str:
        a, b, c = self.points[v]
        return f"v{v}({a},{b},{c})/{self.group.den}"

    def is_interior(self, v: int) -> bool:
        return all(x > 0 for x in self.points[v])

    def is_corner(self, v: int) -> bool:
        return self.group.is_corner(self.points[v])

    def interior_vertices(self) -> list[int]:
        return [v for v in range(len(self.points)) if self.is_interior(v)]

    def direction(self, a: int, b: int) -> tuple[int, int, int]:
        return tuple(y - x for x, y in zip(self.points[a], self.points[b]))  # type: ignore[return-value]

    def parallel(self, d1, d2) -> bool:
        return (
            d1[0] * d2[1] - d1[1] * d2[0] == 0
            and d1[1] * d2[2] - d1[2] * d2[1] == 0
            and d1[0] * d2[2] - d1[2] * d2[0] == 0
        )

    def apex(self, t: int, e: Edge) -> int:
        (w,) = set(self.triangles[t]) - {e.v1, e.v2}
        return w

    def valency(self, v: int) -> int:
        return len(self.vertex_edges[v])

    def compact_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.compact]

    def edge_regions(self, e: Edge) -> frozenset[int]:
        return frozenset(self.triangle_region[t] for t in e.triangles)


def build_complex(fan: Fan) -> Triangulation:
    group = fan.group
    pts = group.junior_points
    triangles = [c.rays for c in fan.cones]
    used = {v for t in triangles for v in t}
    if used != set(range(len(pts))):
        raise ComplexError(f"junior points {sorted(set(range(len(pts))) - used)} unused by the fan")
    inc: dict[tuple[int, int], list[int]] = {}
    for ti, (a, b, c) in enumerate(triangles):
        for pair in ((a, b), (a, c), (b, c)):
            inc.setdefault(pair, []).append(ti)
    edges = []
    edge_index = {}
    for n, (pair, ts) in enumerate(sorted(inc.items())):
        boundary = on_sigma_boundary(pts[pair[0]], pts[pair[1]])
        if len(ts) != (1 if boundary else 2):
            raise ComplexError(f"edge {pair} lies on {len(ts)} triangles")
        edges.append(Edge(n, pair[0], pair[1], tuple(ts)))
        edge_index[pair] = n
    vertex_edges: list[list[int]] = [[] for _ in pts]
    for e in edges:
        vertex_edges[e.v1].append(e.index)
        vertex_edges[e.v2].append(e.index)
    vertex_triangles: list[list[int]] = [[] for _ in pts]
    for ti, t in enumerate(triangles):
        for v in t:
            vertex_triangles[v].append(ti)
    if len(triangles) != group.order:
        raise ComplexError(f"{len(triangles)} triangles for order {group.order}")
    tri = Triangulation(group, fan, pts, triangles, edges, edge_index, vertex_edges, vertex_triangles)
    tri.normal_bundles = [normal_bundle(tri, e) for e in edges]
    tri.curve_types = [curve_type(tri, e) for e in edges]
    tri.regions, tri.triangle_region = regular_triangles(tri)
    tri.kinds = [vertex_kind(tri, v) for v in range(len(pts))]
    return tri


def triangulate(group: Group) -> Triangulation:
    return build_complex(walk_fan(group))


# ---------------------------------------------------------------------------
# curves


def _solve_pair(s, p, q) -> tuple[int, int] | None:
    """Integers (alpha, beta) with s = alpha*p + beta*q, if they exist."""
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = p[i] * q[j] - p[j] * q[i]
        if det == 0:
            continue
        an = s[i] * q[j] - s[j] * q[i]
        bn = p[i] * s[j] - p[j] * s[i]
        if an % det or bn % det:
            return None
        alpha, beta = an // det, bn // det
        if all(alpha * x + beta * y == z for x, y, z in zip(p, q, s)):
            return alpha, beta
        return None
    return None


def normal_bundle(tri: Triangulation, e: Edge) -> tuple[int, int] | None:
    """Sorted ``(alpha, beta)`` with ``u + u' = alpha*v1 + beta*v2``; the bundle is O(-alpha)+O(-beta)."""
    if not e.compact:
        return None
    u, w = (tri.apex(t, e) for t in e.triangles)
    pts = tri.points
    s = tuple(a + b for a, b in zip(pts[u], pts[w]))
    sol = _solve_pair(s, pts[e.v1], pts[e.v2])
    if sol is None or sum(sol) != 2:
        raise ComplexError(f"edge {e.v1}-{e.v2}: neighbourhood is not unimodular")
    return tuple(sorted(sol))  # type: ignore[return-value]


def curve_type(tri: Triangulation, e: Edge) -> CurveType:
    """Flop curves come from the lattice; the other compact tags are positional."""
    nb = tri.normal_bundles[e.index]
    if nb is None:
        return CurveType.NON_COMPACT
    if nb == (1, 1):
        return CurveType.MINUS_ONE_MINUS_ONE
    if any(tri.is_interior(v) and tri.valency(v) == 3 for v in (e.v1, e.v2)):
        return CurveType.ONE_MINUS_THREE
    return CurveType.ZERO_MINUS_TWO


# ---------------------------------------------------------------------------
# regular triangles


def regular_triangles(tri: Triangulation) -> tuple[list[RegularTriangle], list[int]]:
    parent = list(range(len(tri.triangles)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, ct in zip(tri.edges, tri.curve_types):
        if ct is CurveType.MINUS_ONE_MINUS_ONE:
            a, b = (find(t) for t in e.triangles)
            parent[a] = b
    comps: dict[int, list[int]] = {}
    for t in range(len(tri.triangles)):
        comps.setdefault(find(t), []).append(t)
    ordered = sorted(comps.values(), key=lambda ts: min(ts))
    regions = []
    owner = [0] * len(tri.triangles)
    for n, ts in enumerate(ordered):
        regions.append(_verify_shape(tri, n, ts))
        for t in ts:
            owner[t] = n
    champions = [r for r in regions if r.is_champions]
    trivalent = [v for v in tri.interior_vertices() if tri.valency(v) == 3]
    if len(champions) + len(trivalent) > 1:
        raise ComplexError("more than one meeting of champions")
    return regions, owner


def _verify_shape(tri: Triangulation, n: int, ts: list[int]) -> RegularTriangle:
    side = math.isqrt(len(ts))
    if side * side != len(ts):
        raise ComplexError(f"component of {len(ts)} triangles is not a regular triangle")
    count: dict[int, int] = {}
    for t in ts:
        for v in tri.triangles[t]:
            count[v] = count.get(v, 0) + 1
    corners = sorted(v for v, k in count.items() if k == 1)
    if side == 1:
        corners = sorted(tri.triangles[ts[0]])
    if len(corners) != 3:
        raise ComplexError(f"component {sorted(ts)} has {len(corners)} corner vertices")
    a, b, c = corners
    pa, pb, pc = (tri.points[v] for v in corners)
    step_u = [y - x for x, y in zip(pa, pb)]
    step_w = [y - x for x, y in zip(pa, pc)]
    if any(x % side for x in step_u + step_w):
        raise ComplexError(f"component {sorted(ts)} corners are not on a side-{side} grid")
    step_u = [x // side for x in step_u]
    step_w = [x // side for x in step_w]
    lookup = {p: v for v, p in enumerate(tri.points)}

    def at(i: int, j: int) -> int:
        p = tuple(x + i * u + j * w for x, u, w in zip(pa, step_u, step_w))
        if p not in lookup:
            raise ComplexError(f"grid point {p} of a regular triangle is not a vertex")
        return lookup[p]

    expected = set()
    for i in range(side):
        for j in range(side - i):
            expected.add(tuple(sorted((at(i, j), at(i + 1, j), at(i, j + 1)))))
            if i + j <= side - 2:
                expected.add(tuple(sorted((at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)))))
    actual = {tri.triangles[t] for t in ts}
    if expected != actual:
        raise ComplexError(f"component {sorted(ts)} is not the standard subdivision")
    members = set(ts)
    for t in ts:
        x, y, z = tri.triangles[t]
        for pair in ((x, y), (x, z), (y, z)):
            e = tri.edge(*pair)
            inside = all(s in members for s in e.triangles) and e.compact
            if inside and tri.curve_types[e.index] is not CurveType.MINUS_ONE_MINUS_ONE:
                raise ComplexError(f"edge {pair} inside a regular triangle is not a flop curve")
    verts = frozenset(count)
    inner = frozenset(at(i, j) for i in range(1, side) for j in range(1, side - i))
    corner = next((v for v in corners if tri.is_corner(v)), None)
    return RegularTriangle(n, frozenset(ts), side, (a, b, c), corner, verts, inner)


# ---------------------------------------------------------------------------
# vertices


def vertex_kind(tri: Triangulation, v: int) -> VertexKind:
    if tri.is_corner(v):
        return VertexKind.CORNER
    if not tri.is_interior(v):
        return VertexKind.BOUNDARY
    k = tri.valency(v)
    if k == 3:
        return VertexKind.TRIVALENT
    inside = any(v in r.interior_vertices for r in tri.regions)
    if k == 6 and inside:
        return VertexKind.DEL_PEZZO
    return VertexKind.HIRZEBRUCH
