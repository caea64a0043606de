"""Total G-igsaw pieces computed from Reid's recipe alone.

The recursion only looks at markings, curve types, regular triangles and
slopes.  The cluster oracle in ``gclusters`` is never consulted here; tests
compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .recipe import Recipe, chi_dp
from .triangulation import CurveType, VertexKind


class UnlockError(RuntimeError):
    pass


# provenance step tags
CH, DP, H1, H2 = "Ch", "dP", "H1", "H2"


@dataclass(frozen=True)
class Quiver:
    """The chi-chain oriented away from a curve.

    ``parent_edge[v]`` is the chain edge through which ``v`` is reached from
    the curve; the endpoints of the curve itself have none.  For a boundary
    curve ``source``/``sink`` are the vertices bounding the unlocking span and
    ``bend`` is the last vertex of the straight run out of the corner.
    """

    edge: int
    character: int
    parent_edge: dict[int, int | None]
    boundary: bool
    corner: int | None = None
    source: int | None = None
    bend: int | None = None
    sink: int | None = None
    run: tuple[int, ...] = ()
    span: tuple[int, ...] = ()
    trivalent: int | None = None

    def outgoing(self, rec: Recipe, v: int) -> list[int]:
        back = self.parent_edge.get(v)
        return [e for e in rec.chain(self.character).adjacency[v] if e != back and e != self.edge]


@dataclass
class GigsawPiece:
    edge: int
    characters: frozenset[int]
    # character -> (step, detail); the first step that produced it wins
    provenance: dict[int, tuple[str, str]] = field(default_factory=dict)
    unlocked: tuple[int, ...] = ()


def _orient(rec: Recipe, edge: int) -> dict[int, int | None]:
    tri = rec.tri
    chi = rec.edge_marks[edge]
    adj = rec.chain(chi).adjacency
    e = tri.edges[edge]
    parent: dict[int, int | None] = {e.v1: None, e.v2: None}
    stack = [e.v1, e.v2]
    while stack:
        v = stack.pop()
        for ei in adj[v]:
            if ei == edge:
                continue
            w = tri.edges[ei].other(v)
            if w not in parent:
                parent[w] = ei
                stack.append(w)
    return parent


def _straight_run(rec: Recipe, edge: int) -> list[int]:
    """Maximal vertex path of collinear chi-edges through ``edge``."""
    tri = rec.tri
    chi = rec.edge_marks[edge]
    chain = rec.chain(chi)
    e = tri.edges[edge]
    d = tri.direction(e.v1, e.v2)

    def extend(prev: int, v: int) -> list[int]:
        out = []
        while chain.degree(v) == 2:
            nxt = [tri.edges[x].other(v) for x in chain.adjacency[v]]
            nxt = [w for w in nxt if w != prev]
            if len(nxt) != 1 or not tri.parallel(d, tri.direction(v, nxt[0])):
                break
            prev, v = v, nxt[0]
            out.append(v)
        return out

    left = extend(e.v2, e.v1)
    right = extend(e.v1, e.v2)
    return list(reversed(left)) + [e.v1, e.v2] + right


def xi_quiver(rec: Recipe, edge: int) -> Quiver:
    tri = rec.tri
    if edge not in rec.edge_marks:
        raise UnlockError(f"edge {tri.edges[edge]} is not a compact curve")
    chi = rec.edge_marks[edge]
    parent = _orient(rec, edge)
    if tri.curve_types[edge] is CurveType.MINUS_ONE_MINUS_ONE:
        return Quiver(edge, chi, parent, boundary=False)

    e = tri.edges[edge]
    trivalent = next(
        (v for v in (e.v1, e.v2) if tri.kinds[v] is VertexKind.TRIVALENT), None
    )
    run = _straight_run(rec, edge)
    ends = [v for v in (run[0], run[-1]) if tri.is_corner(v)]
    if not ends:
        raise UnlockError(f"no corner at the end of the straight run through {tri.edges[edge]}")
    if len(ends) == 2 and trivalent is None:
        # corner to corner: orient from the corner nearer the curve
        pos = sorted((run.index(e.v1), run.index(e.v2)))
        ends = [run[0]] if pos[0] < len(run) - 1 - pos[1] else [run[-1]]
    corner = ends[0]
    if run[0] != corner:
        run.reverse()
    i1, i2 = sorted((run.index(e.v1), run.index(e.v2)))
    source = run[i2]
    interior = [v for v in run if tri.is_interior(v)]
    bend = interior[-1] if interior else source
    if trivalent is not None:
        if bend != trivalent:
            raise UnlockError(f"branch through {tri.edges[edge]} does not end at the trivalent vertex")
        sink = bend
        span = tuple(run[i2: run.index(bend) + 1])
    else:
        sink = bend
        span = list(run[i2: run.index(bend) + 1])
        chain = rec.chain(chi)
        v = bend
        while True:
            nxt = [
                x
                for x in chain.adjacency[v]
                if parent.get(tri.edges[x].other(v)) == x
                and tri.curve_types[x] is CurveType.MINUS_ONE_MINUS_ONE
            ]
            if not nxt:
                break
            if len(nxt) > 1:
                raise UnlockError(f"chi-chain branches into flop curves at {tri.points[v]}")
            v = tri.edges[nxt[0]].other(v)
            span.append(v)
        sink = v
        span = tuple(span)
    return Quiver(
        edge,
        chi,
        parent,
        boundary=True,
        corner=corner,
        source=source,
        bend=bend,
        sink=sink,
        run=tuple(run),
        span=span,
        trivalent=trivalent,
    )


def _is_hirzebruch(rec: Recipe, v: int) -> bool:
    return rec.tri.kinds[v] is VertexKind.HIRZEBRUCH


def chain_broken_at(rec: Recipe, rho: int, v: int) -> bool:
    tri = rec.tri
    es = rec.chain(rho).adjacency.get(v, [])
    if len(es) == 1:
        return True
    if len(es) != 2:
        return False
    a, b = (tri.edges[x] for x in es)
    return not tri.parallel(tri.direction(v, a.other(v)), tri.direction(v, b.other(v)))


def _flop_edges_at(rec: Recipe, v: int, chi: int) -> list[int]:
    tri = rec.tri
    return [
        x
        for x in tri.vertex_edges[v]
        if tri.curve_types[x] is CurveType.MINUS_ONE_MINUS_ONE and rec.edge_marks[x] != chi
    ]


def _ahead_in_region(rec: Recipe, q: Quiver, v: int) -> list[int]:
    """Flop curves at ``v`` sharing a regular triangle with an outgoing flop chi-curve."""
    tri = rec.tri
    regions = {
        tri.triangle_region[tri.edges[f].triangles[0]]
        for f in q.outgoing(rec, v)
        if tri.curve_types[f] is CurveType.MINUS_ONE_MINUS_ONE
    }
    return [
        x
        for x in _flop_edges_at(rec, v, q.character)
        if tri.triangle_region[tri.edges[x].triangles[0]] in regions
    ]


def downstream(rec: Recipe, edge: int) -> dict[int, list[int]]:
    """Downstream Hirzebruch divisors of a curve, each with its downstream curves."""
    q = xi_quiver(rec, edge)
    tri = rec.tri
    chain = rec.chain(q.character)
    out: dict[int, list[int]] = {}
    if not q.boundary:
        for v in chain.adjacency:
            if _is_hirzebruch(rec, v):
                out[v] = _ahead_in_region(rec, q, v)
        return out
    straight = q.span[: q.span.index(q.bend) + 1] if q.bend in q.span else ()
    for v in q.span:
        if not _is_hirzebruch(rec, v) or v == q.sink and v != q.bend:
            continue
        if v in straight:
            cand = [x for x in tri.vertex_edges[v] if x in rec.edge_marks and rec.edge_marks[x] != q.character]
        else:
            cand = _ahead_in_region(rec, q, v)
        out[v] = [x for x in cand if chain_broken_at(rec, rec.edge_marks[x], v)]
    return out


class Unlocker:
    """Memoised unlocking over one recipe."""

    def __init__(self, rec: Recipe):
        self.rec = rec
        self.memo: dict[int, GigsawPiece] = {}
        self._active: set[int] = set()

    def __call__(self, edge: int) -> GigsawPiece:
        if edge in self.memo:
            return self.memo[edge]
        if edge in self._active:
            raise UnlockError(f"unlocking revisits curve {self.rec.tri.edges[edge]}")
        self._active.add(edge)
        try:
            piece = self._run(edge)
        finally:
            self._active.discard(edge)
        self.memo[edge] = piece
        return piece

    def _run(self, edge: int) -> GigsawPiece:
        rec, tri = self.rec, self.rec.tri
        label = rec.group.char_label
        chi = rec.edge_marks[edge]
        chain = rec.chain(chi)
        prov: dict[int, tuple[str, str]] = {chi: (CH, "curve")}

        def put(c: int, step: str, detail: str) -> None:
            prov.setdefault(c, (step, detail))

        for v in chain.inner_vertices():
            where = f"divisor {tri.vertex_name(v)}"
            if tri.kinds[v] is VertexKind.DEL_PEZZO:
                put(chi_dp(rec, edge, v), DP, where)
            else:
                for c in rec.vertex_marks[v]:
                    put(c, H1, where)
        unlocked = []
        for v, curves in sorted(downstream(rec, edge).items()):
            for e in curves:
                unlocked.append(e)
                sub = self(e)
                for c in sorted(sub.characters):
                    put(c, H2, f"curve {label(rec.edge_marks[e])} at {tri.vertex_name(v)}")
        return GigsawPiece(edge, frozenset(prov), prov, tuple(sorted(unlocked)))


def unlock(rec: Recipe, edge: int) -> GigsawPiece:
    return Unlocker(rec)(edge)


def unlock_all(rec: Recipe) -> dict[int, GigsawPiece]:
    u = Unlocker(rec)
    return {e: u(e) for e in sorted(rec.edge_marks)}
