"""Inequalities and walls of the chamber whose moduli space is G-Hilb.

Every inequality is an integer vector over characters (trivial slot always
zero) read as ``sum coeff[c] * theta(c) > 0``.  Redundancy is decided twice:
by an exact decomposition into other inequalities and by an exact rational
facet test.  The two verdicts must agree.
"""

from __future__ import annotations

import logging
import math
import string
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count, islice, product

from . import kernels
from .gclusters import degrees_between
from .recipe import Recipe, chain_order
from .triangulation import CurveType, VertexKind
from .unlocking import Unlocker

log = logging.getLogger(__name__)

CURVE, SUBSHEAF, QUOTIENT = "curve", "subsheaf", "quotient"
WALL, REDUNDANT = "wall", "redundant"
TYPE_I, TYPE_III, TYPE_0 = "I", "III", "0"

# default cap on quotient divisor size once there are many interior vertices
QUOTIENT_FREE_LIMIT = 20
QUOTIENT_DEFAULT_CAP = 4


class ChamberError(RuntimeError):
    pass


class EngineDisagreement(ChamberError):
    pass


@dataclass(frozen=True)
class Source:
    kind: str
    edge: int | None = None
    vertex: int | None = None
    character: int | None = None
    vertices: tuple[int, ...] = ()


@dataclass
class Inequality:
    label: str
    coeffs: tuple[int, ...]
    source: Source
    key: int = -1  # index into WallReport.vectors
    status: str = ""
    wall_type: str | None = None

    def support(self) -> frozenset[int]:
        return frozenset(c for c, a in enumerate(self.coeffs) if a)


@dataclass
class Verdict:
    """Outcome for one distinct coefficient vector."""

    vector: tuple[int, ...]
    members: list[int]  # inequality indices sharing this vector
    facet: bool = False
    # facet: theta with vector.theta == 0 and every other vector positive
    theta: tuple[Fraction, ...] | None = None
    # redundant: nonnegative rational cone weights and integer summands
    cone: dict[int, Fraction] | None = None
    summands: dict[int, int] | None = None


@dataclass
class LongSide:
    character: int
    edges: list[int]
    final_edges: list[int]
    vector: tuple[int, ...]


@dataclass
class Wall:
    wall_type: str
    inequality: int
    support_edges: list[int]
    divisor: list[int]


@dataclass
class WallReport:
    rec: Recipe
    pieces: dict[int, frozenset[int]]
    inequalities: list[Inequality] = field(default_factory=list)
    vectors: list[Verdict] = field(default_factory=list)
    long_sides: list[LongSide] = field(default_factory=list)
    walls: list[Wall] = field(default_factory=list)
    quotient_cap: int | None = None

    def by_label(self, label: str) -> Inequality:
        for q in self.inequalities:
            if q.label == label:
                return q
        raise KeyError(label)

    def curve_inequality(self, edge: int) -> Inequality:
        for q in self.inequalities:
            if q.source.kind == CURVE and q.source.edge == edge:
                return q
        raise KeyError(edge)

    def representative(self, key: int) -> Inequality:
        return self.inequalities[self.vectors[key].members[0]]


# ---------------------------------------------------------------------------
# assembly


def curve_vector(rec: Recipe, edge: int, piece: frozenset[int]) -> tuple[int, ...]:
    tri = rec.tri
    e = tri.edges[edge]
    g1, g2 = (tri.graph(t) for t in e.triangles)
    chi = rec.edge_marks[edge]
    deg = degrees_between(g1, g2, chi, rec.ratios[edge].vector)
    support = frozenset(c for c, k in deg.items() if k)
    if support != piece:
        raise ChamberError(
            f"curve {tri.points[e.v1]}-{tri.points[e.v2]}: degree support {sorted(support)} "
            f"differs from unlocked piece {sorted(piece)}"
        )
    vec = tuple(deg[c] for c in range(rec.group.order))
    ct = tri.curve_types[edge]
    if ct is CurveType.MINUS_ONE_MINUS_ONE and any(k > 1 for k in vec):
        raise ChamberError(f"flop curve {e} has a coefficient above 1")
    if ct is CurveType.ONE_MINUS_THREE:
        square = rec.group.scale(chi, 2)
        want = tuple((2 if c == square else 1) if c in piece else 0 for c in range(len(vec)))
        if vec != want:
            raise ChamberError(f"curve {e} at the trivalent vertex: {vec} is not the expected form")
    return vec


def _mask_vector(mask: int, order: int) -> tuple[int, ...]:
    return tuple((mask >> c) & 1 for c in range(order))


def divisor_adjacency(rec: Recipe) -> tuple[list[int], list[list[int]]]:
    tri = rec.tri
    inner = tri.interior_vertices()
    pos = {v: i for i, v in enumerate(inner)}
    adj: list[list[int]] = [[] for _ in inner]
    for e in tri.edges:
        if e.v1 in pos and e.v2 in pos:
            adj[pos[e.v1]].append(pos[e.v2])
            adj[pos[e.v2]].append(pos[e.v1])
    return inner, [sorted(a) for a in adj]


def connected_vertex_sets(rec: Recipe, cap: int | None) -> list[tuple[int, ...]]:
    inner, adj = divisor_adjacency(rec)
    sets = kernels.connected_subsets(adj, cap or len(inner))
    return [tuple(inner[i] for i in s) for s in sets]


def vertex_masks(rec: Recipe, pieces: dict[int, frozenset[int]]) -> dict[int, int]:
    """Bitmask of the characters moving on some curve inside each divisor."""
    tri = rec.tri
    out = {}
    for v in tri.interior_vertices():
        mask = 0
        for e in tri.vertex_edges[v]:
            for c in pieces[e]:
                mask |= 1 << c
        out[v] = mask
    return out


def _letters():
    """A..Z, then AA..ZZ, then AAA.. and so on."""
    for n in count(1):
        for t in product(string.ascii_uppercase, repeat=n):
            yield "".join(t)


def curve_label(rec: Recipe, edge: int) -> str:
    """The label ``assemble`` gives the inequality of this curve."""
    chi = rec.edge_marks[edge]
    pos = chain_order(rec, chi).index(edge)
    return f"{next(islice(_letters(), pos, None))}{rec.group.char_label(chi)}"


def assemble(rec: Recipe, pieces: dict[int, frozenset[int]], max_quotient_size: int | None = None):
    """All curve, subsheaf and quotient inequalities with labels."""
    tri, group = rec.tri, rec.group
    order = group.order
    inner = tri.interior_vertices()
    cap = max_quotient_size
    if cap is None and len(inner) > QUOTIENT_FREE_LIMIT:
        cap = QUOTIENT_DEFAULT_CAP
        log.warning(
            "%s: %d interior vertices, quotient divisors capped at %d vertices",
            group.spec(), len(inner), cap,
        )
    grouped: dict[int, list[tuple[tuple[int, ...], Source]]] = {}
    for chi in sorted(rec.chains):
        for e in chain_order(rec, chi):
            grouped.setdefault(chi, []).append(
                (curve_vector(rec, e, pieces[e]), Source(CURVE, edge=e, character=chi))
            )
    for v in inner:
        for psi in sorted(rec.vertex_marks[v]):
            vec = tuple(int(c == psi) for c in range(order))
            grouped.setdefault(psi, []).append((vec, Source(SUBSHEAF, vertex=v, character=psi)))
    multi = []
    masks = vertex_masks(rec, pieces)
    for vs in connected_vertex_sets(rec, cap):
        mask = 0
        for v in vs:
            mask |= masks[v]
        vec = _mask_vector(mask, order)
        if len(vs) == 1:
            psi = min(rec.vertex_marks[vs[0]])
            grouped.setdefault(psi, []).append((vec, Source(QUOTIENT, vertex=vs[0], vertices=vs)))
        else:
            multi.append((vec, Source(QUOTIENT, vertices=tuple(sorted(vs)))))
    out = []
    for chi in sorted(grouped):
        for letter, (vec, src) in zip(_letters(), grouped[chi]):
            out.append(Inequality(f"{letter}{group.char_label(chi)}", vec, src))
    taken = {q.label for q in out}
    for vec, src in sorted(multi, key=lambda x: (len(x[1].vertices), x[1].vertices)):
        marks = sorted({c for v in src.vertices for c in rec.vertex_marks[v]})
        label = "Q{" + ",".join(group.char_label(c) for c in marks) + "}"
        base, n = label, 2
        while label in taken:
            label, n = f"{base}#{n}", n + 1
        taken.add(label)
        out.append(Inequality(label, vec, src))
    return out, cap


# ---------------------------------------------------------------------------
# summand engine


def summand_decomposition(target, others) -> dict[int, int] | None:
    """Nonnegative integer multiplicities with ``sum n_i * others[i] == target``."""
    cand = [i for i, b in enumerate(others) if any(b) and all(x <= a for x, a in zip(b, target))]
    return kernels.summand_search(tuple(target), [tuple(others[i]) for i in cand], cand)


# ---------------------------------------------------------------------------
# facet engine


def _phase_one(columns: list[list[int]], rhs: list[int]):
    """Exact phase-1 simplex for ``A y = rhs, y >= 0`` with ``rhs >= 0``.

    Fraction-free tableau: every row is an integer multiple of its true
    value, so basic columns hold a positive entry instead of 1.  Bland's rule.
    Returns ``("feasible", y)`` or ``("infeasible", pi)`` where ``pi`` has
    ``pi . column <= 0`` for every column and ``pi . rhs > 0``.
    """
    m, n = len(rhs), len(columns)
    width = n + m
    rows = [[columns[j][i] for j in range(n)] + [int(i == k) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs of the phase-1 objective, up to a positive factor
    obj = [-sum(columns[j]) for j in range(n)] + [0] * m + [-sum(rhs)]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                if leave is None:
                    leave = i
                    continue
                lhs = rows[i][-1] * rows[leave][enter]
                cur = rows[leave][-1] * a
                if lhs < cur or lhs == cur and basis[i] < basis[leave]:
                    leave = i
        if leave is None:
            raise ChamberError("phase-1 problem unbounded")
        prow = rows[leave]
        p = prow[enter]
        for i in range(m):
            f = rows[i][enter]
            if i != leave and f:
                rows[i] = _reduce_row([p * x - f * y for x, y in zip(rows[i], prow)])
        f = obj[enter]
        obj = _reduce_row([p * x - f * y for x, y in zip(obj, prow)])
        basis[leave] = enter
    scale = [rows[i][b] for i, b in enumerate(basis)]
    cost = [int(b >= n) for b in basis]
    value = sum(Fraction(c * rows[i][-1], scale[i]) for i, c in enumerate(cost))
    if value == 0:
        y = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                y[b] = Fraction(rows[i][-1], scale[i])
        return "feasible", y
    pi = [
        sum(Fraction(cost[i] * rows[i][n + k], scale[i]) for i in range(m))
        for k in range(m)
    ]
    return "infeasible", pi


def _reduce_row(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


def facet_test(key: int, vectors: list[tuple[int, ...]]):
    """Decide whether ``vectors[key]`` lies outside the cone of the others.

    Facet: returns ``(True, theta)`` with ``a.theta == 0`` and ``b.theta > 0``
    for all other ``b``.  Redundant: returns ``(False, weights)``.
    """
    a = vectors[key]
    order = len(a)
    support = [c for c in range(order) if a[c]]
    inside = set(support)
    sub = [
        i for i, b in enumerate(vectors)
        if i != key and all(c in inside for c in range(order) if b[c])
    ]
    columns = [[vectors[i][c] for c in support] for i in sub]
    verdict, sol = _phase_one(columns, [a[c] for c in support])
    if verdict == "feasible":
        weights = {i: w for i, w in zip(sub, sol) if w}
        check = [sum(w * vectors[i][c] for i, w in weights.items()) for c in range(order)]
        if check != list(a):
            raise ChamberError("cone certificate does not reproduce the inequality")
        return False, weights
    pi = dict(zip(support, sol))
    a_pi = sum(a[c] * pi[c] for c in support)
    a_one = sum(a[c] for c in support)
    t = Fraction(a_one) / a_pi
    theta = [Fraction(0)] * order
    for c in support:
        theta[c] = 1 - t * pi[c]
    outside = [c for c in range(1, order) if c not in inside]
    big = Fraction(1)
    for i, b in enumerate(vectors):
        if i == key:
            continue
        out = sum(b[c] for c in outside)
        if out:
            partial = sum(b[c] * theta[c] for c in support)
            big = max(big, (1 - partial) / out + 1)
    big = Fraction(math.ceil(big))
    for c in outside:
        theta[c] = big
    verify_theta(key, vectors, theta)
    return True, tuple(theta)


def verify_theta(key: int, vectors, theta) -> None:
    den = math.lcm(*(t.denominator for t in theta))
    scaled = [int(t * den) for t in theta]
    dots = [sum(x * t for x, t in zip(b, scaled)) for b in vectors]
    if dots[key] != 0:
        raise ChamberError("separating theta is not on the wall")
    if any(d <= 0 for i, d in enumerate(dots) if i != key):
        raise ChamberError("separating theta fails a strict inequality")


# ---------------------------------------------------------------------------
# long sides and classification


def generalised_long_sides(rec: Recipe) -> list[LongSide]:
    tri, group = rec.tri, rec.group
    corners = [v for v in range(len(tri.points)) if tri.is_corner(v)]
    out = []
    for chi, chain in sorted(rec.chains.items()):
        types = {tri.curve_types[e] for e in chain.edges}
        if types & {CurveType.MINUS_ONE_MINUS_ONE, CurveType.ONE_MINUS_THREE}:
            continue
        if any(tri.is_interior(v) for v in chain.ends()):
            continue
        if any(tri.kinds[v] is VertexKind.TRIVALENT for v in chain.adjacency):
            continue
        finals = []
        for seg in _segments(rec, chi):
            for c in corners:
                pc = tri.points[c]
                if all(tri.parallel(tri.direction(c, v), tri.direction(seg[0], seg[-1])) for v in seg if v != c):
                    far = max(seg, key=lambda v: sum((x - y) ** 2 for x, y in zip(tri.points[v], pc)))
                    i = seg.index(far)
                    nxt = seg[i - 1] if i == len(seg) - 1 else seg[i + 1]
                    finals.append(tri.edge(far, nxt).index)
        vec = [0] * group.order
        vec[chi] = 1
        for psi in rec.hirz(chi):
            vec[psi] = 1
        out.append(LongSide(chi, chain_order(rec, chi), sorted(set(finals)), tuple(vec)))
    return out


def _segments(rec: Recipe, chi: int) -> list[list[int]]:
    """Maximal straight vertex paths of a path-shaped chain."""
    tri = rec.tri
    chain = rec.chain(chi)
    ends = chain.ends()
    if len(ends) != 2:
        return []
    path = [ends[0]]
    prev = None
    while True:
        v = path[-1]
        nxt = [tri.edges[e].other(v) for e in chain.adjacency[v] if tri.edges[e].other(v) != prev]
        if not nxt:
            break
        prev = v
        path.append(nxt[0])
    segs = [[path[0], path[1]]]
    for v in path[2:]:
        seg = segs[-1]
        if tri.parallel(tri.direction(seg[-2], seg[-1]), tri.direction(seg[-1], v)):
            seg.append(v)
        else:
            segs.append([seg[-1], v])
    return segs


def wall_support(report: WallReport, vector: tuple[int, ...]) -> tuple[list[int], list[int]]:
    tri = report.rec.tri
    support = {c for c, a in enumerate(vector) if a}
    edges = sorted(e for e, piece in report.pieces.items() if piece <= support)
    inside = set(edges)
    divisor = [v for v in tri.interior_vertices() if all(e in inside for e in tri.vertex_edges[v])]
    return edges, divisor


def contracted_divisors(rec: Recipe, side: LongSide) -> list[int]:
    """Hirzebruch divisors along a long side whose marks enter its wall."""
    support = {c for c, a in enumerate(side.vector) if a}
    return [
        v
        for v in rec.chain(side.character).inner_vertices()
        if rec.tri.kinds[v] in (VertexKind.HIRZEBRUCH, VertexKind.TRIVALENT) and rec.vertex_marks[v] <= support
    ]


def reduce_and_classify(report: WallReport) -> None:
    ineqs = report.inequalities
    keys: dict[tuple[int, ...], int] = {}
    for i, q in enumerate(ineqs):
        g = math.gcd(*q.coeffs)
        prim = tuple(x // g for x in q.coeffs)
        if prim not in keys:
            keys[prim] = len(report.vectors)
            report.vectors.append(Verdict(prim, []))
        q.key = keys[prim]
        report.vectors[q.key].members.append(i)
    vectors = [v.vector for v in report.vectors]
    for key, verdict in enumerate(report.vectors):
        others = [b if i != key else tuple(0 for _ in b) for i, b in enumerate(vectors)]
        summands = summand_decomposition(vectors[key], others)
        facet, cert = facet_test(key, vectors)
        if facet == (summands is not None):
            label = ineqs[verdict.members[0]].label
            raise EngineDisagreement(
                f"{report.rec.group.spec()} {label}: facet test says "
                f"{'wall' if facet else 'redundant'}, summand search says "
                f"{'redundant' if summands is not None else 'no decomposition'}"
            )
        verdict.facet = facet
        if facet:
            verdict.theta = cert
        else:
            verdict.cone = cert
            verdict.summands = summands
    report.long_sides = generalised_long_sides(report.rec)
    finals = {e for ls in report.long_sides for e in ls.final_edges}
    tri = report.rec.tri
    for verdict in report.vectors:
        types = set()
        for i in verdict.members:
            src = ineqs[i].source
            if src.kind == CURVE and tri.curve_types[src.edge] is CurveType.MINUS_ONE_MINUS_ONE:
                types.add(TYPE_I)
            elif src.kind == CURVE and src.edge in finals:
                types.add(TYPE_III)
            elif src.kind in (SUBSHEAF, QUOTIENT):
                types.add(TYPE_0)
        wall_type = next((t for t in (TYPE_I, TYPE_III, TYPE_0) if t in types), None)
        for i in verdict.members:
            ineqs[i].status = WALL if verdict.facet else REDUNDANT
            ineqs[i].wall_type = wall_type if verdict.facet else None
        if verdict.facet:
            ref = min(
                verdict.members,
                key=lambda i: ((TYPE_I, TYPE_III, TYPE_0).index(_member_type(report, i, finals)), i),
            )
            edges, divisor = wall_support(report, verdict.vector)
            if wall_type == TYPE_III:
                sides = [ls for ls in report.long_sides if ls.vector == verdict.vector]
                divisor = sorted({v for ls in sides for v in contracted_divisors(report.rec, ls)})
            report.walls.append(Wall(wall_type or "?", ref, edges, divisor))
    report.walls.sort(key=lambda w: w.inequality)


def _member_type(report: WallReport, i: int, finals: set[int]) -> str:
    src = report.inequalities[i].source
    tri = report.rec.tri
    if src.kind == CURVE and tri.curve_types[src.edge] is CurveType.MINUS_ONE_MINUS_ONE:
        return TYPE_I
    if src.kind == CURVE and src.edge in finals:
        return TYPE_III
    return TYPE_0


def census_violations(report: WallReport) -> list[str]:
    """Structural claims about the wall set; empty when all hold."""
    tri, rec = report.rec.tri, report.rec
    out = []
    ineqs = report.inequalities
    flops = [e.index for e in tri.compact_edges() if tri.curve_types[e.index] is CurveType.MINUS_ONE_MINUS_ONE]
    n_i = sum(w.wall_type == TYPE_I for w in report.walls)
    if n_i != len(flops):
        out.append(f"{n_i} Type I walls for {len(flops)} flop curves")
    n_iii = sum(w.wall_type == TYPE_III for w in report.walls)
    if n_iii != len(report.long_sides):
        out.append(f"{n_iii} Type III walls for {len(report.long_sides)} generalised long sides")
    for e in flops:
        if report.curve_inequality(e).status != WALL:
            out.append(f"flop curve {tri.edges[e]} gives a redundant inequality")
    for q in ineqs:
        src = q.source
        if src.kind == SUBSHEAF and q.status != WALL:
            out.append(f"subsheaf inequality {q.label} is redundant")
        if src.kind == CURVE and tri.curve_types[src.edge] is CurveType.ONE_MINUS_THREE and q.status == WALL:
            out.append(f"trivalent curve inequality {q.label} is a wall")
        if q.status == WALL and q.wall_type in (TYPE_I, TYPE_III) and any(a > 1 for a in q.coeffs):
            out.append(f"{q.wall_type} wall {q.label} has a coefficient above 1")
        if src.kind == CURVE and q.status == WALL and q.wall_type == TYPE_0:
            out.append(f"curve inequality {q.label} is a wall but neither a flop nor a final curve")
        if (
            src.kind == CURVE
            and tri.curve_types[src.edge] is CurveType.ZERO_MINUS_TWO
            and any(tri.curve_types[e] is CurveType.MINUS_ONE_MINUS_ONE for e in rec.chain(src.character).edges)
            and q.status == WALL
        ):
            out.append(f"boundary curve {q.label} with a flop curve on its chain is a wall")
    for w in report.walls:
        if w.wall_type != TYPE_III:
            continue
        q = ineqs[w.inequality]
        marks = {c for v in w.divisor for c in rec.vertex_marks[v]}
        if marks | {q.source.character} != set(q.support()):
            out.append(f"Type III wall {q.label} is not its chain character plus the contracted divisors")
    for ls in report.long_sides:
        if not ls.final_edges:
            out.append(f"long side {rec.group.char_label(ls.character)} has no final curve")
        for e in ls.final_edges:
            if report.curve_inequality(e).coeffs != ls.vector:
                out.append(f"final curve {tri.edges[e]} does not give the long-side inequality")
    return out


def chamber(rec: Recipe, unlocker: Unlocker | None = None, max_quotient_size: int | None = None) -> WallReport:
    u = unlocker or Unlocker(rec)
    pieces = {e: u(e).characters for e in sorted(rec.edge_marks)}
    ineqs, cap = assemble(rec, pieces, max_quotient_size)
    report = WallReport(rec, pieces, ineqs, quotient_cap=cap)
    reduce_and_classify(report)
    return report
