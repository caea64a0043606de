"""Reid's recipe on a triangulated junior simplex.

Edges get the character of their primitive G-invariant ratio, interior
vertices the characters common to the socles of all clusters around them.
The valency rules for vertex marks are kept only as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gclusters import cross, divides
from .groups import Exps
from .triangulation import CurveType, Edge, Triangulation, VertexKind


class RecipeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Ratio:
    top: Exps
    bottom: Exps

    @property
    def vector(self) -> tuple[int, int, int]:
        return tuple(a - b for a, b in zip(self.top, self.bottom))  # type: ignore[return-value]


@dataclass
class Chain:
    character: int
    edges: list[int]
    # vertex -> incident chain edges
    adjacency: dict[int, list[int]]

    def degree(self, v: int) -> int:
        return len(self.adjacency.get(v, ()))

    def inner_vertices(self) -> list[int]:
        return sorted(v for v, es in self.adjacency.items() if len(es) >= 2)

    def ends(self) -> list[int]:
        return sorted(v for v, es in self.adjacency.items() if len(es) == 1)


@dataclass
class Recipe:
    tri: Triangulation
    ratios: dict[int, Ratio] = field(default_factory=dict)
    edge_marks: dict[int, int] = field(default_factory=dict)
    vertex_marks: dict[int, frozenset[int]] = field(default_factory=dict)
    chains: dict[int, Chain] = field(default_factory=dict)

    @property
    def group(self):
        return self.tri.group

    def chain(self, chi: int) -> Chain:
        if chi not in self.chains:
            raise RecipeError(f"character {self.group.char_label(chi)} marks no curve")
        return self.chains[chi]

    def hirz(self, chi: int) -> set[int]:
        """Characters of non-del Pezzo divisors in the interior of the chi-chain."""
        out = set()
        for v in self.chain(chi).inner_vertices():
            if self.tri.kinds[v] in (VertexKind.HIRZEBRUCH, VertexKind.TRIVALENT):
                out |= self.vertex_marks[v]
        return out


# ---------------------------------------------------------------------------
# edges


def _oriented(n: tuple[int, int, int]) -> Ratio:
    top = tuple(max(x, 0) for x in n)
    bottom = tuple(max(-x, 0) for x in n)
    if (sum(bottom), bottom) > (sum(top), top):
        top, bottom = bottom, top
    return Ratio(top, bottom)  # type: ignore[arg-type]


def edge_ratio(tri: Triangulation, e: Edge) -> Ratio:
    group = tri.group
    n = cross(tri.points[e.v1], tri.points[e.v2])
    g = math.gcd(*n)
    if g == 0:
        raise RecipeError(f"edge {e.v1}-{e.v2} is degenerate")
    n = tuple(x // g for x in n)
    chi = group.character_of(n)
    k = 1
    while group.scale(chi, k) != 0:
        k += 1
    return _oriented(tuple(k * x for x in n))  # type: ignore[arg-type]


def mark_edges(rec: Recipe) -> None:
    tri, group = rec.tri, rec.group
    for e in tri.compact_edges():
        ratio = edge_ratio(tri, e)
        chi = group.character_of(ratio.top)
        if chi != group.character_of(ratio.bottom):
            raise RecipeError(f"ratio of edge {e.v1}-{e.v2} is not invariant")
        rec.ratios[e.index] = ratio
        rec.edge_marks[e.index] = chi


# ---------------------------------------------------------------------------
# vertices


def mark_vertices(rec: Recipe) -> None:
    tri = rec.tri
    for v in tri.interior_vertices():
        socles = [tri.graph(t).socle() for t in tri.vertex_triangles[v]]
        marks = frozenset.intersection(*socles)
        want = 2 if tri.kinds[v] is VertexKind.DEL_PEZZO else 1
        if len(marks) != want or 0 in marks:
            raise RecipeError(
                f"vertex {tri.points[v]} ({tri.kinds[v].value}) has socle marks {sorted(marks)}"
            )
        rec.vertex_marks[v] = marks


def incident_pairs(rec: Recipe, v: int) -> list[int]:
    """Characters marking at least two curves at ``v``."""
    seen: dict[int, int] = {}
    for ei in rec.tri.vertex_edges[v]:
        if ei in rec.edge_marks:
            chi = rec.edge_marks[ei]
            seen[chi] = seen.get(chi, 0) + 1
    return sorted(chi for chi, k in seen.items() if k >= 2)


def tensor_rule_violations(rec: Recipe) -> list[str]:
    """Compare socle marks with the valency rules for marking divisors."""
    group, tri = rec.group, rec.tri
    out = []
    for v, marks in rec.vertex_marks.items():
        kind = tri.kinds[v]
        pairs = incident_pairs(rec, v)
        if kind is VertexKind.TRIVALENT:
            (chi,) = {rec.edge_marks[e] for e in tri.vertex_edges[v]}
            ok = marks == {group.scale(chi, 2)}
        elif kind is VertexKind.HIRZEBRUCH:
            ok = any(group.add(a, b) in marks for i, a in enumerate(pairs) for b in pairs[i + 1:])
        else:
            ok = len(pairs) == 3 and group.sum(pairs) == group.sum(marks)
        if not ok:
            out.append(f"vertex {tri.points[v]}: marks {sorted(marks)} vs curve pairs {pairs}")
    return out


def generator_relation_violations(rec: Recipe) -> list[str]:
    """Monomial identities between marking generators on every triangle at a divisor."""
    group, tri = rec.group, rec.tri
    out = []

    def add(*ms):
        return tuple(map(sum, zip(*ms)))

    for v, marks in rec.vertex_marks.items():
        kind = tri.kinds[v]
        pairs = incident_pairs(rec, v)
        for t in tri.vertex_triangles[v]:
            b = tri.graph(t).basis
            if kind is VertexKind.TRIVALENT:
                (chi,) = {rec.edge_marks[e] for e in tri.vertex_edges[v]}
                (psi,) = marks
                ok = add(b[chi], b[chi]) == b[psi]
            elif kind is VertexKind.HIRZEBRUCH:
                (psi,) = marks
                ok = any(
                    group.add(x, y) == psi and add(b[x], b[y]) == b[psi]
                    for i, x in enumerate(pairs)
                    for y in pairs[i + 1:]
                )
            else:
                phi1, phi2 = sorted(marks)
                ok = len(pairs) == 3 and add(*(b[c] for c in pairs)) == add(b[phi1], b[phi2])
            if not ok:
                out.append(f"vertex {tri.points[v]}, triangle {tri.triangles[t]}")
    return out


# ---------------------------------------------------------------------------
# chains


def build_chains(rec: Recipe) -> None:
    tri = rec.tri
    by_char: dict[int, list[int]] = {}
    for ei, chi in sorted(rec.edge_marks.items()):
        by_char.setdefault(chi, []).append(ei)
    for chi, es in sorted(by_char.items()):
        adj: dict[int, list[int]] = {}
        for ei in es:
            e = tri.edges[ei]
            adj.setdefault(e.v1, []).append(ei)
            adj.setdefault(e.v2, []).append(ei)
        # a tree has one vertex more than edges and is connected
        if len(adj) != len(es) + 1 or not _connected(tri, adj):
            raise RecipeError(f"the {rec.group.char_label(chi)}-chain is not a tree")
        rec.chains[chi] = Chain(chi, es, adj)


def _connected(tri: Triangulation, adj: dict[int, list[int]]) -> bool:
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for ei in adj[v]:
            w = tri.edges[ei].other(v)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def chain_order(rec: Recipe, chi: int) -> list[int]:
    """Chain edges in walking order from the lowest-index end vertex."""
    chain = rec.chain(chi)
    start = min(chain.ends()) if chain.ends() else min(chain.adjacency)
    order, seen, stack = [], {start}, [start]
    while stack:
        v = stack.pop()
        for ei in sorted(chain.adjacency[v], key=lambda i: rec.tri.edges[i].other(v), reverse=True):
            w = rec.tri.edges[ei].other(v)
            if w not in seen:
                seen.add(w)
                order.append(ei)
                stack.append(w)
    return order


# ---------------------------------------------------------------------------
# del Pezzo selection


def chi_dp(rec: Recipe, edge: int, v: int) -> int:
    """The del Pezzo character at ``v`` divisible by the curve's generator."""
    tri = rec.tri
    chi = rec.edge_marks[edge]
    picks = []
    for t in tri.edges[edge].triangles:
        b = tri.graph(t).basis
        picks.append(frozenset(phi for phi in rec.vertex_marks[v] if divides(b[chi], b[phi])))
    if picks[0] != picks[1]:
        raise RecipeError(f"del Pezzo selection differs across edge {tri.edges[edge]}")
    if len(picks[0]) != 1:
        raise RecipeError(f"del Pezzo selection at {tri.points[v]} gives {sorted(picks[0])}")
    (phi,) = picks[0]
    return phi


def reids_recipe(tri: Triangulation) -> Recipe:
    rec = Recipe(tri)
    mark_edges(rec)
    mark_vertices(rec)
    build_chains(rec)
    return rec


def flop_curves(rec: Recipe) -> list[int]:
    return [e.index for e in rec.tri.compact_edges() if rec.tri.curve_types[e.index] is CurveType.MINUS_ONE_MINUS_ONE]
