"""Torus-fixed G-clusters and the fan of G-Hilb by a cone walk.

This module is the brute-force side of every cross-check: it knows nothing
about chains, regular triangles or the recipe.  A G-graph is stored as a
tuple of exponent triples indexed by character.

Weight comparisons use lexicographic keys ``(v.m, w.m, ..., alpha, beta,
gamma)``.  The trailing exponent order is a symbolic perturbation of ``v``
towards ``(1, eps, eps^2)``, which is enough to make every minimum unique.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .groups import Exps, Group, Point


class FanError(RuntimeError):
    """The cone walk produced something that is not a fan."""


class OracleError(RuntimeError):
    """Two adjacent clusters are not related by a G-igsaw move."""


@dataclass(frozen=True)
class GGraph:
    basis: tuple[Exps, ...]

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def monomials(self) -> frozenset[Exps]:
        return frozenset(self.basis)

    def socle(self) -> frozenset[int]:
        mons = self.monomials
        out = set()
        for chi, (a, b, c) in enumerate(self.basis):
            if (a + 1, b, c) in mons or (a, b + 1, c) in mons or (a, b, c + 1) in mons:
                continue
            out.add(chi)
        return frozenset(out)

    def is_divisor_closed(self) -> bool:
        mons = self.monomials
        for a, b, c in self.basis:
            if a and (a - 1, b, c) not in mons:
                return False
            if b and (a, b - 1, c) not in mons:
                return False
            if c and (a, b, c - 1) not in mons:
                return False
        return True

    def dump(self, labels=None) -> str:
        parts = []
        for chi, m in enumerate(self.basis):
            name = labels(chi) if labels else str(chi)
            parts.append(f"{name}:{format_monomial(m)}")
        return " ".join(parts)


def format_monomial(m: Exps) -> str:
    return f"x^{m[0]} y^{m[1]} z^{m[2]}"


def divides(m1: Exps, m2: Exps) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


@dataclass(frozen=True)
class GraphCone:
    rays: tuple[int, int, int]  # indices into group.junior_points
    normals: tuple[tuple[int, int, int], ...]


@dataclass
class Fan:
    group: Group
    graphs: list[GGraph]
    cones: list[GraphCone]
    # ray triple (sorted) -> index into graphs
    index: dict[tuple[int, int, int], int] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# exponent box


@dataclass(frozen=True)
class _Box:
    exps: np.ndarray  # (K^3, 3) int64, sorted by character then lex
    chars: np.ndarray  # (K^3,) int64
    starts: np.ndarray  # first row of each character block


@lru_cache(maxsize=64)
def _box(group: Group) -> _Box:
    k = group.order + 1
    grid = np.indices((k, k, k)).reshape(3, -1).T.astype(np.int64)
    chars = np.zeros(len(grid), dtype=np.int64)
    for i, (n, stride) in enumerate(zip(group.factors, group._strides)):
        w = np.array([group.weights[v][i] for v in range(3)], dtype=np.int64)
        chars += ((grid @ w) % n) * stride
    order = np.lexsort((grid[:, 2], grid[:, 1], grid[:, 0], chars))
    grid = grid[order]
    chars = chars[order]
    starts = np.searchsorted(chars, np.arange(group.order))
    return _Box(grid, chars, starts)


def _minimal_basis(group: Group, levels: list[tuple[int, int, int]]) -> tuple[Exps, ...]:
    box = _box(group)
    k = group.order + 1
    # pack (level weights..., alpha, beta, gamma) into one int64 when it fits
    spans = [3 * k * max(abs(x) for x in v) + 1 for v in levels]
    if math.prod(2 * s + 1 for s in spans) * k ** 3 < 2 ** 62:
        key = np.zeros(len(box.chars), dtype=np.int64)
        for v, s in zip(levels, spans):
            key = key * (2 * s + 1) + (box.exps @ np.array(v, dtype=np.int64) + s)
        key = ((key * k + box.exps[:, 0]) * k + box.exps[:, 1]) * k + box.exps[:, 2]
        best = np.minimum.reduceat(key, box.starts) % (k ** 3)
        rows = np.stack((best // (k * k), (best // k) % k, best % k), axis=1)
    else:
        keys = [box.exps[:, 2], box.exps[:, 1], box.exps[:, 0]]
        for v in reversed(levels):
            keys.append(box.exps @ np.array(v, dtype=np.int64))
        keys.append(box.chars)
        order = np.lexsort(tuple(keys))
        chars = box.chars[order]
        first = np.searchsorted(chars, np.arange(group.order))
        rows = box.exps[order[first]]
    return tuple((int(a), int(b), int(c)) for a, b, c in rows)


def minimal_graph(group: Group, v, tie=None) -> GGraph:
    """G-graph of the v-cheapest monomials, one per character.

    ``v`` is a positive rational triple; ``tie`` an optional secondary
    direction consulted before the exponent order.
    """
    levels = [_integral(v)]
    if tie is not None:
        levels.append(_integral(tie))
    graph = GGraph(_minimal_basis(group, levels))
    if graph.basis[0] != (0, 0, 0) or not graph.is_divisor_closed():
        raise OracleError("minimal graph is not a staircase")
    return graph


def _integral(v) -> tuple[int, int, int]:
    from fractions import Fraction

    fr = [Fraction(x) for x in v]
    d = math.lcm(*(f.denominator for f in fr))
    return tuple(int(f * d) for f in fr)  # type: ignore[return-value]


@lru_cache(maxsize=64)
def _junior_minima(group: Group) -> tuple[np.ndarray, np.ndarray]:
    """Per junior point the least weight in each character block."""
    box = _box(group)
    pts = np.array(group.junior_points, dtype=np.int64)
    w = box.exps @ pts.T  # (rows, J)
    minima = np.minimum.reduceat(w, box.starts, axis=0)  # (order, J)
    return pts, minima


def cone_rays(group: Group, graph: GGraph) -> list[int]:
    """Junior points at which every basis monomial is (weakly) cheapest."""
    pts, minima = _junior_minima(group)
    basis = np.array(graph.basis, dtype=np.int64)
    w = basis @ pts.T
    ok = np.all(w == minima, axis=0)
    return [int(i) for i in np.nonzero(ok)[0]]


def _det(p: Point, q: Point, r: Point) -> int:
    return (
        p[0] * (q[1] * r[2] - q[2] * r[1])
        - p[1] * (q[0] * r[2] - q[2] * r[0])
        + p[2] * (q[0] * r[1] - q[1] * r[0])
    )


def cross(p, q) -> tuple[int, int, int]:
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def primitive(v) -> tuple[int, int, int]:
    g = math.gcd(*v)
    if g == 0:
        raise FanError("degenerate normal")
    return tuple(x // g for x in v)  # type: ignore[return-value]


def on_sigma_boundary(p: Point, q: Point) -> bool:
    return any(p[i] == 0 and q[i] == 0 for i in range(3))


def _tight_inequality_exists(group: Group, graph: GGraph, p: Point, q: Point) -> bool:
    """Some box monomial ties with the basis at both rays without being the basis."""
    box = _box(group)
    basis = np.array(graph.basis, dtype=np.int64)
    own = basis[box.chars]
    same = np.all(own == box.exps, axis=1)
    wp = box.exps @ np.array(p, dtype=np.int64)
    wq = box.exps @ np.array(q, dtype=np.int64)
    tie = (wp == own @ np.array(p, dtype=np.int64)) & (wq == own @ np.array(q, dtype=np.int64))
    return bool(np.any(tie & ~same))


def graph_cone(group: Group, graph: GGraph, verify: bool = True) -> GraphCone:
    rays = cone_rays(group, graph)
    if len(rays) != 3:
        raise FanError(f"cone of graph meets {len(rays)} junior points, expected 3")
    pts = [group.junior_points[i] for i in rays]
    vol = abs(_det(*pts))
    if vol * group.order != group.den ** 3:
        raise FanError(f"cone on {pts} is not unimodular")
    normals = []
    for i in range(3):
        p, q, r = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        n = primitive(cross(p, q))
        if sum(a * b for a, b in zip(n, r)) < 0:
            n = tuple(-x for x in n)
        if verify and not on_sigma_boundary(p, q) and not _tight_inequality_exists(group, graph, p, q):
            raise FanError(f"no defining inequality supports the facet {p}, {q}")
        normals.append(n)
    return GraphCone(tuple(sorted(rays)), tuple(normals))  # type: ignore[arg-type]


def walk_fan(group: Group) -> Fan:
    """Breadth-first walk over interior facets starting from the centre of sigma.

    Each interior facet is certified by the graph found across it: both
    graphs are cheapest at the facet's rays, so some character ties there.
    """
    pts = group.junior_points
    start = minimal_graph(group, (1, 1, 1))
    fan = Fan(group, [], [])
    queue = deque([(start, graph_cone(group, start, verify=False))])
    seen: dict[tuple, int] = {start.basis: 0}
    while queue:
        graph, cone = queue.popleft()
        if cone.rays in fan.index:
            raise FanError(f"two graphs share the cone {cone.rays}")
        fan.index[cone.rays] = len(fan.graphs)
        fan.graphs.append(graph)
        fan.cones.append(cone)
        a, b, c = cone.rays
        for i, j, k in ((a, b, c), (b, c, a), (a, c, b)):
            p, q, r = pts[i], pts[j], pts[k]
            if on_sigma_boundary(p, q):
                continue
            mid = tuple(x + y for x, y in zip(p, q))
            away = tuple(x + y - 2 * z for x, y, z in zip(p, q, r))
            nxt = minimal_graph(group, mid, away)
            if nxt.basis in seen:
                continue
            other = graph_cone(group, nxt, verify=False)
            if not {i, j} <= set(other.rays) or k in other.rays:
                raise FanError(f"crossing facet {p},{q} lands on a non-adjacent cone {other.rays}")
            seen[nxt.basis] = len(seen)
            queue.append((nxt, other))
    _check_tiling(fan)
    return _canonical(fan)


def _check_tiling(fan: Fan) -> None:
    group = fan.group
    pts = group.junior_points
    total = sum(abs(_det(*(pts[i] for i in c.rays))) for c in fan.cones)
    if total != group.den ** 3:
        raise FanError(f"cones cover volume {total}, expected {group.den ** 3}")
    if len(fan.cones) != group.order:
        raise FanError(f"{len(fan.cones)} maximal cones for a group of order {group.order}")
    facets: dict[tuple[int, int], int] = {}
    for c in fan.cones:
        a, b, d = c.rays
        for f in ((a, b), (a, d), (b, d)):
            facets[f] = facets.get(f, 0) + 1
    for (i, j), n in facets.items():
        limit = 1 if on_sigma_boundary(pts[i], pts[j]) else 2
        if n != limit:
            raise FanError(f"facet {pts[i]},{pts[j]} lies on {n} cones")


def _canonical(fan: Fan) -> Fan:
    order = sorted(range(len(fan.cones)), key=lambda i: fan.cones[i].rays)
    out = Fan(fan.group, [fan.graphs[i] for i in order], [fan.cones[i] for i in order])
    out.index = {c.rays: n for n, c in enumerate(out.cones)}
    return out


# ---------------------------------------------------------------------------
# edge oracles


def gigsaw_between(g1: GGraph, g2: GGraph) -> frozenset[int]:
    return frozenset(chi for chi, (m1, m2) in enumerate(zip(g1.basis, g2.basis)) if m1 != m2)


def ratio_power(g1: GGraph, g2: GGraph, chi: int, ratio: tuple[int, int, int]) -> int:
    """The k with basis2[chi] - basis1[chi] = k * ratio (exponent vectors)."""
    diff = [b - a for a, b in zip(g1.basis[chi], g2.basis[chi])]
    if not any(diff):
        return 0
    k = None
    for d, r in zip(diff, ratio):
        if r == 0:
            if d != 0:
                raise OracleError(f"character {chi}: move {diff} not along {ratio}")
            continue
        if d % r:
            raise OracleError(f"character {chi}: move {diff} not a power of {ratio}")
        if k is None:
            k = d // r
        elif k != d // r:
            raise OracleError(f"character {chi}: move {diff} not a power of {ratio}")
    assert k is not None
    return k


def degrees_between(g1: GGraph, g2: GGraph, chi: int, ratio: tuple[int, int, int]) -> dict[int, int]:
    """Degree of every eigensheaf along the curve, oriented by the curve's character."""
    sign = ratio_power(g1, g2, chi, ratio)
    if abs(sign) != 1:
        raise OracleError(f"marking monomial moves by {sign} ratio steps")
    out = {}
    for rho in range(len(g1.basis)):
        k = sign * ratio_power(g1, g2, rho, ratio)
        if k < 0:
            raise OracleError(f"character {rho} has negative degree {k}")
        out[rho] = k
    return out
