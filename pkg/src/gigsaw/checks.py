"""The invariant suite behind ``gigsaw check``.

Violations are claims that must hold for every group; warnings are
cross-checks whose failure does not by itself make the output wrong
(valency rules for vertex marks, a capped quotient enumeration).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .chamber import WallReport, census_violations, chamber
from .gclusters import OracleError, degrees_between, gigsaw_between
from .groups import Group
from .recipe import Recipe, chi_dp, generator_relation_violations, reids_recipe, tensor_rule_violations
from .triangulation import CurveType, Triangulation, VertexKind, triangulate
from .unlocking import Unlocker

log = logging.getLogger(__name__)


@dataclass
class CheckReport:
    group: str
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def _det(p, q, r) -> int:
    return (
        p[0] * (q[1] * r[2] - q[2] * r[1])
        - p[1] * (q[0] * r[2] - q[2] * r[0])
        + p[2] * (q[0] * r[1] - q[1] * r[0])
    )


def fan_violations(tri: Triangulation) -> list[str]:
    group = tri.group
    out = []
    if len(tri.triangles) != group.order:
        out.append(f"{len(tri.triangles)} triangles for a group of order {group.order}")
    # scaled points: unimodular in N means |det| = den^3 / |G|
    unit, rem = divmod(group.den**3, group.order)
    if rem:
        out.append("den^3 is not divisible by the group order")
    for t, (a, b, c) in enumerate(tri.triangles):
        d = abs(_det(tri.points[a], tri.points[b], tri.points[c]))
        if d != unit:
            out.append(f"triangle {t} has normalised volume {d}/{unit}")
    for t in range(len(tri.triangles)):
        g = tri.graph(t)
        if len(g) != group.order or not g.is_divisor_closed():
            out.append(f"G-graph of triangle {t} is not a staircase with one monomial per character")
        if (0, 0, 0) not in g.monomials:
            out.append(f"G-graph of triangle {t} misses the unit monomial")
        if any(group.character_of(m) != chi for chi, m in enumerate(g.basis)):
            out.append(f"G-graph of triangle {t} files a monomial under the wrong character")
    return out


def position_violations(tri: Triangulation) -> list[str]:
    out = []
    inside_edges = set()
    for r in tri.regions:
        for t in r.triangles:
            for i, j in ((0, 1), (0, 2), (1, 2)):
                e = tri.edge(tri.triangles[t][i], tri.triangles[t][j])
                if all(s in r.triangles for s in e.triangles) and e.compact:
                    inside_edges.add(e.index)
    for e in tri.compact_edges():
        ct = tri.curve_types[e.index]
        if ct is CurveType.MINUS_ONE_MINUS_ONE and e.index not in inside_edges:
            out.append(f"flop curve {e.v1}-{e.v2} is not inside a regular triangle")
        if ct is not CurveType.MINUS_ONE_MINUS_ONE and e.index in inside_edges:
            out.append(f"curve {e.v1}-{e.v2} inside a regular triangle is not a flop")
        if ct is CurveType.ONE_MINUS_THREE and not any(tri.kinds[v] is VertexKind.TRIVALENT for v in (e.v1, e.v2)):
            out.append(f"(1,-3) curve {e.v1}-{e.v2} misses the trivalent vertex")
    return out


def degree_violations(rec: Recipe) -> list[str]:
    """Every marking monomial moves by exactly one ratio step across its curve."""
    tri = rec.tri
    out = []
    for e in sorted(rec.edge_marks):
        edge = tri.edges[e]
        g1, g2 = (tri.graph(t) for t in edge.triangles)
        chi = rec.edge_marks[e]
        try:
            deg = degrees_between(g1, g2, chi, rec.ratios[e].vector)
        except OracleError as exc:
            out.append(f"curve {edge.v1}-{edge.v2}: {exc}")
            continue
        if deg[chi] != 1:
            out.append(f"curve {edge.v1}-{edge.v2}: marking character has degree {deg[chi]}")
    return out


def divisibility_violations(rec: Recipe) -> list[str]:
    """One del Pezzo mark per curve and inner divisor, constant on each side of it."""
    tri = rec.tri
    out = []
    for chi, chain in sorted(rec.chains.items()):
        for v in chain.inner_vertices():
            if tri.kinds[v] is not VertexKind.DEL_PEZZO:
                continue
            sides: dict[int, set[int]] = {}
            for e in chain.edges:
                try:
                    pick = chi_dp(rec, e, v)
                except Exception as exc:  # noqa: BLE001 - reported, not raised
                    out.append(f"{rec.group.char_label(chi)}-curve {tri.edges[e]}: {exc}")
                    continue
                sides.setdefault(_side_of(rec, chi, v, e), set()).add(pick)
            for side, picks in sides.items():
                if len(picks) != 1:
                    out.append(
                        f"{rec.group.char_label(chi)}-chain at {tri.vertex_name(v)}: "
                        f"del Pezzo selection {sorted(picks)} varies along one side"
                    )
    return out


def _side_of(rec: Recipe, chi: int, v: int, e: int) -> int:
    """The chain edge at ``v`` through which ``e`` is reached."""
    tri = rec.tri
    chain = rec.chain(chi)
    for start in chain.adjacency[v]:
        seen = {v}
        stack = [(tri.edges[start].other(v), start)]
        while stack:
            w, via = stack.pop()
            if via == e:
                return start
            seen.add(w)
            for x in chain.adjacency.get(w, ()):
                u = tri.edges[x].other(w)
                if u not in seen:
                    stack.append((u, x))
    return -1


def oracle_mismatches(rec: Recipe, unlocker: Unlocker) -> list[str]:
    tri = rec.tri
    out = []
    for e in sorted(rec.edge_marks):
        edge = tri.edges[e]
        truth = gigsaw_between(*(tri.graph(t) for t in edge.triangles))
        got = unlocker(e).characters
        if got != truth:
            out.append(
                f"curve {tri.vertex_name(edge.v1)}-{tri.vertex_name(edge.v2)}: unlocking gives "
                f"{sorted(got)}, the adjacent clusters give {sorted(truth)}"
            )
    return out


def monotonicity_violations(rec: Recipe, unlocker: Unlocker) -> list[str]:
    """deg(psi) >= deg(rho) on C whenever C unlocks C0, C0 unlocks a rho-curve C1 and psi in G-ig(C1)."""
    tri = rec.tri
    out = []
    for c in sorted(rec.edge_marks):
        edge = tri.edges[c]
        g1, g2 = (tri.graph(t) for t in edge.triangles)
        deg = degrees_between(g1, g2, rec.edge_marks[c], rec.ratios[c].vector)
        reach = {c}
        stack = [c]
        while stack:
            for y in unlocker(stack.pop()).unlocked:
                if y not in reach:
                    reach.add(y)
                    stack.append(y)
        for c0 in sorted(reach):
            for c1 in unlocker(c0).unlocked:
                rho = rec.edge_marks[c1]
                for psi in unlocker(c1).characters:
                    if deg[psi] < deg[rho]:
                        out.append(f"curve {edge.v1}-{edge.v2}: deg {psi} < deg {rho}")
    return out


def run_checks(
    group: Group,
    max_quotient_size: int | None = None,
    report: WallReport | None = None,
) -> CheckReport:
    out = CheckReport(group.spec())
    if report is None:
        tri = triangulate(group)
        rec = reids_recipe(tri)
        unlocker = Unlocker(rec)
        report = chamber(rec, unlocker, max_quotient_size)
    else:
        rec = report.rec
        tri = rec.tri
        unlocker = Unlocker(rec)
    out.violations += fan_violations(tri)
    out.violations += position_violations(tri)
    out.violations += degree_violations(rec)
    out.violations += generator_relation_violations(rec)
    out.violations += divisibility_violations(rec)
    out.violations += oracle_mismatches(rec, unlocker)
    out.violations += monotonicity_violations(rec, unlocker)
    out.violations += census_violations(report)
    out.warnings += [f"valency rule: {w}" for w in tensor_rule_violations(rec)]
    if report.quotient_cap is not None:
        out.warnings.append(f"quotient divisors capped at {report.quotient_cap} vertices")
    out.counts = {
        "triangles": len(tri.triangles),
        "curves": len(rec.edge_marks),
        "inequalities": len(report.inequalities),
        "walls": len(report.walls),
    }
    return out
