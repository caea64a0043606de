"""Shared helpers: cached pipelines and point-keyed views of the results."""

import functools

from gigsaw.chamber import chamber
from gigsaw.groups import cyclic, cyclic_sweep, parse_group_spec
from gigsaw.recipe import reids_recipe
from gigsaw.triangulation import triangulate
from gigsaw.unlocking import Unlocker

SWEEP_MAX_ORDER = 30


class Run:
    """One group's full pipeline."""

    def __init__(self, group):
        self.group = group
        self.tri = triangulate(group)
        self.rec = reids_recipe(self.tri)
        self.unlocker = Unlocker(self.rec)
        self.report = chamber(self.rec, self.unlocker)

    def edge_between(self, p, q) -> int:
        where = {pt: v for v, pt in enumerate(self.tri.points)}
        return self.tri.edge(where[tuple(p)], where[tuple(q)]).index


@functools.lru_cache(maxsize=None)
def run_for(spec: str) -> Run:
    return Run(parse_group_spec(spec))


@functools.lru_cache(maxsize=None)
def sweep_runs(max_order: int = SWEEP_MAX_ORDER) -> tuple[Run, ...]:
    return tuple(Run(cyclic(*t)) for t in cyclic_sweep(max_order))


def edge_marks_by_points(rec) -> dict:
    tri = rec.tri
    out = {}
    for e, chi in rec.edge_marks.items():
        edge = tri.edges[e]
        p, q = sorted((tri.points[edge.v1], tri.points[edge.v2]), reverse=True)
        out[(p, q)] = chi
    return out


def vertex_marks_by_points(rec) -> dict:
    return {rec.tri.points[v]: tuple(sorted(m)) for v, m in rec.vertex_marks.items()}


def dense(sparse: dict, order: int) -> tuple:
    return tuple(sparse.get(c, 0) for c in range(order))


def sparse(vector) -> dict:
    return {c: a for c, a in enumerate(vector) if a}
