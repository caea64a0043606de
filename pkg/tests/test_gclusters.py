from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gigsaw.gclusters import (
    GGraph,
    OracleError,
    degrees_between,
    divides,
    format_monomial,
    gigsaw_between,
    minimal_graph,
    ratio_power,
    walk_fan,
)
from gigsaw.groups import cyclic, cyclic_sweep, parse_group_spec

SMALL = [cyclic(*t) for t in cyclic_sweep(12)]


def brute_force_basis(group, v):
    """Cheapest monomial per character by direct enumeration; None on a tie."""
    best = {}
    bound = group.order
    for m in product(range(bound + 1), repeat=3):
        chi = group.character_of(m)
        cost = sum(a * b for a, b in zip(v, m))
        if chi not in best or cost < best[chi][0]:
            best[chi] = (cost, m, False)
        elif cost == best[chi][0]:
            best[chi] = (cost, best[chi][1], True)
    if any(tie for _, _, tie in best.values()):
        return None
    return tuple(best[c][1] for c in range(group.order))


def test_order_6_fan():
    fan = walk_fan(parse_group_spec("1/6(1,2,3)"))
    assert len(fan.graphs) == 6
    assert sorted(c.rays for c in fan.cones) == sorted(fan.index)
    for g in fan.graphs:
        assert len(g) == 6
        assert g.basis[0] == (0, 0, 0)
        assert g.is_divisor_closed()


@pytest.mark.parametrize("group", SMALL[:20], ids=lambda g: g.spec())
def test_cone_interiors_pick_the_graph(group):
    fan = walk_fan(group)
    pts = group.junior_points
    for graph, cone in zip(fan.graphs, fan.cones):
        v = [sum(pts[i][k] for i in cone.rays) for k in range(3)]
        basis = brute_force_basis(group, v)
        if basis is not None:
            assert basis == graph.basis


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL))
def test_fan_is_a_triangulation(group):
    fan = walk_fan(group)
    assert len(fan.cones) == group.order
    edges = {}
    for c in fan.cones:
        a, b, d = c.rays
        for e in ((a, b), (a, d), (b, d)):
            edges[tuple(sorted(e))] = edges.get(tuple(sorted(e)), 0) + 1
    used = {i for c in fan.cones for i in c.rays}
    assert used == set(range(len(group.junior_points)))
    # a triangulated disc: V - E + F = 1, every edge on one or two triangles
    assert len(used) - len(edges) + len(fan.cones) == 1
    assert set(edges.values()) <= {1, 2}


def test_gigsaw_between_counts_moved_characters():
    g1 = GGraph(((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    g2 = GGraph(((0, 0, 0), (1, 0, 0), (0, 0, 2)))
    assert gigsaw_between(g1, g2) == frozenset({2})
    assert gigsaw_between(g1, g1) == frozenset()


def test_ratio_power_and_degrees():
    g1 = GGraph(((0, 0, 0), (0, 2, 0), (0, 1, 0)))
    g2 = GGraph(((0, 0, 0), (2, 0, 0), (1, 0, 0)))
    assert ratio_power(g1, g2, 2, (1, -1, 0)) == 1
    assert ratio_power(g1, g2, 1, (1, -1, 0)) == 2
    assert degrees_between(g1, g2, 2, (1, -1, 0)) == {0: 0, 1: 2, 2: 1}
    with pytest.raises(OracleError):
        ratio_power(g1, g2, 2, (1, 0, -1))


def test_minimal_graph_rejects_nothing_valid():
    g = minimal_graph(parse_group_spec("1/3(1,1,1)"), (1, 1, 1), tie=(3, 2, 1))
    assert g.basis[0] == (0, 0, 0)
    assert len(g) == 3


def test_monomial_helpers():
    assert divides((1, 0, 2), (1, 1, 2))
    assert not divides((2, 0, 0), (1, 5, 5))
    assert format_monomial((0, 2, 1)) == "x^0 y^2 z^1"


def test_socle_of_a_line():
    g = GGraph(((0, 0, 0), (0, 0, 1), (0, 0, 2)))
    assert g.socle() == frozenset({2})
