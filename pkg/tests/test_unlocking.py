import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gigsaw.checks import monotonicity_violations
from gigsaw.gclusters import gigsaw_between
from gigsaw.groups import cyclic, cyclic_sweep, parse_group_spec
from gigsaw.recipe import reids_recipe
from gigsaw.triangulation import triangulate
from gigsaw.unlocking import CH, DP, H1, H2, Unlocker, unlock, unlock_all


def pieces(spec):
    rec = reids_recipe(triangulate(parse_group_spec(spec)))
    tri = rec.tri
    return {(tri.edges[e].v1, tri.edges[e].v2): sorted(p.characters) for e, p in unlock_all(rec).items()}


# expected pieces come from comparing adjacent G-graphs, then frozen
@pytest.mark.parametrize(
    "spec, expected",
    [
        ("1/6(1,2,3)", {(1, 2): [1], (1, 4): [4], (2, 4): [3, 5], (3, 4): [2, 5], (4, 5): [3, 4, 5], (4, 6): [2, 3, 4, 5]}),
        ("1/3(1,1,1)", {(0, 1): [1, 2], (1, 2): [1, 2], (1, 3): [1, 2]}),
        ("1/5(1,1,3)", {(0, 1): [1, 2, 4], (0, 2): [3, 4], (1, 2): [1, 2, 4], (1, 3): [1, 2, 4], (2, 3): [3, 4], (2, 4): [1, 2, 3, 4]}),
        ("1/6(1,1,4)", {(0, 2): [2, 3], (0, 3): [4, 5], (1, 2): [1, 3, 5], (2, 3): [1, 2, 3, 5], (2, 4): [2, 3], (3, 4): [4, 5], (3, 5): [1, 2, 3, 4, 5]}),
        ("1/2(1,1,0);1/2(0,1,1)", {(1, 2): [2], (1, 4): [3], (2, 4): [1]}),
    ],
)
def test_frozen_pieces(spec, expected):
    assert pieces(spec) == expected


def test_five_curve_provenance():
    rec = reids_recipe(triangulate(parse_group_spec("1/30(25,2,3)")))
    tri = rec.tri
    where = {p: v for v, p in enumerate(tri.points)}
    e = tri.edge(where[(5, 10, 15)], where[(5, 4, 21)]).index
    piece = unlock(rec, e)
    assert piece.characters == frozenset({5, 7, 9, 11})
    steps = {c: step for c, (step, _) in piece.provenance.items()}
    assert steps == {5: CH, 7: DP, 9: H2, 11: H1}
    assert [rec.edge_marks[x] for x in piece.unlocked] == [9]


def test_memo_is_reused():
    rec = reids_recipe(triangulate(parse_group_spec("1/30(25,2,3)")))
    u = Unlocker(rec)
    e = sorted(rec.edge_marks)[0]
    assert u(e) is u(e)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(cyclic_sweep(20)))
def test_unlocking_matches_adjacent_clusters(t):
    rec = reids_recipe(triangulate(cyclic(*t)))
    tri = rec.tri
    u = Unlocker(rec)
    for e in rec.edge_marks:
        truth = gigsaw_between(*(tri.graph(s) for s in tri.edges[e].triangles))
        assert u(e).characters == truth
        assert rec.edge_marks[e] in truth


def test_sweep_monotonicity(sweep):
    for r in sweep:
        assert monotonicity_violations(r.rec, r.unlocker) == [], r.group.spec()
