import importlib
import logging
from itertools import islice

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gigsaw.chamber import (
    CURVE,
    QUOTIENT,
    REDUNDANT,
    SUBSHEAF,
    TYPE_0,
    TYPE_I,
    TYPE_III,
    WALL,
    _letters,
    census_violations,
    chamber,
    curve_label,
    facet_test,
    summand_decomposition,
    verify_theta,
)
from gigsaw.groups import parse_group_spec
from gigsaw.recipe import reids_recipe
from gigsaw.triangulation import triangulate

# the package re-exports the chamber() function under the module's name
chamber_module = importlib.import_module("gigsaw.chamber")

vectors_st = st.lists(st.tuples(*[st.integers(0, 3)] * 5), min_size=1, max_size=8, unique=True).filter(
    lambda vs: all(any(v) for v in vs)
)


def test_order_6_report(run):
    rep = run("1/6(1,2,3)").report
    rows = [(q.label, q.source.kind, q.status, q.wall_type) for q in rep.inequalities]
    assert rows == [
        ("A1", CURVE, WALL, TYPE_I),
        ("A2", CURVE, WALL, TYPE_III),
        ("B2", CURVE, REDUNDANT, None),
        ("A3", CURVE, WALL, TYPE_I),
        ("B3", CURVE, REDUNDANT, None),
        ("A4", CURVE, WALL, TYPE_I),
        ("A5", SUBSHEAF, WALL, TYPE_0),
        ("B5", QUOTIENT, WALL, TYPE_0),
    ]
    assert [(rep.inequalities[w.inequality].label, w.wall_type) for w in rep.walls] == [
        ("A1", "I"), ("A2", "III"), ("A3", "I"), ("A4", "I"), ("A5", "0"), ("B5", "0"),
    ]


def test_order_6_certificates(run):
    rep = run("1/6(1,2,3)").report
    named = {}
    for q in rep.inequalities:
        v = rep.vectors[q.key]
        if not v.facet:
            named[q.label] = {rep.representative(k).label: n for k, n in v.summands.items()}
    assert named == {"B2": {"A2": 1, "A3": 1, "A4": 2}, "B3": {"A3": 1, "A4": 1}}


def test_quotient_wall_support(run):
    r = run("1/6(1,2,3)")
    b5 = next(w for w in r.report.walls if r.report.inequalities[w.inequality].label == "B5")
    # every curve at the 5-divisor moves only characters in {2,3,4,5}
    assert b5.divisor == [4]
    assert set(b5.support_edges) == set(r.tri.vertex_edges[4])


def test_type_i_wall_support_contains_its_curve(run):
    rep = run("1/30(25,2,3)").report
    for w in rep.walls:
        if w.wall_type == TYPE_I:
            q = rep.inequalities[w.inequality]
            assert q.source.edge in w.support_edges
            assert w.divisor == []


def test_type_iii_walls_contract_hirzebruch_divisors(run):
    r = run("1/35(1,3,31)")
    marks = sorted(
        sorted(c for v in w.divisor for c in r.rec.vertex_marks[v]) for w in r.report.walls if w.wall_type == TYPE_III
    )
    assert marks == [[16, 17, 18], [28, 29, 30]]


def test_long_sides(run):
    rep = run("1/25(1,3,21)").report
    assert sorted(ls.character for ls in rep.long_sides) == [3, 9, 21]
    # the 1-chain holds a flop curve, so it is not a long side
    assert 1 not in {ls.character for ls in rep.long_sides}
    sides35 = run("1/35(1,3,31)").report.long_sides
    assert sorted(ls.character for ls in sides35) == [15, 27]
    assert all(len(ls.final_edges) == 2 for ls in sides35)


def test_labels():
    assert list(islice(_letters(), 25, 28)) == ["Z", "AA", "AB"]
    assert next(islice(_letters(), 26 + 26 * 26, None)) == "AAA"


def test_curve_labels_match_assembly(sweep):
    for r in sweep[::7]:
        for q in r.report.inequalities:
            if q.source.kind == CURVE:
                assert curve_label(r.rec, q.source.edge) == q.label


def test_quotient_cap(caplog, monkeypatch):
    rec = reids_recipe(triangulate(parse_group_spec("1/30(25,2,3)")))
    capped = chamber(rec, max_quotient_size=1)
    assert capped.quotient_cap == 1
    assert all(len(q.source.vertices) <= 1 for q in capped.inequalities if q.source.kind == QUOTIENT)
    monkeypatch.setattr(chamber_module, "QUOTIENT_FREE_LIMIT", 3)
    with caplog.at_level(logging.WARNING):
        auto = chamber(rec)
    assert auto.quotient_cap == chamber_module.QUOTIENT_DEFAULT_CAP
    assert "capped" in caplog.text


def test_uncapped_by_default(run):
    assert run("1/35(1,3,31)").report.quotient_cap is None


@pytest.mark.parametrize("spec", ["1/1(0,0,0)", "1/2(1,1,0);1/2(0,1,1)", "1/3(1,1,1)"])
def test_small_groups(spec, run):
    rep = run(spec).report
    assert census_violations(rep) == []


def test_trivalent_curves_are_redundant(run):
    rep = run("1/3(1,1,1)").report
    assert [(q.label, q.status) for q in rep.inequalities if q.source.kind == CURVE] == [
        ("A1", REDUNDANT), ("B1", REDUNDANT), ("C1", REDUNDANT),
    ]


@given(vectors_st, st.lists(st.integers(0, 3), min_size=8, max_size=8))
def test_summand_search_is_complete_and_sound(others, mult):
    target = [0] * 5
    for n, v in zip(mult, others):
        target = [t + n * x for t, x in zip(target, v)]
    assume(any(target))
    found = summand_decomposition(target, others)
    assert found is not None
    total = [0] * 5
    for i, n in found.items():
        assert n > 0
        total = [t + n * x for t, x in zip(total, others[i])]
    assert total == target


@settings(max_examples=200)
@given(vectors_st, st.data())
def test_facet_test_certificates(vectors, data):
    vectors = [(0,) + v for v in vectors]  # a trivial character that never appears
    key = data.draw(st.integers(0, len(vectors) - 1))
    facet, cert = facet_test(key, vectors)
    others = [b if i != key else (0,) * 6 for i, b in enumerate(vectors)]
    if facet:
        verify_theta(key, vectors, cert)
        assert summand_decomposition(vectors[key], others) is None
    else:
        total = [sum(w * vectors[i][c] for i, w in cert.items()) for c in range(6)]
        assert total == list(vectors[key])
        assert all(w > 0 for w in cert.values())
