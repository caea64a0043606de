import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gigsaw.groups import (
    GroupSpecError,
    canonical_cyclic,
    cyclic,
    cyclic_sweep,
    make_group,
    parse_group_spec,
)


@st.composite
def cyclic_groups(draw, max_order=24):
    r = draw(st.integers(2, max_order))
    a = draw(st.integers(0, r - 1))
    b = draw(st.integers(0, r - 1))
    c = (-a - b) % r
    if math.gcd(math.gcd(a, b), math.gcd(c, r)) != 1:
        a, b, c = 1, r - 1, 0
    return cyclic(r, a, b, c)


def test_parse_cyclic():
    g = parse_group_spec("1/6(1,2,3)")
    assert g.order == 6
    assert g.den == 6
    assert g.is_cyclic
    assert g.spec() == "1/6(1,2,3)"


def test_parse_ignores_whitespace():
    assert parse_group_spec(" 1/6( 1, 2,3 ) ").spec() == "1/6(1,2,3)"


def test_parse_product():
    g = parse_group_spec("1/2(1,1,0);1/2(0,1,1)")
    assert g.order == 4
    assert g.den == 2
    assert not g.is_cyclic
    assert g.char_label(g.encode((1, 0))) == "(1,0)"


def test_trivial_group():
    g = parse_group_spec("1/1(0,0,0)")
    assert g.order == 1
    assert g.junior_points == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@pytest.mark.parametrize(
    "text",
    ["", "1/6(1,2,2)", "1/6(2,2,2)", "1/0(0,0,0)", "1/6(1,2)", "x", "1/6(1,2,3);"],
)
def test_bad_specs(text):
    with pytest.raises(GroupSpecError):
        parse_group_spec(text)


def test_junior_points_of_order_6():
    g = parse_group_spec("1/6(1,2,3)")
    assert g.junior_points == ((6, 0, 0), (4, 2, 0), (3, 0, 3), (2, 4, 0), (1, 2, 3), (0, 6, 0), (0, 0, 6))


def test_junior_points_of_klein_four():
    g = parse_group_spec("1/2(1,1,0);1/2(0,1,1)")
    assert g.junior_points == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_sweep_size_and_representatives():
    reps = cyclic_sweep(30)
    assert len(reps) == 161
    assert cyclic_sweep(6) == [
        (2, 0, 1, 1), (3, 0, 1, 2), (3, 1, 1, 1), (4, 0, 1, 3), (4, 1, 1, 2),
        (5, 0, 1, 4), (5, 1, 1, 3), (6, 0, 1, 5), (6, 1, 1, 4), (6, 1, 2, 3),
    ]
    assert len(set(reps)) == len(reps)


def test_canonical_form_of_worked_examples():
    assert canonical_cyclic(30, 25, 2, 3) == canonical_cyclic(30, 2, 3, 25)
    assert canonical_cyclic(6, 5, 4, 3) == (1, 2, 3)


@given(cyclic_groups())
def test_spec_round_trip(g):
    assert parse_group_spec(g.spec()) == g


@given(cyclic_groups(), st.data())
def test_character_arithmetic(g, data):
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    assert g.decode(g.encode(g.decode(a))) == g.decode(a)
    assert g.add(a, g.neg(a)) == g.trivial
    assert g.add(a, b) == g.add(b, a)
    assert g.scale(a, g.order) == g.trivial


@given(cyclic_groups())
def test_junior_points_lie_on_the_simplex(g):
    pts = g.junior_points
    assert all(sum(p) == g.den for p in pts)
    assert all(g.in_lattice(p) is not None for p in pts)
    # one point per junior element plus the three corners
    assert len(pts) == sum(1 for e in g.elements() if sum(g.eigen_point(e)) == g.den) + 3


@given(cyclic_groups(), st.data())
def test_monomial_characters(g, data):
    m = tuple(data.draw(st.integers(0, 5)) for _ in range(3))
    x, y, z = g.coordinate_characters
    expected = g.sum([x] * m[0] + [y] * m[1] + [z] * m[2])
    assert g.character_of(m) == expected
    assert g.character_of((1, 1, 1)) == g.trivial


def test_make_group_rejects_unfaithful():
    with pytest.raises(GroupSpecError):
        make_group((4,), ((2,), (2,), (0,)))
