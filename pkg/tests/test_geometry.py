import pytest
from hypothesis import given, strategies as st

from motfourier.errors import NonMonomial, NotCenteredAtZero
from motfourier.geometry import (
    CLOSED, DISJOINT, EQUAL, FIRST_IN_SECOND, OPEN, SECOND_IN_FIRST, Form, Polyball, annihilator,
    ball_relation, cball, dual_ball, dual_polyball, make_constraint, oball, solve_constraint_for,
)
from motfourier.valfield import VF, t_pow

from conftest import balls

A = VF.const(1) + t_pow(1)


def test_dual_ball():
    assert dual_ball(oball(0, 2)) == cball(0, -2)
    assert dual_ball(dual_ball(cball(A, 1))) == cball(A, 1)
    assert dual_polyball(Polyball([oball(0, 0), cball(0, 1)])) == Polyball([cball(0, 0), oball(0, -1)])


@pytest.mark.parametrize("b1, b2, rel", [
    (oball(0, 0), cball(0, 0), FIRST_IN_SECOND),
    (cball(0, 1), cball(1, 1), DISJOINT),
    (oball(0, 1), oball(t_pow(1), 1), DISJOINT),
    (cball(0, 0), oball(0, 0), SECOND_IN_FIRST),
    (cball(0, 1), oball(t_pow(2), 0), FIRST_IN_SECOND),
    (oball(t_pow(2), 1), oball(0, 1), EQUAL),
])
def test_ball_relation(b1, b2, rel):
    assert ball_relation(b1, b2) == rel


def test_annihilator():
    assert annihilator(Polyball([cball(0, 0)])) == Polyball([oball(0, 0)])
    assert annihilator(Polyball([oball(0, 0)])) == Polyball([cball(0, 0)])
    assert annihilator(Polyball([cball(0, 3)])) == Polyball([oball(0, -3)])
    with pytest.raises(NotCenteredAtZero):
        annihilator(Polyball([cball(1, 0)]))


def test_solve_examples():
    c = make_constraint(Form.var(0) + Form.var(1), 1, OPEN)
    center, r, kind = solve_constraint_for(c, 0)
    assert (center, r, kind) == (-Form.var(1), 1, OPEN)
    c = make_constraint(Form.var(0, t_pow(1)), 0, CLOSED)
    assert solve_constraint_for(c, 0)[1:] == (-1, CLOSED)
    c = make_constraint(Form.var(0), 2, OPEN, center=A)
    center, r, kind = solve_constraint_for(c, 0)
    assert (r, kind) == (2, OPEN) and center.constant.truncate_below(2, strict=False) == A.truncate_below(2, strict=False)


def test_non_monomial_solve():
    c = make_constraint(Form.var(0) + Form.var(1, A), 0, OPEN)
    with pytest.raises(NonMonomial):
        solve_constraint_for(c, 1)


def test_unit_coefficient_normalized():
    # (1 - t) x in c(0, 3) is the same set as x in c(0, 3)
    c = make_constraint(Form.var(0, VF.const(1) - t_pow(1)) + t_pow(1), 3, CLOSED)
    for x in [-t_pow(1), -t_pow(1) - t_pow(2), VF(), t_pow(5)]:
        direct = ((VF.const(1) - t_pow(1)) * x + t_pow(1)).val() >= 3
        assert c.holds([x]) == direct


def _probe_points():
    return [VF(), VF.const(1), t_pow(1), t_pow(-1), VF.const(2) + t_pow(1), t_pow(2), VF.const(1) + t_pow(3)]


@given(balls(), balls())
def test_trichotomy_matches_membership(b1, b2):
    rel = ball_relation(b1, b2)
    pts = _probe_points() + [b1.center, b2.center]
    for x in pts:
        in1, in2 = b1.contains(x), b2.contains(x)
        if rel == EQUAL:
            assert in1 == in2
        elif rel == FIRST_IN_SECOND:
            assert not in1 or in2
        elif rel == SECOND_IN_FIRST:
            assert not in2 or in1
        else:
            assert not (in1 and in2)
    # the relation is witnessed by the centers
    if rel == FIRST_IN_SECOND:
        assert b2.contains(b1.center)
    if rel == DISJOINT:
        assert not (b1.contains(b2.center) and b2.contains(b1.center))


@given(st.lists(balls(), min_size=1, max_size=3))
def test_dual_involution(bs):
    p = Polyball(bs)
    assert dual_polyball(dual_polyball(p)) == p


@given(st.lists(st.tuples(st.booleans(), st.integers(-3, 3)), min_size=1, max_size=3))
def test_annihilator_involution(spec):
    h = Polyball([oball(0, r) if o else cball(0, r) for o, r in spec])
    assert annihilator(annihilator(h)) == h
