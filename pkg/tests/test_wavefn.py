import pytest
from hypothesis import given

from motfourier.dsl import eval_expr
from motfourier.errors import NonMonomial, NotSchwartz
from motfourier.geometry import Form, cball, oball
from motfourier.motvalues import C_ZERO, cx_exp
from motfourier.valfield import VF, t_pow, theta
from motfourier.wavefn import (
    chi, expchar, fn_check, fn_eval, fn_scale_arg, fn_translate, iota_bound, one_fn, packet_reduce,
)

from conftest import balls, packet_fns, vfs

T = t_pow(1)


def E(text):
    return eval_expr(text)


def test_eval_examples():
    assert fn_eval(E("chi(cball(0, 0)) * expchar(t^-1 * x1)"), [T]) == cx_exp(VF.const(1))
    assert fn_eval(E("chi(oball(0, 0))"), [1]) == C_ZERO
    assert fn_eval(E("nu(1)"), [t_pow(-1), t_pow(-1)]) == cx_exp(t_pow(-2))


def test_reduce_folds_constant_phase():
    f = chi(oball(0, 2)) * expchar(Form.var(0, t_pow(-1)), 1)
    assert f == chi(oball(0, 2))
    (p,) = f.packets
    assert packet_reduce(p) == p


def test_reduce_keeps_oscillation():
    f = chi(cball(0, 0)) * expchar(Form.var(0, t_pow(-2)), 1)
    assert f.packets[0].phase == Form.var(0, t_pow(-2))


def test_mul_examples():
    b, b2 = t_pow(-1), 2 * t_pow(-2)
    f = chi(oball(0, 1)) * expchar(Form.var(0, b), 1)
    g = chi(cball(0, 2)) * expchar(Form.var(0, b2), 1)
    assert f * g == chi(cball(0, 2)) * expchar(Form.var(0, b + b2), 1)
    assert (chi(cball(0, 1)) * chi(cball(1, 1))).is_zero()
    assert f * one_fn(1) == f


def test_translate_and_scale():
    assert fn_translate(chi(oball(0, 1)), [1]) == chi(oball(-1, 1))
    assert fn_scale_arg(chi(cball(0, 0)), T) == chi(cball(0, -1))
    with pytest.raises(NonMonomial):
        fn_scale_arg(chi(cball(0, 0)), 1 + T)


def test_flags():
    flags = fn_check(E("expchar(t^-1 * x1)"))
    assert flags.almost_integrable and not flags.integrable
    assert fn_check(E("chi(cball(0, 0))")).schwartz


def test_iota_examples():
    assert iota_bound(chi(oball(0, 3))) == 3
    assert iota_bound(E("chi(cball(0, 0)) * expchar(t^-3 * x1)")) == 3
    assert iota_bound(chi(oball(0, 0)) - chi(oball(0, 0))) == 0
    with pytest.raises(NotSchwartz):
        iota_bound(E("expchar(x1)"))




@given(packet_fns(1), packet_fns(1), vfs())
def test_eval_is_ring_map(f, g, x):
    assert fn_eval(f + g, [x]) == fn_eval(f, [x]) + fn_eval(g, [x])
    assert fn_eval(f * g, [x]) == fn_eval(f, [x]) * fn_eval(g, [x])


@given(balls(), vfs(lo=-3, hi=1, max_terms=2), vfs())
def test_reduction_preserves_values(ball, b, x):
    # the reduced packet agrees with the raw definition inside and outside the ball
    f = chi(ball) * expchar(Form.var(0, b), 1)
    raw = cx_exp(theta(b * x)) if ball.contains(x) else C_ZERO
    assert fn_eval(f, [x]) == raw
    assert fn_eval(f, [ball.center]) == cx_exp(theta(b * ball.center))


@given(packet_fns(1), vfs())
def test_local_constancy(f, x):
    beta = iota_bound(f)
    delta = t_pow(int(beta) + 1)
    assert fn_eval(f, [x]) == fn_eval(f, [x + delta])
    assert fn_eval(f, [x]) == fn_eval(f, [x + 3 * delta])


@given(packet_fns(2, bilinear=True), vfs(), vfs())
def test_local_constancy_arity2(f, x, y):
    beta = iota_bound(f)
    d = t_pow(int(beta) + 1)
    assert fn_eval(f, [x, y]) == fn_eval(f, [x + d, y - d])
