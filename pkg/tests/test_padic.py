import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motfourier.dsl import eval_expr
from motfourier.errors import BadReduction, InsufficientLevel, NonIntegralGamma, OutsideModel
from motfourier.geometry import cball, oball
from motfourier.integrator import integrate
from motfourier.fourier import fourier0
from motfourier.motvalues import C_ONE, CElem, Mot, cx_exp, mot_a, mot_b, mot_c, mot_e, mot_o
from motfourier.padic import Cyc, PadicConfig, numeric_integral, oracle_check, psi_value, spec_c, spec_mot
from motfourier.valfield import QI, VF, t_pow
from motfourier.wavefn import MotFn, chi, fn_eval

from conftest import packet_fns, vfs
from oracles import Field, brute_integral, mot_value

P5 = PadicConfig(5, 3)
E = eval_expr
T = t_pow(1)


def test_config_validation():
    assert (P5.i_lift ** 2 + 1) % P5.modulus == 0
    for bad in [(7, 3), (9, 2), (5, 0)]:
        with pytest.raises(OutsideModel):
            PadicConfig(*bad)


def test_spec_mot_examples():
    assert spec_mot(mot_a(), P5) == Fraction(1, 5)
    assert spec_mot(mot_b(), P5) == 1
    assert spec_mot(mot_o(2) * mot_c(-2) * mot_e() ** -1, P5) == 1
    with pytest.raises(NonIntegralGamma):
        spec_mot(mot_o(Fraction(1, 2)), P5)


def test_spec_c_examples():
    z5 = cmath.exp(2j * math.pi / 5)
    assert abs(spec_c(cx_exp(VF.const(1)), P5).to_complex() - z5) < 1e-12
    assert spec_c(C_ONE, P5) == Cyc.const(5, 1)
    z25 = cmath.exp(2j * math.pi / 25)
    assert abs(spec_c(cx_exp(t_pow(-1)), PadicConfig(5, 2)).to_complex() - z25) < 1e-12
    with pytest.raises(InsufficientLevel):
        spec_c(cx_exp(t_pow(-3)), PadicConfig(5, 2))


def test_numeric_examples():
    assert numeric_integral(E("chi(cball(0, 0)) * expchar(x1)"), P5).is_zero()
    assert numeric_integral(E("chi(cball(0, 0)) * expchar(t * x1)"), P5) == Cyc.const(5, 1)
    assert numeric_integral(chi(oball(0, 0)), P5) == Cyc.const(5, Fraction(1, 5))


def test_oracle_examples():
    f = E("chi(oball(0, 0)) * expchar(t^-1 * x1)")
    rep = oracle_check(integrate(f), f, P5)
    assert rep["status"] == "pass" and rep["symbolic"] == {}
    fh = fourier0(chi(cball(0, 0)))
    b = VF.const(3)
    assert fn_eval(fh, [b]).is_zero()
    assert numeric_integral(E("chi(cball(0, 0)) * expchar(3 * x1)"), P5).is_zero()
    assert oracle_check(integrate(MotFn(1)), MotFn(1), P5)["status"] == "pass"


def test_psi_conductor():
    # trivial on pZ_p, nontrivial on Z_p
    for x in [T, 3 * T, t_pow(2) + T]:
        assert psi_value(x, P5) == Cyc.const(5, 1)
    assert psi_value(VF.const(1), P5) != Cyc.const(5, 1)


def test_independent_field_agrees_on_psi():
    fld = Field(5)
    for x in [VF.const(1), t_pow(-1), VF.const(QI(2, 1)) + t_pow(-2)]:
        ref = fld.psi(fld.vf(x))
        assert abs(psi_value(x, P5).to_complex() - ref) < 1e-9


def _mot_samples():
    return st.builds(lambda a, b, k: a * b + Mot.coerce(k),
                     st.sampled_from([mot_o(0), mot_c(1), mot_e(), mot_o(-2), mot_e() ** -1]),
                     st.sampled_from([mot_o(1), mot_c(-1), mot_b(), Mot.coerce(1)]),
                     st.integers(-2, 2))


@given(_mot_samples(), _mot_samples())
def test_spec_mot_ring_map(x, y):
    for cfg in [P5, PadicConfig(13, 2)]:
        assert spec_mot(x * y, cfg) == spec_mot(x, cfg) * spec_mot(y, cfg)
        assert spec_mot(x + y, cfg) == spec_mot(x, cfg) + spec_mot(y, cfg)
    assert abs(float(spec_mot(x, P5)) - mot_value(x, 5)) < 1e-9 * max(1, abs(mot_value(x, 5)))


def _celems():
    return st.builds(lambda w, m, w2, m2: CElem({w: m}) + CElem({w2: m2}),
                     vfs(lo=-2, hi=0), _mot_samples(), vfs(lo=-2, hi=0), _mot_samples())


@given(_celems(), _celems())
def test_spec_c_ring_map(x, y):
    assert spec_c(x * y, P5) == spec_c(x, P5) * spec_c(y, P5)
    assert spec_c(x + y, P5) == spec_c(x, P5) + spec_c(y, P5)


@given(packet_fns(1), st.sampled_from([5, 13]))
def test_numeric_matches_symbolic(f, p):
    cfg = PadicConfig(p, 4)
    assert numeric_integral(f, cfg) == spec_c(integrate(f), cfg)


@given(packet_fns(1, radii=st.integers(-1, 1), freq_lo=-1))
def test_numeric_matches_independent_oracle(f):
    ref = brute_integral(f, 5, max_points=3000)
    if ref is not None:
        assert abs(numeric_integral(f, PadicConfig(5, 4)).to_complex() - ref) < 1e-9


def test_bad_reduction_is_rejected():
    # i maps to 2 mod 5, so 3 + i picks up valuation at p = 5 but not at p = 13
    f = eval_expr("chi(cball(0, 0)) * expchar((3 + i) * t^-1 * x1)")
    with pytest.raises(BadReduction):
        numeric_integral(f, PadicConfig(5, 3))
    cfg = PadicConfig(13, 3)
    assert numeric_integral(f, cfg) == spec_c(integrate(f), cfg)
    assert isinstance(BadReduction("x"), OutsideModel)
