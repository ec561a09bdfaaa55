from __future__ import annotations

import os

from hypothesis import HealthCheck, settings, strategies as st

from motfourier.geometry import Form, Polyball, cball, oball
from motfourier.motvalues import mot_c, mot_o
from motfourier.valfield import QI, VF, t_pow
from motfourier.wavefn import chi, expchar

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=int(os.environ.get("MF_EXAMPLES", "30")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


small_int = st.integers(-3, 3).filter(lambda k: k != 0)
gammas = st.integers(-2, 2)


@st.composite
def vfs(draw, lo: int = -2, hi: int = 2, max_terms: int = 2):
    k = draw(st.integers(0, max_terms))
    terms = [(draw(st.integers(lo, hi)), QI(draw(small_int), draw(st.integers(-1, 1)))) for _ in range(k)]
    return VF(terms)


@st.composite
def monomials(draw, lo: int = -2, hi: int = 2):
    return VF.mono(QI(draw(small_int), 0), draw(st.integers(lo, hi)))


@st.composite
def balls(draw, radii=gammas):
    center = draw(st.sampled_from([VF(), VF.const(1), t_pow(1), t_pow(-1), VF.const(2) + t_pow(1)]))
    r = draw(radii)
    return oball(center, r) if draw(st.booleans()) else cball(center, r)


@st.composite
def packet_fns(draw, arity: int = 1, bilinear: bool = True, radii=gammas, freq_lo: int = -2):
    """Sums of one or two Schwartz packets with integer radii."""
    out = None
    for _ in range(draw(st.integers(1, 2))):
        bs = [draw(balls(radii)) for _ in range(arity)]
        phase = Form()
        for i in range(arity):
            if draw(st.booleans()):
                phase = phase + Form.var(i, t_pow(draw(st.integers(freq_lo, 0))))
        if arity == 2 and bilinear and draw(st.booleans()):
            phase = phase + Form({(0, 1): t_pow(draw(st.integers(-1, 0)))})
        coeff = draw(st.sampled_from([1, 2, -1]))
        f = chi(Polyball(bs), coeff) * expchar(phase, arity)
        out = f if out is None else out + f
    return out


def mot_monomials():
    return st.builds(lambda ks, g: mot_o(g) if ks else mot_c(g), st.booleans(), gammas)
