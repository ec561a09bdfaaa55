"""Named test functions, written in the script language."""
from __future__ import annotations

from functools import lru_cache

from .dsl import eval_expr
from .integrator import MuFn
from .valfield import VF, I, t_pow
from .wavefn import fn_check

SCHWARTZ = (
    ("O", "chi(cball(0, 0))"),
    ("M", "chi(oball(0, 0))"),
    ("o1", "chi(oball(0, 1))"),
    ("c-1", "chi(cball(0, -1))"),
    ("c-2", "chi(cball(0, -2))"),
    ("o-2", "chi(oball(0, -2))"),
    ("disc1", "chi(oball(1, 0))"),
    ("c-1@t-1", "chi(cball(t^-1, -1))"),
    ("o1@t", "chi(oball(t, 1))"),
    ("O.exp", "chi(cball(0, 0)) * expchar(t^-1 * x1)"),
    ("c-1.exp", "chi(cball(0, -1)) * expchar(x1)"),
    ("M.exp2", "chi(oball(0, 0)) * expchar(t^-2 * x1)"),
    ("c1.exp2", "chi(cball(0, 1)) * expchar(t^-2 * x1)"),
    ("units", "chi(cball(0, 0)) - chi(oball(0, 0))"),
    ("two-balls", "chi(cball(0, -1)) + 2 * chi(oball(i, 0))"),
    ("O1.O", "O[1] * chi(cball(0, 0))"),
    ("O.coef", "chi(cball(0, 0), exp{t^-1})"),
    ("c-1@1.exp", "chi(cball(1, -1)) * expchar(t^-1 * x1)"),
    ("einv.o1", "e^-1 * chi(oball(0, 1))"),
    ("o1@2.exp", "chi(oball(2 + t, 1)) * expchar((t^-1 + 1) * x1)"),
    ("O2", "chi(cball(0, 0) × cball(0, 0))"),
    ("M2", "chi(oball(0, 0) × oball(0, 0))"),
    ("shifted.exp", "chi(oball(0, 1) × cball(1, -1)) * expchar(t^-1 * x1 + x2)"),
    ("OM.bilin", "chi(cball(0, 0) × oball(0, 0)) * expchar(t^-1 * x1 * x2)"),
    ("O2.nu", "chi(cball(0, 0) × cball(0, 0)) * nu(t^-1)"),
    ("c-1M", "chi(cball(0, -1) × oball(0, 0))"),
    ("c-1O.exp", "chi(cball(t^-1, -1) × cball(0, 0)) * expchar(x1 + t^-1 * x2)"),
    ("strip", "packet(in(x1 - x2, oball(0, 0)) & in(x2, cball(0, 0)); 0; 1)"),
    ("slant.exp", "packet(in(x1 + t * x2, cball(0, 0)) & in(x2, cball(0, -1)); t^-1 * x1; 1)"),
    ("o1o1.bilin", "chi(oball(0, 1) × oball(0, 1)) * expchar(t^-2 * x1 * x2)"),
    ("O2-M2", "chi(cball(0, 0) × cball(0, 0)) - chi(oball(0, 0) × oball(0, 0))"),
    ("O0.Oi", "O[0] * chi(cball(0, 0) × oball(i, 0))"),
    ("Oc-1.bilin", "chi(cball(1, 0) × cball(0, -1)) * expchar(x1 * x2)"),
)

ARITY3 = (
    ("OOM.mixed", "chi(cball(0, 0) × cball(0, 0) × oball(0, 0)) * expchar(t^-1 * x1 * x2 + x3)"),
    ("chain3", "packet(in(x1 - x3, oball(0, 0)) & in(x2, cball(0, 0)) & in(x3, cball(0, -1)); x1 * x2; 1)"),
    ("o-1OO.bilin", "chi(oball(0, -1) × cball(0, 0) × cball(0, 0)) * expchar(x1 * x3 + t^-1 * x2 * x3)"),
)

# almost integrable but with unbounded support
UNBOUNDED = (
    ("exp1", "expchar(t^-1 * x1)"),
    ("one1", "one(1)"),
    ("exp-O", "expchar(x1) - chi(cball(0, 0))"),
)

DISTRIBUTIONS = (
    ("reg.O", "regular(chi(cball(0, 0)))"),
    ("reg.exp", "regular(expchar(t^-1 * x1))"),
    ("four.o1", "fourier(regular(chi(oball(0, 1))))"),
    ("four.exp", "fourier(regular(chi(cball(0, -1)) * expchar(t^-1 * x1)))"),
    ("conv.MO", "conv(regular(chi(oball(0, 0))), regular(chi(cball(0, 0))))"),
    ("conv.Mexp", "conv(regular(chi(oball(0, 0))), regular(expchar(t^-1 * x1)))"),
    ("tensor.Oexp", "tensor(regular(chi(cball(0, 0))), regular(expchar(x1)))"),
    ("four.tensor", "fourier(tensor(regular(chi(oball(0, 0))), regular(chi(cball(1, -1)))))"),
)

WEIL_PARAMS = tuple(
    [t_pow(k) for k in range(-2, 3)] + [VF.const(I) * t_pow(k) for k in range(-2, 3)]
)


@lru_cache(maxsize=None)
def _load(name_text: tuple) -> tuple:
    return tuple((name, eval_expr(text)) for name, text in name_text)


def schwartz(arity: int | None = None) -> list:
    """``(name, fn)`` pairs of Schwartz functions, optionally of one arity."""
    out = list(_load(SCHWARTZ)) + list(_load(ARITY3))
    return [(n, f) for n, f in out if arity is None or f.arity == arity]


def unbounded() -> list:
    return list(_load(UNBOUNDED))


def distributions() -> list:
    return list(_load(DISTRIBUTIONS))


def weil_corpus() -> list:
    return [(n, MuFn(f)) for n, f in schwartz(2)]


def check_corpus() -> list:
    """Names of corpus entries whose flags contradict their section."""
    bad = [n for n, f in schwartz() if not fn_check(f).schwartz]
    bad += [n for n, f in unbounded() if fn_check(f).bounded]
    return bad
