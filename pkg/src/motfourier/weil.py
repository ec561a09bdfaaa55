"""Weil representation of SL2(VF) on Schwartz functions on VF^2 with constant forms.

Generators act by

* ``s(a)``: ``(f(a x), rv(a) mu)``
* ``u(b)``: ``(nu_{b pi}(x) f(x), mu)``
* ``w``:    ``(e^-1 * F(f)(pi x), rv(-pi^-1) mu)``

with ``pi = i``.  A word ``g1 g2 ... gk`` acts as ``r(g1) o ... o r(gk)``, so the
rightmost generator is applied first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIntegralGamma, NonMonomial, NotSchwartz
from .fourier import Report, compare_fns, fourier0, guarded
from .geometry import Form
from .integrator import AffineMap, MuFn, apply_affine, convolve
from .motvalues import CElem, mot_e
from .padic import Cyc, PadicConfig, spec_c
from .probes import probe_points
from .valfield import I, RV, VF, vf_inverse, vf_rv
from .wavefn import MotFn, expchar, fn_check, fn_scale_arg

PI = VF.const(I)


def nu(b) -> MotFn:
    """Second-order character ``(x1, x2) -> exp<theta(b x1 x2)>``."""
    return expchar(Form({(0, 1): VF.coerce(b)}), 2)


@dataclass(frozen=True)
class Gen:
    name: str
    arg: VF | None = None

    def text(self) -> str:
        return self.name if self.arg is None else f"{self.name}({self.arg.text()})"


def u(b) -> Gen:
    return Gen("u", VF.coerce(b))


def s(a) -> Gen:
    a = VF.coerce(a)
    if not a.is_monomial():
        raise NonMonomial(f"s({a.text()}) needs an invertible monomial")
    return Gen("s", a)


W = Gen("w")


def word_text(word: Sequence[Gen]) -> str:
    return ",".join(g.text() for g in word)


def act(g: Gen, mf: MuFn) -> MuFn:
    if g.name == "s":
        return MuFn(fn_scale_arg(mf.fn, g.arg), vf_rv(g.arg) * mf.form)
    if g.name == "u":
        if g.arg.is_zero():
            return mf
        return MuFn(mf.fn * nu(g.arg * PI), mf.form)
    if g.name == "w":
        fhat = fourier0(mf.fn)
        out = fn_scale_arg(fhat, PI).scale(CElem.coerce(mot_e() ** -1))
        return MuFn(out, vf_rv(-vf_inverse(PI)) * mf.form)
    raise ValueError(f"unknown generator {g.name!r}")


def weil_apply(word: Sequence[Gen], mf: MuFn) -> MuFn:
    if mf.fn.arity != 2:
        raise NotSchwartz("the Weil representation acts on functions of two variables")
    if not fn_check(mf.fn).schwartz:
        raise NotSchwartz("the Weil representation acts on Schwartz functions")
    for g in reversed(list(word)):
        mf = act(g, mf)
    return mf


def inverse_word(word: Sequence[Gen]) -> list:
    """Inverse in generators: u(b)^-1 = u(-b), s(a)^-1 = s(a^-1), w^-1 = s(-1) w."""
    out = []
    for g in reversed(list(word)):
        if g.name == "u":
            out.append(u(-g.arg))
        elif g.name == "s":
            out.append(s(vf_inverse(g.arg)))
        else:
            out.extend([s(-1), W])
    return out


# ---------------------------------------------------------------------------
# relation checks


def _omega_exponents(c: CElem) -> list:
    return [g for w, _ in c.terms for g in w.exponents()]


def _measure(value: CElem, form: RV, cfg: PadicConfig) -> Cyc:
    """p-adic density of a value carried with a constant form."""
    if form.val.denominator != 1:
        raise NonIntegralGamma("form valuation must be an integer to specialize")
    return spec_c(value, cfg) * Fraction(cfg.p) ** (-int(form.val))


def specialized_agree(lhs: MuFn, rhs: MuFn, points: Iterable, primes=(5, 13)) -> bool:
    """Compare ``value * |form|_p`` at the probe points for each prime."""
    for pt in points:
        lv, rv = lhs.fn.evaluate(pt), rhs.fn.evaluate(pt)
        exps = _omega_exponents(lv) + _omega_exponents(rv)
        level = max([3] + [1 - int(g) for g in exps])
        for p in primes:
            cfg = PadicConfig(p, level)
            if _measure(lv, lhs.form, cfg) != _measure(rv, rhs.form, cfg):
                return False
    return True


def compare_mufn(name: str, lhs: MuFn, rhs: MuFn, probes: int = 20, seed: int = 0) -> Report:
    rep = compare_fns(name, lhs.fn, rhs.fn, probes, seed)
    rep.lhs = lhs.text()
    rep.rhs = rhs.text()
    if rep.ok and lhs.form == rhs.form:
        return rep
    pts = probe_points(lhs.fn + rhs.fn, 2, probes, seed)
    if _all_integral(pts) and specialized_agree(lhs, rhs, pts):
        return Report(name, lhs.text(), rhs.text(), "pass-specialized", "padic-measure",
                      {"forms": [lhs.form.text(), rhs.form.text()]})
    return Report(name, lhs.text(), rhs.text(), "fail", rep.method,
                  {"forms": [lhs.form.text(), rhs.form.text()]})


def _all_integral(points) -> bool:
    return all(g.denominator == 1 for pt in points for x in pt for g in x.exponents())


RELATIONS = ("additive", "multiplicative", "w-s", "w-squared", "w-u-w")


def relation_sides(rel: str, a: VF, b: VF) -> tuple:
    if rel == "additive":
        return [u(a), u(b)], [u(a + b)]
    if rel == "multiplicative":
        return [s(a), s(b)], [s(a * b)]
    if rel == "w-s":
        return [W, s(a)], [s(vf_inverse(a)), W]
    if rel == "w-squared":
        return [W, W], [s(-1)]
    if rel == "w-u-w":
        ai = vf_inverse(a)
        return [W, u(a), W], [s(-ai), u(-a), W, u(-ai)]
    raise ValueError(rel)


def check_relation(rel: str, mf: MuFn, a: VF, b: VF) -> Report:
    left, right = relation_sides(rel, a, b)
    name = f"{rel}[{word_text(left)} = {word_text(right)}]"
    return compare_mufn(name, weil_apply(left, mf), weil_apply(right, mf))


def check_relation_swapped(rel: str, mf: MuFn, a: VF, b: VF) -> Report:
    """Diagnostic: compare the left side with the right side pulled back by ``(x1, x2) -> (x2, x1)``.

    ``w`` pairs by the dot product while ``nu`` uses ``x1 x2``, so the two sides
    of the length-5 relation can differ by the coordinate swap.
    """
    left, right = relation_sides(rel, a, b)
    rhs = apply_affine(weil_apply(right, mf), AffineMap.permutation((1, 0)))
    name = f"{rel}-swapped[{word_text(left)} = swap o {word_text(right)}]"
    return compare_mufn(name, weil_apply(left, mf), rhs)


def check_nu_convolution(mf: MuFn, b: VF) -> Report:
    """``(F(f * nu_b)(b x), mu) = (e f^(b x) nu_{-b}(x), rv(b^-1) mu)``."""
    conv = convolve(mf.fn, nu(b))
    lhs = MuFn(fn_scale_arg(fourier0(conv), b), mf.form)
    fhat = fn_scale_arg(fourier0(mf.fn), b)
    rhs_fn = (fhat * nu(-b)).scale(CElem.coerce(mot_e()))
    rhs = MuFn(rhs_fn, vf_rv(vf_inverse(b)) * mf.form)
    return compare_mufn(f"nu-convolution[b={b.text()}]", lhs, rhs)


def verify_relations(corpus: Sequence[MuFn], params: Sequence, relations: Sequence[str] = RELATIONS,
                     pairs: bool = False) -> list:
    """Check each relation on each function and parameter.

    With ``pairs`` the two-parameter relations use every ordered pair of
    parameters; otherwise ``b`` runs over the parameter list shifted by one.
    """
    params = [VF.coerce(x) for x in params]
    reports = []
    for mf in corpus:
        for rel in relations:
            if rel == "w-squared":
                reports += guarded(rel, lambda: check_relation(rel, mf, params[0], params[0]))
                continue
            if pairs and rel in ("additive", "multiplicative"):
                grid = [(a, b) for a in params for b in params]
            else:
                grid = [(a, params[(j + 1) % len(params)]) for j, a in enumerate(params)]
            for a, b in grid:
                reports += guarded(f"{rel}[a={a.text()}, b={b.text()}]",
                                   lambda: check_relation(rel, mf, a, b))
    return reports
