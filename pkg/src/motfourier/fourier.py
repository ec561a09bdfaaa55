"""Fourier transform on VF^n, for the trivial group or a polyball subgroup H.

With ``G = H`` a polyball around 0 the transform is
``F_H(f) = vol(H)^-1 * F_0(f) * chi_{H_*}`` and functions on the dual group
``H_*`` are transformed by ``g -> F_0(g * chi_{H_*})``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import (
    HypothesisFailed, NonMonomial, NotBounded, NotHInvariant, NotIntegrable, Unsupported, UnsupportedPhase,
)
from .geometry import CLOSED, INF, OPEN, Form, Polyball, annihilator, make_constraint
from .integrator import convolve, integrate, integrate_vars
from .motvalues import MOT_ONE, CElem, Mot, mot_e, mot_vol
from .probes import probe_points, random_in_ball
from .valfield import VF
from .wavefn import (
    MotFn, chi, fn_check, fn_embed, fn_reflect,
)


@dataclass(frozen=True)
class Trivial:
    def text(self) -> str:
        return "trivial"


@dataclass(frozen=True)
class PolyballH:
    h: Polyball

    def __post_init__(self):
        annihilator(self.h)

    def text(self) -> str:
        return self.h.text()


TRIVIAL = Trivial()


def group_volume(cfg, n: int) -> Mot:
    if isinstance(cfg, Trivial):
        return MOT_ONE
    vol = MOT_ONE
    for b in cfg.h.balls:
        vol = vol * mot_vol(b.radius, b.kind)
    return vol


def dual_indicator(cfg, n: int) -> MotFn | None:
    if isinstance(cfg, Trivial):
        return None
    return chi(annihilator(cfg.h))


def _require_ib(f: MotFn) -> None:
    if not fn_check(f).bounded:
        raise NotBounded("the Fourier transform needs an integrable function with bounded support")


@lru_cache(maxsize=4096)
def fourier0(f: MotFn) -> MotFn:
    """``y -> integral of f(x) exp<theta(x . y)>``, computed by integration."""
    _require_ib(f)
    n = f.arity
    fx = fn_embed(f, 2 * n, [n + i for i in range(n)])
    pairing = Form({(i, n + i): 1 for i in range(n)})
    h = fx * MotFn.from_parts(2 * n, [((), pairing, 1)])
    return integrate_vars(h, [n + i for i in range(n)])


def fourier0_closed(f: MotFn) -> MotFn:
    """Packetwise closed form; only for packets that split by coordinate.

    Each coordinate factor ``chi_{B(a, r)}(x) exp<theta(b x)>`` maps to
    ``vol(B) * chi[y + b in dual B(0, r)] * exp<theta(a (y + b))>``.
    """
    _require_ib(f)
    n = f.arity
    parts = []
    for p in f.packets:
        if any(len(k) != 1 for k, _ in p.phase.terms):
            raise Unsupported("closed form needs a linear phase")
        balls = {}
        for c in p.constraints:
            b = c.as_ball()
            if b is None or b[0] in balls or b[2] == INF:
                raise Unsupported("closed form needs one ball per coordinate")
            balls[b[0]] = b[1:]
        if len(balls) != n:
            raise NotBounded("unbounded coordinate")
        coeff = p.coeff
        cs = []
        phase = Form()
        for i in range(n):
            a, r, kind = balls[i]
            b = p.phase.coeff(i)
            coeff = coeff.scale(mot_vol(r, kind))
            dual = CLOSED if kind == OPEN else OPEN
            cs.append(make_constraint(Form.var(i) + b, -r, dual))
            phase = phase + (Form.var(i) + b).scale(a)
        parts.append((cs, phase, coeff))
    return MotFn.from_parts(n, parts)


def check_h_invariant(f: MotFn, h: Polyball, count: int = 12, seed: int = 7) -> None:
    import random

    rng = random.Random(seed)
    for pt in probe_points(f, f.arity, count, seed):
        shift = tuple(random_in_ball(rng, b) for b in h.balls)
        moved = tuple(x + s for x, s in zip(pt, shift))
        if f.evaluate(pt) != f.evaluate(moved):
            raise NotHInvariant(f"f is not invariant under {h.text()}")


def fourier(f: MotFn, cfg=TRIVIAL) -> MotFn:
    if isinstance(cfg, Trivial):
        return fourier0(f)
    if cfg.h.arity != f.arity:
        raise Unsupported("subgroup arity differs from the function arity")
    check_h_invariant(f, cfg.h)
    out = fourier0(f) * dual_indicator(cfg, f.arity)
    return out.scale(CElem.coerce(group_volume(cfg, f.arity).inverse()))


def fourier_dual(g: MotFn, cfg=TRIVIAL) -> MotFn:
    """Transform of a function living on the dual group."""
    chi_dual = dual_indicator(cfg, g.arity)
    return fourier0(g if chi_dual is None else g * chi_dual)


def convolve_g(f: MotFn, g: MotFn, cfg=TRIVIAL) -> MotFn:
    if isinstance(cfg, Trivial):
        return convolve(f, g)
    return convolve(f, g).scale(CElem.coerce(group_volume(cfg, f.arity).inverse()))


def e_pow(n: int) -> CElem:
    return CElem.coerce(mot_e() ** n)


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class Report:
    identity: str
    lhs: str
    rhs: str
    status: str
    method: str = "normal-form"
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        out = {"identity": self.identity, "lhs": self.lhs, "rhs": self.rhs,
               "status": self.status, "method": self.method}
        if self.detail:
            out["detail"] = self.detail
        return out


def compare_fns(name: str, lhs: MotFn, rhs: MotFn, probes: int = 20, seed: int = 0) -> Report:
    """Normal-form comparison, falling back to pointwise probes."""
    if lhs == rhs:
        return Report(name, lhs.text(), rhs.text(), "pass")
    pts = probe_points(lhs + rhs, lhs.arity, probes, seed)
    bad = [pt for pt in pts if lhs.evaluate(pt) != rhs.evaluate(pt)]
    status = "fail" if bad else "pass"
    detail = {"mismatches": len(bad)} if bad else {}
    return Report(name, lhs.text(), rhs.text(), status, "probe", detail)


# errors that mean "outside the packet class", not "identity false"
OUT_OF_CLASS = (UnsupportedPhase, NonMonomial, NotIntegrable)


def guarded(name: str, thunk) -> list:
    """Run a check; a model limitation becomes one ``unsupported`` report."""
    try:
        out = thunk()
    except OUT_OF_CLASS as exc:
        return [Report(name, "", "", "unsupported", "none", {"error": type(exc).__name__, "message": str(exc)})]
    return out if isinstance(out, list) else [out]


def compare_values(name: str, lhs: CElem, rhs: CElem) -> Report:
    return Report(name, lhs.text(), rhs.text(), "pass" if lhs == rhs else "fail")


def check_inversion(f: MotFn, cfg=TRIVIAL) -> Report:
    n = f.arity
    g = fourier(f, cfg)
    _require_ib(g)
    lhs = fn_reflect(fourier_dual(g, cfg))
    factor = e_pow(n) * CElem.coerce(group_volume(cfg, n).inverse())
    rhs = f.scale(factor)
    return compare_fns("inversion", lhs, rhs)


def check_convolution(f: MotFn, g: MotFn, cfg=TRIVIAL) -> Report:
    lhs = fourier(convolve_g(f, g, cfg), cfg)
    rhs = fourier(f, cfg) * fourier(g, cfg)
    return compare_fns("convolution", lhs, rhs)


def check_plancherel(f: MotFn, g: MotFn, cfg=TRIVIAL) -> list:
    n = f.arity
    vol_inv = CElem.coerce(group_volume(cfg, n).inverse())
    lhs = e_pow(n) * vol_inv * vol_inv * integrate(f * g)
    prod = fourier(f, cfg) * fourier(fn_reflect(g), cfg)
    chi_dual = dual_indicator(cfg, n)
    if chi_dual is not None:
        prod = prod * chi_dual
    rhs = integrate(prod)
    out = [compare_values("plancherel", lhs, rhs)]
    if isinstance(cfg, Trivial):
        out.append(compare_values("plancherel-symmetric", integrate(fourier0(f) * g),
                                  integrate(f * fourier0(g))))
    return out


def check_product_convolution(f: MotFn, g: MotFn) -> Report:
    n = f.arity
    lhs = fourier0(f * g)
    rhs = convolve(fourier0(f), fourier0(g)).scale(CElem.coerce(mot_e() ** (-n)))
    return compare_fns("product-convolution", lhs, rhs)


def poisson_g(f: MotFn, h: Polyball) -> MotFn:
    """``y -> integral over x in H of f(x + y)``."""
    n = f.arity
    images = [Form.var(i) + Form.var(n + i) for i in range(n)]
    from .wavefn import fn_substitute

    shifted = fn_substitute(f, images, 2 * n)
    hx = fn_embed(chi(h), 2 * n, [n + i for i in range(n)])
    return integrate_vars(shifted * hx, [n + i for i in range(n)])


def check_poisson(f: MotFn, h: Polyball) -> list:
    n = f.arity
    if h.arity != n:
        raise Unsupported("subgroup arity differs from the function arity")
    cfg = PolyballH(h)
    if not fn_check(f).bounded:
        raise HypothesisFailed("precondition 1: f is not in IB")
    g = poisson_g(f, h)
    if not fn_check(g).bounded:
        raise HypothesisFailed("precondition 2: g is not in IB")
    try:
        gh = fourier(g, cfg)
    except NotHInvariant as exc:
        raise HypothesisFailed(f"precondition 3: {exc}") from exc
    if not fn_check(gh).bounded:
        raise HypothesisFailed("precondition 3: F_H(g) is not in IB")
    factor = e_pow(n) * CElem.coerce(group_volume(cfg, n).inverse())
    lhs = factor * integrate(f * chi(h))
    rhs = integrate(fourier0(f) * chi(annihilator(h)))
    at_zero = factor * g.evaluate([VF() for _ in range(n)])
    return [compare_values("poisson", lhs, rhs), compare_values("poisson-g0", at_zero, rhs)]


def fourier_suite(named: Sequence[tuple], partners: int = 2) -> list:
    """Inversion for every function, and the pair identities against the next
    ``partners`` functions of the same arity (cyclically, self included)."""
    reports = []
    by_arity: dict = {}
    for name, f in named:
        by_arity.setdefault(f.arity, []).append((name, f))
    for n in sorted(by_arity):
        fs = by_arity[n]
        for j, (name, f) in enumerate(fs):
            for r in guarded("inversion", lambda: check_inversion(f)):
                r.detail = {**r.detail, "f": name}
                reports.append(r)
            for d in range(min(partners + 1, len(fs))):
                gname, g = fs[(j + d) % len(fs)]
                checks = [
                    ("convolution", lambda: check_convolution(f, g)),
                    ("product-convolution", lambda: check_product_convolution(f, g)),
                    ("plancherel", lambda: check_plancherel(f, g)),
                ]
                for label, thunk in checks:
                    for r in guarded(label, thunk):
                        r.detail = {**r.detail, "f": name, "g": gname}
                        reports.append(r)
    return reports
