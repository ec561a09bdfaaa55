"""Specialization to Q_p and a brute-force oracle over cosets of p^L Z_p^n.

The additive character is ``psi(x) = exp(2 pi i frac_p(x / p))``, trivial on
pZ_p and not on Z_p.  Values are exact elements of a cyclotomic field,
stored as rational combinations of roots of unity of p-power order.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import BadReduction, InsufficientLevel, Mismatch, NonIntegralGamma, NotIntegrable, OutsideModel
from .geometry import INF, OPEN
from .motvalues import CElem, Mot
from .valfield import QI, VF
from .wavefn import MotFn, Packet, packet_bounds

_PREC = 40


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def sqrt_minus_one(p: int, digits: int) -> int:
    """Hensel lift of the smallest root of x^2 + 1 mod p to precision p^digits."""
    u = next(x for x in range(1, p) if (x * x + 1) % p == 0)
    mod = p
    while mod < p ** digits:
        mod = min(mod * mod, p ** digits)
        u = (u - (u * u + 1) * pow(2 * u, -1, mod)) % mod
    return u


@dataclass(frozen=True)
class PadicConfig:
    p: int
    level: int = 3
    i_lift: int = field(init=False)

    def __post_init__(self):
        if not _is_prime(self.p) or self.p % 4 != 1:
            raise OutsideModel(f"p = {self.p} must be a prime congruent to 1 mod 4")
        if self.level < 1:
            raise OutsideModel("the level must be positive")
        object.__setattr__(self, "i_lift", sqrt_minus_one(self.p, _PREC))

    @property
    def modulus(self) -> int:
        return self.p ** _PREC


def _int_gamma(g) -> int:
    if g == INF:
        raise NonIntegralGamma("infinite radius")
    g = Fraction(g)
    if g.denominator != 1:
        raise NonIntegralGamma(f"exponent {g} is not an integer")
    return int(g)


def _rational_mod(q: Fraction, cfg: PadicConfig) -> int:
    if q.denominator % cfg.p == 0:
        raise OutsideModel(f"coefficient {q} is not a {cfg.p}-adic integer")
    m = cfg.modulus
    return (q.numerator * pow(q.denominator, -1, m)) % m


def coef_mod(c: QI, cfg: PadicConfig) -> int:
    """Image of a Gaussian rational in Z/p^PREC with i mapped to the chosen root."""
    return (_rational_mod(c.re, cfg) + _rational_mod(c.im, cfg) * cfg.i_lift) % cfg.modulus


# ---------------------------------------------------------------------------
# exact cyclotomic values


class Cyc:
    """Rational combination of roots of unity ``exp(2 pi i a)``, ``a`` in [0, 1).

    The representation uses the basis of Q(zeta_{p^K}) whose exponents have
    top base-p digit at most p - 2, so equality is dict equality.
    """

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping | None = None):
        self.p = p
        self.terms = _canonical(p, dict(terms or {}))

    @staticmethod
    def const(p: int, q) -> "Cyc":
        return Cyc(p, {Fraction(0): Fraction(q)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "Cyc") -> "Cyc":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return Cyc(self.p, out)

    def __neg__(self) -> "Cyc":
        return Cyc(self.p, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "Cyc") -> "Cyc":
        return self + (-other)

    def __mul__(self, other) -> "Cyc":
        if not isinstance(other, Cyc):
            q = Fraction(other)
            return Cyc(self.p, {a: c * q for a, c in self.terms.items()})
        out: dict = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                a = (a1 + a2) % 1
                out[a] = out.get(a, 0) + c1 * c2
        return Cyc(self.p, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def to_complex(self) -> complex:
        total = 0j
        for a, c in sorted(self.terms.items()):
            total += float(c) * cmath.exp(2j * math.pi * float(a))
        return total

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*z({a})" for a, c in sorted(self.terms.items()))

    def as_dict(self) -> dict:
        return {str(a): str(c) for a, c in sorted(self.terms.items())}


def _canonical(p: int, terms: dict) -> dict:
    terms = {Fraction(a) % 1: Fraction(c) for a, c in terms.items() if c}
    level = 0
    for a in terms:
        d = a.denominator
        k = 0
        while d % p == 0:
            d //= p
            k += 1
        if d != 1:
            raise OutsideModel("roots of unity must have p-power order")
        level = max(level, k)
    if level == 0:
        return {a: c for a, c in terms.items() if c}
    n = p ** level
    step = p ** (level - 1)
    out: dict = {}
    for a, c in terms.items():
        m = int(a * n)
        if m // step == p - 1:
            r = m - (p - 1) * step
            for j in range(p - 1):
                key = Fraction(r + j * step, n)
                out[key] = out.get(key, 0) - c
        else:
            out[a] = out.get(a, 0) + c
    return {a: c for a, c in out.items() if c}


# ---------------------------------------------------------------------------
# specialization


def spec_monomial_exponent(mono) -> int:
    """Exponent of p in the image of a Mot monomial."""
    e = -mono.e
    for g, k in mono.o:
        e += k * (-_int_gamma(g) - 1)
    for g, k in mono.c:
        e += k * (-_int_gamma(g))
    return e


def spec_mot(m: Mot, cfg: PadicConfig) -> Fraction:
    out = Fraction(0)
    for mono, k in m.terms:
        out += k * Fraction(cfg.p) ** spec_monomial_exponent(mono)
    return out


def psi_angle(omega: VF, cfg: PadicConfig) -> Fraction:
    """Angle of psi at the lift of ``omega`` (exponents must be >= 1 - level)."""
    p, k = cfg.p, cfg.level
    if omega.is_zero():
        return Fraction(0)
    low = min(_int_gamma(g) for g in omega.exponents())
    if low < 1 - k:
        raise InsufficientLevel(f"exponent {low} needs level >= {1 - low}, have {k}")
    mod = p ** k
    total = 0
    for g, c in omega.terms:
        g = _int_gamma(g)
        if g > 0:
            continue
        total += coef_mod(c, cfg) * p ** (g - 1 + k)
    return Fraction(total % mod, mod)


def spec_c(x: CElem, cfg: PadicConfig) -> Cyc:
    out: dict = {}
    for omega, m in x.terms:
        a = psi_angle(omega, cfg)
        out[a] = out.get(a, 0) + spec_mot(m, cfg)
    return Cyc(cfg.p, out)


# ---------------------------------------------------------------------------
# brute-force integration


def _coordinate_betas(p: Packet, bounds: list) -> list:
    """Per-coordinate radius beyond which the summand no longer changes."""
    n = p.arity
    betas: list = [None] * n

    def bump(i, x):
        if betas[i] is None or x > betas[i]:
            betas[i] = x

    for c in p.constraints:
        for k, m in c.form.terms:
            if k:
                bump(k[0], c.radius - m.val())
    for k, q in p.phase.terms:
        if len(k) == 1:
            bump(k[0], -q.val())
        elif len(k) == 2:
            bump(k[0], -q.val() - bounds[k[1]])
            bump(k[1], -q.val() - bounds[k[0]])
    return betas


def _max_valuation_window(pk: Packet, lows: list) -> tuple:
    """``(shift, width)``: every term has valuation >= -shift; ``width`` digits suffice."""
    low_term = 0
    need = 1
    forms = [pk.phase] + [c.form for c in pk.constraints]
    for form in forms:
        for key, c in form.terms:
            v = _int_gamma(c.val()) + sum(lows[i] for i in key)
            low_term = min(low_term, v)
    for c in pk.constraints:
        r = _int_gamma(c.radius)
        need = max(need, r + 1 if c.kind == OPEN else r)
    shift = -low_term
    return shift, shift + need


class _Arith:
    """Arithmetic on residues mod p^width, with int64 arrays when they fit."""

    def __init__(self, p: int, width: int):
        self.mod = p ** max(width, 1)
        self.fast = self.mod < 3_000_000_000

    def array(self, values):
        if self.fast:
            return np.asarray(values, dtype=np.int64) % self.mod
        return np.asarray(values, dtype=object) % self.mod

    def mul(self, a, b):
        return (a * b) % self.mod


def _form_residues(form, ms: list, lows: list, shift: int, cfg: PadicConfig, ar: _Arith, size: int):
    """Residues of ``form(x) * p^shift`` with ``x_i = p^lows[i] * ms[i]``."""
    p = cfg.p
    total = ar.array(np.zeros(size, dtype=np.int64))

    for key, c in form.terms:
        coef = 0
        for g, q in c.terms:
            e = _int_gamma(g) + sum(lows[i] for i in key) + shift
            coef += coef_mod(q, cfg) * p ** e
        term = np.full(size, coef % ar.mod, dtype=np.int64 if ar.fast else object)
        for i in key:
            term = ar.mul(term, ms[i])
        total = (total + term) % ar.mod
    return total


def check_reduction(pk: Packet, cfg: PadicConfig) -> None:
    """Raise BadReduction if some form coefficient gains valuation at ``cfg.p``."""
    for form in [pk.phase] + [c.form for c in pk.constraints]:
        for key, c in form.terms:
            if not c.is_zero() and coef_mod(c.lead(), cfg) % cfg.p == 0:
                raise BadReduction(f"leading coefficient {c.lead()} of {c.text()} vanishes mod {cfg.p}")


def _packet_sum(pk: Packet, cfg: PadicConfig, max_cosets: int) -> Cyc:
    n = pk.arity
    p = cfg.p
    check_reduction(pk, cfg)
    bounds = packet_bounds(pk)
    if any(b is None for b in bounds):
        raise NotIntegrable("unbounded support")
    if any(b == INF for b in bounds):
        return Cyc(p)
    lows = [math.ceil(b) for b in bounds]
    betas = _coordinate_betas(pk, bounds)
    fine = [lows[i] if betas[i] is None else max(lows[i], math.floor(betas[i]) + 1) for i in range(n)]
    sizes = [p ** (fine[i] - lows[i]) for i in range(n)]
    count = math.prod(sizes)
    if count > max_cosets:
        raise InsufficientLevel(f"{count} cosets exceed the budget of {max_cosets}")
    shift, width = _max_valuation_window(pk, lows)
    ar = _Arith(p, width)
    grids = np.indices(sizes).reshape(n, -1)
    ms = [ar.array(grids[i]) for i in range(n)]
    mask = np.ones(count, dtype=bool)
    for c in pk.constraints:
        r = _int_gamma(c.radius)
        power = (r + 1 if c.kind == OPEN else r) + shift
        if power <= 0:
            continue
        vals = _form_residues(c.form, ms, lows, shift, cfg, ar, count)
        mask &= np.asarray(vals % p ** power == 0, dtype=bool)
    denom = p ** (shift + 1)
    phase = _form_residues(pk.phase, ms, lows, shift, cfg, ar, count) % denom
    nums, counts = np.unique(phase[mask], return_counts=True)
    terms: dict = {}
    for num, cnt in zip(nums, counts):
        a = Fraction(int(num), denom)
        if a.denominator > p ** cfg.level:
            raise InsufficientLevel(f"character of conductor {a.denominator} exceeds level {cfg.level}")
        terms[a] = terms.get(a, 0) + int(cnt)
    vol = Fraction(p) ** (-sum(fine))
    return Cyc(p, terms) * vol * spec_c(pk.coeff, cfg)


def numeric_integral(f: MotFn, cfg: PadicConfig, max_cosets: int = 6_000_000) -> Cyc:
    out = Cyc(cfg.p)
    for pk in f.packets:
        out = out + _packet_sum(pk, cfg, max_cosets)
    return out


def oracle_check(symbolic: CElem, f: MotFn, cfg: PadicConfig, raise_on_mismatch: bool = False) -> dict:
    s = spec_c(symbolic, cfg)
    num = numeric_integral(f, cfg)
    err = abs(s.to_complex() - num.to_complex())
    status = "pass" if s == num else "fail"
    report = {"p": cfg.p, "level": cfg.level, "symbolic": s.as_dict(), "numeric": num.as_dict(),
              "abs_error": float(f"{err:.3e}"), "status": status}
    if status != "pass" and raise_on_mismatch:
        raise Mismatch(f"symbolic {s.text()} vs numeric {num.text()}")
    return report


def psi_value(x: VF, cfg: PadicConfig) -> Cyc:
    """psi at the lift of an arbitrary element (positive exponents vanish)."""
    from .valfield import theta

    return Cyc(cfg.p, {psi_angle(theta(x), cfg): 1})
