"""Finite Hahn series over the Gaussian rationals.

The valued field is modelled by finite sums ``sum c_g t^g`` with ``c_g`` in
Q(i) and rational exponents ``g``.  Values live in Q together with ``INF``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DivideByZero, NonMonomial, OutsideModel

INF = float("inf")

Gamma = Union[Fraction, float]
Rational = Union[int, Fraction]


def as_gamma(x) -> Gamma:
    if isinstance(x, float):
        if x == INF:
            return INF
        raise OutsideModel(f"value-group element must be rational, got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        if x in ("inf", "oo", "∞"):
            return INF
        return Fraction(x)
    raise OutsideModel(f"value-group element must be rational, got {x!r}")


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_gamma(g: Gamma) -> str:
    return "inf" if g == INF else fmt_rational(g)


class QI:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise OutsideModel("coefficients must be exact rationals")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *_):
        raise AttributeError("QI is immutable")

    @staticmethod
    def coerce(x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return QI(x)
        if isinstance(x, complex):
            raise OutsideModel("floating complex numbers are outside Q(i)")
        raise OutsideModel(f"cannot use {x!r} as a Gaussian rational")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, QI):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other) -> "QI":
        o = QI.coerce(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __sub__(self, other) -> "QI":
        return self + (-QI.coerce(other))

    def __rsub__(self, other) -> "QI":
        return QI.coerce(other) - self

    def __mul__(self, other) -> "QI":
        o = QI.coerce(other)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def inverse(self) -> "QI":
        n = self.norm()
        if n == 0:
            raise DivideByZero("division by zero in Q(i)")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "QI":
        return self * QI.coerce(other).inverse()

    def __rtruediv__(self, other) -> "QI":
        return QI.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "QI":
        if k < 0:
            return self.inverse() ** (-k)
        out = QI(1)
        for _ in range(k):
            out = out * self
        return out

    def key(self) -> tuple:
        return (self.re, self.im)

    def text(self) -> str:
        """Canonical text; bare rationals for real values, ``(a+bi)`` otherwise."""
        if self.im == 0:
            s = fmt_rational(self.re)
            return s if self.re.denominator == 1 and self.re >= 0 else f"({s})"
        sign = "+" if self.im >= 0 else "-"
        return f"({fmt_rational(self.re)}{sign}{fmt_rational(abs(self.im))}i)"

    def __repr__(self) -> str:
        return f"QI({self.text()})"


I = QI(0, 1)


class VF:
    """Element of the series field; ``terms`` is sorted by exponent."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple] = ()):
        acc: dict[Fraction, QI] = {}
        for g, c in terms:
            g = as_gamma(g)
            if g == INF:
                raise OutsideModel("exponent must be finite")
            c = QI.coerce(c)
            acc[g] = acc.get(g, QI(0)) + c
        items = tuple(sorted((g, c) for g, c in acc.items() if not c.is_zero()))
        object.__setattr__(self, "terms", items)
        object.__setattr__(self, "_hash", hash(items))

    def __setattr__(self, *_):
        raise AttributeError("VF is immutable")

    @staticmethod
    def _raw(items: tuple) -> "VF":
        obj = object.__new__(VF)
        object.__setattr__(obj, "terms", items)
        object.__setattr__(obj, "_hash", hash(items))
        return obj

    @staticmethod
    def const(c) -> "VF":
        return VF(((0, c),))

    @staticmethod
    def mono(c, g) -> "VF":
        return VF(((g, c),))

    @staticmethod
    def coerce(x) -> "VF":
        if isinstance(x, VF):
            return x
        return VF.const(QI.coerce(x))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QI)):
            other = VF.coerce(other)
        if not isinstance(other, VF):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "VF":
        o = VF.coerce(other)
        if not o.terms:
            return self
        if not self.terms:
            return o
        return VF(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self) -> "VF":
        return VF._raw(tuple((g, -c) for g, c in self.terms))

    def __sub__(self, other) -> "VF":
        return self + (-VF.coerce(other))

    def __rsub__(self, other) -> "VF":
        return VF.coerce(other) - self

    def __mul__(self, other) -> "VF":
        o = VF.coerce(other)
        if not self.terms or not o.terms:
            return ZERO
        return VF((g1 + g2, c1 * c2) for g1, c1 in self.terms for g2, c2 in o.terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "VF":
        if k < 0:
            return vf_inverse(self) ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other) -> "VF":
        return self * vf_inverse(VF.coerce(other))

    def val(self) -> Gamma:
        return self.terms[0][0] if self.terms else INF

    def lead(self) -> QI:
        if not self.terms:
            raise DivideByZero("zero has no leading coefficient")
        return self.terms[0][1]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coeff(self, g) -> QI:
        g = as_gamma(g)
        for e, c in self.terms:
            if e == g:
                return c
        return QI(0)

    def scale(self, c) -> "VF":
        c = QI.coerce(c)
        if c.is_zero():
            return ZERO
        return VF._raw(tuple((g, x * c) for g, x in self.terms))

    def shift(self, g) -> "VF":
        g = as_gamma(g)
        return VF._raw(tuple((e + g, c) for e, c in self.terms))

    def truncate_below(self, bound: Gamma, strict: bool) -> "VF":
        """Keep terms with exponent < bound (or <= bound when ``strict`` is False)."""
        if strict:
            return VF._raw(tuple((g, c) for g, c in self.terms if g < bound))
        return VF._raw(tuple((g, c) for g, c in self.terms if g <= bound))

    def max_exponent(self) -> Gamma:
        return self.terms[-1][0] if self.terms else -INF

    def exponents(self) -> list:
        return [g for g, _ in self.terms]

    def key(self) -> tuple:
        return tuple((g, c.re, c.im) for g, c in self.terms)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g, c in self.terms:
            if g == 0:
                parts.append(c.text())
            else:
                parts.append(f"{c.text()}*t^{fmt_exponent(g)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"VF({self.text()})"

    def __str__(self) -> str:
        return self.text()


def fmt_exponent(g: Fraction) -> str:
    if g.denominator == 1:
        return str(g.numerator)
    return f"({fmt_rational(g)})"


ZERO = VF()
ONE = VF.const(1)
T = VF.mono(1, 1)
PI = VF.const(I)


def t_pow(g) -> VF:
    return VF.mono(1, g)


def vf_add(x: VF, y: VF) -> VF:
    return x + y


def vf_mul(x: VF, y: VF) -> VF:
    return x * y


def vf_neg(x: VF) -> VF:
    return -x


def vf_val(x) -> Gamma:
    """Valuation of an element, or the componentwise minimum for a tuple."""
    if isinstance(x, VF):
        return x.val()
    vals = [VF.coerce(c).val() for c in x]
    return min(vals) if vals else INF


def vf_inverse(x: VF) -> VF:
    if x.is_zero():
        raise DivideByZero("cannot invert 0")
    if not x.is_monomial():
        raise NonMonomial(f"cannot invert non-monomial {x.text()}")
    g, c = x.terms[0]
    return VF._raw(((-g, c.inverse()),))


def vf_inverse_mod(x: VF, precision: Gamma) -> VF:
    """Inverse of ``x`` correct for all exponents <= ``precision``.

    The tail beyond ``precision`` is dropped, so the result is exact modulo
    the ideal of elements with valuation > ``precision``.
    """
    if x.is_zero():
        raise DivideByZero("cannot invert 0")
    lead = VF._raw((x.terms[0],))
    lead_inv = vf_inverse(lead)
    if x.is_monomial():
        return lead_inv.truncate_below(precision, strict=False)
    eps = (x * lead_inv) - ONE
    bound = precision + x.val()
    out = ONE
    power = ONE
    while True:
        power = (power * (-eps)).truncate_below(bound, strict=False)
        if power.is_zero():
            break
        out = out + power
    return (out * lead_inv).truncate_below(precision, strict=False)


def theta(x: VF) -> VF:
    """Image in VF/M: drop every term of positive exponent."""
    return x.truncate_below(Fraction(0), strict=False)


class RV:
    """Leading-term class: ``None`` coefficient encodes rv(0)."""

    __slots__ = ("coef", "val")

    def __init__(self, coef, val=0):
        if coef is None:
            object.__setattr__(self, "coef", None)
            object.__setattr__(self, "val", INF)
            return
        c = QI.coerce(coef)
        if c.is_zero():
            object.__setattr__(self, "coef", None)
            object.__setattr__(self, "val", INF)
            return
        object.__setattr__(self, "coef", c)
        object.__setattr__(self, "val", as_gamma(val))

    def __setattr__(self, *_):
        raise AttributeError("RV is immutable")

    def is_infinite(self) -> bool:
        return self.coef is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RV):
            return NotImplemented
        return self.coef == other.coef and self.val == other.val

    def __hash__(self) -> int:
        return hash((self.coef, self.val))

    def __mul__(self, other: "RV") -> "RV":
        if self.coef is None or other.coef is None:
            return RV(None)
        return RV(self.coef * other.coef, self.val + other.val)

    def inverse(self) -> "RV":
        if self.coef is None:
            raise DivideByZero("rv(0) is not invertible")
        return RV(self.coef.inverse(), -self.val)

    def to_vf(self) -> VF:
        if self.coef is None:
            return ZERO
        return VF.mono(self.coef, self.val)

    def text(self) -> str:
        if self.coef is None:
            return "rv(0)"
        return f"rv({self.to_vf().text()})"

    def __repr__(self) -> str:
        return self.text()


RV_ONE = RV(1, 0)


def vf_rv(x: VF) -> RV:
    if x.is_zero():
        return RV(None)
    g, c = x.terms[0]
    return RV(c, g)


def gamma_key(g: Gamma) -> tuple:
    return (1, 0) if g == INF else (0, g)


def vf_tuple(xs: Sequence) -> tuple:
    return tuple(VF.coerce(x) for x in xs)
