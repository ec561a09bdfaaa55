"""Newton polygons, limit sets of algebraic families, and Jacobians."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import CannotSplit, NonSquare, ZeroPolynomial
from .valfield import INF, QI, VF, vf_inverse


class VFPoly:
    """Polynomial in ``nvars`` variables with series coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            c = VF.coerce(c)
            if not c.is_zero():
                clean[tuple(k)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("VFPoly is immutable")

    @staticmethod
    def const(c, nvars: int) -> "VFPoly":
        return VFPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def var(i: int, nvars: int) -> "VFPoly":
        k = [0] * nvars
        k[i] = 1
        return VFPoly(nvars, {tuple(k): 1})

    def coerce(self, other) -> "VFPoly":
        if isinstance(other, VFPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return VFPoly.const(other, self.nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, VFPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(sorted((k, c.key()) for k, c in self.terms.items()))))

    def __add__(self, other) -> "VFPoly":
        other = self.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return VFPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "VFPoly":
        return VFPoly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "VFPoly":
        return self + (-self.coerce(other))

    def __rsub__(self, other) -> "VFPoly":
        return self.coerce(other) - self

    def __mul__(self, other) -> "VFPoly":
        other = self.coerce(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out[k] + c1 * c2 if k in out else c1 * c2
        return VFPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "VFPoly":
        if n < 0:
            raise ValueError("negative powers of polynomials")
        out = VFPoly.const(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def degree_in(self, i: int) -> int:
        return max((k[i] for k in self.terms), default=-1)

    def evaluate(self, point: Sequence) -> VF:
        out = VF()
        for k, c in self.terms.items():
            term = c
            for x, e in zip(point, k):
                for _ in range(e):
                    term = term * VF.coerce(x)
            out = out + term
        return out

    def compose(self, images: Sequence["VFPoly"]) -> "VFPoly":
        """Substitute ``images[i]`` for variable ``i``."""
        m = images[0].nvars
        out = VFPoly(m)
        for k, c in self.terms.items():
            term = VFPoly.const(c, m)
            for img, e in zip(images, k):
                term = term * img ** e
            out = out + term
        return out

    def partial(self, i: int) -> "VFPoly":
        out = {}
        for k, c in self.terms.items():
            if k[i]:
                k2 = list(k)
                k2[i] -= 1
                out[tuple(k2)] = c * k[i]
        return VFPoly(self.nvars, out)

    def coefficients_in(self, i: int) -> dict:
        """``{j: coefficient of var_i^j}`` as polynomials in the same variables."""
        out: dict = {}
        for k, c in self.terms.items():
            k2 = list(k)
            j = k2[i]
            k2[i] = 0
            out.setdefault(j, {})[tuple(k2)] = c
        return {j: VFPoly(self.nvars, t) for j, t in out.items()}

    def text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            vs = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e)
            coef = c.text()
            if len(c.terms) > 1:
                coef = f"({coef})"
            if not vs:
                parts.append(coef)
            elif c == VF.const(1):
                parts.append(vs)
            else:
                parts.append(f"{coef}*{vs}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"VFPoly({self.text()})"


# ---------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class Segment:
    start: tuple
    end: tuple

    @property
    def length(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def slope(self) -> Fraction:
        return (self.end[1] - self.start[1]) / self.length

    @property
    def root_valuation(self) -> Fraction:
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    zero_roots: int = 0

    @property
    def segments(self) -> tuple:
        return tuple(Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def root_valuations(self) -> list:
        """Root valuations with multiplicity; the root 0 counts as ``INF``."""
        out = [INF] * self.zero_roots
        for s in self.segments:
            out += [s.root_valuation] * s.length
        return sorted(out)

    def as_dict(self) -> dict:
        return {
            "vertices": [[d, str(v)] for d, v in self.vertices],
            "segments": [{"slope": str(s.slope), "length": s.length} for s in self.segments],
            "zero_roots": self.zero_roots,
        }


def _lower_hull(points: list) -> list:
    hull: list = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(coeffs: Sequence) -> NewtonPolygon:
    """Polygon of ``sum coeffs[j] y^j`` from the points ``(j, v(coeffs[j]))``."""
    pts = [(j, VF.coerce(c).val()) for j, c in enumerate(coeffs) if not VF.coerce(c).is_zero()]
    if not pts:
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    return NewtonPolygon(tuple(_lower_hull(pts)), pts[0][0])


def newton_polygon_of(p: VFPoly, var: int = 0) -> NewtonPolygon:
    if any(e for k in p.terms for i, e in enumerate(k) if i != var):
        raise ValueError("the polynomial must be univariate")
    deg = p.degree_in(var)
    coeffs = [VF()] * (deg + 1)
    for k, c in p.terms.items():
        coeffs[k[var]] = c
    return newton_polygon(coeffs)


# ---------------------------------------------------------------------------
# limit sets


@dataclass(frozen=True)
class Escape:
    reason: str

    def as_dict(self) -> dict:
        return {"kind": "escape", "reason": self.reason}


@dataclass(frozen=True)
class Limits:
    values: tuple
    note: str = "candidate set: contains the minimal limit set"

    def as_dict(self) -> dict:
        return {"kind": "limits", "values": [v.text() for v in self.values], "note": self.note}


def reduced_part(g: VFPoly) -> tuple:
    """``g = y^m x^k g*``: returns ``(m, k, g*)`` for ``g`` in ``(x, y)``."""
    if g.is_zero():
        raise ZeroPolynomial("limit sets of the zero polynomial are undefined")
    k = min(key[0] for key in g.terms)
    m = min(key[1] for key in g.terms)
    return m, k, VFPoly(2, {(a - k, b - m): c for (a, b), c in g.terms.items()})


def at_zero(gstar: VFPoly) -> list:
    """Coefficients of ``g*(0, y)`` in increasing degree."""
    deg = gstar.degree_in(1)
    out = [VF()] * (deg + 1)
    for (a, b), c in gstar.terms.items():
        if a == 0:
            out[b] = c
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def limit_set(g: VFPoly):
    """Behaviour of the roots ``y`` of ``g(x, y) = 0`` as ``x -> 0``.

    For small ``v(x)`` large, the roots of ``g*(x, .)`` split into those near
    the roots of ``g*(0, .)`` and those whose valuation tends to ``-inf``; the
    latter exist exactly when ``g*(0, y)`` has lower degree than ``g*``.
    """
    if g.nvars != 2:
        raise ValueError("limit sets need a polynomial in (x, y)")
    m, _, gstar = reduced_part(g)
    n = gstar.degree_in(1)
    base = at_zero(gstar)
    bounded = len(base) - 1 if not (len(base) == 1 and base[0].is_zero()) else -1
    if n > 0 and bounded < n:
        return Escape(f"{n - bounded} root(s) with valuation tending to -inf")
    values = list(split_roots(base)) if n > 0 else []
    if m > 0:
        values.append(VF())
    uniq = []
    for v in values:
        if v not in uniq:
            uniq.append(v)
    return Limits(tuple(sorted(uniq, key=lambda v: v.key())))


def split_roots(coeffs: Sequence) -> list:
    """Distinct roots of ``sum coeffs[j] y^j`` among finite series over Q(i).

    Exponents are cleared to a polynomial in ``s = t^(1/D)``, factored over
    Q(i)[s, y]; every factor must be linear in ``y`` with a monomial leading
    coefficient, otherwise ``CannotSplit``.
    """
    import sympy

    coeffs = [VF.coerce(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    exps = [g for c in coeffs for g in c.exponents()]
    # Puiseux roots need exponent denominators dividing lcm(1..degree)
    den = lcm(*[Fraction(g).denominator for g in exps], *range(1, len(coeffs))) if exps else 1
    low = min(exps) if exps else 0
    s, y = sympy.symbols("s y")

    def to_sym(c: VF):
        return sum(
            (sympy.Rational(q.re.numerator, q.re.denominator) + sympy.I * sympy.Rational(q.im.numerator, q.im.denominator))
            * s ** int((g - low) * den)
            for g, q in c.terms
        )

    poly = sum(to_sym(c) * y ** j for j, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.expand(poly), s, y, gaussian=True)
    roots = []
    for fac, _mult in factors:
        p = sympy.Poly(fac, y)
        if p.degree() == 0:
            continue
        if p.degree() > 1:
            raise CannotSplit(f"irreducible factor {fac} of degree {p.degree()} in y")
        a, b = p.all_coeffs()
        roots.append(_from_sym(-b, s, den) * _monomial_inverse(_from_sym(a, s, den)))
    out = []
    for r in roots:
        if r not in out:
            out.append(r)
    return sorted(out, key=lambda v: v.key())


def _from_sym(expr, s, den: int) -> VF:
    import sympy

    p = sympy.Poly(sympy.expand(expr), s)
    terms = []
    for (e,), c in p.terms():
        re, im = sympy.re(c), sympy.im(c)
        terms.append((Fraction(int(e), den), QI(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))))
    return VF(terms)


def _monomial_inverse(a: VF) -> VF:
    if not a.is_monomial():
        raise CannotSplit(f"root has non-monomial denominator {a.text()}")
    return vf_inverse(a)


def check_limit_values(g: VFPoly, result) -> bool:
    """Every listed value is a root of ``g*(0, y)`` (or 0 when ``y`` divides ``g``)."""
    if not isinstance(result, Limits):
        return True
    m, _, gstar = reduced_part(g)
    base = at_zero(gstar)
    for v in result.values:
        val = VF()
        for j, c in enumerate(base):
            val = val + c * _vf_pow(v, j)
        if not val.is_zero() and not (m > 0 and v.is_zero()):
            return False
    return True


def _vf_pow(x: VF, n: int) -> VF:
    out = VF.const(1)
    for _ in range(n):
        out = out * x
    return out


# ---------------------------------------------------------------------------
# derivatives


def derivative(fmap: Sequence[VFPoly], point: Sequence) -> list:
    """Matrix ``[d f_i / d x_j](point)``."""
    return [[f.partial(j).evaluate(point) for j in range(f.nvars)] for f in fmap]


def determinant(mat: Sequence[Sequence[VF]]) -> VF:
    n = len(mat)
    if n == 0:
        return VF.const(1)
    if n == 1:
        return mat[0][0]
    out = VF()
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * determinant(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def jacobian(fmap: Sequence[VFPoly], point: Sequence) -> VF:
    if not fmap or any(f.nvars != len(fmap) for f in fmap):
        raise NonSquare("the Jacobian needs as many components as variables")
    return determinant(derivative(fmap, point))


def matmul(a: Sequence[Sequence[VF]], b: Sequence[Sequence[VF]]) -> list:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), VF()) for j in range(len(b[0]))]
            for i in range(len(a))]


def check_chain_rule(g: Sequence[VFPoly], f: Sequence[VFPoly], point: Sequence) -> bool:
    """``d(g o f)`` at ``a`` equals ``dg`` at ``f(a)`` times ``df`` at ``a``."""
    comp = [gi.compose(list(f)) for gi in g]
    lhs = derivative(comp, point)
    fa = [fi.evaluate(point) for fi in f]
    return lhs == matmul(derivative(g, fa), derivative(f, point))
