"""Presented value rings.

``Mot`` models the ring generated by ball volumes ``O[g]`` (open ball of
radius g), ``C[g]`` (closed ball) and ``e = O[0]*C[0]`` with ``e`` inverted.
Imposed relations: ``O[g]*C[-g] = e`` and radius shifting between factors
(``O[a]*C[b] = O[a+d]*C[b-d]``), the latter being what the two iterated
integrals of ``exp(t^-k x y)`` over a box give.  ``CElem`` is the group ring
of VF/M over ``Mot``.  Equality is equality of normal forms, which is sound
but not claimed to be complete.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DivideByZero
from .valfield import VF, ZERO, as_gamma, fmt_rational, theta


def _merge(pairs: Iterable[tuple]) -> dict:
    out: dict = {}
    for g, k in pairs:
        g = as_gamma(g)
        out[g] = out.get(g, 0) + k
    return {g: k for g, k in out.items() if k != 0}


class MotMonomial:
    """Normal-form monomial ``prod O[g]^a * prod C[g]^b * e^k``."""

    __slots__ = ("o", "c", "e", "_hash")

    def __init__(self, o: Mapping = (), c: Mapping = (), e: int = 0):
        o = _merge(o.items() if isinstance(o, Mapping) else o)
        c = _merge(c.items() if isinstance(c, Mapping) else c)
        if any(k < 0 for k in o.values()) or any(k < 0 for k in c.values()):
            raise ValueError("ball-volume exponents must be positive")
        o, c, e = mot_normalize(o, c, e)
        self._set(tuple(sorted(o.items())), tuple(sorted(c.items())), e)

    def _set(self, o: tuple, c: tuple, e: int) -> None:
        object.__setattr__(self, "o", o)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "_hash", hash((o, c, e)))

    def __setattr__(self, *_):
        raise AttributeError("MotMonomial is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotMonomial):
            return NotImplemented
        return self.o == other.o and self.c == other.c and self.e == other.e

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "MotMonomial") -> "MotMonomial":
        return MotMonomial(self.o + other.o, self.c + other.c, self.e + other.e)

    def is_one(self) -> bool:
        return not self.o and not self.c and self.e == 0

    def inverse(self) -> "MotMonomial":
        # O[g]^-1 = C[-g] e^-1 and C[g]^-1 = O[-g] e^-1
        o = [(-g, k) for g, k in self.c]
        c = [(-g, k) for g, k in self.o]
        shift = sum(k for _, k in self.o) + sum(k for _, k in self.c)
        return MotMonomial(o, c, -self.e - shift)

    def gammas(self) -> list:
        return [g for g, _ in self.o] + [g for g, _ in self.c]

    def key(self) -> tuple:
        return (self.e, self.o, self.c)

    def text(self) -> str:
        parts = []
        for g, k in self.o:
            parts.append(f"O[{fmt_rational(g)}]" + (f"^{k}" if k != 1 else ""))
        for g, k in self.c:
            parts.append(f"C[{fmt_rational(g)}]" + (f"^{k}" if k != 1 else ""))
        if self.e == 1:
            parts.append("e")
        elif self.e != 0:
            parts.append(f"e^{self.e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return self.text()


def rewrite_once(o: dict, c: dict, e: int, g) -> tuple:
    """Apply the rule O[g]*C[-g] -> e once at ``g`` if it is applicable."""
    g = as_gamma(g)
    if o.get(g, 0) > 0 and c.get(-g, 0) > 0:
        o = dict(o)
        c = dict(c)
        o[g] -= 1
        c[-g] -= 1
        if o[g] == 0:
            del o[g]
        if c[-g] == 0:
            del c[-g]
        return o, c, e + 1
    return o, c, e


def _spread(total, count: int) -> dict:
    """``count`` radii summing to ``total``, as equal as integrality allows."""
    total = as_gamma(total)
    q = total.numerator // (total.denominator * count)
    if total.denominator == 1:
        r = int(total) - q * count
        out = {as_gamma(q + 1): r, as_gamma(q): count - r}
    else:
        out = {as_gamma(q): count - 1}
        last = total - (count - 1) * q
        out[last] = out.get(last, 0) + 1
    return {g: k for g, k in out.items() if k}


def mot_normalize(o: Mapping, c: Mapping, e: int = 0) -> tuple:
    """Normal form of ``prod O * prod C * e^k``.

    Two relations are imposed: ``O[g]*C[-g] = e`` and invariance of a product
    under shifting radius from one factor to another (``O[a]*C[b] = O[a+d]*C[b-d]``
    and likewise for two factors of the same kind).  A monomial is then
    determined by its open-minus-closed count, its radius sum and its power of
    ``e``; the representative spreads the sum evenly over the surviving factors.
    """
    o = {as_gamma(g): k for g, k in dict(o).items() if k}
    c = {as_gamma(g): k for g, k in dict(c).items() if k}
    na, nc = sum(o.values()), sum(c.values())
    total = sum((g * k for g, k in o.items()), Fraction(0)) + sum((g * k for g, k in c.items()), Fraction(0))
    d = na - nc
    if d > 0:
        return _spread(total, d), {}, e + nc
    if d < 0:
        return {}, _spread(total, -d), e + na
    if na == 0:
        return {}, {}, e
    if total == 0:
        return {}, {}, e + na
    return {as_gamma(total): 1}, {as_gamma(0): 1}, e + na - 1


ONE_MONO = MotMonomial()


class Mot:
    """Integer combination of normal-form monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, k in items:
            if not isinstance(k, int):
                raise TypeError("coefficients of Mot are integers")
            acc[m] = acc.get(m, 0) + k
        clean = tuple(sorted(((m, k) for m, k in acc.items() if k), key=lambda mk: mk[0].key()))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", hash(clean))

    def __setattr__(self, *_):
        raise AttributeError("Mot is immutable")

    @staticmethod
    def coerce(x) -> "Mot":
        if isinstance(x, Mot):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return Mot({ONE_MONO: x}) if x else MOT_ZERO
        if isinstance(x, MotMonomial):
            return Mot({x: 1})
        raise TypeError(f"cannot coerce {x!r} to Mot")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Mot.coerce(other)
        if not isinstance(other, Mot):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "Mot":
        o = Mot.coerce(other)
        return Mot(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self) -> "Mot":
        return Mot(tuple((m, -k) for m, k in self.terms))

    def __sub__(self, other) -> "Mot":
        return self + (-Mot.coerce(other))

    def __rsub__(self, other) -> "Mot":
        return Mot.coerce(other) - self

    def __mul__(self, other) -> "Mot":
        o = Mot.coerce(other)
        return Mot(tuple((m1 * m2, k1 * k2) for m1, k1 in self.terms for m2, k2 in o.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Mot":
        if k < 0:
            return self.inverse() ** (-k)
        out = MOT_ONE
        for _ in range(k):
            out = out * self
        return out

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] in (1, -1)

    def inverse(self) -> "Mot":
        if not self.is_unit_monomial():
            raise DivideByZero(f"{self.text()} is not an invertible monomial")
        m, k = self.terms[0]
        return Mot({m.inverse(): k})

    def gammas(self) -> list:
        return [g for m, _ in self.terms for g in m.gammas()]

    def key(self) -> tuple:
        return tuple((m.key(), k) for m, k in self.terms)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, k in self.terms:
            if m.is_one():
                body = str(abs(k))
            elif abs(k) == 1:
                body = m.text()
            else:
                body = f"{abs(k)}*{m.text()}"
            parts.append(("-" if k < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Mot({self.text()})"


MOT_ZERO = Mot()
MOT_ONE = Mot({ONE_MONO: 1})


def mot_o(g) -> Mot:
    return Mot({MotMonomial(o={as_gamma(g): 1}): 1})


def mot_c(g) -> Mot:
    return Mot({MotMonomial(c={as_gamma(g): 1}): 1})


def mot_e() -> Mot:
    return Mot({MotMonomial(e=1): 1})


def mot_e_inv() -> Mot:
    return Mot({MotMonomial(e=-1): 1})


def mot_a() -> Mot:
    return mot_o(0)


def mot_b() -> Mot:
    return mot_c(0)


def mot_add(x: Mot, y: Mot) -> Mot:
    return x + y


def mot_mul(x: Mot, y: Mot) -> Mot:
    return x * y


def _omega(w) -> VF:
    return theta(VF.coerce(w))


class CElem:
    """Finitely supported map from VF/M (as truncated series) to ``Mot``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, m in items:
            w = _omega(w)
            acc[w] = acc.get(w, MOT_ZERO) + Mot.coerce(m)
        clean = tuple(sorted(((w, m) for w, m in acc.items() if m), key=lambda wm: wm[0].key()))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", hash(clean))

    def __setattr__(self, *_):
        raise AttributeError("CElem is immutable")

    @staticmethod
    def coerce(x) -> "CElem":
        if isinstance(x, CElem):
            return x
        if isinstance(x, (int, Mot, MotMonomial)):
            m = Mot.coerce(x)
            return CElem({ZERO: m}) if m else C_ZERO
        raise TypeError(f"cannot coerce {x!r} to CElem")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Mot)):
            other = CElem.coerce(other)
        if not isinstance(other, CElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "CElem":
        o = CElem.coerce(other)
        return CElem(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self) -> "CElem":
        return CElem(tuple((w, -m) for w, m in self.terms))

    def __sub__(self, other) -> "CElem":
        return self + (-CElem.coerce(other))

    def __rsub__(self, other) -> "CElem":
        return CElem.coerce(other) - self

    def __mul__(self, other) -> "CElem":
        o = CElem.coerce(other)
        return CElem(tuple((w1 + w2, m1 * m2) for w1, m1 in self.terms for w2, m2 in o.terms))

    __rmul__ = __mul__

    def shift(self, w: VF) -> "CElem":
        """Multiply by exp<w>."""
        w = _omega(w)
        if w.is_zero():
            return self
        return CElem(tuple((x + w, m) for x, m in self.terms))

    def scale(self, m: Mot) -> "CElem":
        return CElem(tuple((w, x * m) for w, x in self.terms))

    def mot_part(self) -> Mot:
        """Coefficient of exp<0>."""
        for w, m in self.terms:
            if w.is_zero():
                return m
        return MOT_ZERO

    def omegas(self) -> list:
        return [w for w, _ in self.terms]

    def key(self) -> tuple:
        return tuple((w.key(), m.key()) for w, m in self.terms)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, m in self.terms:
            if w.is_zero():
                parts.append(m.text() if len(m.terms) == 1 else f"({m.text()})")
            else:
                core = f"exp{{{w.text()}}}"
                if m == MOT_ONE:
                    parts.append(core)
                else:
                    parts.append(f"({m.text()})*{core}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CElem({self.text()})"


C_ZERO = CElem()
C_ONE = CElem({ZERO: MOT_ONE})


def cx_exp(w) -> CElem:
    return CElem({_omega(w): MOT_ONE})


def cx_mul(x: CElem, y: CElem) -> CElem:
    return x * y


def cx_add(x: CElem, y: CElem) -> CElem:
    return x + y


def mot_vol(radius, kind: str) -> Mot:
    return mot_o(radius) if kind == "open" else mot_c(radius)
