"""Wave packets and the function class ``MotFn``.

A packet is ``coeff * exp<theta(Q(x))> * [x satisfies every constraint]``
with ``Q`` of degree at most 2 and no squares.  Packets are kept in a
canonical form so that equal functions usually print identically; see
:func:`canonical_packet`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArityMismatch, NonMonomial, NotSchwartz, UnsupportedPhase
from .geometry import (
    CLOSED, INF, Ball, Form, Polyball, ball_constraint, intersect_same_linear, point_constraint,
    valuation_bounds,
)
from .motvalues import C_ONE, C_ZERO, CElem
from .valfield import VF, ZERO, theta


def _high_part(c: VF, bound, strict: bool) -> VF:
    """Terms of ``c`` with exponent > bound (strict) or >= bound."""
    if strict:
        return VF(tuple((g, x) for g, x in c.terms if g > bound))
    return VF(tuple((g, x) for g, x in c.terms if g >= bound))


@dataclass(frozen=True)
class Packet:
    arity: int
    constraints: tuple
    phase: Form
    coeff: CElem

    def key(self) -> tuple:
        return (tuple(c.key() for c in self.constraints), self.phase.key(), self.coeff.key())

    def holds(self, point: Sequence) -> bool:
        return all(c.holds(point) for c in self.constraints)

    def evaluate(self, point: Sequence) -> CElem:
        if not self.holds(point):
            return C_ZERO
        return self.coeff.shift(theta(self.phase.evaluate(point)))

    def text(self, names: Sequence[str] | None = None) -> str:
        sup = " & ".join(c.text(names) for c in self.constraints) or "all"
        return f"packet({sup}; {self.phase.text(names)}; {self.coeff.text()})"


def _merge_constraints(raw: Iterable) -> tuple | None:
    by_linear: dict = {}
    for c in raw:
        if c is True:
            continue
        if c is False:
            return None
        lin = c.linear
        if lin in by_linear:
            merged = intersect_same_linear(by_linear[lin], c)
            if merged is False:
                return None
            by_linear[lin] = merged
        else:
            by_linear[lin] = c
    return tuple(sorted(by_linear.values(), key=lambda c: c.key()))


def _reduce_phase(constraints: tuple, phase: Form, n: int) -> Form:
    """Drop the parts of the phase that lie in M on the support."""
    balls = {}
    for c in constraints:
        b = c.as_ball()
        if b is not None:
            balls[b[0]] = b[1:]
    if not balls:
        return phase
    bounds = None
    terms = dict(phase.terms)
    for key in sorted(k for k in terms if len(k) == 2):
        q = terms.get(key)
        if q is None:
            continue
        for i, j in (key, key[::-1]):
            if i not in balls:
                continue
            if bounds is None:
                bounds = valuation_bounds(constraints, n)
            aj = bounds[j]
            if aj is None:
                continue
            a, r, kind = balls[i]
            high = _high_part(q, -r - aj, strict=(kind == CLOSED))
            if high.is_zero():
                continue
            q = q - high
            terms[(j,)] = terms.get((j,), ZERO) + high * a
            break
        terms[key] = q
    for i, (a, r, kind) in balls.items():
        b = terms.get((i,))
        if b is None:
            continue
        high = _high_part(b, -r, strict=(kind == CLOSED))
        if high.is_zero():
            continue
        terms[(i,)] = b - high
        terms[()] = terms.get((), ZERO) + high * a
    return Form(terms)


def canonical_packet(n: int, constraints: Iterable, phase: Form, coeff) -> Packet | None:
    coeff = CElem.coerce(coeff)
    if coeff.is_zero():
        return None
    cs = _merge_constraints(constraints)
    if cs is None:
        return None
    phase = Form.coerce(phase)
    if phase.has_squares():
        raise UnsupportedPhase("square terms in a phase are not supported")
    for k, _ in phase.terms:
        if any(i >= n for i in k):
            raise ArityMismatch("phase uses a variable beyond the arity")
    for c in cs:
        if any(i >= n for i in c.variables()):
            raise ArityMismatch("constraint uses a variable beyond the arity")
    phase = _reduce_phase(cs, phase, n)
    const = phase.constant
    if not const.is_zero():
        coeff = coeff.shift(theta(const))
        phase = phase.without_constant()
    if coeff.is_zero():
        return None
    return Packet(n, cs, phase, coeff)


class MotFn:
    """Finite sum of canonical packets with a common arity."""

    __slots__ = ("arity", "packets", "_hash")

    def __init__(self, arity: int, packets: Iterable[Packet] = ()):
        merged: dict = {}
        order = []
        for p in packets:
            if p is None:
                continue
            if p.arity != arity:
                raise ArityMismatch(f"packet of arity {p.arity} in a function of arity {arity}")
            key = (p.constraints, p.phase)
            if key in merged:
                merged[key] = merged[key] + p.coeff
            else:
                merged[key] = p.coeff
                order.append(key)
        out = [Packet(arity, k[0], k[1], merged[k]) for k in order if merged[k]]
        out.sort(key=lambda p: p.key())
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "packets", tuple(out))
        object.__setattr__(self, "_hash", hash(self.packets))

    def __setattr__(self, *_):
        raise AttributeError("MotFn is immutable")

    @staticmethod
    def from_parts(n: int, parts: Iterable[tuple]) -> "MotFn":
        """Build from ``(constraints, phase, coeff)`` triples."""
        return MotFn(n, [canonical_packet(n, cs, ph, cf) for cs, ph, cf in parts])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotFn):
            return NotImplemented
        return self.arity == other.arity and self.packets == other.packets

    def __hash__(self) -> int:
        return self._hash

    def is_zero(self) -> bool:
        return not self.packets

    def __add__(self, other: "MotFn") -> "MotFn":
        _same_arity(self, other)
        return MotFn(self.arity, self.packets + other.packets)

    def __neg__(self) -> "MotFn":
        return self.scale(CElem.coerce(-1))

    def __sub__(self, other: "MotFn") -> "MotFn":
        return self + (-other)

    def __mul__(self, other) -> "MotFn":
        if isinstance(other, MotFn):
            return fn_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "MotFn":
        c = CElem.coerce(c)
        return MotFn.from_parts(self.arity, ((p.constraints, p.phase, p.coeff * c) for p in self.packets))

    def evaluate(self, point: Sequence) -> CElem:
        if len(point) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(point)}")
        point = [VF.coerce(x) for x in point]
        out = C_ZERO
        for p in self.packets:
            out = out + p.evaluate(point)
        return out

    def key(self) -> tuple:
        return (self.arity, tuple(p.key() for p in self.packets))

    def text(self, names: Sequence[str] | None = None) -> str:
        if not self.packets:
            return f"zero({self.arity})"
        return " + ".join(p.text(names) for p in self.packets)

    def __repr__(self) -> str:
        return f"MotFn[{self.arity}]({self.text()})"


def _same_arity(f: MotFn, g: MotFn) -> None:
    if f.arity != g.arity:
        raise ArityMismatch(f"arity {f.arity} vs {g.arity}")


def zero_fn(n: int) -> MotFn:
    return MotFn(n)


def one_fn(n: int) -> MotFn:
    return MotFn.from_parts(n, [((), Form(), C_ONE)])


def chi(p: Polyball | Ball, coeff=1) -> MotFn:
    if isinstance(p, Ball):
        p = Polyball([p])
    cs = [ball_constraint(i, b) for i, b in enumerate(p.balls)]
    return MotFn.from_parts(p.arity, [(cs, Form(), coeff)])


def expchar(phase: Form, n: int, coeff=1) -> MotFn:
    return MotFn.from_parts(n, [((), phase, coeff)])


def exp_b(bs: Sequence) -> MotFn:
    """``x -> exp<theta(b . x)>`` on all of VF^n."""
    phase = Form({(i,): VF.coerce(b) for i, b in enumerate(bs)})
    return expchar(phase, len(bs))


def identity_fn(n: int) -> MotFn:
    """Indicator of the origin, the unit for convolution."""
    return MotFn.from_parts(n, [([point_constraint(i) for i in range(n)], Form(), C_ONE)])


def fn_eval(f: MotFn, point: Sequence) -> CElem:
    return f.evaluate(point)


def fn_add(f: MotFn, g: MotFn) -> MotFn:
    return f + g


def fn_mul(f: MotFn, g: MotFn) -> MotFn:
    _same_arity(f, g)
    parts = []
    for p in f.packets:
        for q in g.packets:
            parts.append((p.constraints + q.constraints, p.phase + q.phase, p.coeff * q.coeff))
    return MotFn.from_parts(f.arity, parts)


def packet_reduce(p: Packet) -> Packet | None:
    return canonical_packet(p.arity, p.constraints, p.phase, p.coeff)


def fn_substitute(f: MotFn, images: Sequence[Form], n: int) -> MotFn:
    """``x -> f(images(x))`` where ``images[i]`` is an affine form in ``n`` variables."""
    if len(images) != f.arity:
        raise ArityMismatch("one image per variable is required")
    parts = []
    for p in f.packets:
        cs = [c.substitute(images) for c in p.constraints]
        parts.append((cs, p.phase.substitute(images), p.coeff))
    return MotFn.from_parts(n, parts)


def fn_embed(f: MotFn, n: int, positions: Sequence[int]) -> MotFn:
    """View ``f`` as a function of ``n`` variables, old variable i sitting at ``positions[i]``."""
    return fn_substitute(f, [Form.var(j) for j in positions], n)


def fn_translate(f: MotFn, shift: Sequence) -> MotFn:
    images = [Form.var(i) + VF.coerce(c) for i, c in enumerate(shift)]
    return fn_substitute(f, images, f.arity)


def fn_scale_arg(f: MotFn, a) -> MotFn:
    """``x -> f(a x)`` for a monomial ``a``."""
    a = VF.coerce(a)
    if not a.is_monomial():
        raise NonMonomial(f"cannot scale by non-monomial {a.text()}")
    return fn_substitute(f, [Form.var(i, a) for i in range(f.arity)], f.arity)


def fn_reflect(f: MotFn) -> MotFn:
    return fn_scale_arg(f, -1)


def packet_bounds(p: Packet) -> list:
    return valuation_bounds(p.constraints, p.arity)


@dataclass(frozen=True)
class FnFlags:
    bounded: bool
    integrable: bool
    almost_integrable: bool
    schwartz: bool

    def as_dict(self) -> dict:
        return {"bounded": self.bounded, "integrable": self.integrable,
                "almost_integrable": self.almost_integrable, "schwartz": self.schwartz}


def fn_check(f: MotFn) -> FnFlags:
    bounded = True
    points = False
    for p in f.packets:
        try:
            b = packet_bounds(p)
        except NonMonomial:
            b = [None]
        if any(x is None for x in b):
            bounded = False
        if any(c.radius == INF for c in p.constraints):
            points = True
    return FnFlags(bounded=bounded, integrable=bounded, almost_integrable=True,
                   schwartz=bounded and not points)


def iota_bound(f: MotFn):
    """A radius beta such that ``f`` is constant on every ball ``o(a, beta)``."""
    if f.is_zero():
        return 0
    if not fn_check(f).schwartz:
        raise NotSchwartz("iota_bound needs a Schwartz function")
    best = None
    for p in f.packets:
        bounds = packet_bounds(p)
        cands = []
        for c in p.constraints:
            cands.append(c.radius - min(m.val() for k, m in c.form.terms if k))
        for k, q in p.phase.terms:
            if len(k) == 1:
                cands.append(-q.val())
            elif len(k) == 2:
                lo = min(bounds[k[0]], bounds[k[1]])
                if lo == INF:
                    continue
                cands.append(-q.val() - lo)
                cands.append(-q.val() / 2)
        for x in cands:
            if x != INF and (best is None or x > best):
                best = x
    return 0 if best is None else best


def support_hull(f: MotFn) -> list:
    """Per-coordinate valuation lower bounds over all packets (``None`` if unbounded)."""
    out: list = [INF] * f.arity
    for p in f.packets:
        b = packet_bounds(p)
        for i, x in enumerate(b):
            if out[i] is None:
                continue
            out[i] = None if x is None else min(out[i], x)
    return out
