"""Balls, polyballs, low-degree forms and the ball constraints built from them."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NonMonomial, NotCenteredAtZero, OutsideModel
from .valfield import INF, VF, ZERO, as_gamma, fmt_rational, vf_inverse

OPEN = "open"
CLOSED = "closed"


def _kind(kind: str) -> str:
    if kind in ("open", "o"):
        return OPEN
    if kind in ("closed", "c"):
        return CLOSED
    raise ValueError(f"unknown ball kind {kind!r}")


def dual_kind(kind: str) -> str:
    return CLOSED if kind == OPEN else OPEN


def in_radius(v, radius, kind: str) -> bool:
    """Membership test ``v > radius`` (open) or ``v >= radius`` (closed)."""
    return v > radius if kind == OPEN else v >= radius


class Ball:
    """``o(a, r) = {v(x - a) > r}`` or ``c(a, r) = {v(x - a) >= r}``.

    The center is kept as given; use :func:`ball_relation` for set equality.
    """

    __slots__ = ("center", "radius", "kind")

    def __init__(self, center, radius, kind: str):
        r = as_gamma(radius)
        if r == INF:
            raise OutsideModel("balls of radius inf are points and are not supports")
        object.__setattr__(self, "center", VF.coerce(center))
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "kind", _kind(kind))

    def __setattr__(self, *_):
        raise AttributeError("Ball is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ball):
            return NotImplemented
        return (self.center, self.radius, self.kind) == (other.center, other.radius, other.kind)

    def __hash__(self) -> int:
        return hash((self.center, self.radius, self.kind))

    def contains(self, x) -> bool:
        return in_radius((VF.coerce(x) - self.center).val(), self.radius, self.kind)

    def size_key(self) -> tuple:
        """Larger key means a smaller ball."""
        return (self.radius, 1 if self.kind == OPEN else 0)

    def dual(self) -> "Ball":
        return Ball(self.center, -self.radius, dual_kind(self.kind))

    def text(self) -> str:
        name = "oball" if self.kind == OPEN else "cball"
        return f"{name}({self.center.text()}, {fmt_rational(self.radius)})"

    def __repr__(self) -> str:
        return self.text()


def oball(center, radius) -> Ball:
    return Ball(center, radius, OPEN)


def cball(center, radius) -> Ball:
    return Ball(center, radius, CLOSED)


def dual_ball(b: Ball) -> Ball:
    return b.dual()


EQUAL = "equal"
FIRST_IN_SECOND = "first_in_second"
SECOND_IN_FIRST = "second_in_first"
DISJOINT = "disjoint"


def ball_relation(b1: Ball, b2: Ball) -> str:
    k1, k2 = b1.size_key(), b2.size_key()
    if k1 >= k2:
        if not b2.contains(b1.center):
            return DISJOINT
        return EQUAL if k1 == k2 else FIRST_IN_SECOND
    if not b1.contains(b2.center):
        return DISJOINT
    return SECOND_IN_FIRST


class Polyball:
    """Product of one ball per coordinate."""

    __slots__ = ("balls",)

    def __init__(self, balls: Iterable[Ball]):
        object.__setattr__(self, "balls", tuple(balls))

    def __setattr__(self, *_):
        raise AttributeError("Polyball is immutable")

    @property
    def arity(self) -> int:
        return len(self.balls)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyball) and self.balls == other.balls

    def __hash__(self) -> int:
        return hash(self.balls)

    def __iter__(self):
        return iter(self.balls)

    def contains(self, xs: Sequence) -> bool:
        return len(xs) == self.arity and all(b.contains(x) for b, x in zip(self.balls, xs))

    def dual(self) -> "Polyball":
        return Polyball(b.dual() for b in self.balls)

    def text(self) -> str:
        return " × ".join(b.text() for b in self.balls)

    def __repr__(self) -> str:
        return self.text()


def dual_polyball(p: Polyball) -> Polyball:
    return p.dual()


def annihilator(h: Polyball) -> Polyball:
    for b in h.balls:
        if not b.center.is_zero():
            raise NotCenteredAtZero(f"{b.text()} is not a subgroup")
    return h.dual()


# ---------------------------------------------------------------------------
# forms of degree <= 2


def _key(vars_: Iterable[int]) -> tuple:
    return tuple(sorted(vars_))


class Form:
    """Polynomial of degree <= 2 with VF coefficients.

    Monomials are keyed by sorted index tuples: ``()`` is the constant,
    ``(i,)`` is ``x_i`` and ``(i, j)`` is ``x_i x_j`` (``i == j`` is a square).
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            k = _key(k)
            if len(k) > 2:
                raise OutsideModel("forms have degree at most 2")
            acc[k] = acc.get(k, ZERO) + VF.coerce(c)
        clean = tuple(sorted(((k, c) for k, c in acc.items() if not c.is_zero()),
                             key=lambda kc: (len(kc[0]), kc[0])))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", hash(clean))

    def __setattr__(self, *_):
        raise AttributeError("Form is immutable")

    @staticmethod
    def const(c) -> "Form":
        return Form({(): VF.coerce(c)})

    @staticmethod
    def var(i: int, c=1) -> "Form":
        return Form({(i,): VF.coerce(c)})

    @staticmethod
    def coerce(x) -> "Form":
        if isinstance(x, Form):
            return x
        return Form.const(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, *idx) -> VF:
        k = _key(idx)
        for key, c in self.terms:
            if key == k:
                return c
        return ZERO

    @property
    def constant(self) -> VF:
        return self.coeff()

    def degree(self) -> int:
        return max((len(k) for k, _ in self.terms), default=0)

    def variables(self) -> set:
        return {i for k, _ in self.terms for i in k}

    def involves(self, i: int) -> bool:
        return any(i in k for k, _ in self.terms)

    def linear_vars(self) -> list:
        return sorted(k[0] for k, _ in self.terms if len(k) == 1)

    def has_squares(self) -> bool:
        return any(len(k) == 2 and k[0] == k[1] for k, _ in self.terms)

    def __add__(self, other) -> "Form":
        o = Form.coerce(other)
        return Form(self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other) -> "Form":
        return self + (-Form.coerce(other))

    def __rsub__(self, other) -> "Form":
        return Form.coerce(other) - self

    def scale(self, c) -> "Form":
        c = VF.coerce(c)
        return Form(tuple((k, v * c) for k, v in self.terms))

    def __mul__(self, other) -> "Form":
        if not isinstance(other, Form):
            return self.scale(other)
        out = []
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                out.append((k1 + k2, c1 * c2))
        return Form(out)

    __rmul__ = __mul__

    def without_constant(self) -> "Form":
        return Form(tuple((k, c) for k, c in self.terms if k))

    def constant_form(self) -> "Form":
        return Form.const(self.constant)

    def split(self, i: int) -> tuple:
        """Return ``(rest, L)`` with ``self = rest + x_i * L`` and ``rest`` free of x_i.

        Raises ``ValueError`` when the form has an ``x_i^2`` term.
        """
        rest, lin = [], []
        for k, c in self.terms:
            if i not in k:
                rest.append((k, c))
            elif k == (i, i):
                raise ValueError("square term")
            else:
                other = tuple(j for j in k if j != i) if len(k) == 2 else ()
                lin.append((other, c))
        return Form(rest), Form(lin)

    def substitute(self, images: Sequence["Form"]) -> "Form":
        """Replace ``x_i`` by ``images[i]``."""
        out = Form()
        for k, c in self.terms:
            term = Form.const(c)
            for i in k:
                term = term * images[i]
            out = out + term
        return out

    def reindex(self, mapping: Mapping[int, int]) -> "Form":
        return Form(tuple((tuple(mapping[i] for i in k), c) for k, c in self.terms))

    def evaluate(self, point: Sequence) -> VF:
        out = ZERO
        for k, c in self.terms:
            term = c
            for i in k:
                term = term * VF.coerce(point[i])
            out = out + term
        return out

    def key(self) -> tuple:
        return tuple((k, c.key()) for k, c in self.terms)

    def text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            vs = "*".join(_name(i, names) for i in k)
            if not vs:
                parts.append(f"({c.text()})" if len(c.terms) > 1 else c.text())
            elif c == VF.const(1):
                parts.append(vs)
            else:
                coef = c.text()
                if len(c.terms) > 1:
                    coef = f"({coef})"
                parts.append(f"{coef}*{vs}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Form({self.text()})"


def _name(i: int, names) -> str:
    return names[i] if names else f"x{i + 1}"


def form_lower_val(form: Form, bounds: Sequence) -> object:
    """Lower bound for v(form) given per-variable valuation lower bounds.

    Returns ``None`` when a needed bound is missing.
    """
    best = INF
    for k, c in form.terms:
        v = c.val()
        for i in k:
            if bounds[i] is None:
                return None
            v = v + bounds[i]
        best = min(best, v)
    return best


# ---------------------------------------------------------------------------
# constraints


class Constraint:
    """The condition ``form(x) in B(0, radius, kind)`` for an affine form.

    Constructed through :func:`make_constraint`, which returns ``True`` or
    ``False`` for constraints without variables.
    """

    __slots__ = ("form", "radius", "kind", "_hash")

    def __init__(self, form: Form, radius, kind: str):
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "radius", as_gamma(radius))
        object.__setattr__(self, "kind", _kind(kind))
        object.__setattr__(self, "_hash", hash((form, self.radius, self.kind)))

    def __setattr__(self, *_):
        raise AttributeError("Constraint is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Constraint):
            return NotImplemented
        return (self.form, self.radius, self.kind) == (other.form, other.radius, other.kind)

    def __hash__(self) -> int:
        return self._hash

    @property
    def target(self) -> Ball:
        return Ball(ZERO, self.radius, self.kind)

    @property
    def linear(self) -> Form:
        return self.form.without_constant()

    def variables(self) -> set:
        return self.form.variables()

    def involves(self, i: int) -> bool:
        return self.form.involves(i)

    def single_var(self) -> int | None:
        vs = self.variables()
        return next(iter(vs)) if len(vs) == 1 else None

    def is_point(self) -> bool:
        return self.radius == INF

    def as_ball(self) -> tuple | None:
        """``(i, center, radius, kind)`` when this is ``x_i + c in B(0, r)``."""
        i = self.single_var()
        if i is None or self.form.coeff(i) != VF.const(1):
            return None
        return i, -self.form.constant, self.radius, self.kind

    def holds(self, point: Sequence) -> bool:
        return in_radius(self.form.evaluate(point).val(), self.radius, self.kind)

    def solve_for(self, i: int) -> tuple:
        """Return ``(center, radius, kind)`` with ``x_i`` in ``B(center, radius)``."""
        m = self.form.coeff(i)
        if m.is_zero():
            raise ValueError(f"constraint does not involve x{i + 1}")
        if not m.is_monomial():
            raise NonMonomial(f"cannot solve {self.text()} for x{i + 1}")
        rest = self.form - Form.var(i, m)
        inv = vf_inverse(m)
        return (-rest).scale(inv), self.radius - m.val(), self.kind

    def substitute(self, images: Sequence[Form]):
        return make_constraint(self.form.substitute(images), self.radius, self.kind)

    def reindex(self, mapping: Mapping[int, int]) -> "Constraint":
        return Constraint(self.form.reindex(mapping), self.radius, self.kind)

    def key(self) -> tuple:
        return (self.form.key(), self.radius, self.kind)

    def text(self, names: Sequence[str] | None = None) -> str:
        if self.radius == INF:
            return f"in({self.form.text(names)}, point(0))"
        b = "oball" if self.kind == OPEN else "cball"
        return f"in({self.form.text(names)}, {b}(0, {fmt_rational(self.radius)}))"

    def __repr__(self) -> str:
        return self.text()


def _unit_normalize(form: Form, radius) -> Form:
    """Rewrite ``u x + c`` (``u`` a 1-unit) as ``x + c/u`` up to terms inside the ball."""
    (key, u), = form.without_constant().terms
    eps = u - VF.const(1)
    c = form.constant
    step, acc = c, ZERO
    while not step.is_zero() and step.val() <= radius:
        acc = acc + step
        step = -(step * eps)
    return Form({key: 1, (): acc})


def make_constraint(form: Form, radius, kind: str, center=ZERO):
    """Canonical constraint for ``form in B(center, radius, kind)``.

    The target is moved to 0, the form is divided by the leading monomial of
    its first variable coefficient, and constant terms lying inside the ball
    are dropped.  Variable-free constraints resolve to a bool.
    """
    kind = _kind(kind)
    radius = as_gamma(radius)
    if radius == INF and kind != CLOSED:
        raise OutsideModel("point constraints are closed")
    form = Form.coerce(form) - VF.coerce(center)
    lin = form.without_constant()
    if form.degree() > 1:
        raise OutsideModel("constraint forms must be affine")
    if not lin.is_zero():
        first = lin.terms[0][1]
        g, c = first.terms[0]
        form = form.scale(VF.mono(c.inverse(), -g))
        radius = radius - g
        lin = form.without_constant()
        if len(lin.terms) == 1 and radius != INF and not lin.terms[0][1].is_monomial():
            form = _unit_normalize(form, radius)
            lin = form.without_constant()
    const = form.constant
    strict = kind == OPEN
    kept = const.truncate_below(radius, strict=not strict)
    if lin.is_zero():
        return kept.is_zero()
    if kept != const:
        form = form.without_constant() + kept
    return Constraint(form, radius, kind)


def ball_constraint(i: int, ball: Ball):
    return make_constraint(Form.var(i), ball.radius, ball.kind, ball.center)


def point_constraint(i: int, center=ZERO):
    """``x_i = center``; used only for the convolution identity."""
    return make_constraint(Form.var(i), INF, CLOSED, center)


def intersect_same_linear(c1: Constraint, c2: Constraint):
    """Intersect two constraints with the same linear part.

    Returns a single constraint or ``False`` when the sets are disjoint.
    """
    k1 = (c1.radius, c1.kind == OPEN)
    k2 = (c2.radius, c2.kind == OPEN)
    small, big = (c1, c2) if k1 >= k2 else (c2, c1)
    diff = (big.form.constant - small.form.constant).val()
    if not in_radius(diff, big.radius, big.kind):
        return False
    return small


def eliminate(constraints: Sequence[Constraint], k: int) -> tuple:
    """Solve for ``x_k``: return ``(ball, guards, others)``.

    ``ball`` is ``(center, radius, kind)`` for the smallest moving ball (or
    ``None`` if no constraint involves ``x_k``); ``guards`` are the conditions
    for that ball to lie in every other one; ``others`` are the constraints
    free of ``x_k``.  ``guards`` may contain ``False``.
    """
    involved = [c for c in constraints if c.involves(k)]
    others = [c for c in constraints if not c.involves(k)]
    if not involved:
        return None, [], others
    solved = [c.solve_for(k) for c in involved]
    best = 0
    for j, (_, r, kind) in enumerate(solved):
        if (r, kind == OPEN) > (solved[best][1], solved[best][2] == OPEN):
            best = j
    center, r, kind = solved[best]
    guards = []
    for j, (cj, rj, kj) in enumerate(solved):
        if j == best:
            continue
        g = make_constraint(center - cj, rj, kj)
        if g is True:
            continue
        guards.append(g)
    return (center, r, kind), guards, others


def valuation_bounds(constraints: Sequence[Constraint], n: int) -> list:
    """Per-variable lower bounds on v(x_i) over the region, or ``None`` if unbounded.

    Variables are eliminated in index order; an empty region gives all ``INF``.
    """
    cs = list(constraints)
    steps = []
    for k in range(n):
        ball, guards, others = eliminate(cs, k)
        if any(g is False for g in guards):
            return [INF] * n
        steps.append((k, ball))
        cs = others + guards
    bounds: list = [None] * n
    for k, ball in reversed(steps):
        if ball is None:
            continue
        center, r, _ = ball
        cv = form_lower_val(center, bounds)
        if cv is None:
            continue
        bounds[k] = min(r, cv)
    return bounds


def is_bounded(constraints: Sequence[Constraint], n: int) -> bool:
    return all(b is not None for b in valuation_bounds(constraints, n))


def polyball_constraints(p: Polyball, offset: int = 0) -> list:
    out = []
    for i, b in enumerate(p.balls):
        c = ball_constraint(i + offset, b)
        if c is False:
            raise OutsideModel("empty polyball")
        if c is not True:
            out.append(c)
    return out


def solve_constraint_for(c: Constraint, k: int) -> tuple:
    return c.solve_for(k)


def gamma_text(g) -> str:
    return fmt_rational(Fraction(g))
