"""Definable distributions built as expression trees over packet functions.

Every node is evaluated through one primitive, ``apply_family``: given a
function ``F(z, x)`` that is Schwartz in ``x`` for every parameter ``z``, it
returns ``z -> D(F(z, .))`` as a packet function.  Ball values ``D(a, gamma)``
and the slices ``x -> D(x, beta)`` are the special families of ball
indicators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    ArityMismatch, NotAlmostIntegrable, NotSchwartz, UnboundedBothFactors, UnboundedSupport,
)
from .fourier import Report, compare_values
from .geometry import CLOSED, OPEN, Form, Polyball, cball, make_constraint, oball
from .integrator import integrate, integrate_vars
from .motvalues import C_ZERO, CElem, mot_o
from .valfield import INF, as_gamma
from .wavefn import MotFn, chi, fn_check, fn_embed, fn_substitute, iota_bound, support_hull


@dataclass(frozen=True)
class Regular:
    f: MotFn

    @property
    def arity(self) -> int:
        return self.f.arity


@dataclass(frozen=True)
class FourierOf:
    d: "Dist"

    @property
    def arity(self) -> int:
        return self.d.arity


@dataclass(frozen=True)
class Tensor:
    left: "Dist"
    right: "Dist"

    @property
    def arity(self) -> int:
        return self.left.arity + self.right.arity


@dataclass(frozen=True)
class Conv:
    left: "Dist"
    right: "Dist"

    def __post_init__(self):
        if self.left.arity != self.right.arity:
            raise ArityMismatch("convolution needs distributions of equal arity")

    @property
    def arity(self) -> int:
        return self.left.arity


Dist = Union[Regular, FourierOf, Tensor, Conv]


def regular(f: MotFn) -> Regular:
    if not fn_check(f).almost_integrable:
        raise NotAlmostIntegrable("a regular distribution needs an almost integrable function")
    return Regular(f)


def dist_text(d: Dist) -> str:
    if isinstance(d, Regular):
        return f"regular({d.f.text()})"
    if isinstance(d, FourierOf):
        return f"fourier({dist_text(d.d)})"
    if isinstance(d, Tensor):
        return f"tensor({dist_text(d.left)}, {dist_text(d.right)})"
    return f"conv({dist_text(d.left)}, {dist_text(d.right)})"


# ---------------------------------------------------------------------------
# support bounds


def support_bound(d: Dist) -> list | None:
    """Per-coordinate radii ``g_i`` with ``supp(D)`` inside ``prod c(0, g_i)``.

    ``None`` means no bound is known; a radius ``INF`` means the coordinate
    carries no support at all.
    """
    if isinstance(d, Regular):
        hull = support_hull(d.f)
        return None if any(g is None for g in hull) else hull
    if isinstance(d, FourierOf):
        if support_bound(d.d) is None:
            return None
        return support_bound(Regular(bounded_fourier_as_function(d.d)))
    if isinstance(d, Tensor):
        a, b = support_bound(d.left), support_bound(d.right)
        if a is None or b is None:
            return None
        if INF in a or INF in b:
            return [INF] * d.arity
        return a + b
    a, b = support_bound(d.left), support_bound(d.right)
    if a is None or b is None:
        return None
    if INF in a or INF in b:
        return [INF] * d.arity
    return [min(x, y) for x, y in zip(a, b)]


def support_polyball(d: Dist) -> Polyball | None:
    bound = support_bound(d)
    if bound is None:
        return None
    return Polyball([cball(0, 0 if g == INF else g) for g in bound])


def _cutoff(d: Dist) -> MotFn:
    """Indicator of a clopen polyball containing ``supp(D)``."""
    bound = support_bound(d)
    if bound is None:
        raise UnboundedSupport(f"no support bound for {dist_text(d)}")
    if INF in bound:
        return MotFn(d.arity)
    return chi(Polyball([cball(0, g) for g in bound]))


# ---------------------------------------------------------------------------
# evaluation


def apply_family(d: Dist, fam: MotFn, m: int) -> MotFn:
    """``z -> D(fam(z, .))`` for a family with ``m`` leading parameters."""
    n = d.arity
    if fam.arity != m + n:
        raise ArityMismatch(f"family of arity {fam.arity} does not match {m} + {n}")
    xs = list(range(m, m + n))
    if isinstance(d, Regular):
        h = fn_embed(d.f, m + n, xs)
        return integrate_vars(fam * h, xs)
    if isinstance(d, FourierOf):
        # D^(F_z) = D(F_z^): transform the family in x first
        lifted = fn_embed(fam, m + 2 * n, list(range(m + n)))
        pairing = Form({(m + i, m + n + i): 1 for i in range(n)})
        hat = integrate_vars(lifted * MotFn.from_parts(m + 2 * n, [((), pairing, 1)]), xs)
        return apply_family(d.d, hat, m)
    if isinstance(d, Tensor):
        inner = apply_family(d.right, fam, m + d.left.arity)
        return apply_family(d.left, inner, m)
    # Conv: D1 x D2 applied to F(z, x1 + x2), the unbounded factor on the inside
    images = [Form.var(i) for i in range(m)]
    images += [Form.var(m + i) + Form.var(m + n + i) for i in range(n)]
    sums = fn_substitute(fam, images, m + 2 * n)
    if support_bound(d.left) is not None:
        outer, inner_d = d.left, d.right
        moved = sums
    elif support_bound(d.right) is not None:
        outer, inner_d = d.right, d.left
        perm = list(range(m)) + list(range(m + n, m + 2 * n)) + list(range(m, m + n))
        moved = fn_embed(sums, m + 2 * n, perm)
    else:
        raise UnboundedBothFactors("convolution needs a factor with bounded support")
    inner = apply_family(inner_d, moved, m + n)
    cut = fn_embed(_cutoff(outer), m + n, xs)
    return apply_family(outer, inner * cut, m)


def _value(fn: MotFn) -> CElem:
    out = C_ZERO
    for p in fn.packets:
        out = out + p.coeff
    return out


def _ball_family(n: int, gamma) -> MotFn:
    """``(z, x) -> 1 if x in o(z, gamma)``."""
    cs = [make_constraint(Form.var(n + i) - Form.var(i), gamma, OPEN) for i in range(n)]
    return MotFn.from_parts(2 * n, [(cs, Form(), 1)])


def dist_eval(d: Dist, a: Sequence, gamma) -> CElem:
    gamma = as_gamma(gamma)
    ball = chi(Polyball([oball(x, gamma) for x in a]))
    if len(a) != d.arity:
        raise ArityMismatch(f"point of length {len(a)} for a distribution of arity {d.arity}")
    return _value(apply_family(d, ball, 0))


def dist_slice(d: Dist, beta) -> MotFn:
    """``x -> D(x, beta)``."""
    return apply_family(d, _ball_family(d.arity, as_gamma(beta)), d.arity)


def _test_radius(f: MotFn) -> Fraction:
    beta = as_gamma(iota_bound(f))
    return Fraction(beta) if beta != INF else Fraction(0)


def dist_apply(d: Dist, f: MotFn, beta=None) -> CElem:
    """The defining integral of ``f`` against ``o_beta^-n D(x, beta)``."""
    if f.arity != d.arity:
        raise ArityMismatch("test function and distribution arities differ")
    if f.is_zero():
        return C_ZERO
    if not fn_check(f).schwartz:
        raise NotSchwartz("distributions act on Schwartz functions")
    b = _test_radius(f) if beta is None else as_gamma(beta)
    dens = dist_slice(d, b).scale(CElem.coerce(mot_o(b) ** (-d.arity)))
    return integrate(f * dens)


def dist_pair(d: Dist, f: MotFn) -> CElem:
    """``D(f)`` by applying the tree directly to ``f``."""
    return _value(apply_family(d, f, 0))


# ---------------------------------------------------------------------------
# realizations and checks


def bounded_fourier_as_function(d: Dist) -> MotFn:
    """``h`` with ``F(D) = D_h``: ``a -> D(exp_a restricted to c(0, g))``."""
    bound = support_bound(d)
    if bound is None:
        raise UnboundedSupport(f"{dist_text(d)} has no bounded support certificate")
    n = d.arity
    if INF in bound:
        return MotFn(n)
    cs = [make_constraint(Form.var(n + i), g, CLOSED) for i, g in enumerate(bound)]
    pairing = Form({(i, n + i): 1 for i in range(n)})
    fam = MotFn.from_parts(2 * n, [(cs, pairing, 1)])
    return apply_family(d, fam, n)


def to_regular(d: Dist) -> MotFn | None:
    """A function realizing ``D`` when the tree gives one constructively."""
    if isinstance(d, Regular):
        return d.f
    if isinstance(d, FourierOf) and support_bound(d.d) is not None:
        return bounded_fourier_as_function(d.d)
    return None


def check_coherence(d: Dist, samples: Sequence) -> list:
    """``D(a, g) = integral over o(a, g) of o_{g'}^-n D(x, g')`` for ``(a, g, g')``."""
    out = []
    for a, g, g2 in samples:
        g, g2 = as_gamma(g), as_gamma(g2)
        lhs = dist_eval(d, a, g)
        dens = dist_slice(d, g2).scale(CElem.coerce(mot_o(g2) ** (-d.arity)))
        rhs = integrate(dens * chi(Polyball([oball(x, g) for x in a])))
        name = f"coherence[{','.join(x.text() for x in a)}; {g} <= {g2}]"
        out.append(compare_values(name, lhs, rhs))
    return out


def check_dist_fourier(d: Dist, f: MotFn) -> Report:
    """``D(f^) = D^(f)``, both sides through the defining integral."""
    from .fourier import fourier0

    lhs = dist_apply(d, fourier0(f))
    rhs = dist_apply(FourierOf(d), f)
    return compare_values("distribution-fourier", lhs, rhs)


def dist_fourier_convolution_check(d1: Dist, d2: Dist, f: MotFn) -> Report:
    """``F(D1 * D2)(f) = (D1^ D2^)(f)`` with ``D1^`` realized as a function."""
    if support_bound(d1) is None:
        raise UnboundedSupport("the first factor must have bounded support")
    lhs = dist_apply(FourierOf(Conv(d1, d2)), f)
    h = bounded_fourier_as_function(d1)
    rhs = dist_apply(FourierOf(d2), f * h)
    return compare_values("distribution-convolution", lhs, rhs)


def check_tensor_fourier(d1: Dist, d2: Dist, a: Sequence, gamma) -> Report:
    lhs = dist_eval(FourierOf(Tensor(d1, d2)), a, gamma)
    rhs = dist_eval(Tensor(FourierOf(d1), FourierOf(d2)), a, gamma)
    return compare_values("tensor-fourier", lhs, rhs)
