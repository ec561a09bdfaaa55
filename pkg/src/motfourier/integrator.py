"""Integration of packet functions one variable at a time.

A single step integrates ``x_k`` over its smallest constraint ball ``B``:
the integral of ``exp<theta(L * x_k)>`` over ``B`` is ``vol(B)`` times the
value at the center when ``L`` lies in the dual ball, and 0 otherwise.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import ArityMismatch, NonMonomial, NotIntegrable, UnsupportedPhase
from .geometry import CLOSED, INF, OPEN, Form, eliminate, is_bounded, make_constraint, valuation_bounds
from .motvalues import C_ZERO, CElem, MOT_ONE, mot_vol
from .valfield import RV, RV_ONE, VF, vf_rv
from .wavefn import MotFn, Packet, canonical_packet, fn_check, fn_embed, fn_substitute


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("MOTFOURIER_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items: Sequence) -> list:
    """``map`` with optional threads; results keep input order."""
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _drop_index(n: int, k: int) -> dict:
    return {i: (i if i < k else i - 1) for i in range(n) if i != k}


def _drop_small_squares(phase: Form, constraints: list, n: int) -> Form:
    """Remove square terms whose values lie in M on the region."""
    try:
        bounds = valuation_bounds(constraints, n)
    except NonMonomial:
        bounds = [None] * n
    terms = dict(phase.terms)
    for key in [k for k in terms if len(k) == 2 and k[0] == k[1]]:
        lb = bounds[key[0]]
        if lb is None:
            raise UnsupportedPhase("integration produced a square term")
        if lb == INF:
            continue
        keep = VF(tuple((g, x) for g, x in terms[key].terms if g + 2 * lb <= 0))
        if not keep.is_zero():
            raise UnsupportedPhase("integration produced a square term")
        del terms[key]
    return Form(terms)


def integrate_packet_var(p: Packet, k: int) -> Packet | None:
    n = p.arity
    try:
        ball, guards, others = eliminate(p.constraints, k)
    except NonMonomial as exc:
        raise NotIntegrable(f"cannot solve for x{k + 1}: {exc}") from exc
    if ball is None:
        raise NotIntegrable(f"x{k + 1} is unbounded in {p.text()}")
    if any(g is False for g in guards):
        return None
    center, radius, kind = ball
    try:
        rest, lin = p.phase.split(k)
    except ValueError:
        raise UnsupportedPhase("square term in the integration variable") from None
    new_cs = list(others) + list(guards)
    if radius == INF:
        vol = MOT_ONE
    else:
        vol = mot_vol(radius, kind)
        if not lin.is_zero():
            # L must lie in the dual ball at 0
            dual_kind = CLOSED if kind == OPEN else OPEN
            new_cs.append(make_constraint(lin, -radius, dual_kind))
    phase = rest + lin * center
    if phase.has_squares():
        phase = _drop_small_squares(phase, [c for c in new_cs if not isinstance(c, bool)], n)
    mapping = _drop_index(n, k)
    new_cs = [c if isinstance(c, bool) else c.reindex(mapping) for c in new_cs]
    return canonical_packet(n - 1, new_cs, phase.reindex(mapping), p.coeff.scale(vol))


def integrate_var(f: MotFn, k: int) -> MotFn:
    if not 0 <= k < f.arity:
        raise ArityMismatch(f"no variable x{k + 1} in a function of arity {f.arity}")
    return MotFn(f.arity - 1, ordered_map(lambda p: integrate_packet_var(p, k), list(f.packets)))


def _order(n: int, order: Sequence[int] | None) -> list:
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise ArityMismatch(f"{order} is not an ordering of {n} variables")
    return order


def integrate_vars(f: MotFn, variables: Sequence[int]) -> MotFn:
    """Integrate out the listed original variables in the given order."""
    alive = list(range(f.arity))
    for v in variables:
        k = alive.index(v)
        f = integrate_var(f, k)
        alive.pop(k)
    return f


def integrate(f: MotFn, order: Sequence[int] | None = None) -> CElem:
    order = _order(f.arity, order)
    if not fn_check(f).integrable:
        bad = next((p for p in f.packets if not is_bounded(p.constraints, f.arity)), None)
        where = f": {bad.text()}" if bad is not None else ""
        raise NotIntegrable(f"support is not bounded{where}")
    g = integrate_vars(f, order)
    out = C_ZERO
    for p in g.packets:
        out = out + p.coeff
    return out


def integrate_over(f: MotFn, region: MotFn, order: Sequence[int] | None = None) -> CElem:
    return integrate(f * region, order)


def convolve(f: MotFn, g: MotFn) -> MotFn:
    """``a -> integral over x of f(x) g(a - x)``."""
    if f.arity != g.arity:
        raise ArityMismatch("convolution needs equal arities")
    n = f.arity
    ff, fg = fn_check(f), fn_check(g)
    if not (ff.bounded or fg.bounded):
        raise NotIntegrable("convolution needs a factor with bounded support")
    fx = fn_embed(f, 2 * n, [n + i for i in range(n)])
    images = [Form.var(i) - Form.var(n + i) for i in range(n)]
    gx = fn_substitute(g, images, 2 * n)
    h = fx * gx
    return integrate_vars(h, [n + i for i in range(n)])


# ---------------------------------------------------------------------------
# constant volume forms


@dataclass(frozen=True)
class MuFn:
    fn: MotFn
    form: RV = RV_ONE

    def text(self) -> str:
        return f"({self.fn.text()}, {self.form.text()})"


def integrate_with_form(mf: MuFn, order: Sequence[int] | None = None) -> tuple:
    return integrate(mf.fn, order), mf.form


@dataclass(frozen=True)
class AffineMap:
    """``x -> y`` with ``y_i = scales[i] * x_{perm[i]} + shifts[i]``."""

    scales: tuple
    shifts: tuple
    perm: tuple

    @staticmethod
    def scaling(a, n: int) -> "AffineMap":
        return AffineMap(tuple(VF.coerce(a) for _ in range(n)), tuple(VF() for _ in range(n)), tuple(range(n)))

    @staticmethod
    def translation(c: Sequence) -> "AffineMap":
        n = len(c)
        return AffineMap(tuple(VF.coerce(1) for _ in range(n)), tuple(VF.coerce(x) for x in c), tuple(range(n)))

    @staticmethod
    def permutation(perm: Sequence[int]) -> "AffineMap":
        n = len(perm)
        return AffineMap(tuple(VF.coerce(1) for _ in range(n)), tuple(VF() for _ in range(n)), tuple(perm))

    def jacobian_rv(self) -> RV:
        det = VF.coerce(_perm_sign(self.perm))
        for s in self.scales:
            if not s.is_monomial():
                raise NonMonomial(f"scaling factor {s.text()} is not a monomial")
            det = det * s
        return vf_rv(det)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def apply_affine(mf: MuFn, phi: AffineMap) -> MuFn:
    """Pull back along ``phi``: ``(f o phi, rv(jcb phi) * mu)``."""
    n = mf.fn.arity
    if len(phi.scales) != n:
        raise ArityMismatch("map and function arities differ")
    rv = phi.jacobian_rv()
    images = [Form.var(phi.perm[i], phi.scales[i]) + phi.shifts[i] for i in range(n)]
    return MuFn(fn_substitute(mf.fn, images, n), rv * mf.form)
