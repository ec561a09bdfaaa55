"""Seeded random sample points for pointwise checks."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

from .geometry import OPEN, Ball
from .valfield import QI, VF, ZERO
from .wavefn import MotFn


def random_coef(rng: random.Random, gaussian: bool = True) -> QI:
    re = rng.randint(-3, 3)
    im = rng.randint(-2, 2) if gaussian and rng.random() < 0.3 else 0
    if re == 0 and im == 0:
        re = 1
    return QI(re, im)


def random_vf(rng: random.Random, lo: int = -3, hi: int = 3, terms: int = 2) -> VF:
    if rng.random() < 0.1:
        return ZERO
    k = rng.randint(1, terms)
    return VF((rng.randint(lo, hi), random_coef(rng)) for _ in range(k))


def random_in_ball(rng: random.Random, ball: Ball, depth: int = 2) -> VF:
    r = ball.radius
    start = math.floor(r) + 1 if ball.kind == OPEN else math.ceil(r)
    if rng.random() < 0.25:
        return ball.center
    k = rng.randint(1, 2)
    offs = VF((start + rng.randint(0, depth), random_coef(rng)) for _ in range(k))
    return ball.center + offs


def probe_points(f: MotFn | None, n: int, count: int = 20, seed: int = 0) -> list:
    """Points spread over VF^n plus points inside the packet supports of ``f``."""
    rng = random.Random(seed)
    pts = [tuple(ZERO for _ in range(n))]
    balls: list = [[] for _ in range(n)]
    if f is not None:
        for p in f.packets:
            for c in p.constraints:
                b = c.as_ball()
                if b is not None and b[2] != float("inf"):
                    balls[b[0]].append(Ball(b[1], b[2], b[3]))
    while len(pts) < count:
        pt = []
        for i in range(n):
            if balls[i] and rng.random() < 0.6:
                pt.append(random_in_ball(rng, rng.choice(balls[i])))
            else:
                pt.append(random_vf(rng))
        pts.append(tuple(pt))
    return pts


def agree_at(f: MotFn, g: MotFn, points: Sequence) -> list:
    """Points where ``f`` and ``g`` differ."""
    return [pt for pt in points if f.evaluate(pt) != g.evaluate(pt)]


def gamma_samples(lo: int = -3, hi: int = 3) -> list:
    return [Fraction(g) for g in range(lo, hi + 1)]
