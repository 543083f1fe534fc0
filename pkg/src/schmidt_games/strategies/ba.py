"""Alice strategy steering the hyperplane absolute game toward badly
approximable points.

Outline: Alice idles until Bob's radius rho is small enough that
r = (1 + beta^2) rho clears the volume bound r^d d! V_d < beta^d.  She then
fixes c = beta^2 rho and works through denominator windows

    U_k = { p/q : beta^{-d(k-1)/(d+1)} <= q <= beta^{-d k/(d+1)} },

one window per radius band (beta^k rho, beta^{k-1} rho].  All rationals of
U_k inside B(center, beta^{k-1} r) lie on a single hyperplane (a volume
argument; asserted, never assumed), which Alice removes with width
beta^{k+1} rho.  Every surviving point then keeps distance c q^{-(d+1)/d}
from every p/q with q below the exported q_max:

* p/q inside the enumeration ball: it is on the removed hyperplane, so the
  final ball clears it by the removal width beta^{k+1} rho >= c q^{-(d+1)/d}.
* p/q outside: the final ball sits within beta^{k-1} rho of the enumeration
  center, and beta^{k-1}(r - rho) = beta^{k+1} rho again.

The extra beta^2 in r (the enumeration radius exceeds the radius band's top)
is what makes the second case work with no further stage bookkeeping.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Optional

import mpmath

from ..certify import ba_certificate_q, iroot_ceil, iroot_floor
from ..engine import AliceNeighborhoodMove, AliceStrategy, BobMove
from ..geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    format_scalar,
    hyperplane_through_points,
    point,
    points_coplanar,
    scalar,
    sq_dist,
)
from .common import dummy_neighborhood_move, window_index

F = Fraction

COPLANARITY_MESSAGE = "window rationals not on one hyperplane"


def ball_volume_upper(d: int) -> Fraction:
    """Rational upper bound for the volume of the d-dimensional unit ball."""
    if d < 1:
        raise ValueError("dimension must be positive")
    if d == 1:
        return F(2)
    with mpmath.workdps(40):
        v = mpmath.pi ** (mpmath.mpf(d) / 2) / mpmath.gamma(mpmath.mpf(d) / 2 + 1)
        scaled = int(mpmath.ceil(v * 10**12))
    return F(scaled, 10**12)


def ba_activation_ok(d: int, beta: Fraction, radius: Fraction) -> bool:
    """Exact test that r = (1+beta^2) radius satisfies r^d d! V_d < beta^d."""
    beta = scalar(beta)
    r = (1 + beta * beta) * scalar(radius)
    return r**d * math.factorial(d) * ball_volume_upper(d) < beta**d


def denominator_window(beta: Fraction, d: int, k: int) -> tuple[int, int]:
    """Integer range [q_lo, q_hi] of window k (closed on both edges)."""
    inv = 1 / scalar(beta)
    q_lo = iroot_ceil(inv ** (d * (k - 1)), d + 1)
    q_hi = iroot_floor(inv ** (d * k), d + 1)
    return q_lo, q_hi


def rationals_in_ball(ball: Ball, q_lo: int, q_hi: int) -> list:
    """All points p/q (componentwise denominator q, q_lo <= q <= q_hi) in the
    closed ball, deduplicated as points.  Exact."""
    x, big_r = ball.center, ball.radius
    out = []
    seen = set()
    for q in range(q_lo, q_hi + 1):
        axes = []
        for c in x:
            lo = math.ceil(q * (c - big_r))
            hi = math.floor(q * (c + big_r))
            if lo > hi:
                break
            axes.append(range(lo, hi + 1))
        if len(axes) < len(x):
            continue
        for nums in itertools.product(*axes):
            pt = point([F(n, q) for n in nums])
            if pt in seen:
                continue
            seen.add(pt)
            if sq_dist(pt, x) <= big_r * big_r:
                out.append(pt)
    return out


class BaAlice(AliceStrategy):
    """See module docstring.  One denominator window is handled per radius
    band; bands are visited in order because Bob shrinks by at most beta."""

    def __init__(self, d: int, beta: Fraction, max_k: Optional[int] = None):
        beta = scalar(beta)
        if not 0 < beta < F(1, 3):
            raise ValueError("need 0 < beta < 1/3")
        self.d = d
        self.beta = beta
        self.max_k = max_k if max_k is not None else (8 if d == 1 else 5)
        self.reset()

    def reset(self):
        self.rho: Optional[Fraction] = None
        self.c: Optional[Fraction] = None
        self.r: Optional[Fraction] = None
        # k -> (index the removal move will occupy, enumeration was empty)
        self.handled: dict[int, tuple[int, bool]] = {}

    def next_move(self, t):
        rules = t.config.rules
        if rules.k != self.d - 1:
            raise ValueError("this strategy plays the hyperplane game (k = d-1)")
        ball = t.last_bob_ball()
        beta = self.beta
        if self.rho is None:
            if not ba_activation_ok(self.d, beta, ball.radius):
                return dummy_neighborhood_move(ball, rules.k, beta)
            self.rho = ball.radius
            self.c = beta * beta * self.rho
            self.r = (1 + beta * beta) * self.rho
        k = window_index(ball.radius, self.rho, beta)
        assert k is not None and k >= 1
        if k in self.handled or k > self.max_k:
            return dummy_neighborhood_move(ball, rules.k, beta)
        q_lo, q_hi = denominator_window(beta, self.d, k)
        pts = rationals_in_ball(Ball(ball.center, beta ** (k - 1) * self.r), q_lo, q_hi)
        self.handled[k] = (len(t.moves), not pts)
        if not pts:
            return dummy_neighborhood_move(ball, rules.k, beta)
        assert points_coplanar(pts, self.d), COPLANARITY_MESSAGE
        if self.d == 1:
            sub = AffineSubspace(pts[0], ())
        else:
            sub = hyperplane_through_points(pts, self.d)
        width = beta ** (k + 1) * self.rho
        assert width <= beta * ball.radius  # window condition makes this legal
        return AliceNeighborhoodMove(Neighborhood(sub, width))

    def certificate_hints(self, t) -> dict:
        base = {
            "strategy": "ba",
            "d": self.d,
            "beta": format_scalar(self.beta),
            "activated": self.rho is not None,
        }
        if self.rho is None:
            return {**base, "c": "0", "k_max": 0, "q_max": 1}
        n_moves = len(t.moves)
        covered = 0
        k = 1
        while k in self.handled:
            idx, vacuous = self.handled[k]
            # the removal only constrains balls Bob played after it
            if not (vacuous or n_moves > idx + 1):
                break
            covered = k
            k += 1
        k_max = max(covered - 1, 0)
        return {
            **base,
            "activation_rho": format_scalar(self.rho),
            "c": format_scalar(self.c) if covered else "0",
            "k_max": k_max,
            "q_max": ba_certificate_q(self.beta, self.d, k_max),
            "windows": {
                str(k): "vacuous" if vac else "removed"
                for k, (_, vac) in sorted(self.handled.items())
            },
        }


def ba_alice(d: int, beta: Fraction, max_k: Optional[int] = None) -> BaAlice:
    return BaAlice(d, beta, max_k)
