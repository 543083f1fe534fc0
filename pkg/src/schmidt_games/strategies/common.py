"""Shared strategy plumbing: dummy moves, window arithmetic, small helpers."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from ..engine import AliceBallMove, AliceNeighborhoodMove, AliceStrategy
from ..geometry import AffineSubspace, Ball, Neighborhood, point, scalar

F = Fraction


def axis_direction(d: int, axis: int) -> tuple:
    return tuple(F(1) if i == axis else F(0) for i in range(d))


def dummy_neighborhood_move(ball: Ball, k: int, beta: Fraction) -> AliceNeighborhoodMove:
    """A legal removal that cannot constrain Bob.

    The k-flat is anchored at center + (rho + 2 eps) e_1 with directions along
    e_2..e_{k+1}, width eps = beta rho / 2.  Any ball inside `ball` clears the
    neighborhood by construction (distance >= 2 eps + its own radius).
    """
    beta = scalar(beta)
    rho = ball.radius
    eps = beta * rho / 2
    anchor = list(ball.center)
    anchor[0] = anchor[0] + rho + 2 * eps
    dirs = tuple(axis_direction(ball.dim, i + 1) for i in range(k))
    sub = AffineSubspace(point(anchor), dirs)
    return AliceNeighborhoodMove(Neighborhood(sub, eps))


def centered_alice_ball(ball: Ball, alpha: Fraction) -> AliceBallMove:
    """Classic-game no-op: Alice recenters on Bob's ball."""
    return AliceBallMove(Ball(ball.center, scalar(alpha) * ball.radius))


def window_index(radius: Fraction, rho: Fraction, beta: Fraction,
                 max_iter: int = 512) -> Optional[int]:
    """The k >= 1 with beta^k rho < radius <= beta^{k-1} rho, or None."""
    if radius > rho:
        return None
    k = 1
    while k <= max_iter and radius <= beta ** k * rho:
        k += 1
    return k if k <= max_iter else None


class DummyAlice(AliceStrategy):
    """Always plays the standard dummy move (absolute) or a centered ball
    (classic).  Useful as a bystander and in engine tests."""

    def next_move(self, t):
        from ..engine import ClassicRules

        ball = t.last_bob_ball()
        rules = t.config.rules
        if isinstance(rules, ClassicRules):
            return centered_alice_ball(ball, rules.alpha)
        return dummy_neighborhood_move(ball, rules.k, rules.beta)
