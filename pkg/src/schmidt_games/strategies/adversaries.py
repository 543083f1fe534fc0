"""Adversary strategies: the Bobs that Alice strategies get tested against,
plus random and point-removing Alices for the other side of the board.

None of these carry winning guarantees.  They exist to probe: random legal
play, stalling, hugging rational targets, and riding a fixed subspace.  All
candidate moves are exact rationals and every returned move has been checked
with the engine's own legality predicate; `None` means the candidate set was
empty (a no-move declaration).
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Optional

from ..engine import (
    AliceBallMove,
    AliceNeighborhoodMove,
    AliceStrategy,
    BobStrategy,
    ClassicRules,
    OnSet,
    legal_alice_move,
    legal_bob_move,
)
from ..geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    point,
    project_point_subspace,
    sq_norm,
    sqrt_lower,
    sqrt_upper,
)
from .common import centered_alice_ball

F = Fraction


def _grid_offsets(d: int, reach: int = 3):
    """Integer offset vectors with |m| <= reach in each coordinate and
    euclidean norm <= reach (so scaled offsets stay inside a ball)."""
    out = []
    for m in itertools.product(range(-reach, reach + 1), repeat=d):
        if sum(v * v for v in m) <= reach * reach:
            out.append(m)
    return out


def _onset_centers(arena, ball: Ball, limit: int, rng) -> list:
    from ..fractals import depth_for_scale

    oracle = arena.oracle
    depth = depth_for_scale(oracle, max(ball.radius / 8, oracle.resolution(60)))
    pts = oracle.net(ball, depth)
    if len(pts) > limit:
        pts = rng.sample(pts, limit)
    return pts


class RandomBob(BobStrategy):
    """Samples a legal ball from a rational grid of candidates, uniformly."""

    def __init__(self, seed: int, opening: Optional[Ball] = None):
        self.seed = seed
        self.opening = opening
        self.rng = random.Random(seed)

    def reset(self):
        self.rng = random.Random(self.seed)

    def _opening(self, t) -> Ball:
        if self.opening is not None:
            return self.opening
        d = t.config.d
        return Ball(point([0] * d), F(1))

    def next_move(self, t):
        prev = t.last_bob_ball()
        if prev is None:
            return self._opening(t)
        rules = t.config.rules
        if isinstance(rules, ClassicRules):
            return _random_classic_ball(self, t, prev)
        beta = rules.beta
        shrink = [beta, beta + (1 - beta) * F(1, 8), beta + (1 - beta) * F(1, 3),
                  beta + (1 - beta) * F(2, 3)]
        cands = []
        for frac in shrink:
            r = frac * prev.radius
            margin = prev.radius - r
            if isinstance(t.config.arena, OnSet):
                centers = _onset_centers(t.config.arena, Ball(prev.center, margin), 48, self.rng)
            else:
                centers = [
                    tuple(c + F(m, 3) * margin for c, m in zip(prev.center, off))
                    for off in _grid_offsets(prev.dim)
                ]
            cands.extend(Ball(c, r) for c in centers)
        self.rng.shuffle(cands)
        for b in cands:
            if legal_bob_move(t, b):
                return b
        return None


def _random_classic_ball(self, t, prev) -> Optional[Ball]:
    """Classic-game variant: the radius is forced, only the center is free."""
    rules = t.config.rules
    a = t.last_alice_move().ball
    r = rules.beta * a.radius
    margin = (a.radius - r) * F(7, 8)
    cands = [
        Ball(tuple(c + F(m, 3) * margin for c, m in zip(a.center, off)), r)
        for off in _grid_offsets(a.dim)
    ]
    self.rng.shuffle(cands)
    for b in cands:
        if legal_bob_move(t, b):
            return b
    return None


class ShrinkInPlaceBob(BobStrategy):
    """Shrinks by exactly beta each turn, keeping the center whenever legal.

    When the center is blocked by Alice's removal it slides deterministically
    along a small grid, preferring the least displacement.
    """

    def __init__(self, opening: Optional[Ball] = None):
        self.opening = opening

    def next_move(self, t):
        prev = t.last_bob_ball()
        if prev is None:
            if self.opening is not None:
                return self.opening
            return Ball(point([0] * t.config.d), F(1))
        rules = t.config.rules
        if isinstance(rules, ClassicRules):
            a = t.last_alice_move().ball
            r = rules.beta * a.radius
            base, margin = a.center, a.radius - r
        else:
            r = rules.beta * prev.radius
            base, margin = prev.center, prev.radius - r
        offsets = sorted(_grid_offsets(prev.dim, reach=4), key=lambda m: sum(v * v for v in m))
        for off in offsets:
            c = tuple(ci + F(m, 4) * margin for ci, m in zip(base, off))
            b = Ball(c, r)
            if legal_bob_move(t, b):
                return b
        return None


def _toward(center, target, max_sq: Fraction) -> list:
    """Rational points on the segment center -> target, clipped to length
    sqrt(max_sq), nearest-to-target first."""
    v = tuple(tc - cc for tc, cc in zip(target, center))
    L2 = sq_norm(v)
    if L2 == 0:
        return [point(center)]
    t_max = min(F(1), sqrt_lower(max_sq / L2))
    steps = [t_max * F(16 - j, 16) for j in range(17)]
    return [tuple(cc + s * vc for cc, vc in zip(center, v)) for s in steps]


class RationalHuggerBob(BobStrategy):
    """Centers as close as legally possible to the most dangerous rational
    p/q with q <= Q near the current ball (score: q^{1+1/d} * distance)."""

    def __init__(self, q_max: int, seed: int = 0, opening: Optional[Ball] = None):
        self.q_max = q_max
        self.seed = seed
        self.opening = opening
        self.rng = random.Random(seed)

    def reset(self):
        self.rng = random.Random(self.seed)

    def _target(self, center, d: int):
        best, best_score = None, math.inf
        cf = [float(c) for c in center]
        for q in range(1, self.q_max + 1):
            p = tuple(F(round(c * q), q) for c in cf)
            dist = math.sqrt(sum((float(pc) - c) ** 2 for pc, c in zip(p, cf)))
            score = dist * q ** ((d + 1) / d)
            if score < best_score:
                best_score, best = score, p
        return best

    def next_move(self, t):
        prev = t.last_bob_ball()
        if prev is None:
            if self.opening is not None:
                return self.opening
            return Ball(point([0] * t.config.d), F(1))
        rules = t.config.rules
        if isinstance(rules, ClassicRules):
            return _random_classic_ball(self, t, prev)
        r = rules.beta * prev.radius
        margin = prev.radius - r
        target = self._target(prev.center, prev.dim)
        for c in _toward(prev.center, target, margin * margin):
            b = Ball(c, r)
            if legal_bob_move(t, b):
                return b
        # target line fully blocked: fall back to a shuffled grid
        cands = [
            Ball(tuple(ci + F(m, 3) * margin for ci, m in zip(prev.center, off)), r)
            for off in _grid_offsets(prev.dim)
        ]
        self.rng.shuffle(cands)
        for b in cands:
            if legal_bob_move(t, b):
                return b
        return None


class OnlineHyperplaneBob(BobStrategy):
    """Keeps every center on a fixed affine subspace L while legal; declares
    no-move when the slice of legal centers is exhausted."""

    def __init__(self, subspace: AffineSubspace, seed: int = 0,
                 opening: Optional[Ball] = None):
        self.subspace = subspace
        self.seed = seed
        self.opening = opening
        self.rng = random.Random(seed)

    def reset(self):
        self.rng = random.Random(self.seed)

    def next_move(self, t):
        prev = t.last_bob_ball()
        if prev is None:
            if self.opening is not None:
                return self.opening
            return Ball(self.subspace.anchor, F(1))
        rules = t.config.rules
        r = rules.beta * prev.radius
        margin = prev.radius - r
        proj = project_point_subspace(prev.center, self.subspace)
        cands = []
        for coeffs in itertools.product(range(-4, 5), repeat=self.subspace.dim):
            c = list(proj)
            for m, direction in zip(coeffs, self.subspace.directions):
                step = margin / (4 * sqrt_upper(sq_norm(direction)))
                for i, dc in enumerate(direction):
                    c[i] = c[i] + m * step * dc
            cands.append(Ball(tuple(c), r))
        self.rng.shuffle(cands)
        for b in cands:
            if legal_bob_move(t, b):
                return b
        return None


class RandomClassicBob(BobStrategy):
    """Classic game: radius is forced; center sampled from a legal grid."""

    def __init__(self, seed: int, opening: Optional[Ball] = None):
        self.seed = seed
        self.opening = opening
        self.rng = random.Random(seed)

    def reset(self):
        self.rng = random.Random(self.seed)

    def next_move(self, t):
        prev = t.last_bob_ball()
        if prev is None:
            if self.opening is not None:
                return self.opening
            return Ball(point([0] * t.config.d), F(1))
        return _random_classic_ball(self, t, prev)


class RandomClassicAlice(AliceStrategy):
    """Classic game: places the forced-radius ball at a random strictly
    interior position (7/8 of the available slack)."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = random.Random(seed)

    def reset(self):
        self.rng = random.Random(self.seed)

    def next_move(self, t):
        ball = t.last_bob_ball()
        rules = t.config.rules
        r = rules.alpha * ball.radius
        margin = (ball.radius - r) * F(7, 8)
        cands = [
            AliceBallMove(Ball(tuple(c + F(m, 3) * margin for c, m in zip(ball.center, off)), r))
            for off in _grid_offsets(ball.dim)
        ]
        self.rng.shuffle(cands)
        for mv in cands:
            if legal_alice_move(t, mv):
                return mv
        return centered_alice_ball(ball, rules.alpha)


class PointRemoverAlice(AliceStrategy):
    """k=0 absolute game: removes Bob's current center with the maximal
    allowed width.  On a singleton arena this leaves Bob without a move."""

    def next_move(self, t):
        ball = t.last_bob_ball()
        beta = t.config.rules.beta
        sub = AffineSubspace(ball.center, ())
        return AliceNeighborhoodMove(Neighborhood(sub, beta * ball.radius))


def random_bob(seed: int, opening: Optional[Ball] = None) -> RandomBob:
    return RandomBob(seed, opening)


def shrink_in_place_bob(opening: Optional[Ball] = None) -> ShrinkInPlaceBob:
    return ShrinkInPlaceBob(opening)


def rational_hugger_bob(q_max: int, seed: int = 0,
                        opening: Optional[Ball] = None) -> RationalHuggerBob:
    return RationalHuggerBob(q_max, seed, opening)


def online_hyperplane_bob(subspace: AffineSubspace, seed: int = 0,
                          opening: Optional[Ball] = None) -> OnlineHyperplaneBob:
    return OnlineHyperplaneBob(subspace, seed, opening)
