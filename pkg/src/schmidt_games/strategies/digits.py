"""Classic-game strategies forcing base-3 digit patterns (d = 2).

Alice's side (alpha = 1/108): once the radius is below 1/(6 alpha), each of
her moves locks one more index i_k = ceil(a + (k-1) theta), theta =
-log_3(alpha beta), by centering her ball inside a level-i_k cell whose
digit is 0 in both coordinates.  The radius bookkeeping of the classic game
(rho shrinks by exactly alpha beta = 3^-theta per round) is what makes the
next cell both findable (the ball spans at least 8 cells) and fine enough
(her ball fits strictly inside one cell); both facts are asserted, not
assumed.

Bob's side (alpha = 4 3^-n, beta = (1/4) 3^-n): he opens with the radius-1/2
ball of points with first digits 1 and, whatever Alice does, dives into the
all-ones descendant of a complete cell inside her ball, forcing digits
x_i = y_i = 1 for (2k-1) n < i <= 2 n k.  Every point of his final ball then
satisfies: for all i, x_{i+n} = 1 or y_i = 1 (each i has either its x-window
or its y-window inside a forced run).

Note the Bob parameters are only a legal game for n >= 2: n = 1 gives
alpha = 4/3 >= 1, and Alice's first ball could not fit inside Bob's.
Construction rejects n < 2.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

import mpmath as mp

from ..engine import AliceBallMove, AliceStrategy, BobStrategy, ClassicRules
from ..geometry import Ball, point, scalar
from .common import centered_alice_ball

F = Fraction

# largest rational p/q with small q below 1/sqrt(2); inscribed-square half
# width as a fraction of the radius
INSCRIBED = F(408, 577)

DIGIT_ALICE_ALPHA = F(1, 108)


def _digit_cell_start(lo: Fraction, hi: Fraction, level: int,
                      residue: Optional[int]) -> Optional[int]:
    """Smallest integer m (m % 3 == residue, if given) with the closed cell
    [m 3^-level, (m+1) 3^-level] inside [lo, hi].  Raising m only pushes the
    cell further right, so the first aligned candidate decides."""
    scale = F(3) ** level
    m = math.ceil(lo * scale)
    if residue is not None:
        while m % 3 != residue:
            m += 1
    if F(m + 1, 1) / scale <= hi:
        return m
    return None


class DigitAlice(AliceStrategy):
    """Classic game, d = 2, alpha = 1/108: zero digits on an arithmetic-ish
    progression of indices."""

    def __init__(self, beta: Fraction):
        self.beta = scalar(beta)
        if not 0 < self.beta < 1:
            raise ValueError("need 0 < beta < 1")
        with mp.workdps(40):
            ab = mp.mpf(DIGIT_ALICE_ALPHA.numerator) * self.beta.numerator / (
                DIGIT_ALICE_ALPHA.denominator * self.beta.denominator)
            self.theta = -mp.log(ab) / mp.log(3)
        self.reset()

    def reset(self):
        self.a: Optional[int] = None
        self.k = 0
        self.indices: list[int] = []

    def _index(self, k: int) -> int:
        # i_k = ceil(a + (k-1) theta); k = 1 is exactly the integer a
        if k == 1:
            return self.a
        with mp.workdps(40):
            val = self.a + (k - 1) * self.theta
            nearest = mp.nint(val)
            if abs(val - nearest) < mp.mpf(2) ** -64:
                raise ValueError("index ceiling within 2^-64 of an integer; "
                                 "widen precision")
            return int(mp.ceil(val))

    def next_move(self, t):
        rules = t.config.rules
        if not isinstance(rules, ClassicRules) or rules.alpha != DIGIT_ALICE_ALPHA:
            raise ValueError("digit strategy needs the classic game at alpha = 1/108")
        if t.config.d != 2:
            raise ValueError("digit strategy is two-dimensional")
        ball = t.last_bob_ball()
        alpha = rules.alpha
        if self.a is None:
            if alpha * ball.radius >= F(1, 6):
                return centered_alice_ball(ball, alpha)  # too big; wait
            a = 0
            while alpha * ball.radius < F(1, 6 * 3 ** (a + 1)):
                a += 1
            assert F(1, 6 * 3 ** (a + 1)) <= alpha * ball.radius < F(1, 6 * 3**a)
            self.a = a
        self.k += 1
        i = self._index(self.k)
        if self.indices:
            assert i > self.indices[-1], "index stream must increase"
        h = INSCRIBED * ball.radius
        scale = F(3) ** i
        centers = []
        for c in ball.center:
            m = _digit_cell_start(c - h, c + h, i, residue=0)
            assert m is not None, "digit cell not found (radius bookkeeping broken)"
            centers.append(F(2 * m + 1, 2) / scale)
        r = alpha * ball.radius
        assert r < F(1, 2) / scale, "alice ball does not fit in one cell"
        self.indices.append(i)
        return AliceBallMove(Ball(point(centers), r))

    def certificate_hints(self, t) -> dict:
        if self.a is None:
            return {"strategy": "digit-alice", "activated": False, "indices": []}
        return {
            "strategy": "digit-alice",
            "activated": True,
            "a": self.a,
            "theta": mp.nstr(self.theta, 30),
            "indices": list(self.indices),
        }


class DigitBob(BobStrategy):
    """Classic game, d = 2, alpha = 4 3^-n, beta = (1/4) 3^-n: forces digit
    runs of ones; see module docstring."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError(
                "digit bob needs n >= 2: alpha = 4 3^-n must stay below 1")
        self.n = n
        self.alpha = 4 * F(3) ** -n
        self.beta = F(1, 4) * F(3) ** -n
        self.reset()

    def reset(self):
        self.k = 0

    def _check_config(self, t):
        rules = t.config.rules
        if not isinstance(rules, ClassicRules) or rules.alpha != self.alpha \
                or rules.beta != self.beta:
            raise ValueError(
                f"digit bob needs alpha = 4*3^-{self.n}, beta = (1/4)*3^-{self.n}")
        if t.config.d != 2:
            raise ValueError("digit bob is two-dimensional")

    def next_move(self, t):
        self._check_config(t)
        if t.last_bob_ball() is None:
            return Ball(point([F(3, 2), F(3, 2)]), F(1, 2))
        self.k += 1
        k, n = self.k, self.n
        a_ball = t.last_alice_move().ball
        level_lo = (2 * k - 1) * n
        level_hi = 2 * n * k
        expected = 2 * F(3) ** -level_lo
        assert a_ball.radius == expected, "classic radius bookkeeping broken"
        h = INSCRIBED * a_ball.radius
        centers = []
        for c in a_ball.center:
            m = _digit_cell_start(c - h, c + h, level_lo, residue=None)
            assert m is not None, "complete cell missing inside alice ball"
            cur = F(m, 1) / F(3) ** level_lo
            width = F(1, 1) / F(3) ** level_lo
            for _ in range(level_lo + 1, level_hi + 1):
                width /= 3
                cur += width  # descend into the digit-1 child
            centers.append(cur + width / 2)
        radius = F(1, 2) * F(3) ** -level_hi
        return Ball(point(centers), radius)


def digit_alice_S(beta: Fraction) -> DigitAlice:
    return DigitAlice(beta)


def digit_bob(n: int) -> DigitBob:
    return DigitBob(n)
