"""Transporting an absolute-game strategy through a C^1 diffeomorphism.

A winning strategy for a target set S gives a strategy for f^{-1}(S): Alice
mirrors the real game into a synthetic shadow game on the image side, asks
the inner strategy there, and pulls its removed neighborhoods back through a
linearization of f^{-1}.

Constant bookkeeping, all exposed in the certificate hints:

* C1 >= sup ||J_f||, C2 >= sup ||J_f^{-1}|| over the domain ball U, C = 2 C1 C2;
* n = smallest integer with C (beta + 1) beta^{n-2} < 1, beta' = beta^n;
* eta = (1 + 1/beta) beta', so every pulled-back width Cn eta rho is < beta rho
  (the n-condition is exactly that inequality, asserted each time).

Shadow-game moves: whenever the real radius has shrunk below beta^{n-1} of
the radius at the previous shadow move, Bob's ball B(x, rho) is forwarded as
B(f(x), C1 rho).  The shadow radii then shrink by a factor in [beta^n,
beta^{n-1}) per shadow turn, which is what the inner strategy (playing
parameter beta' = beta^n) needs.  Shadow balls are bookkeeping, not engine
moves; they are never legality-checked.

The map oracles are trusted for strategy decisions only; any final claim
about the image point is re-checked by an independent certificate on an
image ball computed with the same C1 (exactly, for one-dimensional affine
maps).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from ..engine import (
    AbsoluteRules,
    AliceNeighborhoodMove,
    AliceStrategy,
    BobMove,
    FullSpace,
    GameConfig,
    Transcript,
)
from ..geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    ball_contains_ball,
    format_scalar,
    point,
    project_point_subspace,
    scalar,
    solve_linear,
    sqrt_upper,
)
from .common import dummy_neighborhood_move

F = Fraction


def _frobenius_upper(rows) -> Fraction:
    s = sum(scalar(v) * scalar(v) for row in rows for v in row)
    return sqrt_upper(s)


class AffineMap:
    """f(x) = A x + b with exact rational entries.  All oracles are exact."""

    method = "exact-affine"

    def __init__(self, matrix: Sequence[Sequence[Fraction]], offset: Sequence[Fraction]):
        self.matrix = tuple(tuple(scalar(v) for v in row) for row in matrix)
        self.offset = point(offset)
        self.d = len(self.offset)
        if len(self.matrix) != self.d or any(len(r) != self.d for r in self.matrix):
            raise ValueError("matrix shape mismatch")
        cols = []
        for j in range(self.d):
            e = [F(1) if i == j else F(0) for i in range(self.d)]
            cols.append(solve_linear(self.matrix, e))  # raises if singular
        self.inverse_matrix = tuple(tuple(cols[j][i] for j in range(self.d))
                                    for i in range(self.d))

    def apply(self, x) -> tuple:
        return tuple(sum(r[j] * x[j] for j in range(self.d)) + o
                     for r, o in zip(self.matrix, self.offset))

    def inverse(self, y, seed=None) -> tuple:
        rhs = [y[i] - self.offset[i] for i in range(self.d)]
        return tuple(solve_linear(self.matrix, rhs))

    def jacobian_rows(self, x) -> tuple:
        return self.matrix

    def inverse_jacobian_rows(self, x_preimage) -> tuple:
        return self.inverse_matrix

    def norm_bounds(self, domain: Ball, grid_n: int) -> tuple[Fraction, Fraction]:
        return _frobenius_upper(self.matrix), _frobenius_upper(self.inverse_matrix)

    def distortion(self, ball: Ball, grid_n: int) -> Fraction:
        return F(0)  # affine: f(x) - f(y) = J (x - y) identically

    def image_ball(self, ball: Ball) -> Optional[Ball]:
        if self.d != 1:
            return None
        a = self.matrix[0][0]
        return Ball(self.apply(ball.center), abs(a) * ball.radius)


def transported_ba_constant(fmap: AffineMap, c: Fraction) -> tuple[Fraction, int]:
    """How an approximation constant moves through y = a x + b in d = 1.

    A rational p/q pulls back to a rational of denominator dividing
    |num(a)| den(b) q, so |y - p/q| = |a| |x - pullback| >= c' / q^2 with
    c' = |a| c / (num(a) den(b))^2.  Returns (c', m) where m is that
    denominator factor: a quality-c claim checked up to Q on the x side
    only guarantees the image up to Q // m.
    """
    if fmap.d != 1:
        raise ValueError("constant transport is a d = 1 affine computation")
    a = fmap.matrix[0][0]
    if a == 0:
        raise ValueError("map must be invertible")
    m = abs(a.numerator) * fmap.offset[0].denominator
    return abs(a) * scalar(c) / (m * m), m


class SampledMap:
    """Black-box C^1 map: float callables, grid-sampled constants.

    `jacobian(x)` returns a dense row-major matrix (nested sequences or a
    scalar for d = 1).  `f_inverse` may be omitted; Newton iteration with the
    supplied Jacobian is used instead.  Norm bounds carry a x1.25 safety
    inflation and are only as good as the grid; certificates downstream do
    not depend on them.
    """

    method = "sampled-grid"

    def __init__(self, d: int, f: Callable, jacobian: Callable,
                 f_inverse: Optional[Callable] = None):
        self.d = d
        self.f = f
        self.jac = jacobian
        self.f_inv = f_inverse

    def _jac_rows(self, xf):
        j = self.jac(xf)
        if self.d == 1 and not isinstance(j, (list, tuple)):
            return [[float(j)]]
        return [[float(v) for v in row] for row in j]

    def apply(self, x) -> tuple:
        xf = [float(c) for c in x]
        y = self.f(xf[0]) if self.d == 1 else self.f(xf)
        if self.d == 1 and not isinstance(y, (list, tuple)):
            y = [y]
        return point([F(float(c)) for c in y])

    def inverse(self, y, seed) -> tuple:
        yf = [float(c) for c in y]
        if self.f_inv is not None:
            x = self.f_inv(yf[0]) if self.d == 1 else self.f_inv(yf)
            if self.d == 1 and not isinstance(x, (list, tuple)):
                x = [x]
            return point([F(float(c)) for c in x])
        import numpy as np

        x = np.array([float(c) for c in seed], dtype=float)
        target = np.array(yf, dtype=float)
        for _ in range(30):
            fx = self.f(x[0]) if self.d == 1 else self.f(list(x))
            fx = np.atleast_1d(np.asarray(fx, dtype=float))
            jac = np.asarray(self._jac_rows(list(x)), dtype=float)
            x = x - np.linalg.solve(jac, fx - target)
        return point([F(float(c)) for c in x])

    def jacobian_rows(self, x):
        return self._jac_rows([float(c) for c in x])

    def inverse_jacobian_rows(self, x_preimage):
        import numpy as np

        jac = np.asarray(self.jacobian_rows(x_preimage), dtype=float)
        return np.linalg.inv(jac).tolist()

    def _grid(self, ball: Ball, grid_n: int):
        import itertools

        c = [float(v) for v in ball.center]
        r = float(ball.radius)
        axes = [[ci - r + 2 * r * t / (grid_n - 1) for t in range(grid_n)] for ci in c]
        pts = []
        for tup in itertools.product(*axes):
            if sum((a - b) ** 2 for a, b in zip(tup, c)) <= r * r + 1e-12:
                pts.append(list(tup))
        return pts

    def norm_bounds(self, domain: Ball, grid_n: int) -> tuple[Fraction, Fraction]:
        import numpy as np

        c1 = 0.0
        c2 = 0.0
        for p in self._grid(domain, grid_n):
            sv = np.linalg.svd(np.asarray(self._jac_rows(p)), compute_uv=False)
            if sv[-1] <= 1e-12:
                raise ValueError("Jacobian singular at a grid point")
            c1 = max(c1, float(sv[0]))
            c2 = max(c2, 1.0 / float(sv[-1]))
        return F(c1 * 1.25), F(c2 * 1.25)

    def distortion(self, ball: Ball, grid_n: int) -> float:
        """sup over grid pairs of ||f(x)-f(y)-J_c(x-y)|| / ||x-y||."""
        import numpy as np

        jc = np.asarray(self._jac_rows([float(v) for v in ball.center]))
        pts = self._grid(ball, grid_n)
        vals = []
        for p in pts:
            fp = np.atleast_1d(np.asarray(
                self.f(p[0]) if self.d == 1 else self.f(p), dtype=float))
            vals.append((np.asarray(p), fp))
        worst = 0.0
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                dx = vals[i][0] - vals[j][0]
                nx = float(np.linalg.norm(dx))
                if nx == 0.0:
                    continue
                dev = vals[i][1] - vals[j][1] - jc @ dx
                worst = max(worst, float(np.linalg.norm(dev)) / nx)
        return worst

    def image_ball(self, ball: Ball) -> Optional[Ball]:
        return None


class PullbackAlice(AliceStrategy):
    def __init__(self, inner_factory: Callable[[Fraction], AliceStrategy],
                 fmap, domain: Ball, beta: Fraction, grid_n: int = 9,
                 shadow_horizon: int = 512):
        beta = scalar(beta)
        if not 0 < beta < F(1, 3):
            raise ValueError("need 0 < beta < 1/3")
        self.fmap = fmap
        self.domain = domain
        self.beta = beta
        self.grid_n = grid_n
        self.shadow_horizon = shadow_horizon
        self.d = domain.dim
        c1, c2 = fmap.norm_bounds(domain, grid_n)
        self.c1, self.c2 = c1, c2
        self.big_c = 2 * c1 * c2
        n = None
        for cand in range(2, 65):
            if self.big_c * (beta + 1) * beta ** (cand - 2) < 1:
                n = cand
                break
        if n is None:
            raise ValueError("no n <= 64 satisfies C (beta+1) beta^(n-2) < 1")
        self.n = n
        self.beta_prime = beta**n
        if not self.beta_prime < F(1, 3):
            raise ValueError("beta^n must be below 1/3")
        self.eta = (1 + 1 / beta) * self.beta_prime
        self.inner_factory = inner_factory
        self.reset()

    def reset(self):
        self.inner = self.inner_factory(self.beta_prime)
        self.inner.reset()
        self.active = False
        self.last_shadow_radius: Optional[Fraction] = None
        self.shadow = Transcript(config=GameConfig(
            rules=AbsoluteRules(k=self.d - 1, beta=self.beta_prime),
            arena=FullSpace(self.d),
            horizon=self.shadow_horizon,
        ))
        self.ratio_log: list[str] = []

    def _shadow_ball(self, ball: Ball) -> Ball:
        return Ball(self.fmap.apply(ball.center), self.c1 * ball.radius)

    def next_move(self, t):
        rules = t.config.rules
        ball = t.last_bob_ball()
        beta = self.beta
        if not self.active:
            threshold = 2 * self.c2 * (1 + 1 / beta) * self.beta_prime
            if ball_contains_ball(self.domain, ball) and \
                    self.fmap.distortion(ball, self.grid_n) <= threshold:
                self.active = True
            else:
                return dummy_neighborhood_move(ball, rules.k, beta)
        if self.last_shadow_radius is not None:
            ratio = ball.radius / self.last_shadow_radius
            if ratio >= beta ** (self.n - 1):
                return dummy_neighborhood_move(ball, rules.k, beta)
            assert self.beta**self.n <= ratio, "shadow radius ratio fell below beta^n"
            self.ratio_log.append(format_scalar(ratio))
        self.last_shadow_radius = ball.radius
        shadow_ball = self._shadow_ball(ball)
        self.shadow.moves.append(BobMove(shadow_ball))
        inner_move = self.inner.next_move(self.shadow)
        if not isinstance(inner_move, AliceNeighborhoodMove):
            raise ValueError("inner strategy must play neighborhood moves")
        self.shadow.moves.append(inner_move)
        y_prime = project_point_subspace(shadow_ball.center, inner_move.nbhd.subspace)
        anchor = self.fmap.inverse(y_prime, seed=ball.center)
        inv_rows = [[scalar(v) for v in row]
                    for row in self.fmap.inverse_jacobian_rows(anchor)]
        dirs = tuple(
            tuple(sum(row[j] * v[j] for j in range(self.d)) for row in inv_rows)
            for v in inner_move.nbhd.subspace.directions
        )
        eps = self.big_c * self.eta * ball.radius
        assert eps < beta * ball.radius  # the n-condition, verbatim
        return AliceNeighborhoodMove(Neighborhood(AffineSubspace(anchor, dirs), eps))

    def certificate_hints(self, t) -> dict:
        hints = {
            "strategy": "pullback",
            "method": self.fmap.method,
            "C1": format_scalar(self.c1),
            "C2": format_scalar(self.c2),
            "C": format_scalar(self.big_c),
            "n": self.n,
            "beta_prime": format_scalar(self.beta_prime),
            "eta": format_scalar(self.eta),
            "active": self.active,
            "shadow_rounds": self.shadow.rounds_completed(),
            "shadow_ratios": self.ratio_log,
        }
        inner_hints = self.inner.certificate_hints(self.shadow)
        if inner_hints:
            hints["inner"] = inner_hints
        last = self.shadow.last_bob_ball()
        if last is not None:
            hints["shadow_final_center"] = [format_scalar(c) for c in last.center]
            hints["shadow_final_radius"] = format_scalar(last.radius)
        return hints

    def image_ball(self, ball: Ball) -> Ball:
        exact = self.fmap.image_ball(ball)
        if exact is not None:
            return exact
        return self._shadow_ball(ball)


def pullback_alice(inner_factory, fmap, domain: Ball, beta: Fraction,
                   grid_n: int = 9, shadow_horizon: int = 512) -> PullbackAlice:
    return PullbackAlice(inner_factory, fmap, domain, beta, grid_n, shadow_horizon)
