"""Alice strategy keeping the outcome's R-orbit away from a target point on
the torus: the final x should have dist(R^j x - y, Z^d) bounded below.

Two branches, chosen by the spectral radius lambda of the integer matrix R
(which must be semisimple and nonsingular; checked exactly).

* lambda = 1 (then R^N = I for some N, found exactly): the set to avoid is
  the finite-mod-Z^d collection  { R^{N-i} y + Z^d : i < N }.  Alice removes,
  each turn, a hyperplane through the offending points nearest her ball with
  the maximal width beta rho.  The exported clearance t is *measured* on the
  final transcript and re-verified by the orbit certificate.

* lambda > 1: the classical quantitative construction.  Constants
  (ell, a, b, delta1, delta2, M, t0) are estimated once (exact where the
  data is rational, sampled floats with safety factors elsewhere) and then
  t = min(t0, beta rho_act / (2 M b delta1)) is fixed at activation, which
  happens when rho <= (beta^2/2) delta2 t0.  Stage k handles the orbit times
  j with lambda^j in [beta^-k, beta^-{k-1}): each preimage R^{-j} B(y+m, t)
  meeting the current ball lies in a thin slab around the affine subspace
  R^{-j}(y+m) + W (W = the contracting invariant complement of the top
  eigenspace V), and Alice removes that slab's hyperplane, one per turn,
  with width min(beta^{k+1} rho_act, beta rho).

The float eigen-data only steers the strategy; every exported claim is
re-checked by the exact orbit certificate downstream.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp
import numpy as np

from ..engine import AliceNeighborhoodMove, AliceStrategy
from ..geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    complete_to_dimension,
    format_scalar,
    point,
    scalar,
    solve_linear,
    sq_dist_point_subspace,
    sqrt_lower,
    sqrt_upper,
    subspace_through_points,
)
from .common import dummy_neighborhood_move

F = Fraction


# ---------------------------------------------------------------------------
# exact matrix helpers (Fraction entries)

def _identity(d: int):
    return tuple(tuple(F(1) if i == j else F(0) for j in range(d)) for i in range(d))


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def _mat_scale_add(a, s, b):
    return tuple(
        tuple(av + s * bv for av, bv in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _det_exact(rows) -> Fraction:
    n = len(rows)
    m = [list(r) for r in rows]
    det = F(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return F(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _inverse_exact(rows):
    n = len(rows)
    cols = []
    for j in range(n):
        e = [F(1) if i == j else F(0) for i in range(n)]
        cols.append(solve_linear(rows, e))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _frobenius_sq(rows) -> Fraction:
    return sum((x * x for row in rows for x in row), F(0))


def _is_semisimple(rows) -> bool:
    """Exact test: the squarefree part of the characteristic polynomial
    annihilates the matrix."""
    import sympy

    lam = sympy.Symbol("lam")
    p = sympy.Matrix([[int(x) for x in row] for row in rows]).charpoly(lam).as_expr()
    g = sympy.gcd(p, sympy.diff(p, lam))
    m_expr = sympy.cancel(p / g)
    coeffs = sympy.Poly(m_expr, lam).all_coeffs()
    frac = [F(int(c.p), int(c.q)) for c in [sympy.Rational(c) for c in coeffs]]
    d = len(rows)
    ident = _identity(d)
    acc = tuple(tuple(frac[0] * v for v in row) for row in ident)
    for c in frac[1:]:
        acc = _mat_scale_add(_mat_mul(acc, rows), c, ident)
    return all(v == 0 for row in acc for v in row)


# ---------------------------------------------------------------------------
# the strategy

class ToralAlice(AliceStrategy):
    def __init__(self, r_matrix: Sequence[Sequence[int]], y: Sequence, beta: Fraction,
                 z_cap: int = 8, stage_cap: int = 24, sample_seed: int = 0):
        beta = scalar(beta)
        if not 0 < beta < F(1, 3):
            raise ValueError("need 0 < beta < 1/3")
        rows = tuple(tuple(F(int(x)) for x in row) for row in r_matrix)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("matrix must be square")
        det = _det_exact(rows)
        if det == 0:
            raise ValueError("matrix must be nonsingular")
        if not _is_semisimple(rows):
            raise ValueError("matrix is not semisimple")
        self.rows = rows
        self.d = d
        self.y = point(y)
        self.beta = beta
        self.z_cap = z_cap
        self.stage_cap = stage_cap
        self.det = det

        rf = np.array([[float(x) for x in row] for row in rows])
        w, vecs = np.linalg.eig(rf)
        for i in range(d):
            v = vecs[:, i]
            if np.linalg.norm(rf @ v - w[i] * v) > 1e-10 * max(1.0, abs(w[i])):
                raise ValueError("eigen-solver residual above tolerance")
        self.lam = float(max(abs(w)))
        if self.lam < 1 - 1e-10:
            raise ValueError("integer nonsingular matrix cannot contract")

        if abs(self.lam - 1) <= 1e-10:
            self.branch = "kronecker"
            self._init_kronecker()
        else:
            self.branch = "expanding"
            self._init_expanding(w, vecs, sample_seed)
        self.reset()

    def reset(self):
        self.activation_rho: Optional[Fraction] = None
        self.t: Optional[Fraction] = None
        self.stage = 0
        self.removed: set = set()

    # -- lambda = 1 ---------------------------------------------------------

    def _init_kronecker(self):
        power = _identity(self.d)
        order = None
        for n in range(1, 65):
            power = _mat_mul(power, self.rows)
            if power == _identity(self.d):
                order = n
                break
        if order is None:
            raise ValueError("spectral radius 1 but no power R^N = I with N <= 64")
        self.order = order
        pts = []
        power = _identity(self.d)
        inv = _inverse_exact(self.rows)
        for _ in range(order):
            z = tuple(c - math.floor(c) for c in _mat_vec(power, self.y))
            if z not in pts:
                pts.append(z)
            power = _mat_mul(power, inv)
        self.base_points = pts

    def _kronecker_move(self, t):
        ball = t.last_bob_ball()
        c, rho = ball.center, ball.radius
        reach = (1 + 2 * self.beta) * rho
        offenders = []
        for z in self.base_points:
            axes = []
            for ci, zi in zip(c, z):
                lo = math.ceil(ci - zi - reach)
                hi = math.floor(ci - zi + reach)
                axes.append(range(lo, hi + 1))
            for m in itertools.product(*axes):
                p = tuple(zi + mi for zi, mi in zip(z, m))
                s2 = sum((pi - ci) ** 2 for pi, ci in zip(p, c))
                if s2 <= reach * reach:
                    offenders.append((s2, p))
        if not offenders:
            return dummy_neighborhood_move(ball, self.d - 1, self.beta)
        offenders.sort(key=lambda it: it[0])
        chosen = [p for _, p in offenders[: self.d]]
        sub = subspace_through_points(chosen, self.d - 1, self.d)
        return AliceNeighborhoodMove(Neighborhood(sub, self.beta * rho))

    def measured_clearance(self, final_ball: Ball, j_max: int = 20) -> Fraction:
        """Exact rational lower bound on min_j dist(R^j c - y, Z^d), j <= j_max."""
        best: Optional[Fraction] = None
        power = _identity(self.d)
        for _ in range(1, j_max + 1):
            power = _mat_mul(power, self.rows)
            u = tuple(v - yi for v, yi in zip(_mat_vec(power, final_ball.center), self.y))
            m = tuple(round(ui) for ui in u)
            s2 = sum(((ui - mi) ** 2 for ui, mi in zip(u, m)), F(0))
            lo = sqrt_lower(s2)
            if best is None or lo < best:
                best = lo
        return best if best is not None else F(0)

    # -- lambda > 1 ---------------------------------------------------------

    def _init_expanding(self, w, vecs, sample_seed):
        beta, d = self.beta, self.d
        lam = self.lam
        ell = 1
        while lam ** (-ell) >= float(beta):
            ell += 1
            if ell > 1024:
                raise ValueError("cannot satisfy lambda^-ell < beta")
        self.ell = ell
        self.a = F(1, abs(int(self.det)) ** ell)

        inv = _inverse_exact(self.rows)
        self.inv_powers = {0: _identity(d)}
        for j in range(1, ell + 1):
            self.inv_powers[j] = _mat_mul(self.inv_powers[j - 1], inv)
        b = F(1)
        for j in range(1, ell + 1):
            b = max(b, sqrt_upper(_frobenius_sq(self.inv_powers[j])))
        self.b = b
        self._inv_exact = inv

        # invariant subspaces from the float eigen-data, realified
        top = [i for i in range(d) if abs(w[i]) >= lam - 1e-9 * lam]
        rest = [i for i in range(d) if i not in top]
        self.v_basis = self._real_span(vecs[:, top])
        self.w_basis = (
            self._real_span(vecs[:, rest]) if rest else np.zeros((d, 0))
        )
        if self.v_basis.shape[1] + self.w_basis.shape[1] != d:
            raise ValueError("invariant subspaces do not span (non-semisimple data)")

        # projection onto V along W, and the sampled distortion constants
        rf = np.array([[float(x) for x in row] for row in self.rows])
        full = np.hstack([self.v_basis, self.w_basis])
        coords = np.linalg.inv(full)
        proj = self.v_basis @ coords[: self.v_basis.shape[1], :]
        self.m_proj = float(np.linalg.svd(proj, compute_uv=False)[0]) * 1.01

        rng = np.random.default_rng(sample_seed)
        ratios = []
        rinv_f = np.linalg.inv(rf)
        for _ in range(1000):
            coeff = rng.standard_normal(self.v_basis.shape[1])
            v = self.v_basis @ coeff
            nv = np.linalg.norm(v)
            if nv < 1e-12:
                continue
            x = v.copy()
            for j in range(1, 31):
                x = rinv_f @ x
                ratios.append(np.linalg.norm(x) * lam**j / nv)
        self.delta1 = float(max(ratios)) * 1.01
        self.delta2 = float(min(ratios)) * 0.99

        # rationalized W basis, completed to a hyperplane direction set
        w_rat = [tuple(F(float(self.w_basis[i, j])) for i in range(d))
                 for j in range(self.w_basis.shape[1])]
        self.slab_dirs = tuple(complete_to_dimension(list(w_rat), d, d - 1))

        self.t0 = self._min_positive_t0()
        d2 = F(float(self.delta2))
        self.act_threshold = beta * beta / 2 * d2 * self.t0
        self._thresh = lambda k: d2 * self.t0 * beta ** (k + 1) / 2

        # exact integer powers of R for the pair enumeration
        self.fwd_powers = {0: _identity(d)}
        self.fwd_frob = {0: sqrt_upper(_frobenius_sq(self.fwd_powers[0]))}

    @staticmethod
    def _real_span(cols) -> np.ndarray:
        raw = np.hstack([cols.real, cols.imag])
        u, s, _ = np.linalg.svd(raw, full_matrices=False)
        if s.size == 0 or s[0] < 1e-12:
            return raw[:, :0]
        return np.ascontiguousarray(u[:, s > 1e-9 * s[0]])

    def _min_positive_t0(self) -> Fraction:
        """min over j <= ell of positive dist(y - R^{-j} y, a Z^d) / (3 b).

        The integer box has half-width z_cap; a completeness guard asserts
        that points outside the box cannot improve the minimum.
        """
        best_s2: Optional[Fraction] = None
        w_norm_up = F(0)
        for j in range(0, self.ell + 1):
            wv = tuple(
                yi - vi for yi, vi in zip(self.y, _mat_vec(self.inv_powers[j], self.y))
            )
            w_norm_up = max(w_norm_up, sqrt_upper(sum((x * x for x in wv), F(0))))
            for m in itertools.product(range(-self.z_cap, self.z_cap + 1), repeat=self.d):
                z = tuple(self.a * mi for mi in m)
                s2 = sum(((wi - zi) ** 2 for wi, zi in zip(wv, z)), F(0))
                if s2 > 0 and (best_s2 is None or s2 < best_s2):
                    best_s2 = s2
        if best_s2 is None:
            raise ValueError("no positive separation: y is a fixed lattice orbit")
        found = sqrt_lower(best_s2)
        # outside the box, ||z|| >= a z_cap, so the distance is at least
        # a z_cap - ||w||; assert that cannot beat the found minimum
        assert self.a * self.z_cap - w_norm_up >= found, "z_cap too small"
        return found / (3 * self.b)

    def _fwd(self, j: int):
        while j not in self.fwd_powers:
            nxt = max(self.fwd_powers) + 1
            self.fwd_powers[nxt] = _mat_mul(self.fwd_powers[nxt - 1], self.rows)
            self.fwd_frob[nxt] = sqrt_upper(_frobenius_sq(self.fwd_powers[nxt]))
        return self.fwd_powers[j]

    def _inv_pow(self, j: int):
        while j not in self.inv_powers:
            nxt = max(self.inv_powers) + 1
            self.inv_powers[nxt] = _mat_mul(self.inv_powers[nxt - 1], self._inv_exact)
        return self.inv_powers[j]

    def _stage_js(self, k: int) -> list[int]:
        """Orbit times j with lambda^j in [beta^-k, beta^-(k+1))."""
        with mp.workdps(50):
            big_l = mp.log(1 / mp.mpf(self.beta.numerator) * self.beta.denominator) \
                / mp.log(self.lam)
            lo_raw = k * big_l
            hi_raw = (k + 1) * big_l
            lo = int(mp.ceil(lo_raw - mp.mpf("1e-9")))
            hi = int(mp.ceil(hi_raw - mp.mpf("1e-9"))) - 1
        return [j for j in range(max(lo, 0), min(hi, 200) + 1)]

    def _offending_pairs(self, k: int, ball: Ball) -> list:
        out = []
        c = ball.center
        for j in self._stage_js(k):
            self._fwd(j)
            reach = self.t + self.fwd_frob[j] * ball.radius
            v = tuple(
                vi - yi for vi, yi in zip(_mat_vec(self.fwd_powers[j], c), self.y)
            )
            axes = []
            for vi in v:
                lo = math.ceil(vi - reach)
                hi = math.floor(vi + reach)
                axes.append(range(lo, hi + 1))
            for m in itertools.product(*axes):
                if (j, m) in self.removed:
                    continue
                s2 = sum(((vi - mi) ** 2 for vi, mi in zip(v, m)), F(0))
                if s2 <= reach * reach:
                    out.append((j, m))
        return out

    def _slab_subspace(self, j: int, m) -> AffineSubspace:
        target = tuple(yi + mi for yi, mi in zip(self.y, m))
        anchor = _mat_vec(self._inv_pow(j), target)
        return AffineSubspace(anchor, self.slab_dirs)

    def _expanding_move(self, t):
        ball = t.last_bob_ball()
        beta = self.beta
        if self.activation_rho is None:
            if ball.radius > self.act_threshold:
                return dummy_neighborhood_move(ball, self.d - 1, beta)
            self.activation_rho = ball.radius
            bound = beta * self.activation_rho / (
                2 * F(float(self.m_proj)) * self.b * F(float(self.delta1))
            )
            self.t = min(self.t0, bound)
        while self.stage <= self.stage_cap:
            k = self.stage
            if ball.radius > self._thresh(k):
                break
            pairs = self._offending_pairs(k, ball)
            if not pairs:
                self.stage += 1
                continue
            pairs.sort(
                key=lambda jm: sq_dist_point_subspace(
                    ball.center, self._slab_subspace(*jm)
                )
            )
            j, m = pairs[0]
            self.removed.add((j, m))
            eps = min(beta ** (k + 1) * self.activation_rho, beta * ball.radius)
            return AliceNeighborhoodMove(
                Neighborhood(self._slab_subspace(j, m), eps)
            )
        return dummy_neighborhood_move(ball, self.d - 1, beta)

    # -- shared surface -----------------------------------------------------

    def next_move(self, t):
        rules = t.config.rules
        if rules.k != self.d - 1:
            raise ValueError("this strategy plays the hyperplane game (k = d-1)")
        if self.branch == "kronecker":
            return self._kronecker_move(t)
        return self._expanding_move(t)

    def sampled_delta_check(self, n_samples: int = 1000, j_max: int = 30,
                            seed: int = 12345, rel_slack: float = 1e-8) -> dict:
        """Fresh-sample verification of the two eigendirection bounds."""
        assert self.branch == "expanding"
        rng = np.random.default_rng(seed)
        rf = np.array([[float(x) for x in row] for row in self.rows])
        rinv = np.linalg.inv(rf)
        ok1 = ok2 = True
        worst1 = 0.0
        worst2 = math.inf
        for _ in range(n_samples):
            coeff = rng.standard_normal(self.v_basis.shape[1])
            v = self.v_basis @ coeff
            nv = np.linalg.norm(v)
            if nv < 1e-12:
                continue
            x = v.copy()
            for j in range(1, j_max + 1):
                x = rinv @ x
                ratio = float(np.linalg.norm(x) * self.lam**j / nv)
                worst1 = max(worst1, ratio)
                worst2 = min(worst2, ratio)
                if ratio > self.delta1 * (1 + rel_slack):
                    ok1 = False
                if ratio < self.delta2 * (1 - rel_slack):
                    ok2 = False
        return {"delta1_ok": ok1, "delta2_ok": ok2,
                "max_ratio": worst1, "min_ratio": worst2,
                "delta1": self.delta1, "delta2": self.delta2}

    def certificate_hints(self, t) -> dict:
        hints = {
            "strategy": "toral",
            "branch": self.branch,
            "lambda": self.lam,
            "beta": format_scalar(self.beta),
        }
        if self.branch == "kronecker":
            hints["order"] = self.order
            final = t.last_bob_ball()
            if final is not None:
                measured = self.measured_clearance(final)
                hints["t"] = format_scalar(measured)
                hints["t_is_measured"] = True
            return hints
        hints.update({
            "ell": self.ell,
            "a": format_scalar(self.a),
            "b": format_scalar(self.b),
            "delta1": self.delta1,
            "delta2": self.delta2,
            "M": self.m_proj,
            "t0": format_scalar(self.t0),
            "activated": self.activation_rho is not None,
        })
        if self.activation_rho is not None:
            hints["activation_rho"] = format_scalar(self.activation_rho)
            hints["t"] = format_scalar(self.t)
            hints["stages_done"] = self.stage
            hints["removals"] = len(self.removed)
        else:
            hints["t"] = "0"
        return hints


def toral_alice(r_matrix, y, beta: Fraction, z_cap: int = 8,
                stage_cap: int = 24, sample_seed: int = 0) -> ToralAlice:
    return ToralAlice(r_matrix, y, beta, z_cap, stage_cap, sample_seed)
