"""Independent certificates for finished games and dimension bounds.

Certificates never look at how a strategy played; they take the surviving
ball (plus the strategy's *claimed* constants) and re-verify the claim from
scratch with exact arithmetic wherever the inputs are rational:

* ``ba_certificate``      -- no rational p/q with q <= Q comes closer to the
  ball than c q^{-(1+1/d)} (minus an optional explicit slack).
* ``orbit_certificate``   -- the matrix orbit of the ball's center stays
  t-far from the lattice translates of y, with a growth allowance for the
  ball radius.
* ``vwa_count``           -- exact count of reduced rational solutions of
  ||x - p/q|| < q^{-tau}, q <= Q.
* digit certificates      -- exact base-3 digit extraction on the ball.
* dimension bounds        -- high-precision closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp

from .geometry import Ball, format_scalar, point, scalar, sq_dist, sqrt_upper

F = Fraction


@dataclass
class Certificate:
    kind: str
    passed: bool
    exact: bool
    details: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    partial: bool = False

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "passed": self.passed,
            "exact": self.exact,
            "details": self.details,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.partial:
            out["partial"] = True
        return out


# ---------------------------------------------------------------------------
# integer root helpers

def iroot_floor(x: Fraction, e: int) -> int:
    """Largest integer q >= 0 with q^e <= x, exact."""
    x = scalar(x)
    if x < 0:
        raise ValueError("negative radicand")
    guess = int(round(float(x) ** (1.0 / e))) if x > 0 else 0
    q = max(guess, 0)
    while q ** e * x.denominator > x.numerator:
        q -= 1
    while (q + 1) ** e * x.denominator <= x.numerator:
        q += 1
    return q


def iroot_ceil(x: Fraction, e: int) -> int:
    q = iroot_floor(x, e)
    return q if F(q) ** e == x else q + 1


def ba_certificate_q(beta: Fraction, d: int, k_max: int) -> int:
    """The certificate depth matching k_max covered windows: ceil((1/beta)^{d k/(d+1)})."""
    if k_max <= 0:
        return 1
    x = (1 / scalar(beta)) ** (d * k_max)
    return iroot_ceil(x, d + 1)


# ---------------------------------------------------------------------------
# badly-approximable certificate

def _clears_rational_threshold(radius: Fraction, s2: Fraction, t: Fraction) -> bool:
    """Exact test of max(0, sqrt(s2) - radius) >= t for rational t (d = 1 path)."""
    if t <= 0:
        return True  # a nonpositive demand holds even for interior rationals
    rhs = radius + t
    return s2 >= rhs * rhs


def _clears_sqrt_threshold(radius: Fraction, s2: Fraction, t2: Fraction) -> bool:
    """Exact test of sqrt(s2) >= radius + sqrt(t2) via double squaring."""
    lhs = s2 - radius * radius - t2
    if lhs < 0:
        return False
    return lhs * lhs >= 4 * radius * radius * t2


def ba_certificate(ball: Ball, c: Fraction, q_max: int, slack: Fraction = F(0),
                   budget: int = 10 ** 7) -> Certificate:
    """Verify dist(ball, p/q) >= c q^{-(1+1/d)} - slack for all q <= q_max.

    Exact for d = 1 and d = 2 (double squaring); other d use high-precision
    floats rounded toward failure.  Exceeding the enumeration budget yields a
    partial verdict with the achieved q.
    """
    c, slack = scalar(c), scalar(slack)
    d = ball.dim
    r = ball.radius
    spent = 0
    worst = None
    worst_margin = math.inf
    exact = d == 1 or (d == 2 and slack == 0)
    if c <= slack:
        # the demanded clearance is <= 0 at every q: vacuously true
        return Certificate(
            kind="ba", passed=True, exact=True,
            details={"c": format_scalar(c), "q_max": q_max,
                     "slack": format_scalar(slack), "d": d,
                     "candidates_checked": 0, "vacuous": True},
        )
    for q in range(1, q_max + 1):
        # rational upper bound of the threshold c q^{-(d+1)/d}, for the box
        if d == 1:
            t_up = c / F(q) ** 2
        elif d == 2:
            t_up = c * sqrt_upper(F(1, q ** 3))
        else:
            t_up = c / F(q)
        reach = r + t_up
        lo_hi = []
        for ci in ball.center:
            lo = math.ceil(q * (ci - reach))
            hi = math.floor(q * (ci + reach))
            lo_hi.append((lo, hi))
        count = 1
        for lo, hi in lo_hi:
            count *= max(0, hi - lo + 1)
        spent += count
        if spent > budget:
            return Certificate(
                kind="ba", passed=False, exact=exact, partial=True,
                details={"c": format_scalar(c), "q_requested": q_max,
                         "q_achieved": q - 1, "budget": budget,
                         "slack": format_scalar(slack)},
                witness={"reason": "budget exceeded"},
            )

        def clears(p) -> bool:
            s2 = sq_dist(ball.center, p)
            if d == 1:
                return _clears_rational_threshold(r, s2, c / F(q) ** 2 - slack)
            if d == 2 and slack == 0:
                return _clears_sqrt_threshold(r, s2, c * c / F(q) ** 3)
            t = float(c) * q ** (-(d + 1) / d) - float(slack)
            if t <= 0:
                return True
            return math.sqrt(float(s2)) - float(r) >= t - 1e-15

        def rec(i, acc):
            nonlocal worst, worst_margin
            if i == d:
                p = tuple(F(v, q) for v in acc)
                if not clears(p):
                    margin = math.sqrt(float(sq_dist(ball.center, p))) - float(r)
                    if margin < worst_margin:
                        worst_margin = margin
                        worst = {"q": q, "p": [str(v) for v in acc], "ball_dist": margin}
                    return False
                return True

            lo, hi = lo_hi[i]
            ok = True
            for v in range(lo, hi + 1):
                if not rec(i + 1, acc + [v]):
                    ok = False
            return ok

        if not rec(0, []):
            return Certificate(
                kind="ba", passed=False, exact=exact,
                details={"c": format_scalar(c), "q_max": q_max,
                         "slack": format_scalar(slack), "d": d},
                witness=worst,
            )
    return Certificate(
        kind="ba", passed=True, exact=exact,
        details={"c": format_scalar(c), "q_max": q_max,
                 "slack": format_scalar(slack), "d": d,
                 "candidates_checked": spent},
    )


# ---------------------------------------------------------------------------
# toral orbit certificate

def _mat_mul_int(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a, v):
    n = len(a)
    return tuple(sum(scalar(a[i][j]) * v[j] for j in range(n)) for i in range(n))


def _frobenius_sq(a) -> Fraction:
    return sum((scalar(x) * scalar(x) for row in a for x in row), F(0))


def orbit_certificate(ball: Ball, r_matrix, y, t: Fraction, j_max: int,
                      slack: Fraction = F(0)) -> Certificate:
    """Verify ||R^j c - y - m|| >= t - ||R^j||_F rho for j <= j_max, m in Z^d.

    Exact when y and t are rational.  The Frobenius norm is a growth upper
    bound for the ball's image; once t - growth*rho <= 0 the round is
    vacuously fine (recorded in details).
    """
    t, slack = scalar(t), scalar(slack)
    d = ball.dim
    y = point(y)
    rows = tuple(tuple(int(x) for x in row) for row in r_matrix)
    # the claim parameters ride along so the certificate can be re-run
    claim = {"t": format_scalar(t), "j_max": j_max,
             "matrix": [list(r) for r in rows],
             "y": [format_scalar(c) for c in y]}
    power = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    worst = None
    worst_margin = None
    vacuous_from = None
    for j in range(1, j_max + 1):
        power = _mat_mul_int(power, rows)
        growth = sqrt_upper(_frobenius_sq(power))
        threshold = t - growth * ball.radius - slack
        if threshold <= 0:
            if vacuous_from is None:
                vacuous_from = j
            continue
        v = _mat_vec(power, ball.center)
        w = tuple(vi - yi for vi, yi in zip(v, y))
        m = tuple(round(wi) for wi in w)
        s2 = sum(((wi - mi) ** 2 for wi, mi in zip(w, m)), F(0))
        if s2 < threshold * threshold:
            dist = math.sqrt(float(s2))
            return Certificate(
                kind="orbit", passed=False, exact=True,
                details=dict(claim),
                witness={"j": j, "m": [int(x) for x in m], "dist": dist,
                         "threshold": float(threshold)},
            )
        margin = float(s2) - float(threshold) ** 2
        if worst_margin is None or margin < worst_margin:
            worst_margin = margin
            worst = {"j": j}
    details = dict(claim)
    if vacuous_from is not None:
        details["growth_dominates_from_j"] = vacuous_from
    return Certificate(kind="orbit", passed=True, exact=True,
                       details=details, witness=worst)


# ---------------------------------------------------------------------------
# very-well-approximable counting

def vwa_count(x, tau: Fraction, q_max: int) -> int:
    """Count reduced p/q (q <= q_max) with ||x - p/q|| < q^{-tau}, exactly.

    tau must be rational, so the comparison s2 < q^{-2 tau} can be decided by
    integer powering.  Representatives are reduced: gcd(p_1,...,p_d, q) = 1.
    """
    x = point(x)
    tau = scalar(tau)
    d = len(x)
    a, b = tau.numerator, tau.denominator
    count = 0
    for q in range(1, q_max + 1):
        ranges = []
        for ci in x:
            lo = math.ceil(q * ci - 1)
            hi = math.floor(q * ci + 1)
            ranges.append((lo, hi))

        def rec(i, acc):
            nonlocal count
            if i == d:
                g = 0
                for v in acc:
                    g = math.gcd(g, v)
                g = math.gcd(g, q)
                if g != 1:
                    return
                s2 = sum(((ci - F(v, q)) ** 2 for ci, v in zip(x, acc)), F(0))
                # s2 < q^{-2 tau}  <=>  s2^b * q^{2a} < 1
                if (s2 ** b) * F(q) ** (2 * a) < 1:
                    count += 1
                return
            lo, hi = ranges[i]
            for v in range(lo, hi + 1):
                rec(i + 1, acc + [v])

        rec(0, [])
    return count


# ---------------------------------------------------------------------------
# digit certificates (base 3, exact on rationals)

def base3_digit(x: Fraction, i: int) -> int:
    """Digit i of the base-3 expansion of x; i = 0 is the units digit.

    Floor semantics: digit i is floor(x 3^i) mod 3, defined for every
    rational.  On [0, 1) this is the usual fractional expansion; elsewhere it
    is the unique shift-invariant extension (the digit is constant on cells
    [m 3^-i, (m+1) 3^-i)), which is the form the strategies guarantee.
    """
    x = scalar(x)
    return int((x * 3 ** i) // 1) % 3


def ball_digit_stability(ball: Ball, depth: int) -> int:
    """Largest level L <= depth such that all digits up to L are constant on
    the ball (every coordinate interval stays in one level-L cell)."""
    stable = depth
    for ci in ball.center:
        lo, hi = ci - ball.radius, ci + ball.radius
        level = depth
        while level >= 0:
            if (lo * 3 ** level) // 1 == (hi * 3 ** level) // 1:
                break
            level -= 1
        stable = min(stable, level)
    return stable


def digit_zero_certificate(ball: Ball, indices: Sequence[int], depth: int) -> Certificate:
    """All points of the ball have digit 0 at each emitted index <= depth,
    in every coordinate.  Partial verdict when the ball straddles cells."""
    stable = ball_digit_stability(ball, depth)
    relevant = [i for i in indices if i <= depth]
    checkable = [i for i in relevant if i <= stable]
    for i in checkable:
        for ci in ball.center:
            if base3_digit(ci - ball.radius, i) != 0:
                return Certificate(
                    kind="digit-zero", passed=False, exact=True,
                    details={"depth": depth, "stable_prefix": stable},
                    witness={"index": i, "digit": base3_digit(ci - ball.radius, i)},
                )
    complete = len(checkable) == len(relevant)
    return Certificate(
        kind="digit-zero", passed=complete, exact=True,
        partial=not complete,
        details={"depth": depth, "stable_prefix": stable,
                 "indices_checked": checkable, "indices_requested": relevant},
    )


def digit_disjunction_certificate(ball: Ball, n: int, depth: int) -> Certificate:
    """For every i <= depth: x_{i+n} = 1 or y_i = 1 on the whole ball (d=2)."""
    assert ball.dim == 2
    stable = ball_digit_stability(ball, depth + n)
    if stable < depth + n:
        return Certificate(
            kind="digit-disjunction", passed=False, exact=True, partial=True,
            details={"depth": depth, "n": n, "stable_prefix": stable},
        )
    x0 = ball.center[0] - ball.radius
    y0 = ball.center[1] - ball.radius
    for i in range(0, depth + 1):
        if base3_digit(x0, i + n) != 1 and base3_digit(y0, i) != 1:
            return Certificate(
                kind="digit-disjunction", passed=False, exact=True,
                details={"depth": depth, "n": n},
                witness={"i": i, "x_digit": base3_digit(x0, i + n),
                         "y_digit": base3_digit(y0, i)},
            )
    return Certificate(kind="digit-disjunction", passed=True, exact=True,
                       details={"depth": depth, "n": n})


# ---------------------------------------------------------------------------
# dimension bounds

def dim_lower_bound_diffuse(k: int, beta: Fraction, dps: int = 40) -> float:
    """-log(k+2) / (log beta - log(2+beta)), evaluated in high precision."""
    beta = scalar(beta)
    with mp.workdps(dps):
        b = mp.mpf(beta.numerator) / beta.denominator
        val = -mp.log(k + 2) / (mp.log(b) - mp.log(2 + b))
        return float(val)


def dim_lower_bound_decay(gamma: float) -> float:
    """An absolutely decaying measure's support has dimension >= gamma."""
    return float(gamma)


def diffuse_beta_from_decay(c_const: float, gamma: float) -> Fraction:
    """A rational beta with C beta^gamma < 1 (verified with margin), i.e. a
    diffuseness parameter implied by an (ad) decay constant pair."""
    if c_const <= 1:
        # any beta < 1 works; cap just under 1
        return F(2 ** 20 - 1, 2 ** 20)
    with mp.workdps(60):
        raw = mp.mpf(1) / mp.mpf(c_const) ** (mp.mpf(1) / gamma)
        beta = F(mp.nstr(raw * mp.mpf("0.999"), 25))
        if beta >= F(1, 10 ** 6):
            # keep denominators tame when the scale allows it
            beta = beta.limit_denominator(10 ** 12)
        if beta <= 0:
            raise ValueError("decay constants leave no usable beta")
        check = mp.log(mp.mpf(c_const)) + mp.mpf(gamma) * mp.log(mp.mpf(beta.numerator) / beta.denominator)
        assert check < -mp.mpf(10) ** -25, "margin check failed"
    return beta
