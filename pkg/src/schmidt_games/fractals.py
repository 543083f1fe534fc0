"""Closed-set oracles and fractal estimators.

A KOracle answers three questions about a closed set K in R^d:

* ``contains_point(p)`` -- membership of an exact rational point.  This is
  exact for the full space, finite point sets and the middle-thirds Cantor
  set; for a general similarity IFS it is membership in a depth-limited
  cylinder cover (the resolution is the cylinder diameter at that depth).
* ``net(ball, depth)``  -- the points of a depth-limited cover of K lying in
  the given closed ball.  Nets come from global grids, so the net of a
  smaller concentric ball is always a subset of the net of a larger one.
* ``point_in(ball, depth)`` -- some net point in the ball, or None.

On top of the oracles: greedy ball-packing counts, a packing-dimension
estimator (log-log slope over a beta ladder), diffuseness checkers in plain
and strong form, and a heuristic microset width bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    ball_avoids_neighborhood,
    ball_contains_ball,
    format_scalar,
    matrix_rank,
    point,
    scalar,
    solve_linear,
    sq_dist,
    sq_dist_point_subspace,
    sqrt_upper,
)

F = Fraction


# ---------------------------------------------------------------------------
# oracles

class FullSpaceOracle:
    """K = R^d.  Nets are global dyadic grids of step 2^-depth."""

    def __init__(self, d: int):
        self.dim = d

    def contains_point(self, p) -> bool:
        return True

    def root_ball(self) -> Ball:
        return Ball(point([0] * self.dim), F(1))

    def resolution(self, depth: int) -> Fraction:
        return F(1, 2 ** depth)

    def net(self, ball: Ball, depth: int) -> list:
        step = F(1, 2 ** depth)
        ranges = []
        for c in ball.center:
            lo = -((-(c - ball.radius)) // step)  # ceil((c-r)/step)
            hi = (c + ball.radius) // step
            ranges.append((lo, hi))
        out = []

        def rec(i, acc):
            if i == self.dim:
                p = tuple(acc)
                if ball.contains_point(p):
                    out.append(p)
                return
            lo, hi = ranges[i]
            k = lo
            while k <= hi:
                rec(i + 1, acc + [k * step])
                k += 1

        rec(0, [])
        return out

    def point_in(self, ball: Ball, depth: int):
        n = self.net(ball, depth)
        return n[0] if n else None

    def all_points(self):
        return None

    def to_spec(self) -> dict:
        return {"type": "fullspace", "d": self.dim}


class FinitePointSetOracle:
    """K = a finite set of rational points; everything is exact."""

    def __init__(self, points: Sequence):
        self.points = [point(p) for p in points]
        if not self.points:
            raise ValueError("need at least one point")
        self.dim = len(self.points[0])

    def contains_point(self, p) -> bool:
        p = point(p)
        return any(q == p for q in self.points)

    def root_ball(self) -> Ball:
        c = self.points[0]
        r = max((sq_dist(c, q) for q in self.points), default=F(0))
        return Ball(c, sqrt_upper(r) + 1)

    def resolution(self, depth: int) -> Fraction:
        return F(0)

    def net(self, ball: Ball, depth: int) -> list:
        return [q for q in self.points if ball.contains_point(q)]

    def point_in(self, ball: Ball, depth: int):
        n = self.net(ball, depth)
        return n[0] if n else None

    def all_points(self):
        return list(self.points)

    def to_spec(self) -> dict:
        return {"type": "finite", "points": [[format_scalar(c) for c in p] for p in self.points]}


class CantorOracle:
    """The middle-thirds Cantor set on [0, 1], with exact rational membership.

    Membership iterates z -> 3z (on [0,1/3]) or 3z-2 (on [2/3,1]); a rational
    input revisits a state iff its expansion is eventually all 0s and 2s, so
    the loop is a decision procedure, not an approximation.
    """

    dim = 1

    def contains_point(self, p) -> bool:
        p = point(p)
        z = p[0]
        seen = set()
        while True:
            if z < 0 or z > 1:
                return False
            if z in seen:
                return True
            seen.add(z)
            if z <= F(1, 3):
                z = 3 * z
            elif z >= F(2, 3):
                z = 3 * z - 2
            else:
                return False

    def root_ball(self) -> Ball:
        return Ball(point([F(1, 2)]), F(1, 2))

    def resolution(self, depth: int) -> Fraction:
        return F(1, 3 ** depth)

    def net(self, ball: Ball, depth: int) -> list:
        """Endpoints of level-`depth` cylinders meeting the ball (all lie on K)."""
        lo = ball.center[0] - ball.radius
        hi = ball.center[0] + ball.radius
        pts = set()

        def rec(prefix: int, level: int):
            cell_lo = F(prefix, 3 ** level)
            cell_hi = F(prefix + 1, 3 ** level)
            if cell_hi < lo or cell_lo > hi:
                return
            if level == depth:
                if lo <= cell_lo <= hi:
                    pts.add(cell_lo)
                if lo <= cell_hi <= hi:
                    pts.add(cell_hi)
                return
            rec(3 * prefix, level + 1)
            rec(3 * prefix + 2, level + 1)

        rec(0, 0)
        return [point([z]) for z in sorted(pts)]

    def point_in(self, ball: Ball, depth: int):
        n = self.net(ball, depth)
        return n[0] if n else None

    def all_points(self):
        return None

    def to_spec(self) -> dict:
        return {"type": "cantor"}


@dataclass(frozen=True)
class SimilarityMap:
    """x -> ratio * O x + shift with O exactly orthogonal and everything rational."""

    ratio: Fraction
    matrix: tuple
    shift: tuple

    def __post_init__(self):
        object.__setattr__(self, "ratio", scalar(self.ratio))
        object.__setattr__(self, "matrix", tuple(point(r) for r in self.matrix))
        object.__setattr__(self, "shift", point(self.shift))
        if not 0 < self.ratio < 1:
            raise ValueError("similarity ratio must be in (0,1)")
        d = len(self.shift)
        for i in range(d):
            for j in range(d):
                got = sum(self.matrix[r][i] * self.matrix[r][j] for r in range(d))
                want = F(1) if i == j else F(0)
                if got != want:
                    raise ValueError("matrix must be exactly orthogonal")

    def apply(self, p):
        d = len(self.shift)
        y = tuple(sum(self.matrix[i][j] * p[j] for j in range(d)) for i in range(d))
        return tuple(self.ratio * y[i] + self.shift[i] for i in range(d))


class SimilarityIFSOracle:
    """Attractor of finitely many contracting similarities (open set not required).

    Membership is resolved at cylinder depth `membership_depth`: a point is
    accepted iff it lies in some depth-limited cylinder ball.
    """

    def __init__(self, maps: Sequence[SimilarityMap], membership_depth: int = 12):
        self.maps = list(maps)
        if not self.maps:
            raise ValueError("need at least one map")
        self.dim = len(self.maps[0].shift)
        self.membership_depth = membership_depth
        m0 = self.maps[0]
        d = self.dim
        eye = [[F(1) if i == j else F(0) for j in range(d)] for i in range(d)]
        a = [[eye[i][j] - m0.ratio * m0.matrix[i][j] for j in range(d)] for i in range(d)]
        self._fix = tuple(solve_linear(a, list(m0.shift)))
        worst = F(0)
        for m in self.maps:
            dist = sqrt_upper(sq_dist(m.apply(self._fix), self._fix))
            need = dist / (1 - m.ratio)
            worst = max(worst, need)
        self._root_radius = worst + F(1, 1000) if worst > 0 else F(1)

    def root_ball(self) -> Ball:
        return Ball(self._fix, self._root_radius)

    def resolution(self, depth: int) -> Fraction:
        r = max(m.ratio for m in self.maps)
        return (r ** depth) * self._root_radius

    def _cylinders(self, ball: Ball, depth: int):
        """Yield (representative point, radius) of depth cylinders meeting ball.

        The recursion composes on the inside (T, then T o m), so each child
        cylinder T(m(root)) nests inside T(root) and pruning is sound; tracking
        centers alone would test non-nested intermediate balls and prune paths
        whose early centers wander before converging.
        """
        root = self.root_ball()
        d = self.dim

        def compose(ratio, mat, shift, m):
            new_mat = tuple(
                tuple(sum(mat[i][k] * m.matrix[k][j] for k in range(d)) for j in range(d))
                for i in range(d)
            )
            moved = tuple(sum(mat[i][j] * m.shift[j] for j in range(d)) for i in range(d))
            return (ratio * m.ratio, new_mat,
                    tuple(ratio * moved[i] + shift[i] for i in range(d)))

        def rec(ratio, mat, shift, level):
            center = tuple(
                ratio * sum(mat[i][j] * root.center[j] for j in range(d)) + shift[i]
                for i in range(d)
            )
            radius = ratio * root.radius
            lim = radius + ball.radius
            if sq_dist(center, ball.center) > lim * lim:
                return
            if level == depth:
                yield center, radius
                return
            for m in self.maps:
                yield from rec(*compose(ratio, mat, shift, m), level + 1)

        eye = tuple(tuple(F(1) if i == j else F(0) for j in range(d)) for i in range(d))
        yield from rec(F(1), eye, tuple(F(0) for _ in range(d)), 0)

    def net(self, ball: Ball, depth: int) -> list:
        out = []
        seen = set()
        for center, _ in self._cylinders(ball, depth):
            if center not in seen and ball.contains_point(center):
                seen.add(center)
                out.append(center)
        return sorted(out)

    def point_in(self, ball: Ball, depth: int):
        n = self.net(ball, depth)
        return n[0] if n else None

    def contains_point(self, p) -> bool:
        p = point(p)
        for center, radius in self._cylinders(Ball(p, F(1, 10 ** 9)), self.membership_depth):
            if sq_dist(center, p) <= radius * radius:
                return True
        return False

    def all_points(self):
        return None

    def to_spec(self) -> dict:
        return {
            "type": "ifs",
            "membership_depth": self.membership_depth,
            "maps": [
                {
                    "ratio": format_scalar(m.ratio),
                    "matrix": [[format_scalar(c) for c in row] for row in m.matrix],
                    "shift": [format_scalar(c) for c in m.shift],
                }
                for m in self.maps
            ],
        }


def oracle_from_spec(spec: dict):
    t = spec["type"]
    if t == "fullspace":
        return FullSpaceOracle(int(spec["d"]))
    if t == "finite":
        return FinitePointSetOracle([[F(c) for c in p] for p in spec["points"]])
    if t == "cantor":
        return CantorOracle()
    if t == "ifs":
        maps = [
            SimilarityMap(
                F(m["ratio"]),
                tuple(tuple(F(c) for c in row) for row in m["matrix"]),
                tuple(F(c) for c in m["shift"]),
            )
            for m in spec["maps"]
        ]
        return SimilarityIFSOracle(maps, int(spec.get("membership_depth", 12)))
    raise ValueError(f"unknown oracle type {t!r}")


# ---------------------------------------------------------------------------
# packing counts and dimension estimates

def count_packing(oracle, beta: Fraction, x, rho: Fraction, depth: int) -> int:
    """Greedy lower bound for the max number of disjoint radius-(beta rho)
    balls centered on K and contained in B(x, rho).  Exact predicates."""
    beta, rho = scalar(beta), scalar(rho)
    if oracle.resolution(depth) > beta * rho:
        raise ValueError("net resolution is coarser than the packing radius")
    big = Ball(point(x), rho)
    r = beta * rho
    chosen: list = []
    for z in oracle.net(big, depth):
        if not ball_contains_ball(big, Ball(z, r)):
            continue
        ok = True
        for w in chosen:
            if sq_dist(z, w) <= (2 * r) * (2 * r):
                ok = False
                break
        if ok:
            chosen.append(z)
    return len(chosen)


@dataclass
class PackingDimensionReport:
    delta_hat: float
    m_hat: float
    ladder: list
    mean_counts: list
    samples: int

    def rows(self):
        return [
            {"beta": format_scalar(b), "mean_count": c}
            for b, c in zip(self.ladder, self.mean_counts)
        ]


def dimension_from_packing(oracle, ladder: Sequence[Fraction], samples: int,
                           rho: Fraction = F(1), seed: int = 0,
                           depth_margin: int = 2) -> PackingDimensionReport:
    """Fit log N(beta) ~ -delta log beta over the ladder; N from greedy packing.

    delta_hat is the slope, m_hat the fitted constant.  Sampling is seeded
    and draws centers from a shallow net of K.
    """
    ladder = [scalar(b) for b in ladder]
    rho = scalar(rho)
    rng = random.Random(seed)
    root = oracle.root_ball()
    centers_pool = oracle.net(root, depth_for_scale(oracle, min(ladder) * rho) - depth_margin)
    if not centers_pool:
        centers_pool = oracle.net(root, 4)
    counts = [[] for _ in ladder]
    for _ in range(samples):
        x = centers_pool[rng.randrange(len(centers_pool))]
        for i, b in enumerate(ladder):
            depth = depth_for_scale(oracle, b * rho / 4)
            counts[i].append(count_packing(oracle, b, x, rho, depth))
    means = [sum(c) / len(c) for c in counts]
    xs = np.array([-np.log(float(b)) for b in ladder])
    ys = np.array([np.log(max(m, 1e-9)) for m in means])
    slope, intercept = np.polyfit(xs, ys, 1)
    return PackingDimensionReport(
        delta_hat=float(slope),
        m_hat=float(np.exp(intercept)),
        ladder=ladder,
        mean_counts=means,
        samples=samples,
    )


def depth_for_scale(oracle, scale: Fraction) -> int:
    """Smallest depth whose resolution is at most `scale` (capped at 60)."""
    for depth in range(61):
        if oracle.resolution(depth) <= scale:
            return depth
    return 60


# ---------------------------------------------------------------------------
# diffuseness

@dataclass
class DiffusenessSample:
    x: tuple
    rho: Fraction
    subspace: AffineSubspace
    witness: Optional[tuple]


@dataclass
class DiffusenessReport:
    k: int
    beta: Fraction
    trials: int
    passes: int
    failures: list
    resolution: Fraction

    @property
    def passed(self) -> bool:
        return self.passes == self.trials


def find_diffuse_witness(oracle, k: int, beta: Fraction, x, rho: Fraction,
                         sub: AffineSubspace, depth: int):
    """A net point x' in B(x, rho) with dist(x', L) > beta rho, or None. Exact."""
    beta, rho = scalar(beta), scalar(rho)
    ball = Ball(point(x), rho)
    lim = beta * rho
    for z in oracle.net(ball, depth):
        if sq_dist_point_subspace(z, sub) > lim * lim:
            return z
    return None


def find_strong_witness(oracle, k: int, beta: Fraction, x, rho: Fraction,
                        sub: AffineSubspace, depth: int):
    """A net point x' with B(x', beta rho) inside B(x, rho) and avoiding
    the beta rho neighborhood of L.  Exactly the Lemma transform of the plain
    check run at radius (1-beta) rho with beta' = 2 beta / (1-beta)."""
    beta, rho = scalar(beta), scalar(rho)
    x = point(x)
    big = Ball(x, rho)
    nb = Neighborhood(sub, beta * rho)
    inner = (1 - beta) * rho
    for z in oracle.net(Ball(x, inner), depth):
        small = Ball(z, beta * rho)
        if ball_contains_ball(big, small) and sq_dist_point_subspace(z, sub) > (2 * beta * rho) ** 2:
            # re-verify the definition itself, not just the transform
            assert ball_avoids_neighborhood(small, nb)
            return z
    return None


def _random_subspace(rng, d: int, k: int, anchor) -> AffineSubspace:
    while True:
        dirs = []
        for _ in range(k):
            dirs.append(tuple(F(rng.randint(-8, 8), 8) for _ in range(d)))
        dirs = [v for v in dirs if any(c != 0 for c in v)]
        if len(dirs) == k and (k == 0 or matrix_rank(dirs) == k):
            return AffineSubspace(point(anchor), tuple(dirs))


def _sample_subspace(rng, oracle, d: int, k: int, x, rho, depth) -> AffineSubspace:
    mode = rng.randrange(3)
    if mode == 0:
        return _random_subspace(rng, d, k, x)
    if mode == 1:
        off = tuple(c + F(rng.randint(-4, 4)) * rho / 8 for c in x)
        return _random_subspace(rng, d, k, off)
    # best-fit flavor: anchor at a nearby net point
    z = oracle.point_in(Ball(point(x), rho), depth)
    return _random_subspace(rng, d, k, z if z is not None else x)


def sample_diffuseness_instances(oracle, k: int, rho_k: Fraction, trials: int,
                                 depth: int, seed: int):
    """Shared (x, rho, L) triples used by both diffuseness forms."""
    rng = random.Random(seed)
    d = oracle.dim
    root = oracle.root_ball()
    pool = oracle.net(root, min(depth, 6))
    out = []
    for _ in range(trials):
        x = pool[rng.randrange(len(pool))]
        rho = scalar(rho_k) * F(1, 3) ** rng.randint(0, 3)
        sub = _sample_subspace(rng, oracle, d, k, x, rho, depth)
        out.append((x, rho, sub))
    return out


def diffuseness_check(oracle, k: int, beta: Fraction, rho_k: Fraction,
                      trials: int, depth: int, seed: int = 0,
                      instances=None) -> DiffusenessReport:
    beta = scalar(beta)
    if instances is None:
        instances = sample_diffuseness_instances(oracle, k, rho_k, trials, depth, seed)
    passes = 0
    failures = []
    for x, rho, sub in instances:
        w = find_diffuse_witness(oracle, k, beta, x, rho, sub, depth)
        if w is not None:
            passes += 1
        else:
            failures.append(DiffusenessSample(x, rho, sub, None))
    return DiffusenessReport(k, beta, len(instances), passes, failures,
                             oracle.resolution(depth))


def diffuseness_strong_form(oracle, k: int, beta: Fraction, rho_k: Fraction,
                            trials: int, depth: int, seed: int = 0,
                            instances=None) -> DiffusenessReport:
    beta = scalar(beta)
    if instances is None:
        instances = sample_diffuseness_instances(oracle, k, rho_k, trials, depth, seed)
    passes = 0
    failures = []
    for x, rho, sub in instances:
        w = find_strong_witness(oracle, k, beta, x, rho, sub, depth)
        if w is not None:
            passes += 1
        else:
            failures.append(DiffusenessSample(x, rho, sub, None))
    return DiffusenessReport(k, beta, len(instances), passes, failures,
                             oracle.resolution(depth))


# ---------------------------------------------------------------------------
# microset width (heuristic, reported as an upper bound of the net's width)

def microset_width(oracle, ball: Ball, k: int, depth: int, seed: int = 0,
                   restarts: int = 24) -> float:
    """Upper bound on the k-dimensional width of the rescaled net of K in B.

    The net is mapped by T_B to the unit ball; we fit candidate k-flats (SVD
    least squares plus random restarts) and return the best max-distance plus
    the rescaled net resolution.  Any flat yields a valid upper bound, so the
    heuristic only affects tightness, never soundness w.r.t. the net.
    """
    net = oracle.net(ball, depth)
    if not net:
        return 0.0
    c = np.array([float(v) for v in ball.center])
    r = float(ball.radius)
    pts = (np.array([[float(x) for x in p] for p in net]) - c) / r
    rng = np.random.default_rng(seed)
    d = pts.shape[1]

    def width_for(anchor, basis):
        if k == 0:
            dd = pts - anchor
            return float(np.max(np.linalg.norm(dd, axis=1)))
        q, _ = np.linalg.qr(basis.T)
        dd = pts - anchor
        proj = dd @ q @ q.T
        return float(np.max(np.linalg.norm(dd - proj, axis=1)))

    best = np.inf
    mean = pts.mean(axis=0)
    if k > 0:
        _, _, vt = np.linalg.svd(pts - mean, full_matrices=False)
        best = width_for(mean, vt[:k])
    else:
        best = width_for(mean, None)
    for _ in range(restarts):
        anchor = pts[rng.integers(len(pts))] * rng.uniform(0.5, 1.0)
        if k > 0:
            basis = rng.standard_normal((k, d))
            best = min(best, width_for(anchor, basis))
        else:
            best = min(best, width_for(anchor, None))
    slack = float(oracle.resolution(depth)) / r
    return best + slack
