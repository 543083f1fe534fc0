"""Exactness tests for the rational geometry kernel.

Expected values were derived independently: squared distances against
numpy's float least squares (and by hand for the frozen constants),
containment/avoidance by direct point sampling.
"""

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schmidt_games.geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    ball_avoids_neighborhood,
    ball_contains_ball,
    ball_meets_neighborhood,
    balls_disjoint,
    complete_to_dimension,
    format_scalar,
    hyperplane_through_points,
    matrix_rank,
    null_space,
    parse_scalar,
    point,
    point_in_neighborhood,
    points_coplanar,
    sq_dist,
    sq_dist_point_subspace,
    sqrt_lower,
    sqrt_upper,
    subspace_through_points,
    unit_vector,
)

F = Fraction


def rational_grid(rng, d, den=16, lo=-3, hi=3):
    return tuple(F(rng.randint(lo * den, hi * den), den) for _ in range(d))


# ---------------------------------------------------------------------------
# frozen exact values

def test_sq_dist_point_to_diagonal_line():
    # distance from (1,0) to the line x=y is 1/sqrt(2): squared 1/2
    line = AffineSubspace(point([0, 0]), (point([1, 1]),))
    assert sq_dist_point_subspace(point([1, 0]), line) == F(1, 2)


def test_sq_dist_point_to_point_subspace():
    # k=0 subspace is a single point
    p = AffineSubspace(point([F(1, 3), F(1, 7)]), ())
    assert sq_dist_point_subspace(point([F(1, 3), F(1, 7)]), p) == 0
    assert sq_dist_point_subspace(point([F(4, 3), F(1, 7)]), p) == 1


def test_sq_dist_skew_plane_in_r3():
    # plane through (1,0,0) spanned by (1,1,0),(0,0,1); dist((0,0,0)) = 1/sqrt(2)
    plane = AffineSubspace(point([1, 0, 0]), (point([1, 1, 0]), point([0, 0, 1])))
    assert sq_dist_point_subspace(point([0, 0, 0]), plane) == F(1, 2)


def test_ball_containment_boundary_cases():
    # touching from inside is still containment (closed balls)
    assert ball_contains_ball(Ball(point([0]), 1), Ball(point([F(1, 2)]), F(1, 2)))
    # radius sum exceeding: B((1/2), 5/8) pokes out of B((0), 1)
    assert not ball_contains_ball(Ball(point([0]), 1), Ball(point([F(1, 2)]), F(5, 8)))
    assert ball_contains_ball(Ball(point([0, 0]), 1), Ball(point([0, 0]), 1))


def test_ball_avoids_neighborhood_frozen():
    xaxis = AffineSubspace(point([0, 0]), (point([1, 0]),))
    nb = Neighborhood(xaxis, F(1, 4))
    assert not ball_avoids_neighborhood(Ball(point([0, 0]), F(1, 4)), nb)
    # center at height 1: dist 1 >= 1/4 + 1/4
    assert ball_avoids_neighborhood(Ball(point([0, 1]), F(1, 4)), nb)
    # exactly touching counts as avoiding (closed semantics, >=)
    assert ball_avoids_neighborhood(Ball(point([0, F(1, 2)]), F(1, 4)), nb)


def test_hyperplane_through_points_diagonal():
    h = hyperplane_through_points([point([0, 0]), point([1, 1])])
    assert h.dim == 1
    assert sq_dist_point_subspace(point([2, 2]), h) == 0
    n, c = h.normal_and_offset()
    assert n[0] + n[1] == 0  # normal proportional to (1,-1)
    assert n[0] * 1 + n[1] * 1 == c


def test_hyperplane_through_single_point_completes_canonically():
    # one point in R^2: direction completed with e1, giving a horizontal line
    h = hyperplane_through_points([point([F(1, 2), F(1, 3)])], d=2)
    assert h.directions == (unit_vector(2, 0),)
    assert h.contains_point(point([5, F(1, 3)]))


def test_hyperplane_through_points_degenerate_rejected():
    with pytest.raises(ValueError):
        hyperplane_through_points([point([0, 0]), point([1, 0]), point([0, 1])])


def test_points_coplanar():
    assert points_coplanar([point([0, 0]), point([1, 0]), point([2, 0])], 2)
    assert not points_coplanar([point([0, 0]), point([1, 0]), point([0, 1])], 2)


def test_null_space_and_rank():
    assert matrix_rank([point([1, 2]), point([2, 4])]) == 1
    ns = null_space([point([1, 1])], 2)
    assert len(ns) == 1
    assert ns[0][0] + ns[0][1] == 0


def test_scalar_round_trip():
    x = F(-7, 12)
    assert parse_scalar(format_scalar(x)) == x


def test_sqrt_bounds():
    for v in [F(2), F(1, 3), F(355, 113), F(10) ** 12]:
        lo, hi = sqrt_lower(v), sqrt_upper(v)
        assert lo * lo <= v <= hi * hi
        assert hi - lo < F(1, 10 ** 6)


# ---------------------------------------------------------------------------
# oracle cross-checks against numpy least squares

@pytest.mark.parametrize("seed", range(8))
def test_sq_dist_matches_float_least_squares(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3, 4])
    k = rng.randint(1, d - 1)
    while True:
        dirs = [rational_grid(rng, d) for _ in range(k)]
        if matrix_rank(dirs) == k:
            break
    anchor = rational_grid(rng, d)
    sub = AffineSubspace(anchor, tuple(dirs))
    p = rational_grid(rng, d)
    exact = sq_dist_point_subspace(p, sub)
    A = np.array([[float(c) for c in v] for v in dirs]).T
    b = np.array([float(a - b_) for a, b_ in zip(p, anchor)])
    t, res, *_ = np.linalg.lstsq(A, b, rcond=None)
    resid = b - A @ t
    assert abs(float(exact) - float(resid @ resid)) < 1e-9


@pytest.mark.parametrize("seed", range(6))
def test_containment_matches_point_sampling(seed):
    rng = random.Random(100 + seed)
    d = rng.choice([1, 2, 3])
    outer = Ball(rational_grid(rng, d), F(rng.randint(8, 32), 16))
    inner = Ball(
        tuple(c + F(rng.randint(-8, 8), 32) for c in outer.center),
        F(rng.randint(1, 24), 32),
    )
    verdict = ball_contains_ball(outer, inner)
    # sample boundary points of inner along +-axes and a few random rays
    worst_out = False
    for _ in range(200):
        v = np.array([rng.gauss(0, 1) for _ in range(d)])
        n = np.linalg.norm(v)
        if n == 0:
            continue
        x = np.array([float(c) for c in inner.center]) + float(inner.radius) * v / n
        if np.linalg.norm(x - np.array([float(c) for c in outer.center])) > float(outer.radius) + 1e-9:
            worst_out = True
    if verdict:
        assert not worst_out


# ---------------------------------------------------------------------------
# hypothesis properties

small_fraction = st.fractions(min_value=F(-4), max_value=F(4), max_denominator=64)
pos_fraction = st.fractions(min_value=F(1, 64), max_value=F(4), max_denominator=64)


@given(
    px=small_fraction, py=small_fraction,
    ax=small_fraction, ay=small_fraction,
    dx=small_fraction, dy=small_fraction,
    t=st.fractions(min_value=F(1, 32), max_value=F(8), max_denominator=32),
)
@settings(max_examples=60, deadline=None)
def test_sq_dist_scaling_invariance(px, py, ax, ay, dx, dy, t):
    if dx == 0 and dy == 0:
        return
    sub = AffineSubspace(point([ax, ay]), (point([dx, dy]),))
    base = sq_dist_point_subspace(point([px, py]), sub)
    scaled = AffineSubspace(point([t * ax, t * ay]), (point([dx, dy]),))
    got = sq_dist_point_subspace(point([t * px, t * py]), scaled)
    assert got == t * t * base


@given(
    cx=small_fraction, cy=small_fraction, r=pos_fraction,
    qx=small_fraction, qy=small_fraction, s=pos_fraction,
    ox=small_fraction, oy=small_fraction,
)
@settings(max_examples=60, deadline=None)
def test_containment_translation_invariant(cx, cy, r, qx, qy, s, ox, oy):
    a = Ball(point([cx, cy]), r)
    b = Ball(point([qx, qy]), s)
    at = Ball(point([cx + ox, cy + oy]), r)
    bt = Ball(point([qx + ox, qy + oy]), s)
    assert ball_contains_ball(a, b) == ball_contains_ball(at, bt)


@given(
    cx=small_fraction, cy=small_fraction, r=pos_fraction, w=pos_fraction,
    ax=small_fraction, ay=small_fraction,
)
@settings(max_examples=60, deadline=None)
def test_avoid_meet_complementary(cx, cy, r, w, ax, ay):
    sub = AffineSubspace(point([ax, ay]), (point([1, 0]),))
    nb = Neighborhood(sub, w)
    b = Ball(point([cx, cy]), r)
    assert ball_avoids_neighborhood(b, nb) != ball_meets_neighborhood(b, nb)


@given(
    cx=small_fraction, r=pos_fraction,
    qx=small_fraction, s=pos_fraction,
    tx=small_fraction, u=pos_fraction,
)
@settings(max_examples=60, deadline=None)
def test_containment_transitive(cx, r, qx, s, tx, u):
    a, b, c = Ball(point([cx]), r), Ball(point([qx]), s), Ball(point([tx]), u)
    if ball_contains_ball(a, b) and ball_contains_ball(b, c):
        assert ball_contains_ball(a, c)


def test_subspace_through_points_k_flat():
    sub = subspace_through_points([point([0, 0, 0]), point([1, 0, 0])], k=1, d=3)
    assert sub.dim == 1
    sub2 = subspace_through_points([point([0, 0, 0])], k=2, d=3)
    assert sub2.dim == 2
    assert sub2.directions == (unit_vector(3, 0), unit_vector(3, 1))


def test_complete_to_dimension_prefers_low_axes():
    dirs = complete_to_dimension([point([0, 1, 0])], 3, 2)
    assert dirs[1] == unit_vector(3, 0)
