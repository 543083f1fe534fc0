"""Exact rational geometry for closed balls and affine subspaces.

All coordinates, radii and widths are Fractions, and every predicate is
decided by comparing squared distances, so no irrational number is ever
formed.  Closed-set semantics throughout: containment and avoidance use
non-strict inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Point = tuple[Fraction, ...]


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        # floats are binary rationals; the conversion is exact
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational scalar")


def format_scalar(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(s: str) -> Fraction:
    return Fraction(s)


def point(coords: Iterable) -> Point:
    return tuple(scalar(c) for c in coords)


def sq_norm(v: Sequence[Fraction]) -> Fraction:
    return sum((c * c for c in v), Fraction(0))


def sq_dist(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    assert len(p) == len(q)
    return sum(((a - b) * (a - b) for a, b in zip(p, q)), Fraction(0))


def vsub(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def vadd(p: Sequence[Fraction], q: Sequence[Fraction]) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def vscale(t: Fraction, p: Sequence[Fraction]) -> Point:
    return tuple(t * a for a in p)


def dot(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def unit_vector(d: int, i: int) -> Point:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(d))


# ---------------------------------------------------------------------------
# rational linear algebra (Gaussian elimination over Fraction)

def _row_echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place row echelon form; returns (rows, pivot column indices)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def matrix_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(v) for v in vectors]
    _, pivots = _row_echelon(rows)
    return len(pivots)


def solve_linear(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve the square system a x = b exactly; a must be invertible."""
    n = len(a)
    assert all(len(row) == n for row in a) and len(b) == n
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    rows, pivots = _row_echelon(aug)
    if len(pivots) != n or pivots != list(range(n)):
        raise ValueError("singular system")
    return [rows[i][n] for i in range(n)]


def null_space(vectors: Sequence[Sequence[Fraction]], d: int) -> list[Point]:
    """Basis of {x in Q^d : v . x = 0 for all v}, exact."""
    rows = [list(v) for v in vectors]
    rows, pivots = _row_echelon(rows)
    rows = rows[: len(pivots)]
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * d
        x[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -rows[r][fc]
        basis.append(tuple(x))
    return basis


def complete_to_dimension(dirs: list[Point], d: int, target: int) -> list[Point]:
    """Extend independent directions to `target` many, preferring low e_i."""
    out = list(dirs)
    for i in range(d):
        if len(out) >= target:
            break
        cand = unit_vector(d, i)
        if matrix_rank(out + [cand]) > len(out):
            out.append(cand)
    if len(out) != target:
        raise ValueError("cannot complete directions to requested dimension")
    return out


# ---------------------------------------------------------------------------
# core types

@dataclass(frozen=True)
class Ball:
    """Closed Euclidean ball with rational center and radius."""

    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", point(self.center))
        object.__setattr__(self, "radius", scalar(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains_point(self, p: Sequence[Fraction]) -> bool:
        return sq_dist(self.center, p) <= self.radius * self.radius


@dataclass(frozen=True)
class AffineSubspace:
    """k-dimensional affine subspace: anchor + span(directions).

    directions must be linearly independent; k = 0 (a point) is allowed,
    in which case directions is empty.
    """

    anchor: Point
    directions: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "anchor", point(self.anchor))
        object.__setattr__(self, "directions", tuple(point(v) for v in self.directions))
        d = len(self.anchor)
        for v in self.directions:
            if len(v) != d:
                raise ValueError("direction dimension mismatch")
        if self.directions and matrix_rank(self.directions) != len(self.directions):
            raise ValueError("directions must be linearly independent")
        if len(self.directions) >= d:
            raise ValueError("subspace must be proper")

    @property
    def dim(self) -> int:
        return len(self.directions)

    @property
    def ambient_dim(self) -> int:
        return len(self.anchor)

    def is_hyperplane(self) -> bool:
        return self.dim == self.ambient_dim - 1

    def normal_and_offset(self) -> tuple[Point, Fraction]:
        """For a hyperplane, a rational normal n and offset c with n.x = c on it."""
        if not self.is_hyperplane():
            raise ValueError("normal is defined for hyperplanes only")
        basis = null_space(self.directions, self.ambient_dim)
        assert len(basis) == 1
        n = basis[0]
        return n, dot(n, self.anchor)

    def contains_point(self, p: Sequence[Fraction]) -> bool:
        return sq_dist_point_subspace(point(p), self) == 0


@dataclass(frozen=True)
class Neighborhood:
    """Closed width-neighborhood of an affine subspace: all x with dist(x, L) <= width."""

    subspace: AffineSubspace
    width: Fraction

    def __post_init__(self):
        object.__setattr__(self, "width", scalar(self.width))
        if self.width < 0:
            raise ValueError("neighborhood width must be nonnegative")

    @property
    def ambient_dim(self) -> int:
        return self.subspace.ambient_dim


# ---------------------------------------------------------------------------
# predicates

def project_point_subspace(p: Sequence[Fraction], sub: AffineSubspace) -> Point:
    """The exact orthogonal projection of p onto the affine subspace."""
    p = point(p)
    k = sub.dim
    if k == 0:
        return sub.anchor
    v = vsub(p, sub.anchor)
    dirs = sub.directions
    gram = [[dot(dirs[i], dirs[j]) for j in range(k)] for i in range(k)]
    rhs = [dot(dirs[i], v) for i in range(k)]
    t = solve_linear(gram, rhs)
    out = list(sub.anchor)
    for ti, di in zip(t, dirs):
        out = [o + ti * c for o, c in zip(out, di)]
    return tuple(out)


def sq_dist_point_subspace(p: Sequence[Fraction], sub: AffineSubspace) -> Fraction:
    """Exact squared Euclidean distance from p to the affine subspace.

    Solves the normal equations of the rational least-squares projection,
    so the result is the true squared distance, not an approximation.
    """
    p = point(p)
    return sq_dist(p, project_point_subspace(p, sub))


def ball_contains_ball(outer: Ball, inner: Ball) -> bool:
    """True iff inner (closed) is a subset of outer (closed), exactly."""
    gap = outer.radius - inner.radius
    if gap < 0:
        return False
    return sq_dist(outer.center, inner.center) <= gap * gap


def balls_intersect(a: Ball, b: Ball) -> bool:
    s = a.radius + b.radius
    return sq_dist(a.center, b.center) <= s * s


def balls_disjoint(a: Ball, b: Ball) -> bool:
    return not balls_intersect(a, b)


def ball_avoids_neighborhood(b: Ball, nbhd: Neighborhood) -> bool:
    """True iff the closed ball and the closed neighborhood are... disjoint up to
    touching: every point of b is at distance >= width from the subspace.

    Equivalent to dist(center, L) >= width + radius, decided on squares.
    """
    lim = nbhd.width + b.radius
    return sq_dist_point_subspace(b.center, nbhd.subspace) >= lim * lim


def ball_meets_neighborhood(b: Ball, nbhd: Neighborhood) -> bool:
    lim = nbhd.width + b.radius
    return sq_dist_point_subspace(b.center, nbhd.subspace) < lim * lim


def point_in_neighborhood(p: Sequence[Fraction], nbhd: Neighborhood) -> bool:
    return sq_dist_point_subspace(point(p), nbhd.subspace) <= nbhd.width * nbhd.width


def hyperplane_through_points(pts: Sequence[Sequence[Fraction]], d: int | None = None) -> AffineSubspace:
    """The (d-1)-dimensional affine subspace through the given points.

    When the points are affinely degenerate (fewer than d of them, or in
    special position) the span is completed with the lexicographically first
    canonical basis vectors that keep the directions independent, so the
    result is deterministic.
    """
    pts = [point(p) for p in pts]
    if not pts:
        raise ValueError("need at least one point")
    if d is None:
        d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("point dimension mismatch")
    anchor = pts[0]
    dirs: list[Point] = []
    for p in pts[1:]:
        v = vsub(p, anchor)
        if matrix_rank(dirs + [v]) > len(dirs):
            dirs.append(v)
    if len(dirs) > d - 1:
        raise ValueError("points do not lie in a hyperplane")
    dirs = complete_to_dimension(dirs, d, d - 1)
    return AffineSubspace(anchor, tuple(dirs))


def subspace_through_points(pts: Sequence[Sequence[Fraction]], k: int, d: int | None = None) -> AffineSubspace:
    """k-flat through the points, canonical completion as above."""
    pts = [point(p) for p in pts]
    if d is None:
        d = len(pts[0])
    anchor = pts[0]
    dirs: list[Point] = []
    for p in pts[1:]:
        v = vsub(p, anchor)
        if matrix_rank(dirs + [v]) > len(dirs):
            dirs.append(v)
    if len(dirs) > k:
        raise ValueError(f"points span more than {k} dimensions")
    dirs = complete_to_dimension(dirs, d, k)
    return AffineSubspace(anchor, tuple(dirs))


def points_coplanar(pts: Sequence[Sequence[Fraction]], d: int) -> bool:
    """True iff the points all lie in one affine hyperplane of R^d."""
    if len(pts) <= d:
        return True
    anchor = point(pts[0])
    dirs = [vsub(point(p), anchor) for p in pts[1:]]
    return matrix_rank(dirs) <= d - 1


# ---------------------------------------------------------------------------
# integer-root helpers used by certificates

def isqrt_ceil(n: int) -> int:
    import math
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def sqrt_upper(x: Fraction) -> Fraction:
    """A rational u with u >= sqrt(x), tight to ~1e-9 relative error."""
    assert x >= 0
    if x == 0:
        return Fraction(0)
    # scale to a big integer so isqrt gives 15+ digits of precision
    s = 10 ** 18
    n = x.numerator * s * s
    d = x.denominator
    return Fraction(isqrt_ceil(n * d), d * s)


def sqrt_lower(x: Fraction) -> Fraction:
    """A rational l with l <= sqrt(x)."""
    import math
    assert x >= 0
    if x == 0:
        return Fraction(0)
    s = 10 ** 18
    n = x.numerator * s * s
    d = x.denominator
    return Fraction(math.isqrt(n * d), d * s)
