"""Mass-distribution trees on diffuse sets, with statistical decay checks.

``build_decaying_measure`` grows a finite tree of nested balls.  A node of
radius rho gets d+1 children of radius beta*rho, centered on K, pairwise
separated by at least 2*beta*rho as sets, and arranged so that a thin
hyperplane neighborhood can never touch all d+1 at once.  Splitting the
mass evenly at every node then forces the mass near any hyperplane to shed
a factor d/(d+1) per level, which is absolute decay with exponent
gamma = log(d/(d+1))/log(beta) and constant C = 2^gamma beta^-gamma (d+1).

The validators are sampled but conservative: ball masses are exact rational
intervals (leaves fully inside vs. leaves touching), and a trial is only
scored against the envelope after rounding the envelope against the tree.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from mpmath import mp

from .certify import diffuse_beta_from_decay  # noqa: F401  (re-export; defined with the oracles)
from .fractals import depth_for_scale
from .geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    ball_avoids_neighborhood,
    ball_contains_ball,
    balls_intersect,
    format_scalar,
    hyperplane_through_points,
    null_space,
    parse_scalar,
    point,
    scalar,
    sq_dist,
    sq_dist_point_subspace,
)

F = Fraction


# ---------------------------------------------------------------------------
# tree types

@dataclass
class MeasureNode:
    ball: Ball
    mass: Fraction
    depth: int
    children: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class MeasureTree:
    root: MeasureNode
    d: int
    beta: Fraction
    beta0: Optional[Fraction]  # None when the tree was not built through a diffuseness oracle
    rho0: Fraction
    depth: int
    gamma: float
    decay_c: float

    def nodes(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(n.children)

    def leaves(self):
        for n in self.nodes():
            if not n.children:
                yield n

    @property
    def leaf_radius(self) -> Fraction:
        return self.beta ** self.depth * self.rho0


@dataclass(frozen=True)
class DecayParams:
    C: float
    gamma: float
    rho0: Fraction

    def __post_init__(self):
        if self.C <= 0 or self.gamma <= 0:
            raise ValueError("C and gamma must be positive")


@dataclass(frozen=True)
class FedererParams:
    D: float


@dataclass(frozen=True)
class AhlforsParams:
    delta: float
    c1: float
    c2: float


def decay_exponent(d: int, beta) -> float:
    """gamma solving d/(d+1) = beta^gamma; positive since both logs are negative."""
    return math.log(d / (d + 1)) / math.log(float(scalar(beta)))


def decay_constant(d: int, beta, gamma: Optional[float] = None) -> float:
    g = decay_exponent(d, beta) if gamma is None else gamma
    return 2.0 ** g * float(scalar(beta)) ** (-g) * (d + 1)


def claimed_decay_params(tree: MeasureTree) -> DecayParams:
    return DecayParams(tree.decay_c, tree.gamma, tree.rho0)


# ---------------------------------------------------------------------------
# construction

class MeasureBuildError(ValueError):
    """No admissible child placement at some node (set too thin there)."""


def _node_msg(node: MeasureNode, msg: str) -> str:
    at = ", ".join(format_scalar(c) for c in node.ball.center)
    return f"node at depth {node.depth}, center ({at}): {msg}"


def _check_children(parent: MeasureNode, kids: list, child_r: Fraction, d: int) -> Optional[str]:
    """Exact structural check of one family; None when everything holds."""
    if len(kids) != d + 1:
        return f"expected {d + 1} children, found {len(kids)}"
    want = parent.mass / (d + 1)
    if any(k.mass != want for k in kids):
        return "mass split is not even"
    if sum(k.mass for k in kids) != parent.mass:
        return "children masses do not sum to the parent mass"
    for k in kids:
        if k.ball.radius != child_r:
            return "child radius is off scale"
        if not ball_contains_ball(parent.ball, k.ball):
            return "child leaves the parent ball"
        if k.depth != parent.depth + 1:
            return "depth bookkeeping is off"
    sep_sq = (4 * child_r) ** 2
    for i in range(len(kids)):
        for j in range(i + 1, len(kids)):
            if sq_dist(kids[i].ball.center, kids[j].ball.center) < sep_sq:
                return "children closer than 2r as sets"
    # "no width-r hyperplane neighborhood meets all d+1" in leave-one-out form:
    # each child clears the width-r neighborhood of the plane through the rest
    for i in range(len(kids)):
        rest = [k.ball.center for j, k in enumerate(kids) if j != i]
        plane = hyperplane_through_points(rest, d)
        if not ball_avoids_neighborhood(kids[i].ball, Neighborhood(plane, child_r)):
            return "a hyperplane neighborhood meets every child"
    return None


def _greedy_pick(cands: list, start, sep_sq: Fraction, d: int):
    picked = [start]
    while len(picked) < d:
        best, best_min = None, F(-1)
        for z in cands:
            m = min(sq_dist(z, w) for w in picked)
            if m >= sep_sq and m > best_min:
                best, best_min = z, m
        if best is None:
            return None
        picked.append(best)
    return picked


def _place_children(oracle, node: MeasureNode, child_r: Fraction, beta0: Fraction, d: int) -> list:
    rho = node.ball.radius
    inner = Ball(node.ball.center, rho - child_r)
    cands = oracle.net(inner, depth_for_scale(oracle, child_r / 2))
    if len(cands) < d + 1:
        raise MeasureBuildError(_node_msg(node, "net too sparse for d+1 children"))
    sep_sq = (4 * child_r) ** 2
    order = sorted(cands, key=lambda z: sq_dist(z, node.ball.center), reverse=True)
    for start in order[:12]:
        picked = _greedy_pick(cands, start, sep_sq, d)
        if picked is None:
            continue
        plane = hyperplane_through_points(picked, d)
        nb = Neighborhood(plane, beta0 * rho)
        best, best_sq = None, F(-1)
        for z in cands:
            if any(sq_dist(z, w) < sep_sq for w in picked):
                continue
            if not ball_avoids_neighborhood(Ball(z, child_r), nb):
                continue
            s = sq_dist_point_subspace(z, plane)
            if s > best_sq:
                best, best_sq = z, s
        if best is None:
            continue
        kids = [
            MeasureNode(Ball(z, child_r), node.mass / (d + 1), node.depth + 1)
            for z in picked + [best]
        ]
        if _check_children(node, kids, child_r, d) is None:
            return kids
    raise MeasureBuildError(_node_msg(node, "no admissible (d+1)-st child clear of the hyperplane"))


def build_decaying_measure(oracle, u: Ball, beta0, beta, depth: int) -> MeasureTree:
    """Evenly split mass over d+1 separated children per node, `depth` levels down.

    Children at level j+1 have radius beta^{j+1} rho0, sit inside the parent,
    are pairwise 2 beta^{j+1} rho0 apart as sets, and the last one clears the
    beta0*(parent radius) neighborhood of the hyperplane through the first d
    centers.  Centers come from the oracle's net, so they all lie on K.
    Depth 0 gives the single-node unit mass.
    """
    beta, beta0 = scalar(beta), scalar(beta0)
    if not 0 < beta0 < 1:
        raise ValueError("beta0 must be in (0,1)")
    if not 0 < beta <= beta0 / 3:
        raise ValueError("need 0 < beta <= beta0/3")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    d = oracle.dim
    root = MeasureNode(Ball(point(u.center), scalar(u.radius)), F(1), 0)
    rho0 = root.ball.radius
    level = [root]
    for j in range(depth):
        child_r = beta ** (j + 1) * rho0
        nxt = []
        for node in level:
            node.children = _place_children(oracle, node, child_r, beta0, d)
            nxt.extend(node.children)
        level = nxt
    g = decay_exponent(d, beta)
    return MeasureTree(root, d, beta, beta0, rho0, depth, g, decay_constant(d, beta, g))


def uniform_cantor_tree(depth: int) -> MeasureTree:
    """The natural measure on middle-thirds cylinders, as a MeasureTree.

    Two children per node at ratio 1/3; the separations sit exactly on the
    structural floor, which makes this the sharp test bed for the envelope.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    beta = F(1, 3)
    rho0 = F(1, 2)

    def rec(center: Fraction, j: int, mass: Fraction) -> MeasureNode:
        r = beta ** j * rho0
        node = MeasureNode(Ball((center,), r), mass, j)
        if j < depth:
            node.children = [
                rec(center - 2 * r / 3, j + 1, mass / 2),
                rec(center + 2 * r / 3, j + 1, mass / 2),
            ]
        return node

    root = rec(F(1, 2), 0, F(1))
    g = decay_exponent(1, beta)
    return MeasureTree(root, 1, beta, None, rho0, depth, g, decay_constant(1, beta, g))


def check_tree(tree: MeasureTree) -> None:
    """Exact full scan of the structural invariants; raises on the first breach."""
    if tree.root.mass != 1:
        raise ValueError("root mass must be 1")
    if tree.root.ball.radius != tree.rho0:
        raise ValueError("root radius disagrees with rho0")
    total = F(0)
    for node in tree.nodes():
        if node.depth < tree.depth:
            msg = _check_children(node, node.children, tree.beta ** (node.depth + 1) * tree.rho0, tree.d)
            if msg is not None:
                raise ValueError(_node_msg(node, msg))
        else:
            if node.children:
                raise ValueError(_node_msg(node, "leaf has children"))
            total += node.mass
    if total != 1:
        raise ValueError(f"leaf masses sum to {total}, not 1")


# ---------------------------------------------------------------------------
# exact interval masses

def measure_of_ball(tree: MeasureTree, b: Ball) -> tuple:
    """[lo, hi]: mass of leaves fully inside b vs leaves meeting b.  Exact."""
    b = Ball(point(b.center), scalar(b.radius))
    lo = hi = F(0)
    stack = [tree.root]
    while stack:
        n = stack.pop()
        if not balls_intersect(b, n.ball):
            continue
        if ball_contains_ball(b, n.ball):
            lo += n.mass
            hi += n.mass
            continue
        if n.children:
            stack.extend(n.children)
        else:
            hi += n.mass
    return lo, hi


def _joint_upper_mass(tree: MeasureTree, b: Ball, nbhd: Neighborhood, top: Optional[MeasureNode] = None) -> Fraction:
    """Mass of leaves meeting both b and the neighborhood (an upper bound on
    the measure of the intersection).  Children nest in parents, so a subtree
    is pruned as soon as its root ball misses either set."""
    hi = F(0)
    stack = [tree.root if top is None else top]
    while stack:
        n = stack.pop()
        if not balls_intersect(b, n.ball) or ball_avoids_neighborhood(n.ball, nbhd):
            continue
        if n.children:
            stack.extend(n.children)
        else:
            hi += n.mass
    return hi


# ---------------------------------------------------------------------------
# sampled validation

@dataclass
class MeasureTestReport:
    kind: str
    trials: int
    rows: list
    violations: list
    scale_floor: Fraction
    params: dict

    @property
    def passed(self) -> bool:
        return self.trials > 0 and not self.violations

    def to_csv(self, path) -> None:
        report_to_csv(self, path)


def report_to_csv(report: MeasureTestReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "x", "rho", "eps", "lhs", "rhs", "pass"])
        for r in report.rows:
            w.writerow([r["trial"], r["x"], r["rho"], r["eps"], r["lhs"], r["rhs"],
                        "1" if r["pass"] else "0"])


def _fmt_point(p) -> str:
    return ";".join(format_scalar(c) for c in p)


def _fmt_subspace(sub: AffineSubspace) -> str:
    dirs = " | ".join(_fmt_point(v) for v in sub.directions)
    return f"anchor {_fmt_point(sub.anchor)}; dirs {dirs or '-'}"


def _log_uniform(rng: random.Random, lo: Fraction, hi: Fraction,
                 u_lo: float = 0.0, u_hi: float = 1.0) -> Fraction:
    if hi <= lo:
        return lo
    u = rng.uniform(u_lo, u_hi)
    v = float(lo) * (float(hi) / float(lo)) ** u
    out = F(v).limit_denominator(10 ** 9)
    return min(max(out, lo), hi)


def _random_normal(rng: random.Random, d: int):
    while True:
        v = tuple(F(rng.randint(-8, 8), 8) for _ in range(d))
        if any(c != 0 for c in v):
            return v


def _plane_through(anchor, normal, d: int) -> AffineSubspace:
    if d == 1:
        return AffineSubspace(point(anchor), ())
    dirs = null_space([point(normal)], d)
    return AffineSubspace(point(anchor), tuple(dirs))


def _sample_hyperplane(rng: random.Random, tree: MeasureTree, x, rho: Fraction, mode: int) -> AffineSubspace:
    d = tree.d
    if mode == 1:  # through the sampled support point
        return _plane_through(x, _random_normal(rng, d), d)
    if mode == 0:  # random anchor inside the ball
        anchor = tuple(
            c + F(rng.uniform(-float(rho), float(rho))).limit_denominator(10 ** 9)
            for c in x
        )
        return _plane_through(anchor, _random_normal(rng, d), d)
    # best fit to the local leaf cloud
    b = Ball(point(x), rho)
    near = [lf.ball.center for lf in tree.leaves() if balls_intersect(b, lf.ball)]
    if not near:
        near = [x]
    centroid = tuple(sum(col) / len(near) for col in zip(*near))
    if d == 1:
        return AffineSubspace(point(centroid), ())
    pts = np.array([[float(c) for c in p] for p in near])
    pts = pts - pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts, full_matrices=True)
    normal = tuple(F(float(c)).limit_denominator(10 ** 6) for c in vt[-1])
    if all(c == 0 for c in normal):
        normal = _random_normal(rng, d)
    return _plane_through(centroid, normal, d)


def decay_trial(tree: MeasureTree, x, rho, sub: AffineSubspace, eps,
                c_const: float, gamma: float) -> dict:
    """One (x, rho, L, eps) check: upper joint mass against the envelope times
    the lower ball mass.  The envelope C (eps/rho)^gamma is evaluated at 40
    digits and shaded down, so borderline trials surface instead of hiding;
    an envelope of at least 1 passes outright (the true measure of the
    intersection can never exceed the measure of the ball)."""
    x = point(x)
    rho, eps = scalar(rho), scalar(eps)
    b = Ball(x, rho)
    lo, _ = measure_of_ball(tree, b)
    lhs = _joint_upper_mass(tree, b, Neighborhood(sub, eps))
    with mp.workdps(40):
        env = mp.mpf(c_const) * (
            mp.mpf(eps.numerator) / eps.denominator * rho.denominator / rho.numerator
        ) ** mp.mpf(gamma)
        auto = env >= 1 + mp.mpf(10) ** -25
        if auto or lhs == 0:
            ok = True
        elif lo == 0:
            ok = False
        else:
            ratio = lhs / lo
            ok = mp.mpf(ratio.numerator) / ratio.denominator < env * (1 - mp.mpf(10) ** -25)
        rhs = float(env * (mp.mpf(lo.numerator) / lo.denominator))
    return {
        "trial": -1,
        "x": _fmt_point(x),
        "rho": format_scalar(rho),
        "eps": format_scalar(eps),
        "lhs": format_scalar(lhs),
        "rhs": repr(rhs),
        "pass": bool(ok),
        "auto": bool(auto),
    }


def test_absolute_decay(tree: MeasureTree, c_const: float, gamma: float,
                        trials: int, seed: int = 0) -> MeasureTestReport:
    """Sampled decay check: x from leaf centers, rho and eps log-uniform above
    the scale floor (3x leaf radius), hyperplanes from three families
    (random, through-x, best-fit).  Violations carry full witnesses."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    leaves = list(tree.leaves())
    floor = 3 * tree.leaf_radius
    params = {"C": c_const, "gamma": gamma, "seed": seed, "rho0": format_scalar(tree.rho0)}
    if floor >= tree.rho0:
        params["scale_floor_exceeds_root"] = True
        return MeasureTestReport("absolute-decay", 0, [], [], floor, params)
    rows, viols = [], []
    modes = ("random", "through-x", "best-fit")
    for t in range(trials):
        x = leaves[rng.randrange(len(leaves))].ball.center
        rho = _log_uniform(rng, floor, tree.rho0, u_lo=0.05)
        if rho <= floor:
            rho = min(tree.rho0, 2 * floor)
        eps = _log_uniform(rng, floor, rho, u_hi=0.97)
        if eps >= rho:
            eps = (floor + rho) / 2
        mode = t % 3
        sub = _sample_hyperplane(rng, tree, x, rho, mode)
        row = decay_trial(tree, x, rho, sub, eps, c_const, gamma)
        row["trial"] = t
        row["mode"] = modes[mode]
        rows.append(row)
        if not row["pass"]:
            viols.append(dict(row, plane=_fmt_subspace(sub)))
    return MeasureTestReport("absolute-decay", trials, rows, viols, floor, params)


def test_federer(tree: MeasureTree, d_const, trials: int, seed: int = 0) -> MeasureTestReport:
    """mu(B(x,2 rho)) < D mu(B(x,rho)) on samples; both sides exact rationals."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    dd = scalar(d_const)
    leaves = list(tree.leaves())
    floor = 3 * tree.leaf_radius
    params = {"D": format_scalar(dd), "seed": seed}
    if 2 * floor >= tree.rho0:
        params["scale_floor_exceeds_root"] = True
        return MeasureTestReport("federer", 0, [], [], floor, params)
    rows, viols = [], []
    for t in range(trials):
        x = leaves[rng.randrange(len(leaves))].ball.center
        rho = _log_uniform(rng, floor, tree.rho0 / 2)
        lo, _ = measure_of_ball(tree, Ball(point(x), rho))
        _, hi2 = measure_of_ball(tree, Ball(point(x), 2 * rho))
        ok = hi2 < dd * lo if lo > 0 else hi2 == 0
        row = {
            "trial": t, "x": _fmt_point(x), "rho": format_scalar(rho), "eps": "",
            "lhs": format_scalar(hi2), "rhs": format_scalar(dd * lo), "pass": bool(ok),
        }
        rows.append(row)
        if not ok:
            viols.append(row)
    return MeasureTestReport("federer", trials, rows, viols, floor, params)


def test_ahlfors(tree: MeasureTree, delta: float, c1: float, c2: float,
                 trials: int, seed: int = 0) -> MeasureTestReport:
    """c1 rho^delta <= mu(B(x,rho)) <= c2 rho^delta on samples.

    Scored against the interval's favorable side, so only definite breaches
    are flagged: the interval has to sit entirely below the lower bound or
    entirely above the upper one."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    leaves = list(tree.leaves())
    floor = 3 * tree.leaf_radius
    params = {"delta": delta, "c1": c1, "c2": c2, "seed": seed}
    if floor >= tree.rho0:
        params["scale_floor_exceeds_root"] = True
        return MeasureTestReport("ahlfors", 0, [], [], floor, params)
    rows, viols = [], []
    for t in range(trials):
        x = leaves[rng.randrange(len(leaves))].ball.center
        rho = _log_uniform(rng, floor, tree.rho0)
        lo, hi = measure_of_ball(tree, Ball(point(x), rho))
        with mp.workdps(40):
            rd = (mp.mpf(rho.numerator) / rho.denominator) ** mp.mpf(delta)
            lower, upper = mp.mpf(c1) * rd, mp.mpf(c2) * rd
            bad_low = mp.mpf(hi.numerator) / hi.denominator < lower * (1 - mp.mpf(10) ** -20)
            bad_high = mp.mpf(lo.numerator) / lo.denominator > upper * (1 + mp.mpf(10) ** -20)
            lower_f, upper_f = float(lower), float(upper)
        row_lo = {"trial": t, "x": _fmt_point(x), "rho": format_scalar(rho), "eps": "",
                  "lhs": repr(lower_f), "rhs": format_scalar(hi), "pass": not bad_low}
        row_hi = {"trial": t, "x": _fmt_point(x), "rho": format_scalar(rho), "eps": "",
                  "lhs": format_scalar(lo), "rhs": repr(upper_f), "pass": not bad_high}
        rows.extend([row_lo, row_hi])
        if bad_low:
            viols.append(row_lo)
        if bad_high:
            viols.append(row_hi)
    return MeasureTestReport("ahlfors", trials, rows, viols, floor, params)


def proof_counting_check(tree: MeasureTree, trials: int, seed: int = 0) -> MeasureTestReport:
    """The stage-counting bound behind the decay constant, checked exactly.

    For a node A and eps below half its child scale, the mass of leaves
    under A meeting L^(eps) is at most (d/(d+1))^j (d+1) mu(A), where j
    counts the levels whose separation still controls eps."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    internal = [n for n in tree.nodes() if n.children]
    if not internal:
        return MeasureTestReport("stage-counting", 0, [], [], tree.leaf_radius,
                                 {"seed": seed, "note": "no internal nodes"})
    d = tree.d
    rows, viols = [], []
    for t in range(trials):
        a = internal[rng.randrange(len(internal))]
        n = a
        while n.children:
            n = n.children[rng.randrange(len(n.children))]
        sub = _plane_through(n.ball.center, _random_normal(rng, d), d)
        child_scale = tree.beta ** (a.depth + 1) * tree.rho0
        eps = _log_uniform(rng, tree.leaf_radius / 2, child_scale / 2, u_hi=0.98)
        if eps >= child_scale / 2:
            eps = child_scale / 4
        j = 0
        while a.depth + j + 1 <= tree.depth and tree.beta ** (a.depth + j + 1) * tree.rho0 >= eps:
            j += 1
        lhs = _joint_upper_mass(tree, a.ball, Neighborhood(sub, eps), top=a)
        bound = F(d, d + 1) ** j * (d + 1) * a.mass
        ok = lhs <= bound
        row = {"trial": t, "x": _fmt_point(n.ball.center), "rho": format_scalar(a.ball.radius),
               "eps": format_scalar(eps), "lhs": format_scalar(lhs),
               "rhs": format_scalar(bound), "pass": bool(ok), "stages": j}
        rows.append(row)
        if not ok:
            viols.append(dict(row, plane=_fmt_subspace(sub)))
    return MeasureTestReport("stage-counting", trials, rows, viols, tree.leaf_radius, {"seed": seed})


def fit_ahlfors_delta(tree: MeasureTree, trials: int = 400, seed: int = 0) -> float:
    """Least-squares slope of log mu(B(x,rho)) against log rho, midpoints."""
    rng = random.Random(seed)
    leaves = list(tree.leaves())
    floor = 3 * tree.leaf_radius
    xs, ys = [], []
    for _ in range(trials):
        x = leaves[rng.randrange(len(leaves))].ball.center
        rho = _log_uniform(rng, floor, tree.rho0)
        lo, hi = measure_of_ball(tree, Ball(point(x), rho))
        mid = (lo + hi) / 2
        if mid > 0:
            xs.append(math.log(float(rho)))
            ys.append(math.log(float(mid)))
    slope, _ = np.polyfit(np.array(xs), np.array(ys), 1)
    return float(slope)


# ---------------------------------------------------------------------------
# serialization

def tree_to_json(tree: MeasureTree) -> dict:
    def enc(n: MeasureNode) -> dict:
        return {
            "center": [format_scalar(c) for c in n.ball.center],
            "radius": format_scalar(n.ball.radius),
            "mass": format_scalar(n.mass),
            "children": [enc(c) for c in n.children],
        }

    return {
        "d": tree.d,
        "beta": format_scalar(tree.beta),
        "beta0": format_scalar(tree.beta0) if tree.beta0 is not None else None,
        "rho0": format_scalar(tree.rho0),
        "depth": tree.depth,
        "gamma": tree.gamma,
        "C": tree.decay_c,
        "root": enc(tree.root),
    }


def tree_from_json(data: dict) -> MeasureTree:
    def dec(obj: dict, depth: int) -> MeasureNode:
        ball = Ball(tuple(parse_scalar(c) for c in obj["center"]), parse_scalar(obj["radius"]))
        node = MeasureNode(ball, parse_scalar(obj["mass"]), depth)
        node.children = [dec(c, depth + 1) for c in obj["children"]]
        return node

    b0 = data.get("beta0")
    return MeasureTree(
        root=dec(data["root"], 0),
        d=int(data["d"]),
        beta=parse_scalar(data["beta"]),
        beta0=parse_scalar(b0) if b0 is not None else None,
        rho0=parse_scalar(data["rho0"]),
        depth=int(data["depth"]),
        gamma=float(data["gamma"]),
        decay_c=float(data["C"]),
    )


def dump_tree(tree: MeasureTree, path) -> None:
    with open(path, "w") as fh:
        json.dump(tree_to_json(tree), fh, indent=1)


def load_tree(path) -> MeasureTree:
    with open(path) as fh:
        return tree_from_json(json.load(fh))
