"""Mass-distribution trees: exact invariants, decay envelopes, reports."""

import csv
import math
import random
from fractions import Fraction as F

import pytest

from schmidt_games import measures as M
from schmidt_games.certify import diffuse_beta_from_decay
from schmidt_games.fractals import FinitePointSetOracle, FullSpaceOracle
from schmidt_games.geometry import AffineSubspace, Ball, point, sq_dist
from schmidt_games.measures import (
    AhlforsParams,
    DecayParams,
    FedererParams,
    MeasureBuildError,
    MeasureTree,
    build_decaying_measure,
    check_tree,
    claimed_decay_params,
    decay_constant,
    decay_exponent,
    decay_trial,
    dump_tree,
    fit_ahlfors_delta,
    load_tree,
    measure_of_ball,
    proof_counting_check,
    tree_from_json,
    tree_to_json,
    uniform_cantor_tree,
)

# the validators carry test_ prefixes as API names; keep pytest off them
run_decay = M.test_absolute_decay
run_federer = M.test_federer
run_ahlfors = M.test_ahlfors

UNIT = Ball(point([0]), F(1))


@pytest.fixture(scope="module")
def built5():
    t = build_decaying_measure(FullSpaceOracle(1), UNIT, F(1, 3), F(1, 9), 5)
    check_tree(t)
    return t


@pytest.fixture(scope="module")
def cantor6():
    t = uniform_cantor_tree(6)
    check_tree(t)
    return t


# ---------------------------------------------------------------------------
# exponent and constant

def test_decay_exponent_defining_relation():
    # gamma solves beta^gamma = d/(d+1)
    assert abs(9.0 ** decay_exponent(1, F(1, 9)) - 2.0) < 1e-12
    assert abs(3.0 ** decay_exponent(1, F(1, 3)) - 2.0) < 1e-12
    assert abs(2.0 ** decay_exponent(2, F(1, 2)) - 1.5) < 1e-12
    # shallower contraction needs a larger exponent for the same mass drop
    assert decay_exponent(1, F(1, 3)) > decay_exponent(1, F(1, 9))


def test_decay_constant_normalization():
    # C (beta/2)^gamma == d+1: the envelope is exactly d+1 at one child scale
    for d, beta in [(1, F(1, 9)), (1, F(1, 3)), (2, F(1, 5))]:
        g = decay_exponent(d, beta)
        assert abs(decay_constant(d, beta) * (float(beta) / 2) ** g - (d + 1)) < 1e-9


def test_decay_constant_frozen_value():
    c = decay_constant(1, F(1, 9))
    assert 4.97 < c < 4.99
    assert abs(c - 2 * 18 ** decay_exponent(1, F(1, 9))) < 1e-9


def test_decay_params_validation():
    DecayParams(1.0, 0.5, F(1))
    with pytest.raises(ValueError):
        DecayParams(0.0, 0.5, F(1))
    with pytest.raises(ValueError):
        DecayParams(1.0, -0.1, F(1))
    FedererParams(3.0)
    AhlforsParams(0.63, 0.2, 4.0)


def test_reexports_decay_beta_oracle():
    assert M.diffuse_beta_from_decay is diffuse_beta_from_decay


# ---------------------------------------------------------------------------
# construction on the full line

def test_build_structure_frozen(built5):
    leaves = list(built5.leaves())
    assert len(leaves) == 32
    assert all(l.mass == F(1, 32) for l in leaves)
    assert all(l.ball.radius == F(1, 9) ** 5 for l in leaves)
    assert built5.leaf_radius == F(1, 59049)
    assert built5.rho0 == 1 and built5.depth == 5 and built5.d == 1
    assert built5.beta == F(1, 9) and built5.beta0 == F(1, 3)


def test_build_children_separated_as_sets(built5):
    # pairwise center gap >= 4r means gap >= 2r between the closed balls
    for n in built5.nodes():
        r = built5.beta ** (n.depth + 1) * built5.rho0
        cs = [k.ball.center for k in n.children]
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                assert sq_dist(cs[i], cs[j]) >= (4 * r) ** 2


def test_build_stays_inside_root(built5):
    for n in built5.nodes():
        assert abs(n.ball.center[0]) + n.ball.radius <= 1


def test_claimed_params_match_tree(built5):
    p = claimed_decay_params(built5)
    assert p.C == built5.decay_c
    assert p.gamma == built5.gamma
    assert p.rho0 == built5.rho0


def test_build_parameter_guards():
    o = FullSpaceOracle(1)
    with pytest.raises(ValueError, match="beta0"):
        build_decaying_measure(o, UNIT, F(1), F(1, 9), 1)
    with pytest.raises(ValueError, match="beta0/3"):
        build_decaying_measure(o, UNIT, F(1, 3), F(1, 8), 1)
    with pytest.raises(ValueError, match="depth"):
        build_decaying_measure(o, UNIT, F(1, 3), F(1, 9), -1)


def test_build_depth_zero():
    t = build_decaying_measure(FullSpaceOracle(1), UNIT, F(1, 3), F(1, 9), 0)
    check_tree(t)
    assert t.root.is_leaf and t.root.mass == 1
    assert measure_of_ball(t, UNIT) == (F(1), F(1))


def test_build_failure_names_the_node():
    with pytest.raises(MeasureBuildError, match="net too sparse"):
        build_decaying_measure(FinitePointSetOracle([[F(0)]]), UNIT, F(1, 3), F(1, 9), 1)
    # two candidates closer than the separation floor: placement, not supply
    with pytest.raises(MeasureBuildError, match="depth 0.*no admissible"):
        build_decaying_measure(
            FinitePointSetOracle([[F(0)], [F(1, 100)]]), UNIT, F(1, 3), F(1, 9), 1)


def test_check_tree_catches_tampering(built5):
    data = tree_to_json(built5)
    t = tree_from_json(data)
    t.root.children[0].mass += F(1, 64)
    with pytest.raises(ValueError, match="mass"):
        check_tree(t)
    t2 = tree_from_json(data)
    kid = t2.root.children[0]
    kid.ball = Ball(kid.ball.center, kid.ball.radius * 2)
    with pytest.raises(ValueError):
        check_tree(t2)


# ---------------------------------------------------------------------------
# the middle-thirds testbed

def test_cantor_tree_frozen_geometry(cantor6):
    assert cantor6.beta0 is None
    assert cantor6.rho0 == F(1, 2) and cantor6.beta == F(1, 3)
    assert len(list(cantor6.leaves())) == 64
    kids = sorted(k.ball.center[0] for k in cantor6.root.children)
    assert kids == [F(1, 6), F(5, 6)]


def test_cantor_tree_sits_on_the_separation_floor(cantor6):
    # sibling gap is exactly 4r at every level: the sharp case for 2r-as-sets
    for n in cantor6.nodes():
        if n.children:
            a, b = n.children
            r = a.ball.radius
            assert abs(a.ball.center[0] - b.ball.center[0]) == 4 * r


def test_cantor_masses_exact(cantor6):
    assert measure_of_ball(cantor6, Ball(point([F(1, 6)]), F(1, 6))) == (F(1, 2), F(1, 2))
    # the middle gap holds no leaf; it only touches the two cylinders at 1/3, 2/3
    assert measure_of_ball(cantor6, Ball(point([F(1, 2)]), F(1, 6))) == (F(0), F(1, 32))
    assert measure_of_ball(cantor6, Ball(point([F(1, 2)]), F(2))) == (F(1), F(1))


def test_leaf_masses_sum_to_one(built5, cantor6):
    for t in (built5, cantor6):
        assert sum(l.mass for l in t.leaves()) == 1


def test_measure_interval_monotone(cantor6):
    rng = random.Random(5)
    leaves = list(cantor6.leaves())
    for _ in range(40):
        x = leaves[rng.randrange(len(leaves))].ball.center
        r = F(rng.randint(1, 200), 400)
        lo1, hi1 = measure_of_ball(cantor6, Ball(x, r))
        lo2, hi2 = measure_of_ball(cantor6, Ball(x, 2 * r))
        assert lo1 <= hi1
        assert lo1 <= lo2 and hi1 <= hi2


# ---------------------------------------------------------------------------
# decay trials

def test_decay_trial_hand_witness(cantor6):
    # L = {0}, B = the root.  Leaves within 1/54 of the origin are exactly the
    # four level-6 cylinders starting at 0, 2, 6, 8 (/729): joint mass 4/64.
    # Envelope: C (eps/rho)^gamma = C (1/27)^gamma = C/8 since 3^gamma = 2.
    origin = AffineSubspace(point([0]), ())
    row = decay_trial(cantor6, [F(1, 2)], F(1, 2), origin, F(1, 54),
                      cantor6.decay_c, cantor6.gamma)
    assert row["pass"] and not row["auto"]
    assert row["lhs"] == "1/16"
    assert abs(float(row["rhs"]) - cantor6.decay_c / 8) < 1e-12


def test_decay_trial_detects_undersized_constant(cantor6):
    # C/16 pushes the envelope to ~0.048 < 1/16: the same witness must fail
    origin = AffineSubspace(point([0]), ())
    row = decay_trial(cantor6, [F(1, 2)], F(1, 2), origin, F(1, 54),
                      cantor6.decay_c / 16, cantor6.gamma)
    assert not row["pass"]


def test_decay_trial_envelope_above_one_auto_passes(cantor6):
    origin = AffineSubspace(point([0]), ())
    row = decay_trial(cantor6, [F(1, 2)], F(1, 2), origin, F(1, 3),
                      cantor6.decay_c, cantor6.gamma)
    assert row["pass"] and row["auto"]


def test_decay_trial_empty_intersection_passes_any_constant(cantor6):
    far = AffineSubspace(point([10]), ())
    row = decay_trial(cantor6, [F(1, 2)], F(1, 4), far, F(1, 100),
                      1e-6, cantor6.gamma)
    assert row["pass"] and row["lhs"] == "0/1"


def test_sampled_decay_clean_at_claimed_constant(built5):
    rep = run_decay(built5, built5.decay_c, built5.gamma, trials=120, seed=3)
    assert rep.passed and rep.trials == 120 and not rep.violations
    assert rep.scale_floor == 3 * built5.leaf_radius == F(1, 19683)
    assert len(rep.rows) == 120
    assert [r["mode"] for r in rep.rows[:3]] == ["random", "through-x", "best-fit"]


def test_sampled_decay_flags_an_eighth_of_the_constant(built5):
    # the sampler has teeth: through-leaf planes at near-floor widths catch it
    rep = run_decay(built5, built5.decay_c / 8, built5.gamma, trials=200, seed=9)
    assert not rep.passed
    assert len(rep.violations) == 114
    assert all("plane" in v for v in rep.violations)


def test_sampled_decay_same_seed_reproduces(built5):
    a = run_decay(built5, built5.decay_c, built5.gamma, trials=30, seed=11)
    b = run_decay(built5, built5.decay_c, built5.gamma, trials=30, seed=11)
    assert a.rows == b.rows


# ---------------------------------------------------------------------------
# federer / ahlfors / stage counting

def test_federer_doubling(cantor6):
    rep = run_federer(cantor6, 20, trials=100, seed=1)
    assert rep.passed and not rep.violations
    bad = run_federer(cantor6, 2, trials=100, seed=1)
    assert len(bad.violations) == 46


def test_ahlfors_window(cantor6):
    delta = math.log(2) / math.log(3)
    rep = run_ahlfors(cantor6, delta, 0.5, 2.0, trials=100, seed=2)
    assert rep.passed
    assert len(rep.rows) == 200  # one row per side per trial
    bad = run_ahlfors(cantor6, delta, 2.5, 4.0, trials=100, seed=2)
    assert len(bad.violations) == 100  # every lower-bound row breaks


def test_ahlfors_fit_recovers_dimension():
    delta = math.log(2) / math.log(3)
    assert abs(fit_ahlfors_delta(uniform_cantor_tree(7), trials=200, seed=0) - delta) < 0.02


def test_ahlfors_fit_on_built_tree(built5):
    # two children at ratio 1/9 carry dimension log 2 / log 9 = gamma
    assert abs(fit_ahlfors_delta(built5, trials=200, seed=0) - built5.gamma) < 0.05


def test_stage_counting_bound(built5):
    rep = proof_counting_check(built5, trials=60, seed=4)
    assert rep.passed and not rep.violations
    assert all(0 <= r["stages"] <= built5.depth for r in rep.rows)


def test_stage_counting_needs_internal_nodes():
    rep = proof_counting_check(uniform_cantor_tree(0), trials=5)
    assert rep.trials == 0 and not rep.passed
    assert rep.params["note"] == "no internal nodes"


def test_scale_floor_flag_on_shallow_trees():
    t0 = uniform_cantor_tree(0)  # floor 3/2 exceeds rho0 = 1/2
    rep = run_decay(t0, t0.decay_c, t0.gamma, trials=5)
    assert rep.trials == 0 and not rep.passed
    assert rep.params["scale_floor_exceeds_root"]
    assert run_federer(t0, 5, trials=5).params["scale_floor_exceeds_root"]
    assert run_ahlfors(t0, 0.63, 0.1, 9, trials=5).params["scale_floor_exceeds_root"]


def test_samplers_reject_zero_trials(cantor6):
    for fn in (
        lambda: run_decay(cantor6, 1.0, 0.6, trials=0),
        lambda: run_federer(cantor6, 5, trials=0),
        lambda: run_ahlfors(cantor6, 0.6, 0.1, 9, trials=0),
        lambda: proof_counting_check(cantor6, trials=0),
    ):
        with pytest.raises(ValueError, match="trials"):
            fn()


# ---------------------------------------------------------------------------
# reports and serialization

def test_report_csv_round_trip(cantor6, tmp_path):
    rep = run_federer(cantor6, 20, trials=12, seed=7)
    path = tmp_path / "federer.csv"
    rep.to_csv(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["trial", "x", "rho", "eps", "lhs", "rhs", "pass"]
    assert len(rows) == 13
    assert {r[6] for r in rows[1:]} <= {"0", "1"}


def test_tree_json_round_trip(built5, cantor6, tmp_path):
    for name, tree in (("built", built5), ("cantor", cantor6)):
        path = tmp_path / f"{name}.json"
        dump_tree(tree, path)
        back = load_tree(path)
        check_tree(back)
        assert isinstance(back, MeasureTree)
        assert back.beta == tree.beta and back.beta0 == tree.beta0
        assert back.rho0 == tree.rho0 and back.depth == tree.depth
        assert sorted(l.ball.center for l in back.leaves()) == \
            sorted(l.ball.center for l in tree.leaves())
        assert measure_of_ball(back, Ball(point([F(1, 4)]), F(1, 8))) == \
            measure_of_ball(tree, Ball(point([F(1, 4)]), F(1, 8)))


def test_tree_json_keys_frozen(cantor6):
    data = tree_to_json(cantor6)
    assert set(data) == {"d", "beta", "beta0", "rho0", "depth", "gamma", "C", "root"}
    assert data["beta0"] is None
    assert set(data["root"]) == {"center", "radius", "mass", "children"}
