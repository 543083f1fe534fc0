"""Toral orbit-avoiding Alice: branch selection, exact constants, a forced
slab removal, and agreement with the independent orbit certificate."""

import math
from fractions import Fraction as F

import pytest

from schmidt_games import certify
from schmidt_games.engine import (
    AbsoluteRules,
    BobMove,
    FullSpace,
    GameConfig,
    STATUS_ALICE_HORIZON,
    Transcript,
    final_ball,
    play,
)
from schmidt_games.geometry import Ball, ball_avoids_neighborhood, point
from schmidt_games.strategies import shrink_in_place_bob, toral_alice

DIAG23 = [[2, 0], [0, 3]]
ROT90 = [[0, -1], [1, 0]]
Y7 = [F(1, 7), F(1, 7)]


def cfg(beta, horizon):
    return GameConfig(rules=AbsoluteRules(1, beta), arena=FullSpace(2),
                      horizon=horizon)


# ---------------------------------------------------------------------------
# construction guards

def test_rejects_singular():
    with pytest.raises(ValueError, match="nonsingular"):
        toral_alice([[1, 1], [1, 1]], Y7, F(1, 6))


def test_rejects_non_semisimple():
    with pytest.raises(ValueError, match="semisimple"):
        toral_alice([[1, 1], [0, 1]], Y7, F(1, 6))


def test_rejects_bad_beta_and_shape():
    with pytest.raises(ValueError):
        toral_alice(DIAG23, Y7, F(1, 3))
    with pytest.raises(ValueError, match="square"):
        toral_alice([[1, 0]], [F(0)], F(1, 6))


def test_requires_hyperplane_game():
    alice = toral_alice(DIAG23, Y7, F(1, 6))
    t = Transcript(config=GameConfig(rules=AbsoluteRules(0, F(1, 6)),
                                     arena=FullSpace(2), horizon=4))
    t.moves.append(BobMove(Ball(point([F(0), F(0)]), F(1))))
    with pytest.raises(ValueError):
        alice.next_move(t)


# ---------------------------------------------------------------------------
# branch selection and frozen constants

def test_rotation_is_kronecker_order_4():
    alice = toral_alice(ROT90, [F(1, 3), F(1, 4)], F(1, 5))
    assert alice.branch == "kronecker"
    assert alice.order == 4
    assert len(alice.base_points) == 4


def test_swap_matrix_has_order_2():
    alice = toral_alice([[0, 1], [1, 0]], [F(1, 3), F(1, 4)], F(1, 5))
    assert alice.branch == "kronecker"
    assert alice.order == 2
    assert len(alice.base_points) == 2


def test_expanding_constants_diag23():
    alice = toral_alice(DIAG23, Y7, F(1, 6))
    assert alice.branch == "expanding"
    assert alice.lam == 3.0
    assert alice.ell == 2             # 3^-2 = 1/9 < 1/6 <= 3^-1
    assert alice.a == F(1, 36)        # 1/|det|^ell = 1/6^2
    assert alice.b == 1               # Frobenius of diag(1/2,1/3) is below 1
    # the eigendirection ratios are exactly 1 for a diagonal matrix
    assert abs(alice.delta1 - 1.01) < 1e-9
    assert abs(alice.delta2 - 0.99) < 1e-9
    # min positive separation over j <= 2 is at j = 2: sqrt(5/31752)/3
    assert abs(float(alice.t0) - math.sqrt(5 / 31752) / 3) < 1e-12
    assert (alice.t0 * 3) ** 2 <= F(5, 31752)  # a true lower bound


def test_sampled_delta_check_diag23():
    alice = toral_alice(DIAG23, Y7, F(1, 6))
    report = alice.sampled_delta_check(rel_slack=1e-8)
    assert report["delta1_ok"] and report["delta2_ok"]
    assert abs(report["max_ratio"] - 1.0) < 1e-10
    assert abs(report["min_ratio"] - 1.0) < 1e-10


# ---------------------------------------------------------------------------
# measured clearance (kronecker)

def test_measured_clearance_frozen_rotation():
    alice = toral_alice(ROT90, [F(0), F(0)], F(1, 5))
    ball = Ball(point([F(1, 3), F(1, 4)]), F(1, 100))
    # every R^j (1/3, 1/4) sits at distance 5/12 from Z^2, and 25/144 is a
    # perfect square so the lower bound is exact
    assert alice.measured_clearance(ball, j_max=8) == F(5, 12)


# ---------------------------------------------------------------------------
# kronecker game

def test_kronecker_game_and_certificate():
    y = [F(1, 3), F(1, 4)]
    alice = toral_alice(ROT90, y, F(1, 5))
    opening = Ball(point([F(1, 10), F(1, 2)]), F(1, 2))
    t = play(cfg(F(1, 5), 8), alice, shrink_in_place_bob(opening))
    assert t.status == STATUS_ALICE_HORIZON
    hints = alice.certificate_hints(t)
    assert hints["branch"] == "kronecker" and hints["order"] == 4
    assert hints["t_is_measured"] is True
    t_val = F(hints["t"])
    assert t_val > 0
    cert = certify.orbit_certificate(final_ball(t), ROT90, y, t_val, 20)
    assert cert.passed and cert.exact


# ---------------------------------------------------------------------------
# expanding game

def test_expanding_game_forces_a_removal():
    # Bob opens exactly on R^-2 y, a stage-1 offender; Alice must cut the
    # slab through it and the measured bookkeeping must survive the oracle
    alice = toral_alice(DIAG23, Y7, F(1, 6))
    opening = Ball(point([F(1, 28), F(1, 63)]), F(1))
    t = play(cfg(F(1, 6), 12), alice, shrink_in_place_bob(opening))
    assert t.status == STATUS_ALICE_HORIZON
    hints = alice.certificate_hints(t)
    assert hints["branch"] == "expanding"
    assert hints["activated"] is True
    assert hints["removals"] >= 1
    assert hints["stages_done"] >= 2
    assert (2, (0, 0)) in alice.removed
    t_val = F(hints["t"])
    assert 0 < t_val <= alice.t0
    fb = final_ball(t)
    for mv in t.alice_moves():
        assert ball_avoids_neighborhood(fb, mv.nbhd)
    cert = certify.orbit_certificate(fb, DIAG23, Y7, t_val, 20)
    assert cert.passed and cert.exact


def test_expanding_unactivated_exports_zero():
    alice = toral_alice(DIAG23, Y7, F(1, 6))
    opening = Ball(point([F(1, 3), F(1, 3)]), F(1))
    t = play(cfg(F(1, 6), 3), alice, shrink_in_place_bob(opening))
    hints = alice.certificate_hints(t)
    assert hints["activated"] is False
    assert hints["t"] == "0"


def test_expanding_activation_threshold():
    alice = toral_alice(DIAG23, Y7, F(1, 6))
    # radius 6^-6 is the first exact-shrink power below the threshold
    assert F(6) ** -6 <= alice.act_threshold < F(6) ** -5
    opening = Ball(point([F(1, 3), F(1, 3)]), F(1))
    t = play(cfg(F(1, 6), 12), alice, shrink_in_place_bob(opening))
    assert t.status == STATUS_ALICE_HORIZON
    assert alice.activation_rho == F(6) ** -6
    assert alice.t == min(alice.t0, F(1, 6) * alice.activation_rho / (
        2 * F(alice.m_proj) * alice.b * F(alice.delta1)))
