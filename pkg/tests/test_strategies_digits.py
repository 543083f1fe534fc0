"""Base-3 digit strategies for the classic game in the plane: index
scheduling on Alice's side, forced runs of ones on Bob's."""

import math
from fractions import Fraction as F

import pytest

from schmidt_games import certify
from schmidt_games.engine import (
    ClassicRules,
    FullSpace,
    GameConfig,
    STATUS_ALICE_HORIZON,
    final_ball,
    play,
    tightest_ball,
)
from schmidt_games.geometry import Ball, point
from schmidt_games.strategies import (
    DummyAlice,
    RandomClassicBob,
    digit_alice_S,
    digit_bob,
)
from schmidt_games.strategies.digits import DIGIT_ALICE_ALPHA, INSCRIBED


def alice_cfg(beta, horizon):
    return GameConfig(rules=ClassicRules(DIGIT_ALICE_ALPHA, beta),
                      arena=FullSpace(2), horizon=horizon)


def bob_cfg(n, horizon):
    return GameConfig(rules=ClassicRules(4 * F(3) ** -n, F(1, 4) * F(3) ** -n),
                      arena=FullSpace(2), horizon=horizon)


OPENING = Ball(point([F(5, 7), F(3, 11)]), F(1))


# ---------------------------------------------------------------------------
# parameter validation

def test_inscribed_constant_is_below_inv_sqrt2():
    assert INSCRIBED ** 2 * 2 < 1
    assert float(INSCRIBED) > 0.707


def test_digit_alice_rejects_bad_beta():
    with pytest.raises(ValueError):
        digit_alice_S(F(1))
    with pytest.raises(ValueError):
        digit_alice_S(F(0))


def test_digit_alice_needs_its_alpha_and_dimension():
    alice = digit_alice_S(F(1, 4))
    wrong_alpha = GameConfig(rules=ClassicRules(F(1, 2), F(1, 4)),
                             arena=FullSpace(2), horizon=4)
    t = play(wrong_alpha, alice, RandomClassicBob(3, OPENING))
    assert t.status == "IllegalMove" and t.offender == "alice"
    wrong_d = GameConfig(rules=ClassicRules(DIGIT_ALICE_ALPHA, F(1, 4)),
                         arena=FullSpace(1), horizon=4)
    t = play(wrong_d, digit_alice_S(F(1, 4)),
             RandomClassicBob(3, Ball(point([F(1, 2)]), F(1))))
    assert t.status == "IllegalMove" and t.offender == "alice"


def test_digit_bob_rejects_n_below_2():
    with pytest.raises(ValueError):
        digit_bob(1)
    with pytest.raises(ValueError):
        digit_bob(0)


def test_digit_bob_checks_rules():
    bob = digit_bob(2)
    wrong = GameConfig(rules=ClassicRules(F(4, 9), F(1, 4)),
                       arena=FullSpace(2), horizon=4)
    t = play(wrong, DummyAlice(), bob)
    assert t.status == "IllegalMove" and t.offender == "bob"


# ---------------------------------------------------------------------------
# alice: index schedule

def test_activation_window_from_opening_radius():
    alice = digit_alice_S(F(1, 4))
    t = play(alice_cfg(F(1, 4), 2), alice, RandomClassicBob(11, OPENING))
    assert t.status == STATUS_ALICE_HORIZON
    # alpha * 1 = 1/108: 1/162 <= 1/108 < 1/54 picks a = 2
    assert alice.a == 2
    assert alice.indices[0] == 2


def test_index_gaps_match_theta():
    beta = F(1, 4)
    alice = digit_alice_S(beta)
    theta = -math.log(float(DIGIT_ALICE_ALPHA * beta), 3)
    t = play(alice_cfg(beta, 8), alice, RandomClassicBob(5, OPENING))
    assert t.status == STATUS_ALICE_HORIZON
    assert len(alice.indices) == 8
    assert alice.indices == sorted(set(alice.indices))
    gaps = [b - a for a, b in zip(alice.indices, alice.indices[1:])]
    assert set(gaps) <= {math.floor(theta), math.ceil(theta)}


@pytest.mark.parametrize("beta", [F(1, 4), F(2, 5), F(1, 9)])
def test_indices_strictly_increase_across_betas(beta):
    alice = digit_alice_S(beta)
    t = play(alice_cfg(beta, 6), alice, RandomClassicBob(7, OPENING))
    assert t.status == STATUS_ALICE_HORIZON
    assert all(b > a for a, b in zip(alice.indices, alice.indices[1:]))


def test_zero_digit_certificate_on_played_game():
    alice = digit_alice_S(F(1, 4))
    t = play(alice_cfg(F(1, 4), 6), alice, RandomClassicBob(2, OPENING))
    assert t.status == STATUS_ALICE_HORIZON
    hints = alice.certificate_hints(t)
    assert hints["activated"] is True
    assert hints["indices"] == alice.indices
    # her final ball sits inside the deepest cell she locked; Bob's final
    # ball does not yet see the last index, so the tight ball is the one
    fb = tightest_ball(t)
    cert = certify.digit_zero_certificate(fb, alice.indices, max(alice.indices))
    assert cert.passed and cert.exact and not cert.partial
    last_bob = certify.digit_zero_certificate(final_ball(t), alice.indices,
                                              max(alice.indices))
    assert last_bob.partial


def test_alice_ball_fits_inside_one_cell():
    alice = digit_alice_S(F(1, 4))
    t = play(alice_cfg(F(1, 4), 5), alice, RandomClassicBob(9, OPENING))
    for i, mv in zip(alice.indices, t.alice_moves()):
        scale = F(3) ** i
        for c in mv.ball.center:
            # centered at a cell midpoint whose digit is 0
            m = (c * scale - F(1, 2))
            assert m.denominator == 1 and int(m) % 3 == 0
            assert mv.ball.radius < F(1, 2) / scale


# ---------------------------------------------------------------------------
# bob: forced runs of ones

def test_digit_bob_opening_units_digits():
    bob = digit_bob(2)
    t = play(bob_cfg(2, 1), DummyAlice(), bob)
    b0 = t.bob_balls()[0]
    assert b0 == Ball(point([F(3, 2), F(3, 2)]), F(1, 2))


def test_digit_bob_radius_law():
    n = 2
    bob = digit_bob(n)
    t = play(bob_cfg(n, 4), DummyAlice(), bob)
    assert t.status == STATUS_ALICE_HORIZON
    for k, b in enumerate(t.bob_balls()):
        if k == 0:
            continue
        assert b.radius == F(1, 2) * F(3) ** (-2 * n * k)


def test_digit_bob_disjunction_certificate():
    n = 2
    bob = digit_bob(n)
    # horizon 4: three forced runs, final bob ball = a complete level-12 cell
    t = play(bob_cfg(n, 4), DummyAlice(), bob)
    fb = final_ball(t)
    # digits are stable to 11 (the cell's top corner flips digit 12),
    # so depth 9 = 11 - n is the deepest fully checkable disjunction
    assert certify.ball_digit_stability(fb, 12) == 11
    cert = certify.digit_disjunction_certificate(fb, n, 9)
    assert cert.passed and cert.exact and not cert.partial
    too_deep = certify.digit_disjunction_certificate(fb, n, 10)
    assert too_deep.partial


def test_digit_bob_survives_adversarial_alice():
    from schmidt_games.strategies import RandomClassicAlice

    n = 3
    bob = digit_bob(n)
    t = play(bob_cfg(n, 3), RandomClassicAlice(21), bob)
    assert t.status == STATUS_ALICE_HORIZON
    fb = final_ball(t)
    depth = 2 * n * 2 - 1 - n  # stability prefix minus the x-offset
    cert = certify.digit_disjunction_certificate(fb, n, depth)
    assert cert.passed and cert.exact
