"""Strategy library: winning Alice strategies and probing adversaries."""

from .adversaries import (
    OnlineHyperplaneBob,
    PointRemoverAlice,
    RandomBob,
    RandomClassicAlice,
    RandomClassicBob,
    RationalHuggerBob,
    ShrinkInPlaceBob,
    online_hyperplane_bob,
    random_bob,
    rational_hugger_bob,
    shrink_in_place_bob,
)
from .ba import BaAlice, ba_activation_ok, ba_alice, ball_volume_upper
from .combinators import IntersectAlice, intersect_alices
from .common import DummyAlice, centered_alice_ball, dummy_neighborhood_move
from .digits import DigitAlice, DigitBob, digit_alice_S, digit_bob
from .pullback import AffineMap, PullbackAlice, SampledMap, pullback_alice
from .toral import ToralAlice, toral_alice

__all__ = [
    "AffineMap",
    "BaAlice",
    "DigitAlice",
    "DigitBob",
    "DummyAlice",
    "IntersectAlice",
    "OnlineHyperplaneBob",
    "PointRemoverAlice",
    "PullbackAlice",
    "RandomBob",
    "RandomClassicAlice",
    "RandomClassicBob",
    "RationalHuggerBob",
    "SampledMap",
    "ShrinkInPlaceBob",
    "ToralAlice",
    "ba_activation_ok",
    "ba_alice",
    "ball_volume_upper",
    "centered_alice_ball",
    "digit_alice_S",
    "digit_bob",
    "dummy_neighborhood_move",
    "intersect_alices",
    "online_hyperplane_bob",
    "pullback_alice",
    "random_bob",
    "rational_hugger_bob",
    "shrink_in_place_bob",
    "toral_alice",
]
