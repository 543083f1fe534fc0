"""Game engine for the classic (alpha, beta) ball game and the k-dimensional
beta-absolute game.

The engine is the referee: it validates every move with exact rational
predicates, runs the alternation to a finite horizon, and records the whole
game in a serializable transcript.  Strategies are consulted through a narrow
interface and are never trusted: an illegal move loses on the spot.

Status semantics at the end of `play`:

* ``AliceWinsAtHorizon`` -- all configured rounds were completed legally;
  certificates are then evaluated on ``final_ball``.
* ``Running``            -- play was cut before the configured horizon.
* ``BobWinsNoMove``      -- Bob declared he has no legal ball; on a finite
  point arena the engine verifies the claim (a false claim is an illegal
  move).  On other arenas the declaration is recorded as unverified.
* ``IllegalMove``        -- the offender is recorded and loses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import (
    AffineSubspace,
    Ball,
    Neighborhood,
    ball_avoids_neighborhood,
    ball_contains_ball,
    format_scalar,
    null_space,
    point,
    scalar,
    sq_dist,
    sq_dist_point_subspace,
)


# ---------------------------------------------------------------------------
# rules and arenas

@dataclass(frozen=True)
class ClassicRules:
    """Nested-ball game: rho(A_i) = alpha rho(B_i), rho(B_{i+1}) = beta rho(A_i)."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", scalar(self.alpha))
        object.__setattr__(self, "beta", scalar(self.beta))
        if not (0 < self.alpha < 1 and 0 < self.beta < 1):
            raise ValueError("classic game needs 0 < alpha, beta < 1")


@dataclass(frozen=True)
class AbsoluteRules:
    """k-dimensional absolute game: Alice removes neighborhoods of k-flats."""

    k: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", scalar(self.beta))
        if not 0 < self.beta < Fraction(1, 3):
            raise ValueError("absolute game needs 0 < beta < 1/3")
        if self.k < 0:
            raise ValueError("k must be nonnegative")


@dataclass(frozen=True)
class FullSpace:
    d: int

    def contains_point(self, p) -> bool:
        return True


@dataclass(frozen=True)
class OnSet:
    """Game constrained to a closed set K: Bob's centers must lie on K."""

    oracle: object  # duck-typed KOracle, see fractals module

    @property
    def d(self) -> int:
        return self.oracle.dim

    def contains_point(self, p) -> bool:
        return self.oracle.contains_point(p)


@dataclass(frozen=True)
class GameConfig:
    rules: object  # ClassicRules | AbsoluteRules
    arena: object  # FullSpace | OnSet
    horizon: int
    seed: Optional[int] = None

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be at least one round")
        if isinstance(self.rules, AbsoluteRules) and self.rules.k > self.d - 1:
            raise ValueError("k must be at most d-1")

    @property
    def d(self) -> int:
        return self.arena.d


# ---------------------------------------------------------------------------
# moves and transcripts

@dataclass(frozen=True)
class BobMove:
    ball: Ball


@dataclass(frozen=True)
class AliceBallMove:
    ball: Ball


@dataclass(frozen=True)
class AliceNeighborhoodMove:
    nbhd: Neighborhood


STATUS_RUNNING = "Running"
STATUS_ALICE_HORIZON = "AliceWinsAtHorizon"
STATUS_BOB_NO_MOVE = "BobWinsNoMove"
STATUS_ILLEGAL = "IllegalMove"


@dataclass
class Transcript:
    config: GameConfig
    moves: list = field(default_factory=list)
    status: str = STATUS_RUNNING
    offender: Optional[str] = None
    no_move_verified: Optional[bool] = None
    certificate_hints: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def bob_balls(self) -> list[Ball]:
        return [m.ball for m in self.moves if isinstance(m, BobMove)]

    def alice_moves(self) -> list:
        return [m for m in self.moves if not isinstance(m, BobMove)]

    def last_bob_ball(self) -> Optional[Ball]:
        for m in reversed(self.moves):
            if isinstance(m, BobMove):
                return m.ball
        return None

    def last_alice_move(self):
        for m in reversed(self.moves):
            if not isinstance(m, BobMove):
                return m
        return None

    def bobs_turn(self) -> bool:
        return len(self.moves) % 2 == 0

    def rounds_completed(self) -> int:
        return len(self.moves) // 2


def final_ball(t: Transcript) -> Ball:
    b = t.last_bob_ball()
    if b is None:
        raise ValueError("transcript has no Bob move")
    return b


def tightest_ball(t: Transcript) -> Ball:
    """The last ball played by either side.

    Every legal continuation stays inside it, so it is the sharpest outcome
    bound a transcript supports.  In absolute games Alice plays neighborhoods
    and this is just final_ball; in classic games a transcript ending on
    Alice's turn ends on her (smaller) ball.
    """
    for m in reversed(t.moves):
        ball = getattr(m, "ball", None)
        if ball is not None:
            return ball
    raise ValueError("transcript has no ball move")


# ---------------------------------------------------------------------------
# legality

def legal_bob_move(t: Transcript, ball: Ball) -> bool:
    cfg = t.config
    if not t.bobs_turn():
        return False
    if ball.dim != cfg.d or ball.radius <= 0:
        return False
    if not cfg.arena.contains_point(ball.center):
        return False
    prev = t.last_bob_ball()
    if prev is None:
        return True  # opening ball is Bob's free choice
    rules = cfg.rules
    last_alice = t.last_alice_move()
    if isinstance(rules, ClassicRules):
        assert isinstance(last_alice, AliceBallMove)
        if ball.radius != rules.beta * last_alice.ball.radius:
            return False
        return ball_contains_ball(last_alice.ball, ball)
    else:
        assert isinstance(last_alice, AliceNeighborhoodMove)
        if ball.radius < rules.beta * prev.radius:
            return False
        if not ball_contains_ball(prev, ball):
            return False
        return ball_avoids_neighborhood(ball, last_alice.nbhd)


def legal_alice_move(t: Transcript, move) -> bool:
    cfg = t.config
    if t.bobs_turn():
        return False
    cur = t.last_bob_ball()
    assert cur is not None
    rules = cfg.rules
    if isinstance(rules, ClassicRules):
        if not isinstance(move, AliceBallMove):
            return False
        if move.ball.dim != cfg.d:
            return False
        if move.ball.radius != rules.alpha * cur.radius:
            return False
        return ball_contains_ball(cur, move.ball)
    else:
        if not isinstance(move, AliceNeighborhoodMove):
            return False
        nb = move.nbhd
        if nb.ambient_dim != cfg.d or nb.subspace.dim != rules.k:
            return False
        return 0 < nb.width <= rules.beta * cur.radius


def _verify_no_move(t: Transcript) -> Optional[bool]:
    """On a finite arena, decide Bob's no-move claim exactly.

    Returns True (claim correct), False (a legal ball exists), or None when
    the arena is not finitely enumerable and the claim cannot be decided.
    """
    cfg = t.config
    arena = cfg.arena
    pts = None
    if isinstance(arena, OnSet) and hasattr(arena.oracle, "all_points"):
        pts = arena.oracle.all_points()
    if pts is None:
        return None
    prev = t.last_bob_ball()
    if prev is None:
        return False if pts else True
    rules = cfg.rules
    last_alice = t.last_alice_move()
    if isinstance(rules, ClassicRules):
        a = last_alice.ball
        r = rules.beta * a.radius
        for z in pts:
            if ball_contains_ball(a, Ball(z, r)):
                return False
        return True
    else:
        nb = last_alice.nbhd
        r = rules.beta * prev.radius
        for z in pts:
            cand = Ball(z, r)
            if ball_contains_ball(prev, cand) and ball_avoids_neighborhood(cand, nb):
                return False
        return True


# ---------------------------------------------------------------------------
# play loop

def _flag_illegal(t: Transcript, who: str, exc: Optional[Exception]) -> None:
    t.status = STATUS_ILLEGAL
    t.offender = who
    t.metadata["illegal_index"] = len(t.moves)
    if exc is not None:
        t.metadata["offender_error"] = f"{type(exc).__name__}: {exc}"


def play(config: GameConfig, alice, bob, horizon: Optional[int] = None) -> Transcript:
    """Run the alternation for `horizon` rounds (default: config.horizon).

    A round is one Bob ball followed by one Alice response.  Strategies are
    reset at the start.  The returned transcript carries the final status and
    any certificate hints the Alice strategy exports.
    """
    t = Transcript(config=config)
    rounds = config.horizon if horizon is None else min(horizon, config.horizon)
    alice.reset()
    bob.reset()
    stalls = 0
    for _ in range(rounds):
        prev_radius = None
        prev = t.last_bob_ball()
        if prev is not None:
            prev_radius = prev.radius
        try:
            ball = bob.next_move(t)
        except Exception as exc:  # strategy crash loses the game on the spot
            _flag_illegal(t, "bob", exc)
            break
        if ball is None:
            verified = _verify_no_move(t)
            t.no_move_verified = verified
            if verified is False:
                _flag_illegal(t, "bob", None)  # claim refuted on a finite arena
            else:
                t.status = STATUS_BOB_NO_MOVE
            break
        if not legal_bob_move(t, ball):
            _flag_illegal(t, "bob", None)
            break
        t.moves.append(BobMove(ball))
        if prev_radius is not None and ball.radius == prev_radius:
            stalls += 1
        try:
            move = alice.next_move(t)
        except Exception as exc:
            _flag_illegal(t, "alice", exc)
            break
        if move is None or not legal_alice_move(t, move):
            _flag_illegal(t, "alice", None)
            break
        t.moves.append(move)
    if t.status == STATUS_RUNNING and t.rounds_completed() >= config.horizon:
        t.status = STATUS_ALICE_HORIZON
    if stalls:
        t.metadata["stalled_rounds"] = stalls
    if t.status in (STATUS_ALICE_HORIZON, STATUS_RUNNING) and hasattr(alice, "certificate_hints"):
        hints = alice.certificate_hints(t)
        if hints:
            t.certificate_hints = hints
    return t


# ---------------------------------------------------------------------------
# strategy interfaces

class AliceStrategy:
    def reset(self) -> None:
        pass

    def next_move(self, t: Transcript):
        raise NotImplementedError

    def certificate_hints(self, t: Transcript) -> dict:
        return {}


class BobStrategy:
    def reset(self) -> None:
        pass

    def next_move(self, t: Transcript) -> Optional[Ball]:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# serialization: scalars as "p/q" strings, exact round trip

def _point_json(p) -> list[str]:
    return [format_scalar(c) for c in p]


def _point_from_json(obj) -> tuple:
    return point([Fraction(c) for c in obj])


def _move_to_json(m) -> dict:
    if isinstance(m, BobMove):
        return {
            "who": "bob",
            "center": _point_json(m.ball.center),
            "radius": format_scalar(m.ball.radius),
        }
    if isinstance(m, AliceBallMove):
        return {
            "who": "alice",
            "center": _point_json(m.ball.center),
            "radius": format_scalar(m.ball.radius),
        }
    nb = m.nbhd
    out = {
        "who": "alice",
        "k": nb.subspace.dim,
        "anchor": _point_json(nb.subspace.anchor),
        "directions": [_point_json(v) for v in nb.subspace.directions],
        "width": format_scalar(nb.width),
    }
    if nb.subspace.is_hyperplane():
        n, c = nb.subspace.normal_and_offset()
        out["normal"] = _point_json(n)
        out["offset"] = format_scalar(c)
    return out


def _move_from_json(obj, rules):
    if obj["who"] == "bob":
        return BobMove(Ball(_point_from_json(obj["center"]), Fraction(obj["radius"])))
    if "center" in obj:
        return AliceBallMove(Ball(_point_from_json(obj["center"]), Fraction(obj["radius"])))
    anchor = _point_from_json(obj["anchor"])
    if "directions" in obj and obj["directions"]:
        dirs = tuple(_point_from_json(v) for v in obj["directions"])
    elif "normal" in obj:
        dirs = tuple(null_space([_point_from_json(obj["normal"])], len(anchor)))
    else:
        dirs = ()
    sub = AffineSubspace(anchor, dirs)
    return AliceNeighborhoodMove(Neighborhood(sub, Fraction(obj["width"])))


def config_to_json(cfg: GameConfig) -> dict:
    rules = cfg.rules
    if isinstance(rules, ClassicRules):
        kind = {"kind": "classic", "alpha": format_scalar(rules.alpha), "beta": format_scalar(rules.beta)}
    else:
        kind = {"kind": "absolute", "k": rules.k, "beta": format_scalar(rules.beta)}
    if isinstance(cfg.arena, FullSpace):
        arena = {"type": "fullspace", "d": cfg.arena.d}
    else:
        arena = {"type": "onset", "oracle": cfg.arena.oracle.to_spec()}
    out = {**kind, "d": cfg.d, "arena": arena, "horizon": cfg.horizon}
    if cfg.seed is not None:
        out["seed"] = cfg.seed
    return out


def config_from_json(obj) -> GameConfig:
    if obj["kind"] == "classic":
        rules = ClassicRules(Fraction(obj["alpha"]), Fraction(obj["beta"]))
    elif obj["kind"] == "absolute":
        rules = AbsoluteRules(int(obj["k"]), Fraction(obj["beta"]))
    else:
        raise ValueError(f"unknown game kind {obj['kind']!r}")
    arena_obj = obj["arena"]
    if arena_obj["type"] == "fullspace":
        arena = FullSpace(int(arena_obj["d"]))
    elif arena_obj["type"] == "onset":
        from .fractals import oracle_from_spec
        arena = OnSet(oracle_from_spec(arena_obj["oracle"]))
    else:
        raise ValueError(f"unknown arena type {arena_obj['type']!r}")
    return GameConfig(rules=rules, arena=arena, horizon=int(obj["horizon"]), seed=obj.get("seed"))


def transcript_to_json(t: Transcript) -> dict:
    out = {
        "config": config_to_json(t.config),
        "moves": [_move_to_json(m) for m in t.moves],
        "status": t.status,
    }
    if t.offender is not None:
        out["offender"] = t.offender
    if t.no_move_verified is not None:
        out["no_move_verified"] = t.no_move_verified
    if t.certificate_hints:
        out["certificate_hints"] = t.certificate_hints
    if t.metadata:
        out["metadata"] = t.metadata
    return out


def transcript_from_json(obj) -> Transcript:
    cfg = config_from_json(obj["config"])
    t = Transcript(config=cfg)
    t.moves = [_move_from_json(m, cfg.rules) for m in obj["moves"]]
    t.status = obj["status"]
    t.offender = obj.get("offender")
    t.no_move_verified = obj.get("no_move_verified")
    t.certificate_hints = obj.get("certificate_hints", {})
    t.metadata = obj.get("metadata", {})
    return t


def dump_transcript(t: Transcript, path) -> None:
    with open(path, "w") as fh:
        json.dump(transcript_to_json(t), fh, indent=1)


def load_transcript(path) -> Transcript:
    with open(path) as fh:
        return transcript_from_json(json.load(fh))
