"""Round-robin interleaving of several Alice strategies.

Winning the absolute game is countably-intersection stable: give each
strategy every n-th turn and it still faces a legal (if lazier) Bob, so each
target's guarantee survives.  Only the owner of a turn is consulted; the
others see the full transcript later on their own turns, and their internal
bookkeeping (windows handled, stages done) counts only moves they actually
played.
"""

from __future__ import annotations

from ..engine import AliceStrategy


class IntersectAlice(AliceStrategy):
    def __init__(self, strategies, shared_beta=None):
        self.strategies = list(strategies)
        if not self.strategies:
            raise ValueError("need at least one strategy")
        self.shared_beta = shared_beta
        self.reset()

    def reset(self):
        for s in self.strategies:
            s.reset()
        self.turn = 0
        self.consultations: list[list[int]] = [[] for _ in self.strategies]

    def next_move(self, t):
        owner = self.turn % len(self.strategies)
        self.consultations[owner].append(self.turn)
        self.turn += 1
        return self.strategies[owner].next_move(t)

    def certificate_hints(self, t) -> dict:
        return {
            "strategy": "intersect",
            "components": [s.certificate_hints(t) for s in self.strategies],
            "turns_per_component": [len(c) for c in self.consultations],
        }


def intersect_alices(strategies, shared_beta=None) -> IntersectAlice:
    return IntersectAlice(strategies, shared_beta)
