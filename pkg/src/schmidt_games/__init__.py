"""Finite-depth Schmidt games and hyperplane-absolute games.

A simulator for the classic (alpha, beta) ball game and the k-dimensional
beta-absolute game, explicit winning strategies played against adversary
opponents, and exact-arithmetic certificates that independently verify what
each strategy claims about the surviving ball.
"""

__version__ = "0.1.0"

from .geometry import AffineSubspace, Ball, Neighborhood, Scalar  # noqa: F401
