"""The skew tent map family: evaluation, orbits, itineraries, kneading
sequences, the (lambda, mu) slope coordinates and a lap-count entropy
estimator.

All arithmetic is type generic: passing ``fractions.Fraction`` parameters
gives exact orbits, floats give the usual double precision ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .symbolic import C, L, R


@dataclass(frozen=True)
class TentParams:
    """Turning point (alpha, beta) of the skew tent map.

    The dynamically nontrivial region U requires 0.5 < beta <= 1 and
    1 - beta < alpha < beta; constructing points outside U is allowed for
    the extended evaluations near the diagonal.
    """

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (0 < self.alpha < 1):
            raise ValueError(f"alpha must lie in (0,1), got {self.alpha}")
        if not (0 < self.beta <= 1):
            raise ValueError(f"beta must lie in (0,1], got {self.beta}")

    @property
    def in_u(self) -> bool:
        a, b = self.alpha, self.beta
        return 2 * b > 1 and b <= 1 and 1 - b < a < b


@dataclass(frozen=True)
class LambdaMu:
    """Slope coordinates lambda = beta/alpha, mu = beta/(1-alpha)."""

    lam: float
    mu: float


def tent_eval(p: TentParams, x):
    """T(x): rising branch of slope beta/alpha up to alpha, then falling."""
    if x < 0 or x > 1:
        raise ValueError(f"x={x} outside [0,1]")
    if x <= p.alpha:
        return (p.beta / p.alpha) * x
    return (p.beta / (1 - p.alpha)) * (1 - x)


def branch(p: TentParams, symbol: str, x):
    """The affine branch map named by L or R, unclamped (defined on all reals)."""
    if symbol == L:
        return (p.beta / p.alpha) * x
    if symbol == R:
        return p.beta * (x - 1) / (p.alpha - 1)
    raise ValueError(f"branch symbol must be L or R, got {symbol!r}")


def orbit(p: TentParams, x, n: int) -> list:
    """[x, T(x), ..., T^n(x)]."""
    out = [x]
    for _ in range(n):
        x = tent_eval(p, x)
        out.append(x)
    return out


def extended_itinerary(p: TentParams, x, n: int, eps_c=0) -> list[str]:
    """Symbols of x, T(x), ... relative to alpha; iteration continues
    through C symbols (T(alpha) = beta).  ``eps_c`` widens C detection."""
    syms: list[str] = []
    for _ in range(n):
        if abs(x - p.alpha) <= eps_c:
            syms.append(C)
        elif x < p.alpha:
            syms.append(L)
        else:
            syms.append(R)
        x = tent_eval(p, x)
    return syms


def kneading_prefix(p: TentParams, n: int, eps_c=0) -> list[str]:
    """Itinerary of the critical value beta, cut after the first C."""
    syms: list[str] = []
    x = p.beta
    for _ in range(n):
        if abs(x - p.alpha) <= eps_c:
            syms.append(C)
            break
        if x < p.alpha:
            syms.append(L)
        else:
            syms.append(R)
        x = tent_eval(p, x)
    return syms


def to_lambda_mu(p: TentParams) -> LambdaMu:
    return LambdaMu(p.beta / p.alpha, p.beta / (1 - p.alpha))


def from_lambda_mu(lm: LambdaMu) -> TentParams:
    inv = 1 / lm.lam + 1 / lm.mu
    if inv <= 0:
        raise ValueError("degenerate slope coordinates")
    beta = 1 / inv
    return TentParams(beta / lm.lam, beta)


class LapOverflowError(RuntimeError):
    """Lap propagation exceeded the piece cap."""


def lap_counts(p: TentParams, n: int, cap: int = 4_000_000) -> list[int]:
    """Lap numbers of T, T^2, ..., T^n (count of monotone pieces).

    Pieces are tracked by their endpoint values only; a piece splits when
    its value interval straddles alpha.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    pieces: list[tuple[float, float]] = [(0.0, p.beta), (p.beta, 0.0)]
    counts = [2]
    total = 2
    for _ in range(n - 1):
        nxt: list[tuple[float, float]] = []
        for (u, v) in pieces:
            lo, hi = (u, v) if u <= v else (v, u)
            if lo < p.alpha < hi:
                nxt.append((tent_eval(p, u), p.beta))
                nxt.append((p.beta, tent_eval(p, v)))
            else:
                nxt.append((tent_eval(p, u), tent_eval(p, v)))
        pieces = nxt
        total = len(pieces)
        counts.append(total)
        if total > cap:
            raise LapOverflowError(f"lap count {total} exceeds cap {cap}")
    return counts


def entropy_lap(p: TentParams, n: int = 16) -> float:
    """Topological entropy estimate log(lap_n / lap_{n-1}) in nats."""
    if n < 8:
        raise ValueError("entropy estimate needs depth n >= 8")
    if not p.in_u:
        raise ValueError("entropy estimate requires parameters in U")
    counts = lap_counts(p, n)
    return math.log(counts[-1] / counts[-2])
