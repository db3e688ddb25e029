"""Closed-form receiver ordering for a binary-symmetric / binary-erasure pair.

With crossover p and erasure rate e, parameterize the input by x = P(X = 0)
and compare the two receivers through the information gap

    gap(x) = H2(conv(x, p)) - (1 - e) H2(x) - H2(p)

which is I(X; Y_bsc) - I(X; Y_bec).  Its sign and curvature sort every (p, e)
pair into exactly one of four regimes, separated by the thresholds

    e = 2p          below: the BSC output can be degraded onto the BEC's
    e = 4p(1-p)     below: the BEC side is less noisy (gap is convex)
    e = H2(p)       below: the BEC side is more capable (gap <= 0 everywhere)
                    above: the BSC side is essentially less noisy (the gap
                    peaks at the uniform input)

The thresholds are ordered 2p <= 4p(1-p) <= H2(p) on [0, 1/2], so the four
regimes partition the parameter square.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channels import Dmc, bec, bsc
from .probcore import (
    SIMPLEX_TOL,
    DomainError,
    binary_convolve,
    binary_entropy,
)

BOUNDARY_TOL = 1e-9       # distance to a threshold below which we flag boundary
DERIVATIVE_TOL = 1e-10    # required |gap'(r)| at a reported critical point
_BISECT_STEPS = 200
_SCAN_POINTS = 4097


class DegeneratePairError(ValueError):
    """p = 1/2 makes the critical-point equation degenerate."""


class InternalConsistencyError(RuntimeError):
    """A closed-form answer and its numerical cross-check disagree."""


class PairTag(enum.Enum):
    DEGRADED_BSC_SIDE = "degraded-bsc-side"
    LESS_NOISY_BEC_SIDE = "less-noisy-bec-side"
    MORE_CAPABLE_BEC_SIDE = "more-capable-bec-side"
    ESSENTIALLY_LESS_NOISY_BSC_SIDE = "essentially-less-noisy-bsc-side"


@dataclass(frozen=True)
class PairClass:
    """Regime tag for a (p, e) pair plus a near-threshold flag."""

    tag: PairTag
    boundary: bool


@dataclass(frozen=True)
class BscBecPair:
    """A BSC(p) / BEC(e) receiver pair, p in [0, 1/2], e in [0, 1]."""

    p: float
    e: float

    def __post_init__(self):
        if self.p < -SIMPLEX_TOL or self.p > 0.5 + SIMPLEX_TOL:
            raise DomainError("crossover p must lie in [0, 1/2]")
        if self.e < -SIMPLEX_TOL or self.e > 1.0 + SIMPLEX_TOL:
            raise DomainError("erasure rate e must lie in [0, 1]")
        object.__setattr__(self, "p", min(max(float(self.p), 0.0), 0.5))
        object.__setattr__(self, "e", min(max(float(self.e), 0.0), 1.0))

    def thresholds(self) -> tuple[float, float, float]:
        """(2p, 4p(1-p), H2(p)), the three regime boundaries at this p."""
        return 2.0 * self.p, 4.0 * self.p * (1.0 - self.p), binary_entropy(self.p)

    def channels(self) -> tuple[Dmc, Dmc]:
        return bsc(self.p), bec(self.e)


def d_func(pair: BscBecPair, x):
    """The information gap I(X;Y_bsc) - I(X;Y_bec) at input bias x = P(X=0).

    Vanishes at x = 0 and x = 1; equals e - H2(p) at x = 1/2.  Accepts
    scalars or arrays.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < -SIMPLEX_TOL) or np.any(xa > 1.0 + SIMPLEX_TOL):
        raise DomainError("input bias outside [0, 1]")
    xa = np.clip(xa, 0.0, 1.0)
    val = (
        binary_entropy(binary_convolve(xa, pair.p))
        - (1.0 - pair.e) * binary_entropy(xa)
        - binary_entropy(pair.p)
    )
    return float(val) if np.isscalar(x) or getattr(x, "ndim", 1) == 0 else val


def _log_ratio(x: np.ndarray) -> np.ndarray:
    """log2((1-x)/x); +inf at 0, -inf at 1."""
    with np.errstate(divide="ignore"):
        return np.log2(1.0 - x) - np.log2(x)


def d_derivative(pair: BscBecPair, x):
    """Derivative of the gap in x.

    Equals (1-2p) log2((1-c)/c) - (1-e) log2((1-x)/x) with c = conv(x, p).
    At x = 0 or 1 the value is the correct signed infinity whenever the
    expression is unbounded there, never NaN.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < -SIMPLEX_TOL) or np.any(xa > 1.0 + SIMPLEX_TOL):
        raise DomainError("input bias outside [0, 1]")
    xa = np.clip(xa, 0.0, 1.0)
    p, e = pair.p, pair.e
    if p == 0.0:
        # conv(x, 0) = x and the two log terms share their singularities
        val = e * _log_ratio(xa)
    elif e == 1.0:
        val = (1.0 - 2.0 * p) * _log_ratio(binary_convolve(xa, p))
    else:
        val = (1.0 - 2.0 * p) * _log_ratio(binary_convolve(xa, p)) - (
            1.0 - e
        ) * _log_ratio(xa)
    return float(val) if np.isscalar(x) or getattr(x, "ndim", 1) == 0 else val


def critical_point(pair: BscBecPair) -> float | None:
    """Location of the gap's dip on (0, 1/2], or None in the monotone cases.

    For e <= 2p the gap decreases through [0, 1/2] and None is returned.
    For 2p < e <= 4p(1-p) the gap is convex, so the dip sits exactly at 1/2.
    Beyond that the derivative changes sign once strictly inside (0, 1/2);
    the crossing is bracketed by a scan over [1e-9, 0.5] and bisected until
    |d_derivative| < 1e-10.  The edge parameters p = 0 and e = 1 make the
    gap monotone increasing on [0, 1/2] (no dip) and also return None.
    Raises DegeneratePairError for p = 1/2, where the defining equation
    divides by 1 - 2p.
    """
    p, e = pair.p, pair.e
    if 1.0 - 2.0 * p <= SIMPLEX_TOL:
        raise DegeneratePairError("p = 1/2 leaves no downward slope to cross")
    if e <= 2.0 * p:
        return None
    if e <= 4.0 * p * (1.0 - p):
        return 0.5
    xs = np.linspace(1e-9, 0.5, _SCAN_POINTS)
    ds = d_derivative(pair, xs)
    nonneg = np.flatnonzero(ds >= 0.0)
    if nonneg.size == 0 or nonneg[0] == 0:
        # derivative starts nonnegative (p = 0 or e = 1): no dip to find
        return None
    i = int(nonneg[0])
    lo, hi = float(xs[i - 1]), float(xs[i])
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if d_derivative(pair, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    root = lo if abs(d_derivative(pair, lo)) < abs(d_derivative(pair, hi)) else hi
    return float(root)


def classify_pair(pair: BscBecPair) -> PairClass:
    """Place (p, e) into its ordering regime.

    The p = 1/2 column is sorted with the less-noisy regime: both receivers
    pass zero information for e < 1, and the erasure side weakly dominates
    throughout.  ``boundary`` flags pairs within BOUNDARY_TOL of a regime
    threshold, where the strict orderings degenerate.
    """
    p, e = pair.p, pair.e
    t1, t2, t3 = pair.thresholds()
    boundary = any(abs(e - t) <= BOUNDARY_TOL for t in (t1, t2, t3))
    if 0.5 - p <= SIMPLEX_TOL:
        return PairClass(PairTag.LESS_NOISY_BEC_SIDE, abs(e - 1.0) <= BOUNDARY_TOL)
    if e <= t1:
        tag = PairTag.DEGRADED_BSC_SIDE
    elif e <= t2:
        tag = PairTag.LESS_NOISY_BEC_SIDE
    elif e <= t3:
        tag = PairTag.MORE_CAPABLE_BEC_SIDE
    else:
        tag = PairTag.ESSENTIALLY_LESS_NOISY_BSC_SIDE
    return PairClass(tag, boundary)


def is_less_noisy_convexity(pair: BscBecPair) -> bool:
    """Whether the gap is convex in x, i.e. e <= 4p(1-p).

    Convexity of the gap is equivalent to the erasure side being less noisy.
    The closed form is cross-checked by a second-difference scan on a 1e-3
    grid; a convex verdict contradicted by a sampled violation raises
    InternalConsistencyError.
    """
    convex = pair.e <= 4.0 * pair.p * (1.0 - pair.p)
    xs = np.linspace(0.0, 1.0, 1001)
    vals = d_func(pair, xs)
    second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
    sampled_violation = bool(np.any(second < -2.0 * BOUNDARY_TOL))
    if convex and sampled_violation:
        raise InternalConsistencyError(
            "closed-form convexity contradicted by sampled second differences"
        )
    return convex


def degrading_channel(pair: BscBecPair) -> Dmc | None:
    """A channel W with bec(e) followed by W equal to bsc(p), when one exists.

    Exists exactly for e <= 2p: pass the two clean symbols through a
    crossover of delta = (p - e/2) / (1 - e) and resolve erasures by a fair
    coin.  Returns None when e > 2p.
    """
    p, e = pair.p, pair.e
    if e > 2.0 * p:
        return None
    if 1.0 - e <= SIMPLEX_TOL:
        # e = 1 forces p = 1/2; every output is an erasure, any fair W works
        return Dmc(np.full((3, 2), 0.5), ("0", "1"))
    delta = (p - e / 2.0) / (1.0 - e)
    delta = min(max(delta, 0.0), 1.0)
    return Dmc(
        np.array(
            [
                [1.0 - delta, delta],
                [0.5, 0.5],
                [delta, 1.0 - delta],
            ]
        ),
        ("0", "1"),
    )


def d_curve(pair: BscBecPair, samples: int = 1001) -> list[tuple[float, float]]:
    """Evenly sampled (x, gap(x)) pairs over [0, 1]."""
    if samples < 2:
        raise DomainError("d_curve needs at least 2 samples")
    xs = np.linspace(0.0, 1.0, samples)
    vals = d_func(pair, xs)
    return [(float(a), float(b)) for a, b in zip(xs, vals)]
