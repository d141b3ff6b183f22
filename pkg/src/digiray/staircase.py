"""Staircase point sets approximating the level curves x y = i/m.

The symmetric construction puts stair i between C_{i-1} and C_i.  With
base = sqrt((i-1)/m) and q = i/(i-1) its points are

    blue_k = (base q^k, base q^-k)          for -k* <= k <= k*
    red_k  = (base q^(k+1), base q^-k)      for -k* <= k <= k* - 1

so the blue points lie on C_{i-1}, the red points on C_i, and the set is
symmetric in the diagonal with a single diagonal blue point per stair.
Coordinates are evaluated with mpmath at DIGIRAY_PRECISION bits (default
64) and stored as floats.
"""

import math
import os
from typing import List, Tuple

import mpmath

from .points import BLUE, FLOAT, RED, BicoloredPointSet, Staircase

DEFAULT_PRECISION = 64


class DegenerateBand(ValueError):
    pass


def precision_bits() -> int:
    raw = os.environ.get("DIGIRAY_PRECISION")
    if not raw:
        return DEFAULT_PRECISION
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError("DIGIRAY_PRECISION must be an integer number of bits") from None
    if bits < 24:
        raise ValueError("DIGIRAY_PRECISION must be at least 24")
    return bits


def _largest_k(ok, estimate: float) -> int:
    """Largest k >= 0 with ok(k), given a float estimate and monotone ok."""
    k = max(0, int(math.floor(estimate)))
    while k > 0 and not ok(k):
        k -= 1
    while ok(k + 1):
        k += 1
    return k


def k_star(m: int, i: int) -> int:
    """Number of steps on each side of the diagonal for stair i.

    This is floor(log(sqrt(m/(i-1))) / log(i/(i-1))).  The float estimate
    is corrected with the exact integer test i^(2k) <= m (i-1)^(2k-1), so
    borderline cases never depend on rounding.
    """
    if not 1 <= i <= m:
        raise ValueError("need 1 <= i <= m")
    if i == 1:
        return 0
    est = (math.log(m) - math.log(i - 1)) / (2 * math.log(i / (i - 1)))
    return _largest_k(lambda k: i ** (2 * k) <= m * (i - 1) ** (2 * k - 1) if k >= 1 else True, est)


def symmetric_stair(m: int, i: int) -> Staircase:
    """Stair i of the symmetric construction, from top-left to bottom-right."""
    if i == 1:
        return Staircase(((BLUE, (0.0, 0.0)),), index=1)
    ks = k_star(m, i)
    with mpmath.workprec(precision_bits()):
        base = mpmath.sqrt(mpmath.mpf(i - 1) / m)

        def coord(e):
            # base * (i/(i-1))^e with an exact rational power
            if e >= 0:
                return float(base * mpmath.mpf(i ** e) / mpmath.mpf((i - 1) ** e))
            return float(base * mpmath.mpf((i - 1) ** -e) / mpmath.mpf(i ** -e))

        pts = []
        for k in range(-ks, ks + 1):
            y = coord(-k)
            pts.append((BLUE, (coord(k), y)))
            if k < ks:
                pts.append((RED, (coord(k + 1), y)))
    return Staircase(tuple(pts), index=i)


def symmetric_stairs(m: int) -> List[Staircase]:
    if m < 1:
        raise ValueError("m must be at least 1")
    return [symmetric_stair(m, i) for i in range(1, m + 1)]


def symmetric_staircases(m: int) -> BicoloredPointSet:
    """The union of all m stairs as a float point set."""
    blue, red = [], []
    for stair in symmetric_stairs(m):
        for color, p in stair.points:
            (blue if color == BLUE else red).append(p)
    return BicoloredPointSet(tuple(blue), tuple(red), FLOAT)


def point_counts(m: int) -> Tuple[int, int]:
    ks = [k_star(m, i) for i in range(1, m + 1)]
    return sum(2 * k + 1 for k in ks), sum(2 * k for k in ks)


def greedy_band_k(m: int, i: int, xi: int) -> int:
    """Blue count of the greedy stair between C_{i-xi} and C_{i+xi-1}.

    This is floor(log(m/(i-xi)) / log((i+xi-1)/(i-xi))), or 0 when i <= xi.
    """
    if xi < 1:
        raise ValueError("xi must be at least 1")
    if i <= xi:
        return 0
    lo, hi = i - xi, i + xi - 1
    est = (math.log(m) - math.log(lo)) / math.log(hi / lo)
    # blue k lies in the square iff hi^k <= m lo^(k-1)
    return _largest_k(lambda k: hi ** k <= m * lo ** (k - 1) if k >= 1 else True, est)


def greedy_stair_count(m: int, i: int, xi: int) -> int:
    """Total number of points of the greedy stair (0 for a degenerate band)."""
    k = greedy_band_k(m, i, xi)
    return 2 * k - 1 if k else 0


def greedy_stair_between(m: int, i: int, xi: int) -> Staircase:
    """Fewest-point stair between C_{i-xi} and C_{i+xi-1}, going greedily.

    Starting at the top edge on C_{i+xi-1}, drop to C_{i-xi} (blue), move
    right to C_{i+xi-1} (red), and repeat while the points stay inside the
    unit square.
    """
    k_max = greedy_band_k(m, i, xi)
    if k_max == 0:
        raise DegenerateBand("no stair fits between C_%d and C_%d for m=%d" % (i - xi, i + xi - 1, m))
    lo, hi = i - xi, i + xi - 1
    pts = []
    with mpmath.workprec(precision_bits()):
        for k in range(1, k_max + 1):
            y = float(mpmath.mpf(lo ** k) / hi ** k)
            pts.append((BLUE, (float(mpmath.mpf(hi ** k) / (m * lo ** (k - 1))), y)))
            if k < k_max:
                pts.append((RED, (float(mpmath.mpf(hi ** (k + 1)) / (m * lo ** k)), y)))
    return Staircase(tuple(pts), index=i)


def stairs_cross(stairs) -> List[Tuple[int, int]]:
    """Pairs (i, j), i < j, whose regions are not strictly nested."""
    from .points import nested

    out = []
    for a in range(len(stairs)):
        for b in range(a + 1, len(stairs)):
            if not nested(stairs[a], stairs[b], strict=True):
                out.append((stairs[a].index, stairs[b].index))
    return out
