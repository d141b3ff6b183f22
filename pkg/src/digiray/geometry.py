"""Exact L-infinity distances between grid points and segments."""

from fractions import Fraction
from typing import Sequence


def linf(a: Sequence, b: Sequence):
    return max(abs(x - y) for x, y in zip(a, b))


def linf_point_segment(q: Sequence, a: Sequence, b: Sequence) -> Fraction:
    """L-infinity distance from point q to the closed segment a-b.

    The distance along the segment is convex and piecewise linear in the
    parameter, so its minimum sits at an endpoint or at a breakpoint.
    """
    q = [Fraction(c) for c in q]
    a = [Fraction(c) for c in a]
    d = [Fraction(bi) - ai for ai, bi in zip(a, b)]
    r = [qi - ai for qi, ai in zip(q, a)]
    ts = {Fraction(0), Fraction(1)}
    for i in range(len(d)):
        if d[i]:
            ts.add(r[i] / d[i])
        for j in range(i + 1, len(d)):
            for sign in (1, -1):
                den = d[i] - sign * d[j]
                if den:
                    ts.add((r[i] - sign * r[j]) / den)
    best = None
    for t in ts:
        if 0 <= t <= 1:
            val = max(abs(ri - t * di) for ri, di in zip(r, d))
            if best is None or val < best:
                best = val
    return best
