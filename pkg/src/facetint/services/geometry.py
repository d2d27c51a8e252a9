"""Exact rational plane geometry: orientation tests, segment intersection, angular order."""

from __future__ import annotations

import functools
import math
from collections.abc import Sequence
from fractions import Fraction

from facetint.domain.drawing import Point


def as_point(x: int | Fraction | str, y: int | Fraction | str) -> Point:
    return Fraction(x), Fraction(y)


def sub(p: Point, q: Point) -> Point:
    return p[0] - q[0], p[1] - q[1]


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def orient2d(p: Point, q: Point, r: Point) -> int:
    """Sign of the turn p -> q -> r: 1 left, -1 right, 0 collinear."""
    det = cross(sub(q, p), sub(r, p))
    return (det > 0) - (det < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """``p`` lies on the closed segment ``ab``."""
    if orient2d(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def parameter(p: Point, a: Point, b: Point) -> Fraction:
    """Position of ``p`` on ``ab`` as a fraction of its length (p assumed on the segment)."""
    if a[0] != b[0]:
        return (p[0] - a[0]) / (b[0] - a[0])
    return (p[1] - a[1]) / (b[1] - a[1])


def segments_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Collinear segments sharing more than a single point."""
    if orient2d(a, b, c) != 0 or orient2d(a, b, d) != 0:
        return False
    lo = max(min(parameter(c, a, b), parameter(d, a, b)), Fraction(0))
    hi = min(max(parameter(c, a, b), parameter(d, a, b)), Fraction(1))
    return lo < hi


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    """The single common point of ``ab`` and ``cd``; collinear overlaps must be ruled out first."""
    o1, o2 = orient2d(a, b, c), orient2d(a, b, d)
    o3, o4 = orient2d(c, d, a), orient2d(c, d, b)
    if o1 == o2 == 0:
        for p in (a, b):
            if on_segment(p, c, d):
                return p
        for p in (c, d):
            if on_segment(p, a, b):
                return p
        return None
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    r, s = sub(b, a), sub(d, c)
    t = cross(sub(c, a), s) / cross(r, s)
    return a[0] + t * r[0], a[1] + t * r[1]


def signed_area(polygon: Sequence[Point]) -> Fraction:
    """Shoelace area; positive for counterclockwise polygons."""
    total = Fraction(0)
    for i, p in enumerate(polygon):
        q = polygon[(i + 1) % len(polygon)]
        total += p[0] * q[1] - q[0] * p[1]
    return total / 2


def _half(v: Point) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2 pi)."""
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _compare_ccw(a: Point, b: Point) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = cross(a, b)
    return -1 if c > 0 else (1 if c < 0 else 0)


def clockwise_order(directions: Sequence[Point]) -> list[int]:
    """Indices of ``directions`` sorted by decreasing angle from the positive x-axis."""
    ccw = sorted(
        range(len(directions)),
        key=functools.cmp_to_key(lambda i, j: _compare_ccw(directions[i], directions[j])),
    )
    return ccw[::-1]


def circle_point(theta: float, max_denominator: int) -> Point:
    """Rational point exactly on the unit circle near angle ``theta`` (in (-pi, pi))."""
    t = Fraction(math.tan(theta / 2)).limit_denominator(max_denominator)
    denom = 1 + t * t
    return (1 - t * t) / denom, 2 * t / denom
