"""Continuous piecewise-linear functions on a strip.

A function is stored by its values at the strip vertices (coefficients in
the hat basis); per-triangle affine pieces are derived on demand.  The
space has dimension n + 2 for a strip of n triangles.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .geometry import (
    Line,
    Point,
    RatLike,
    affine_through,
    barycentric,
    rat,
    segment_line_intersection,
)
from .strip import Side, Strip, locate


@dataclass(frozen=True)
class PLFunction:
    strip: Strip
    vertex_values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.vertex_values) != self.strip.dimension:
            raise ValueError(
                f"expected {self.strip.dimension} vertex values, "
                f"got {len(self.vertex_values)}"
            )

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.vertex_values)

    def triangle_values(self, i: int) -> Tuple[Fraction, Fraction, Fraction]:
        v = self.vertex_values
        return (v[i], v[i + 1], v[i + 2])

    def value_at(self, p: Point) -> Fraction:
        """Evaluate at a point of the strip (exact barycentric blend).

        When the point lies in several triangles the lowest index is used;
        continuity makes the choice immaterial.
        """
        containing = locate(self.strip, p)
        if not containing:
            raise ValueError(f"point {p} outside strip")
        i = containing[0]
        lams = barycentric(self.strip.triangle(i), p)
        vals = self.triangle_values(i)
        return sum((l * v for l, v in zip(lams, vals)), Fraction(0))


def pl_function(strip: Strip, values: Sequence[RatLike]) -> PLFunction:
    return PLFunction(strip, tuple(rat(v) for v in values))


def zero_function(strip: Strip) -> PLFunction:
    return PLFunction(strip, (Fraction(0),) * strip.dimension)


def hat_function(strip: Strip, i: int) -> PLFunction:
    """The i-th hat basis function: 1 at vertex i, 0 at all other vertices."""
    if not 0 <= i < strip.dimension:
        raise IndexError(f"vertex index {i} out of range")
    vals = [Fraction(0)] * strip.dimension
    vals[i] = Fraction(1)
    return PLFunction(strip, tuple(vals))


def hat_value(strip: Strip, i: int, p: Point) -> Fraction:
    """Value of the i-th hat function at ``p``."""
    return hat_function(strip, i).value_at(p)


@dataclass(frozen=True)
class SideRestriction:
    """Restriction of a PL function to a side, as an affine map of t in [0, 1]."""

    side: Side
    value0: Fraction
    value1: Fraction

    def at(self, t: RatLike) -> Fraction:
        t = rat(t)
        return (1 - t) * self.value0 + t * self.value1

    @property
    def is_identically_zero(self) -> bool:
        return self.value0 == 0 and self.value1 == 0

    def root(self) -> Optional[Fraction]:
        """The unique root in [0, 1], or None (no root, or identically zero)."""
        if self.value0 == self.value1:
            return None
        t = self.value0 / (self.value0 - self.value1)
        return t if 0 <= t <= 1 else None


def restrict_to_side(f: PLFunction, side: Side) -> SideRestriction:
    e0, e1 = side.endpoints
    return SideRestriction(side, f.value_at(e0), f.value_at(e1))


WHOLE_TRIANGLE = "whole_triangle"
LINE_SEGMENT = "line_segment"
SINGLE_VERTEX = "single_vertex"
EMPTY = "empty"


@dataclass(frozen=True)
class ZeroSetInTriangle:
    kind: str
    chord: Optional[Tuple[Point, Point]] = None
    line: Optional[Line] = None
    vertex: Optional[Point] = None


def zero_set_in_triangle(f: PLFunction, i: int) -> ZeroSetInTriangle:
    """Exact zero set of the affine piece of ``f`` on triangle ``i``.

    Classified from the signs of the three vertex values: all zero gives the
    whole triangle, a strict common sign gives the empty set, one zero value
    against a strict common sign gives a single vertex, and mixed signs give
    a chord on the zero line of the piece.
    """
    tri = f.strip.triangle(i)
    vals = f.triangle_values(i)
    zeros = [k for k, v in enumerate(vals) if v == 0]
    if len(zeros) == 3:
        return ZeroSetInTriangle(WHOLE_TRIANGLE)
    nonzero = [v for v in vals if v != 0]
    if all(v > 0 for v in nonzero) or all(v < 0 for v in nonzero):
        if len(zeros) == 1:
            return ZeroSetInTriangle(SINGLE_VERTEX, vertex=tri[zeros[0]])
        if not zeros:
            return ZeroSetInTriangle(EMPTY)
        # two zero vertices: the chord is that side
    alpha, beta, gamma = affine_through(tri, vals)
    line = Line.from_coeffs(alpha, beta, gamma)
    hits = []
    for k in range(3):
        side = (tri[k], tri[(k + 1) % 3])
        res = segment_line_intersection(side, line)
        if res is None:
            continue
        if isinstance(res, tuple):
            hits = list(res)
            break
        if res not in hits:
            hits.append(res)
    d = Point(Fraction(line.b), Fraction(-line.a))  # direction of the line
    lo, hi = sorted(hits, key=lambda p: p.dot(d))
    return ZeroSetInTriangle(LINE_SEGMENT, chord=(lo, hi), line=line)
