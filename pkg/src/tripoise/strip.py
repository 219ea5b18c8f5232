"""Triangle strips: construction, validation, sides, sub-strips, location.

A strip over vertices V_0..V_{n+1} is the sequence of triangles
Delta_i = (V_i, V_{i+1}, V_{i+2}), i = 0..n-1, subject to three axioms:
consecutive triangles meet exactly in their shared side, triangles two
apart meet exactly in their shared vertex, and all other pairs are
disjoint.  Validation checks the axioms globally with exact arithmetic,
so folded but axiom-satisfying vertex sequences are accepted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .geometry import (
    Point,
    Segment,
    Triangle,
    orient,
    point_in_triangle,
    signed_area2,
)


class InvalidStripError(ValueError):
    """A vertex sequence violating one of the strip axioms."""


LEFT_BOUNDARY = "left_boundary"
RIGHT_BOUNDARY = "right_boundary"
INTERIOR = "interior"
OTHER_BOUNDARY = "other_boundary"


@dataclass(frozen=True)
class Side:
    endpoints: Segment
    kind: str


@dataclass(frozen=True)
class Strip:
    """Validated triangle strip.  Construct via :func:`build_strip`."""

    vertices: Tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices) - 2

    @property
    def dimension(self) -> int:
        """Dimension of the continuous piecewise-linear space on the strip."""
        return len(self.vertices)

    def triangle(self, i: int) -> Triangle:
        if not 0 <= i < self.n:
            raise IndexError(f"triangle index {i} out of range")
        v = self.vertices
        return (v[i], v[i + 1], v[i + 2])

    @property
    def triangles(self) -> Tuple[Triangle, ...]:
        return tuple(self.triangle(i) for i in range(self.n))


def _ccw(tri: Triangle) -> Tuple[Point, ...]:
    return tri if orient(*tri) > 0 else (tri[0], tri[2], tri[1])


def _clip_convex(subject: Sequence[Point], clipper: Sequence[Point]) -> List[Point]:
    """Sutherland-Hodgman clip of a convex polygon by a ccw convex polygon."""
    output = list(subject)
    m = len(clipper)
    for k in range(m):
        if not output:
            break
        a, b = clipper[k], clipper[(k + 1) % m]
        current, output = output, []
        fs = [signed_area2(a, b, p) for p in current]
        for i, p in enumerate(current):
            q = current[(i + 1) % len(current)]
            fp, fq = fs[i], fs[(i + 1) % len(current)]
            if fp >= 0:
                output.append(p)
                if fq < 0:
                    t = fp / (fp - fq)
                    output.append(p + (q - p).scaled(t))
            elif fq >= 0:
                t = fp / (fp - fq)
                output.append(p + (q - p).scaled(t))
    return output


def _classify_points(points: Sequence[Point]):
    """Collapse a clip result to (kind, payload): empty, point, segment, polygon."""
    uniq: List[Point] = []
    for p in points:
        if p not in uniq:
            uniq.append(p)
    if not uniq:
        return ("empty", None)
    if len(uniq) == 1:
        return ("point", uniq[0])
    base, other = uniq[0], uniq[1]
    if all(orient(base, other, p) == 0 for p in uniq[2:]):
        d = other - base

        def t(p: Point) -> Fraction:
            return (p - base).dot(d)

        lo = min(uniq, key=t)
        hi = max(uniq, key=t)
        return ("segment", (lo, hi))
    return ("polygon", tuple(uniq))


def intersect_triangles(t1: Triangle, t2: Triangle):
    """Exact classification of the intersection of two closed triangles."""
    return _classify_points(_clip_convex(_ccw(t1), _ccw(t2)))


def build_strip(vertices: Sequence[Point]) -> Strip:
    """Validate the strip axioms and return the strip.

    Raises :class:`InvalidStripError` naming the first violated axiom:
    a degenerate triangle, a bad adjacency between consecutive triangles,
    or an overlap between farther-apart triangles.
    """
    verts = tuple(vertices)
    if len(verts) < 3:
        raise InvalidStripError("a strip needs at least 3 vertices")
    n = len(verts) - 2
    tris = [(verts[i], verts[i + 1], verts[i + 2]) for i in range(n)]
    for i, tri in enumerate(tris):
        if orient(*tri) == 0:
            raise InvalidStripError(f"degenerate triangle at {i}")
    for i in range(n):
        for j in range(i + 1, n):
            kind, payload = intersect_triangles(tris[i], tris[j])
            if j == i + 1:
                shared = {verts[i + 1], verts[i + 2]}
                if kind != "segment" or set(payload) != shared:
                    raise InvalidStripError(f"bad adjacency between {i} and {j}")
            elif j == i + 2:
                if kind != "point" or payload != verts[i + 2]:
                    raise InvalidStripError(f"overlap between {i} and {j}")
            else:
                if kind != "empty":
                    raise InvalidStripError(f"overlap between {i} and {j}")
    return Strip(verts)


def substrip(s: Strip, k: int, m: int) -> Strip:
    """Strip over triangles k..m inclusive.  Validity is inherited."""
    if not (0 <= k <= m < s.n):
        raise IndexError(f"substrip range {k}..{m} out of 0..{s.n - 1}")
    return Strip(s.vertices[k : m + 3])


def left_side(s: Strip) -> Side:
    return Side((s.vertices[0], s.vertices[1]), LEFT_BOUNDARY)


def right_side(s: Strip) -> Side:
    return Side((s.vertices[-2], s.vertices[-1]), RIGHT_BOUNDARY)


def interior_sides(s: Strip) -> Tuple[Side, ...]:
    """Sides shared by consecutive triangles: (V_{i+1}, V_{i+2}), i = 0..n-2."""
    v = s.vertices
    return tuple(
        Side((v[i + 1], v[i + 2]), INTERIOR) for i in range(s.n - 1)
    )


def rim_sides(s: Strip) -> Tuple[Side, ...]:
    """Boundary sides (V_i, V_{i+2}) along the top and bottom of the strip."""
    v = s.vertices
    return tuple(Side((v[i], v[i + 2]), OTHER_BOUNDARY) for i in range(s.n))


def locate(s: Strip, p: Point) -> Tuple[int, ...]:
    """Indices of all closed triangles containing ``p`` (possibly none).

    The result is at most three consecutive indices; three only at a vertex
    shared by three triangles.
    """
    return tuple(
        i for i in range(s.n) if point_in_triangle(s.triangle(i), p).inside
    )
