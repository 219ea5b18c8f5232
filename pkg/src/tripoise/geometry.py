"""Exact rational planar geometry.

Every coordinate is an arbitrary-precision rational (``fractions.Fraction``)
and every predicate below is decided exactly.  Poisedness comes down to
whether determinants vanish, so there is no floating point anywhere in this
package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value: RatLike) -> Fraction:
    """Coerce ints, Fractions, or strings like ``"3/7"`` to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, f: Fraction) -> "Point":
        return Point(self.x * f, self.y * f)

    def cross(self, other: "Point") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point") -> Fraction:
        return self.x * other.x + self.y * other.y

    def __repr__(self) -> str:  # compact, exact
        return f"({self.x}, {self.y})"


def pt(x: RatLike, y: RatLike) -> Point:
    return Point(rat(x), rat(y))


Triangle = Tuple[Point, Point, Point]
Segment = Tuple[Point, Point]


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the signed area of (p, q, r): +1 ccw, -1 cw, 0 collinear."""
    v = (q - p).cross(r - p)
    return (v > 0) - (v < 0)


def signed_area2(p: Point, q: Point, r: Point) -> Fraction:
    """Twice the signed area of the triangle (p, q, r)."""
    return (q - p).cross(r - p)


def barycentric(t: Triangle, p: Point) -> Tuple[Fraction, Fraction, Fraction]:
    """Exact barycentric coordinates of ``p`` with respect to triangle ``t``.

    The result sums to 1 and reproduces ``p`` exactly; coordinates may be
    negative when ``p`` lies outside the triangle.
    """
    t1, t2, t3 = t
    d = signed_area2(t1, t2, t3)
    if d == 0:
        raise ValueError("degenerate triangle")
    l1 = signed_area2(p, t2, t3) / d
    l2 = signed_area2(t1, p, t3) / d
    l3 = signed_area2(t1, t2, p) / d
    return (l1, l2, l3)


INTERIOR = "interior"
ON_EDGE = "edge"
AT_VERTEX = "vertex"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Membership:
    """Classification of a point against a closed triangle.

    For ``edge`` the index names the opposite vertex (the vanishing
    barycentric coordinate); for ``vertex`` it names the vertex itself.
    """

    kind: str
    index: Optional[int] = None

    @property
    def inside(self) -> bool:
        return self.kind != OUTSIDE


def point_in_triangle(t: Triangle, p: Point) -> Membership:
    """Locate ``p`` in the closed triangle ``t`` from barycentric signs."""
    lams = barycentric(t, p)
    if any(l < 0 for l in lams):
        return Membership(OUTSIDE)
    zeros = [i for i, l in enumerate(lams) if l == 0]
    if not zeros:
        return Membership(INTERIOR)
    if len(zeros) == 1:
        return Membership(ON_EDGE, zeros[0])
    # two zeros: at the vertex whose coordinate is 1
    (vertex_index,) = [i for i in range(3) if i not in zeros]
    return Membership(AT_VERTEX, vertex_index)


def _canonical_coeffs(a: Fraction, b: Fraction, c: Fraction) -> Tuple[int, int, int]:
    lcm = 1
    for f in (a, b, c):
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ia, ib, ic = (int(f * lcm) for f in (a, b, c))
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
    if g:
        ia, ib, ic = ia // g, ib // g, ic // g
    lead = ia if ia != 0 else (ib if ib != 0 else ic)
    if lead < 0:
        ia, ib, ic = -ia, -ib, -ic
    return ia, ib, ic


@dataclass(frozen=True)
class Line:
    """Locus a*x + b*y + c = 0 in canonical integer form.

    Coefficients are stored in lowest integer terms with the first nonzero
    of (a, b, c) positive, so equal lines compare and hash equal.
    """

    a: int
    b: int
    c: int

    @staticmethod
    def from_coeffs(a: RatLike, b: RatLike, c: RatLike) -> "Line":
        ia, ib, ic = _canonical_coeffs(rat(a), rat(b), rat(c))
        if ia == 0 and ib == 0:
            raise ValueError("degenerate line: a and b both zero")
        return Line(ia, ib, ic)

    def eval(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y + self.c

    def side(self, p: Point) -> int:
        v = self.eval(p)
        return (v > 0) - (v < 0)

    def contains(self, p: Point) -> bool:
        return self.eval(p) == 0


def line_through(p: Point, q: Point) -> Line:
    """The canonical line through two distinct points."""
    if p == q:
        raise ValueError("coincident points")
    return Line.from_coeffs(p.y - q.y, q.x - p.x, p.x * q.y - p.y * q.x)


def point_on_segment(p: Point, seg: Segment) -> bool:
    """True when ``p`` lies on the closed segment."""
    s0, s1 = seg
    if orient(s0, s1, p) != 0:
        return False
    d = s1 - s0
    t = (p - s0).dot(d)
    return 0 <= t <= d.dot(d)


EMPTY = "empty"
POINT = "point"
OVERLAP = "overlap"


def segment_line_intersection(seg: Segment, line: Line):
    """Intersect a closed segment with a line.

    Returns ``None`` (no intersection), a single ``Point``, or the segment
    itself as a ``(Point, Point)`` pair when it lies inside the line.
    """
    s0, s1 = seg
    if s0 == s1:
        raise ValueError("segment endpoints coincide")
    f0, f1 = line.eval(s0), line.eval(s1)
    if f0 == 0 and f1 == 0:
        return (s0, s1)
    if f0 == 0:
        return s0
    if f1 == 0:
        return s1
    if (f0 > 0) == (f1 > 0):
        return None
    t = f0 / (f0 - f1)
    return s0 + (s1 - s0).scaled(t)


def line_meets_triangle(line: Line, t: Triangle) -> bool:
    """True when the (infinite) line meets the closed triangle."""
    signs = [line.side(v) for v in t]
    return not (all(s > 0 for s in signs) or all(s < 0 for s in signs))


def chord_of_triangle(t: Triangle, a: Point, b: Point) -> Tuple[Point, Point]:
    """Intersection pair of the line through two triangle points.

    Both ``a`` and ``b`` must lie in the closed triangle.  The result is the
    pair of boundary points cut out by the line, ordered by the parameter
    along the direction ``b - a``; a line containing a whole side yields that
    side's endpoints.
    """
    if a == b:
        raise ValueError("coincident nodes")
    if not point_in_triangle(t, a).inside or not point_in_triangle(t, b).inside:
        raise ValueError("node outside triangle")
    line = line_through(a, b)
    d = b - a

    def param(p: Point) -> Fraction:
        return (p - a).dot(d)

    hits = []
    for i in range(3):
        side = (t[i], t[(i + 1) % 3])
        res = segment_line_intersection(side, line)
        if res is None:
            continue
        if isinstance(res, tuple):
            lo, hi = sorted(res, key=param)
            return (lo, hi)
        hits.append(res)
    uniq = []
    for h in hits:
        if h not in uniq:
            uniq.append(h)
    if len(uniq) != 2:  # cannot happen for a, b inside the closed triangle
        raise ValueError("line does not cut the triangle in a chord")
    lo, hi = sorted(uniq, key=param)
    return (lo, hi)


AffineMap = Tuple[Fraction, Fraction, Fraction]


def affine_through(points: Sequence[Point], values: Sequence[RatLike]) -> AffineMap:
    """Coefficients (alpha, beta, gamma) of the affine map through three
    non-collinear (point, value) samples: alpha*x + beta*y + gamma."""
    (p1, p2, p3) = points
    v1, v2, v3 = (rat(v) for v in values)
    d = signed_area2(p1, p2, p3)
    if d == 0:
        raise ValueError("degenerate triangle")
    alpha = ((v2 - v1) * (p3.y - p1.y) - (v3 - v1) * (p2.y - p1.y)) / d
    beta = ((v3 - v1) * (p2.x - p1.x) - (v2 - v1) * (p3.x - p1.x)) / d
    gamma = v1 - alpha * p1.x - beta * p1.y
    return (alpha, beta, gamma)


def affine_eval(coeffs: AffineMap, p: Point) -> Fraction:
    alpha, beta, gamma = coeffs
    return alpha * p.x + beta * p.y + gamma
