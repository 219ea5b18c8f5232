"""Seeded, reproducible generation of strips and node configurations.

Everything here is a pure function of its seed: the same GenSpec always
produces the same problem, bit for bit.  Jitter and node coordinates use
rationals with small denominators to keep exact arithmetic cheap during
fuzzing.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .geometry import Point, Segment, Triangle, line_meets_triangle, line_through
from .oracle import Problem, make_problem
from .plfunc import LINE_SEGMENT, zero_set_in_triangle
from .reduction import (
    TwoOnesTwo,
    classify_window,
    make_basic,
    propagate_candidate,
)
from .strip import InvalidStripError, Strip, build_strip

PATTERNS = (
    "random_exact",
    "vertices",
    "basic_212",
    "basic_2m2",
    "empty_pair",
    "collinear_three",
    "underdetermined",
    "overdetermined",
)

MAX_JITTER_DENOMINATOR = 64


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n: int
    pattern: str
    m: Optional[int] = None  # middle count, basic_2m2 only


def zigzag(n: int) -> Strip:
    """The reference strip: vertices (i, 0) and (i, 2) alternating."""
    if n < 1:
        raise ValueError("need at least one triangle")
    verts = [
        Point(Fraction(i), Fraction(0 if i % 2 == 0 else 2)) for i in range(n + 2)
    ]
    return build_strip(verts)


def _jitter(rng: random.Random) -> Fraction:
    den = rng.randint(8, MAX_JITTER_DENOMINATOR)
    num = rng.randint(-den // 4, den // 4)
    return Fraction(num, den)


def random_zigzag_strip(n: int, seed: int) -> Strip:
    """A zigzag strip with small rational jitter; always valid.

    Jittered vertex sequences that happen to violate a strip axiom are
    rejected and redrawn, so the output always passes validation.
    """
    if n < 1:
        raise ValueError("need at least one triangle")
    rng = random.Random(seed)
    while True:
        verts = []
        for i in range(n + 2):
            base_y = 0 if i % 2 == 0 else 2
            verts.append(
                Point(Fraction(i) + _jitter(rng), Fraction(base_y) + _jitter(rng))
            )
        try:
            return build_strip(verts)
        except InvalidStripError:
            continue


def random_interior_point(
    rng: random.Random, tri: Triangle, pull: int = 0
) -> Point:
    """Random point with strictly positive barycentric coordinates.

    ``pull`` > 0 biases the point toward the first triangle vertex, which
    helps when end-pair lines must avoid a neighboring triangle.
    """
    w = [rng.randint(1, 24) for _ in range(3)]
    w[0] += pull
    total = sum(w)
    lams = [Fraction(wi, total) for wi in w]
    x = sum((lam * v.x for lam, v in zip(lams, tri)), Fraction(0))
    y = sum((lam * v.y for lam, v in zip(lams, tri)), Fraction(0))
    return Point(x, y)


def random_side_point(rng: random.Random, seg: Segment) -> Point:
    """Random point in the open segment."""
    den = rng.randint(3, MAX_JITTER_DENOMINATOR)
    num = rng.randint(1, den - 1)
    t = Fraction(num, den)
    a, b = seg
    return a + (b - a).scaled(t)


def _triangle_sides(strip: Strip, i: int):
    tri = strip.triangle(i)
    return [(tri[k], tri[(k + 1) % 3]) for k in range(3)]


def _random_node(rng: random.Random, strip: Strip) -> Point:
    roll = rng.random()
    i = rng.randrange(strip.n)
    if roll < 0.72:
        return random_interior_point(rng, strip.triangle(i))
    if roll < 0.92:
        sides = _triangle_sides(strip, i)
        return random_side_point(rng, sides[rng.randrange(3)])
    return strip.vertices[rng.randrange(strip.dimension)]


def _random_nodes(rng: random.Random, strip: Strip, count: int) -> List[Point]:
    return [_random_node(rng, strip) for _ in range(count)]


def _collinear_triple(rng: random.Random, tri: Triangle) -> List[Point]:
    while True:
        a = random_interior_point(rng, tri)
        b = random_interior_point(rng, tri)
        if a != b:
            break
    mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
    return [a, mid, b]


def _basic_window_nodes(
    rng: random.Random, strip: Strip, tries: int = 400
) -> Optional[List[Point]]:
    """Node set making the whole strip one certified basic 2+1+...+1+2 window."""
    n = strip.n
    for _ in range(tries):
        first_tri = strip.triangle(0)
        last_tri = strip.triangle(n - 1)
        a1 = random_interior_point(rng, first_tri, pull=40)
        a2 = random_interior_point(rng, first_tri, pull=40)
        # last triangle is (V_{n-1}, V_n, V_{n+1}); its private vertex is the last
        c1 = random_interior_point(rng, (last_tri[2], last_tri[0], last_tri[1]), pull=40)
        c2 = random_interior_point(rng, (last_tri[2], last_tri[0], last_tri[1]), pull=40)
        if a1 == a2 or c1 == c2:
            continue
        if line_meets_triangle(line_through(a1, a2), strip.triangle(1)):
            continue
        if line_meets_triangle(line_through(c1, c2), strip.triangle(n - 2)):
            continue
        middles = [
            random_interior_point(rng, strip.triangle(t)) for t in range(1, n - 1)
        ]
        nodes = [a1, a2] + middles + [c1, c2]
        problem = make_problem(strip, nodes)
        wt = classify_window(problem, 0, n - 1)
        if wt != TwoOnesTwo(n - 2):
            continue
        if make_basic(problem, (0, n - 1), wt).kind != "basic":
            continue
        return nodes
    return None


def generate(spec: GenSpec) -> Problem:
    """Produce the problem described by ``spec`` (pure in the spec)."""
    if spec.pattern.replace("-", "_") != spec.pattern:
        spec = GenSpec(spec.seed, spec.n, spec.pattern.replace("-", "_"), spec.m)
    if spec.pattern not in PATTERNS:
        raise ValueError(f"unknown pattern {spec.pattern!r}")
    if spec.n < 1:
        raise ValueError("need at least one triangle")
    if spec.pattern == "basic_212" and spec.n != 3:
        raise ValueError("basic_212 needs n = 3")
    if spec.pattern == "basic_2m2":
        if spec.m is None or spec.m < 0:
            raise ValueError("basic_2m2 needs a middle count m >= 0")
        if spec.n != spec.m + 2:
            raise ValueError("basic_2m2 needs n = m + 2")
    if spec.pattern == "empty_pair" and spec.n < 4:
        raise ValueError("empty_pair needs n >= 4")
    rng = random.Random(spec.seed)
    strip = random_zigzag_strip(spec.n, rng.getrandbits(48))
    dim = strip.dimension

    if spec.pattern == "vertices":
        return make_problem(strip, strip.vertices)
    if spec.pattern == "random_exact":
        return make_problem(strip, _random_nodes(rng, strip, dim))
    if spec.pattern == "underdetermined":
        return make_problem(strip, _random_nodes(rng, strip, dim - 1))
    if spec.pattern == "overdetermined":
        return make_problem(strip, _random_nodes(rng, strip, dim + 1))
    if spec.pattern == "collinear_three":
        nodes = _collinear_triple(rng, strip.triangle(0))
        extra_tris = list(range(1, strip.n))
        for j in range(dim - 3):
            t = extra_tris[j % len(extra_tris)] if extra_tris else 0
            nodes.append(random_interior_point(rng, strip.triangle(t)))
        return make_problem(strip, nodes)
    if spec.pattern == "empty_pair":
        k = rng.randint(1, spec.n - 3)
        allowed = [t for t in range(spec.n) if t not in (k, k + 1)]
        nodes = [
            random_interior_point(rng, strip.triangle(rng.choice(allowed)))
            for _ in range(dim)
        ]
        return make_problem(strip, nodes)
    # basic_212 / basic_2m2: certified basic window covering the whole strip
    while True:
        nodes = _basic_window_nodes(rng, strip)
        if nodes is not None:
            return make_problem(strip, nodes)
        strip = random_zigzag_strip(spec.n, rng.getrandbits(48))


def basic_three_instance(seed: int) -> Problem:
    """Single-triangle problem with three non-collinear interior nodes."""
    rng = random.Random(seed)
    strip = random_zigzag_strip(1, rng.getrandbits(48))
    tri = strip.triangle(0)
    while True:
        pts = [random_interior_point(rng, tri) for _ in range(3)]
        base, other, third = pts
        if base != other and line_through(base, other).side(third) != 0:
            return make_problem(strip, pts)


def nonpoised_basic_instance(m: int, seed: int) -> Problem:
    """A certified basic 2+1+...+1+2 problem that is NOT poised.

    Built by propagating the candidate kernel function with only the anchor
    node of the last triangle placed, then planting the final node on the
    candidate's zero line, so the candidate witnesses non-poisedness.
    Requires m != 1 (the m = 1 shape is always poised).
    """
    if m == 1:
        raise ValueError("2+1+2 windows are always poised")
    n = m + 2
    rng = random.Random(seed)
    while True:
        strip = random_zigzag_strip(n, rng.getrandbits(48))
        nodes = _plant_nonpoised(rng, strip)
        if nodes is None:
            continue
        problem = make_problem(strip, nodes)
        wt = classify_window(problem, 0, n - 1)
        if wt != TwoOnesTwo(m):
            continue
        if make_basic(problem, (0, n - 1), wt).kind != "basic":
            continue
        return problem


def _plant_nonpoised(
    rng: random.Random, strip: Strip, tries: int = 400
) -> Optional[List[Point]]:
    n = strip.n
    first_tri = strip.triangle(0)
    last = strip.triangle(n - 1)
    for _ in range(tries):
        a1 = random_interior_point(rng, first_tri, pull=40)
        a2 = random_interior_point(rng, first_tri, pull=40)
        if a1 == a2:
            continue
        if line_meets_triangle(line_through(a1, a2), strip.triangle(1)):
            continue
        middles = [
            random_interior_point(rng, strip.triangle(t)) for t in range(1, n - 1)
        ]
        c1 = random_interior_point(rng, last)
        candidate = propagate_candidate(strip, (a1, a2), middles, c1)
        zset = zero_set_in_triangle(candidate, n - 1)
        if zset.kind != LINE_SEGMENT:
            continue
        if n >= 2 and line_meets_triangle(zset.line, strip.triangle(n - 2)):
            continue
        lo, hi = zset.chord
        den = rng.randint(5, MAX_JITTER_DENOMINATOR)
        t = Fraction(rng.randint(1, den - 1), den)
        c2 = lo + (hi - lo).scaled(t)
        if c2 == c1:
            continue
        if candidate.value_at(c2) != 0:
            continue
        return [a1, a2] + middles + [c1, c2]
    return None
