"""Plain-text problem files.

The format is line-structured and exact: a ``vertices:`` section with one
``x y`` pair per line, a ``nodes:`` section likewise, and an optional
``boundary:`` line (``none``, ``left``, ``right``, or ``both``).  Rationals
are written ``p/q`` or as plain integers.  Blank lines and ``#`` comments
are allowed anywhere.

A boundary flag restricts the function space to vanish on the named strip
side(s); deciding such a problem is equivalent to appending the side's two
vertices as nodes, which is exactly what :func:`to_problem` does.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .geometry import Point, rat
from .oracle import Problem, make_problem
from .strip import Strip, build_strip

BOUNDARY_CHOICES = ("none", "left", "right", "both")


@dataclass(frozen=True)
class ProblemFile:
    vertices: Tuple[Point, ...]
    nodes: Tuple[Point, ...]
    boundary: str = "none"


def format_rational(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    return rat(text)


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; raises ValueError with a one-line diagnosis."""
    vertices: List[Point] = []
    nodes: List[Point] = []
    boundary = "none"
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered == "vertices:":
            section = vertices
            continue
        if lowered == "nodes:":
            section = nodes
            continue
        if lowered.startswith("boundary:"):
            boundary = line.split(":", 1)[1].strip().lower()
            if boundary not in BOUNDARY_CHOICES:
                raise ValueError(f"line {lineno}: bad boundary {boundary!r}")
            continue
        if section is None:
            raise ValueError(f"line {lineno}: expected a section header")
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'x y', got {line!r}")
        try:
            section.append(Point(parse_rational(parts[0]), parse_rational(parts[1])))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if len(vertices) < 3:
        raise ValueError("need a vertices: section with at least 3 points")
    return ProblemFile(tuple(vertices), tuple(nodes), boundary)


def format_problem(pf: ProblemFile) -> str:
    lines = ["vertices:"]
    lines += [f"{format_rational(p.x)} {format_rational(p.y)}" for p in pf.vertices]
    lines.append("nodes:")
    lines += [f"{format_rational(p.x)} {format_rational(p.y)}" for p in pf.nodes]
    if pf.boundary != "none":
        lines.append(f"boundary: {pf.boundary}")
    return "\n".join(lines) + "\n"


def boundary_augmented_nodes(strip: Strip, nodes: Tuple[Point, ...], boundary: str):
    """Node list with the flagged boundary side vertices appended."""
    out = list(nodes)
    if boundary in ("left", "both"):
        out += [strip.vertices[0], strip.vertices[1]]
    if boundary in ("right", "both"):
        out += [strip.vertices[-2], strip.vertices[-1]]
    return out


def to_problem(pf: ProblemFile) -> Problem:
    """Build the (boundary-converted) problem from a parsed file."""
    strip = build_strip(pf.vertices)
    nodes = boundary_augmented_nodes(strip, pf.nodes, pf.boundary)
    return make_problem(strip, nodes)


def from_problem(p: Problem, boundary: str = "none") -> ProblemFile:
    return ProblemFile(p.strip.vertices, p.nodes, boundary)
