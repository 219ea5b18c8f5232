import pytest

from tripoise.generate import GenSpec, generate
from tripoise.geometry import pt
from tripoise.problemio import (
    ProblemFile,
    format_problem,
    format_rational,
    from_problem,
    parse_problem,
    to_problem,
)
from tripoise.reduction import decide

SAMPLE = """
# a single triangle with its vertices as nodes
vertices:
0 0
1 2
2 0
nodes:
0 0
1 2
2 0
"""


def test_parse_sample():
    pf = parse_problem(SAMPLE)
    assert pf.vertices == (pt(0, 0), pt(1, 2), pt(2, 0))
    assert pf.nodes == pf.vertices
    assert pf.boundary == "none"


def test_rationals_and_boundary():
    pf = parse_problem(
        "vertices:\n0 0\n1 2\n2 0\nnodes:\n1/2 1/3\nboundary: left\n"
    )
    assert pf.nodes == (pt("1/2", "1/3"),)
    assert pf.boundary == "left"


def test_bad_rational():
    with pytest.raises(ValueError, match="line 3"):
        parse_problem("vertices:\n0 0\n1/0 2\n2 0\nnodes:\n")


def test_bad_boundary():
    with pytest.raises(ValueError, match="bad boundary"):
        parse_problem("vertices:\n0 0\n1 2\n2 0\nnodes:\nboundary: sideways\n")


def test_missing_section_header():
    with pytest.raises(ValueError, match="section header"):
        parse_problem("0 0\n1 2\n")


def test_pair_arity():
    with pytest.raises(ValueError, match="expected 'x y'"):
        parse_problem("vertices:\n0 0 0\n")


def test_round_trip():
    for seed in range(8):
        p = generate(GenSpec(seed=seed, n=4, pattern="random_exact"))
        pf = from_problem(p)
        again = parse_problem(format_problem(pf))
        assert again == pf


def test_boundary_round_trip():
    pf = ProblemFile((pt(0, 0), pt(1, 2), pt(2, 0)), (pt(1, 1),), "both")
    assert parse_problem(format_problem(pf)) == pf


def test_boundary_conversion_appends_vertices():
    pf = ProblemFile((pt(0, 0), pt(1, 2), pt(2, 0)), (pt(1, 1),), "left")
    p = to_problem(pf)
    assert p.nodes == (pt(1, 1), pt(0, 0), pt(1, 2))


def test_boundary_equivalence_small():
    # boundary flag on a strip == plain problem with side vertices appended
    base = generate(GenSpec(seed=3, n=4, pattern="random_exact"))
    inner = base.nodes[: base.dimension - 2]
    flagged = to_problem(ProblemFile(base.strip.vertices, tuple(inner), "left"))
    plain = to_problem(
        ProblemFile(
            base.strip.vertices,
            tuple(inner) + (base.strip.vertices[0], base.strip.vertices[1]),
            "none",
        )
    )
    assert decide(flagged).poised == decide(plain).poised


def test_format_rational():
    from fractions import Fraction

    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
