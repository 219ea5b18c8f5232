import pytest

from tripoise.generate import (
    GenSpec,
    basic_three_instance,
    generate,
    nonpoised_basic_instance,
    random_zigzag_strip,
    zigzag,
)
from tripoise.oracle import kernel_basis, oracle_poised
from tripoise.reduction import (
    TwoOnesTwo,
    census,
    classify_window,
    decide,
    find_reducible_subproblem,
    make_basic,
)


class TestStripGen:
    def test_zigzag_shape(self):
        z = zigzag(2)
        assert [(v.x, v.y) for v in z.vertices] == [(0, 0), (1, 2), (2, 0), (3, 2)]

    def test_random_strip_valid_and_deterministic(self):
        a = random_zigzag_strip(10, 42)
        b = random_zigzag_strip(10, 42)
        assert a == b and a.n == 10

    def test_many_random_strips(self):
        for k in range(50):
            assert random_zigzag_strip(1 + k % 10, seed=k).n == 1 + k % 10


class TestGenerate:
    def test_determinism(self):
        spec = GenSpec(seed=5, n=4, pattern="random_exact")
        assert generate(spec).nodes == generate(spec).nodes

    def test_vertices_pattern(self):
        p = generate(GenSpec(seed=1, n=3, pattern="vertices"))
        assert p.nodes == p.strip.vertices

    def test_random_exact_count(self):
        p = generate(GenSpec(seed=2, n=5, pattern="random_exact"))
        assert p.node_count == p.dimension

    def test_under_over(self):
        u = generate(GenSpec(seed=3, n=4, pattern="underdetermined"))
        o = generate(GenSpec(seed=3, n=4, pattern="overdetermined"))
        assert u.node_count == u.dimension - 1
        assert o.node_count == o.dimension + 1

    def test_collinear_three(self):
        p = generate(GenSpec(seed=4, n=1, pattern="collinear_three"))
        assert p.node_count == 3
        assert not oracle_poised(p)
        assert not decide(p).poised

    def test_empty_pair(self):
        p = generate(GenSpec(seed=6, n=6, pattern="empty_pair"))
        assert any(
            census(p, k, k + 1) == 0 for k in range(1, p.n - 2)
        )

    def test_basic_212_certified(self):
        p = generate(GenSpec(seed=7, n=3, pattern="basic_212"))
        window, wt = find_reducible_subproblem(p)
        assert window == (0, 2) and wt == TwoOnesTwo(1)
        assert make_basic(p, window, wt).kind == "basic"

    def test_basic_2m2_certified(self):
        p = generate(GenSpec(seed=8, n=5, pattern="basic_2m2", m=3))
        wt = classify_window(p, 0, 4)
        assert wt == TwoOnesTwo(3)
        assert make_basic(p, (0, 4), wt).kind == "basic"

    def test_hyphenated_pattern_names(self):
        a = generate(GenSpec(seed=4, n=1, pattern="collinear-three"))
        b = generate(GenSpec(seed=4, n=1, pattern="collinear_three"))
        assert a.nodes == b.nodes

    def test_inconsistent_specs(self):
        with pytest.raises(ValueError):
            generate(GenSpec(seed=0, n=4, pattern="basic_212"))
        with pytest.raises(ValueError):
            generate(GenSpec(seed=0, n=4, pattern="basic_2m2", m=3))
        with pytest.raises(ValueError):
            generate(GenSpec(seed=0, n=3, pattern="empty_pair"))
        with pytest.raises(ValueError):
            generate(GenSpec(seed=0, n=3, pattern="nonsense"))


class TestConstructions:
    def test_basic_three(self):
        p = basic_three_instance(seed=11)
        assert p.n == 1 and p.node_count == 3
        assert oracle_poised(p)

    def test_nonpoised_two_two(self):
        p = nonpoised_basic_instance(0, seed=13)
        assert p.n == 2
        assert not oracle_poised(p)
        v = decide(p)
        assert not v.poised and v.witness is not None
        basis = kernel_basis(p)
        assert len(basis) == 1

    def test_nonpoised_2112(self):
        p = nonpoised_basic_instance(2, seed=14)
        assert p.n == 4
        assert not oracle_poised(p)
        v = decide(p)
        assert not v.poised and v.witness is not None

    def test_212_rejected(self):
        with pytest.raises(ValueError):
            nonpoised_basic_instance(1, seed=1)
