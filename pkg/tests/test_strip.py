import pytest

from tripoise.generate import random_zigzag_strip, zigzag
from tripoise.geometry import pt
from tripoise.strip import (
    InvalidStripError,
    build_strip,
    interior_sides,
    left_side,
    locate,
    right_side,
    substrip,
)


class TestBuildStrip:
    def test_single_triangle(self):
        s = build_strip([pt(0, 0), pt(1, 2), pt(2, 0)])
        assert s.n == 1 and s.dimension == 3

    def test_zigzag3(self):
        s = zigzag(3)
        assert s.n == 3
        assert s.vertices == (pt(0, 0), pt(1, 2), pt(2, 0), pt(3, 2), pt(4, 0))

    def test_overlapping_rejected(self):
        with pytest.raises(InvalidStripError, match="bad adjacency"):
            build_strip([pt(0, 0), pt(1, 2), pt(2, 0), pt(0, 1)])

    def test_degenerate_rejected(self):
        with pytest.raises(InvalidStripError, match="degenerate triangle at 0"):
            build_strip([pt(0, 0), pt(1, 1), pt(2, 2)])

    def test_too_few_vertices(self):
        with pytest.raises(InvalidStripError):
            build_strip([pt(0, 0), pt(1, 1)])

    def test_far_overlap_rejected(self):
        # fold the strip back onto the first triangle
        verts = [pt(0, 0), pt(1, 2), pt(2, 0), pt(3, 2), pt(1, 1), pt(2, "7/4")]
        with pytest.raises(InvalidStripError, match="overlap between 0 and 2"):
            build_strip(verts)

    def test_random_strips_validate(self):
        for k in range(60):
            s = random_zigzag_strip(1 + k % 10, seed=1000 + k)
            assert s.n == 1 + k % 10


class TestSubstrip:
    def test_identity(self, zig3):
        assert substrip(zig3, 0, 2) == zig3

    def test_single(self, zig3):
        s = substrip(zig3, 1, 1)
        assert s.n == 1 and s.vertices == zig3.vertices[1:4]

    def test_prefix(self, zig3):
        s = substrip(zig3, 0, 1)
        assert s.vertices == zig3.vertices[0:4]

    def test_triangles_match_parent(self, zig3):
        s = substrip(zig3, 1, 2)
        assert s.triangles == zig3.triangles[1:3]

    def test_bad_range(self, zig3):
        with pytest.raises(IndexError):
            substrip(zig3, 2, 1)
        with pytest.raises(IndexError):
            substrip(zig3, 0, 3)


class TestSides:
    def test_left_right(self, zig3):
        assert left_side(zig3).endpoints == (pt(0, 0), pt(1, 2))
        assert right_side(zig3).endpoints == (pt(3, 2), pt(4, 0))

    def test_substrip_sides(self, zig3):
        s = substrip(zig3, 1, 2)
        assert left_side(s).endpoints == (pt(1, 2), pt(2, 0))

    def test_interior_sides(self, zig3):
        sides = interior_sides(zig3)
        assert [s.endpoints for s in sides] == [
            (pt(1, 2), pt(2, 0)),
            (pt(2, 0), pt(3, 2)),
        ]


class TestLocate:
    def test_centroid(self, zig3):
        assert locate(zig3, pt(1, "2/3")) == (0,)

    def test_interior_side_point(self, zig2):
        assert locate(zig2, pt("3/2", 1)) == (0, 1)

    def test_outside(self, zig3):
        assert locate(zig3, pt(-5, 0)) == ()

    def test_shared_vertex(self, zig3):
        # V_2 belongs to triangles 0, 1, 2
        assert locate(zig3, pt(2, 0)) == (0, 1, 2)

    def test_vertex_membership_invariant(self):
        # vertex j belongs exactly to the triangles {j-2, j-1, j} that exist
        for seed in range(5):
            s = random_zigzag_strip(6, seed=seed)
            for j in range(s.dimension):
                expected = tuple(t for t in (j - 2, j - 1, j) if 0 <= t < s.n)
                assert locate(s, s.vertices[j]) == expected
