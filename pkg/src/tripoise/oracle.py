"""Brute-force ground truth for poisedness.

An interpolation problem is a strip plus an ordered node multiset.  The
hat-basis collocation (Vandermonde) matrix decides everything: an exact
problem is poised iff the matrix is square with nonzero determinant.  All
linear algebra here is exact; the determinant uses fraction-free Bareiss
elimination on denominator-cleared integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .geometry import Point, barycentric
from .plfunc import PLFunction
from .strip import Strip, locate


class NotPoisedError(ValueError):
    """Raised when an operation requires a poised problem."""


@dataclass(frozen=True)
class Problem:
    """A strip with an ordered node multiset and per-node triangle membership."""

    strip: Strip
    nodes: Tuple[Point, ...]
    membership: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.strip.n

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def dimension(self) -> int:
        return self.strip.dimension

    @property
    def is_exact(self) -> bool:
        return self.node_count == self.dimension


def make_problem(strip: Strip, nodes: Sequence[Point]) -> Problem:
    """Build a problem, locating every node; nodes outside the strip are errors."""
    nodes = tuple(nodes)
    membership = []
    for j, p in enumerate(nodes):
        found = locate(strip, p)
        if not found:
            raise ValueError(f"node {j} at {p} outside strip")
        membership.append(found)
    return Problem(strip, nodes, tuple(membership))


Matrix = List[List[Fraction]]


def vandermonde_matrix(p: Problem) -> Matrix:
    """Hat-basis collocation matrix: entry (i, j) is hat_i at node j.

    Shape is (n + 2) rows by node_count columns; each column holds the
    barycentric coordinates of its node in one containing triangle, so
    columns sum to 1 and have at most three nonzero entries.
    """
    dim = p.dimension
    cols: List[List[Fraction]] = []
    for node, memb in zip(p.nodes, p.membership):
        i = memb[0]
        lams = barycentric(p.strip.triangle(i), node)
        col = [Fraction(0)] * dim
        col[i], col[i + 1], col[i + 2] = lams
        cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(dim)]


def det_exact(m: Matrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination.

    Rows are scaled to integers first; the scaling is divided back out at
    the end, so intermediate values stay integral and modest.
    """
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("non-square matrix")
    if size == 0:
        return Fraction(1)
    scale = 1
    rows: List[List[int]] = []
    for row in m:
        lcm = 1
        for entry in row:
            lcm = lcm * entry.denominator // gcd(lcm, entry.denominator)
        rows.append([int(entry * lcm) for entry in row])
        scale *= lcm
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            pivot = next((r for r in range(k + 1, size) if rows[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return Fraction(sign * rows[size - 1][size - 1], scale)


def rref(m: Matrix, pivot_cols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over the rationals; returns (rref, pivot columns).

    ``pivot_cols`` restricts pivot selection to the first so many columns
    (for augmented systems).
    """
    out = [row[:] for row in m]
    nrows = len(out)
    ncols = len(out[0]) if out else 0
    limit = ncols if pivot_cols is None else pivot_cols
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        pr = next((i for i in range(r, nrows) if out[i][c] != 0), None)
        if pr is None:
            continue
        out[r], out[pr] = out[pr], out[r]
        pv = out[r][c]
        out[r] = [x / pv for x in out[r]]
        for i in range(nrows):
            if i != r and out[i][c] != 0:
                f = out[i][c]
                out[i] = [a - f * b for a, b in zip(out[i], out[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return out, pivots


def _collocation_rows(p: Problem) -> Matrix:
    """One row per node: coefficients of the vertex values in s(node)."""
    v = vandermonde_matrix(p)
    return [[v[i][j] for i in range(p.dimension)] for j in range(p.node_count)]


def kernel_basis(p: Problem) -> List[PLFunction]:
    """Basis of the functions vanishing at every node (empty iff injective)."""
    dim = p.dimension
    if p.node_count == 0:
        rows: Matrix = [[Fraction(0)] * dim]
    else:
        rows = _collocation_rows(p)
    red, pivots = rref(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for r_i, c in enumerate(pivots):
            vec[c] = -red[r_i][fc]
        basis.append(PLFunction(p.strip, tuple(vec)))
    return basis


def oracle_poised(p: Problem) -> bool:
    """Ground truth: exact node count and nonvanishing Vandermonde determinant."""
    if not p.is_exact:
        return False
    return det_exact(vandermonde_matrix(p)) != 0


def _solve(p: Problem, rhs_cols: Matrix) -> Matrix:
    """Solve the collocation system for several right-hand sides at once."""
    dim = p.dimension
    rows = _collocation_rows(p)
    aug = [rows[i] + rhs_cols[i] for i in range(len(rows))]
    red, pivots = rref(aug, pivot_cols=dim)
    if len(pivots) < dim or not p.is_exact:
        raise NotPoisedError("not poised")
    nrhs = len(rhs_cols[0])
    sol = [[Fraction(0)] * nrhs for _ in range(dim)]
    for r_i, c in enumerate(pivots):
        for j in range(nrhs):
            sol[c][j] = red[r_i][dim + j]
    return sol


def fundamental_functions(p: Problem) -> List[PLFunction]:
    """The functions taking value 1 at one node and 0 at the others."""
    m = p.node_count
    eye = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    sol = _solve(p, eye)
    return [
        PLFunction(p.strip, tuple(sol[i][j] for i in range(p.dimension)))
        for j in range(m)
    ]


def interpolate(p: Problem, data: Sequence[Fraction]) -> PLFunction:
    """The unique function matching the data at the nodes (problem must be poised)."""
    if len(data) != p.node_count:
        raise ValueError(
            f"expected {p.node_count} data values, got {len(data)}"
        )
    rhs = [[Fraction(d)] for d in data]
    sol = _solve(p, rhs)
    return PLFunction(p.strip, tuple(sol[i][0] for i in range(p.dimension)))
