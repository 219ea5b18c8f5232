"""Structural decision procedure for poisedness on triangle strips.

The engine decides poisedness without ever forming the full Vandermonde
determinant: it gates on the exact node count, filters with necessary
counting bounds, splits at interior empty triangle pairs, and otherwise
finds a window of triangles whose node pattern is "3" or "2+1+...+1+2",
normalizes it with line transformations, checks the basic window by a
forced propagation of a candidate kernel function, and recurses on the
two reduced problems on either side of the window.  Every verdict carries
a reduction trace; non-poised verdicts carry a kernel witness whenever one
is structurally available.

A brute-force fallback keeps the procedure total: if no usable window
exists (which can happen on strongly folded strips where a line through
an end pair meets the neighbor triangle without crossing the shared
side), the verdict comes from the determinant oracle and the trace step
is flagged, so fallback incidence stays observable.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .geometry import (
    Line,
    Point,
    affine_eval,
    affine_through,
    line_meets_triangle,
    line_through,
    orient,
    chord_of_triangle,
)
from .oracle import Problem, kernel_basis, make_problem, oracle_poised
from .plfunc import PLFunction
from .strip import Strip, substrip


# ---------------------------------------------------------------------------
# Census and necessary conditions


def census(p: Problem, k: int, m: int) -> int:
    """Number of nodes lying in the closed sub-strip of triangles k..m.

    Each node counts once even when it touches several triangles of the
    range; multiset semantics (duplicate nodes count separately).
    """
    if not (0 <= k <= m < p.n):
        raise IndexError(f"census range {k}..{m} out of 0..{p.n - 1}")
    return sum(
        1 for memb in p.membership if any(k <= t <= m for t in memb)
    )


@dataclass(frozen=True)
class NecessaryViolation:
    k: int
    m: int
    nu: int
    low: int
    high: int


def necessary_conditions(p: Problem) -> Optional[NecessaryViolation]:
    """First violated counting bound of a poised problem, or None.

    For every window of w triangles a poised problem has between w - 2 and
    w + 2 nodes in the closed window; windows anchored at either end of the
    strip tighten the lower bound to w.  The scan is lexicographic in
    (k, m), so the special case of three successive empty triangles is
    reported at its leftmost occurrence.
    """
    n = p.n
    for k in range(n):
        for m in range(k, n):
            w = m - k + 1
            nu = census(p, k, m)
            low = w - 2
            if k == 0 or m == n - 1:
                low = w
            high = w + 2
            if not (low <= nu <= high):
                return NecessaryViolation(k, m, nu, low, high)
    return None


# ---------------------------------------------------------------------------
# Window classification


@dataclass(frozen=True)
class Three:
    count: int
    collinear: bool


@dataclass(frozen=True)
class TwoOnesTwo:
    middles: int  # number of interior "1" triangles; window width is middles + 2


WindowType = Union[Three, TwoOnesTwo]


def _window_node_map(p: Problem, l: int, l2: int):
    """Map window triangle -> node indices, or None when the window is unusable.

    Unusable means a node lies on a side interior to the window or on an
    outer boundary side the window shares with a neighboring triangle;
    both would smear the node census across the cut.
    """
    per_triangle = {t: [] for t in range(l, l2 + 1)}
    for j, memb in enumerate(p.membership):
        inside = [t for t in memb if l <= t <= l2]
        if not inside:
            continue
        if len(inside) > 1:
            return None  # on a side interior to the window
        t = inside[0]
        if t == l and (l - 1) in memb:
            return None  # on the boundary side shared with the left neighbor
        if t == l2 and (l2 + 1) in memb:
            return None  # shared with the right neighbor
        per_triangle[t].append(j)
    return per_triangle


def _collinear_nodes(points: Sequence[Point]) -> bool:
    base = points[0]
    other = next((q for q in points[1:] if q != base), None)
    if other is None:
        return True
    return all(orient(base, other, q) == 0 for q in points)


def classify_window(p: Problem, l: int, l2: int) -> Optional[WindowType]:
    """Recognize the window l..l2 as a "3" or "2+1+...+1+2" subproblem.

    A single triangle with at least three nodes classifies as Three.  A
    wider window classifies as TwoOnesTwo when the end triangles hold
    exactly two nodes, every middle triangle exactly one, and no node sits
    on a window-interior side or on an outer boundary side shared with the
    rest of the strip.
    """
    if not (0 <= l <= l2 < p.n):
        raise IndexError(f"window {l}..{l2} out of 0..{p.n - 1}")
    if l == l2:
        idx = [j for j, memb in enumerate(p.membership) if l in memb]
        if len(idx) < 3:
            return None
        return Three(len(idx), _collinear_nodes([p.nodes[j] for j in idx]))
    nodemap = _window_node_map(p, l, l2)
    if nodemap is None:
        return None
    if len(nodemap[l]) != 2 or len(nodemap[l2]) != 2:
        return None
    if any(len(nodemap[t]) != 1 for t in range(l + 1, l2)):
        return None
    return TwoOnesTwo(l2 - l - 1)


def find_reducible_subproblem(
    p: Problem,
) -> Optional[Tuple[Tuple[int, int], TwoOnesTwo]]:
    """Leftmost, then shortest, window classifying as TwoOnesTwo."""
    for l in range(p.n):
        for l2 in range(l + 1, p.n):
            wt = classify_window(p, l, l2)
            if isinstance(wt, TwoOnesTwo):
                return (l, l2), wt
    return None


# ---------------------------------------------------------------------------
# Line transformations and basic certificates


def line_transform(p: Problem, triangle: int, pair: Tuple[int, int]) -> Problem:
    """Replace two nodes of a triangle by their intersection pair.

    The two nodes are swapped for the two points where their line meets the
    triangle boundary; all other nodes are unchanged.  Poisedness is
    invariant under this move.
    """
    i, j = pair
    if not (0 <= i < p.node_count and 0 <= j < p.node_count) or i == j:
        raise IndexError("bad node pair")
    a, b = p.nodes[i], p.nodes[j]
    if triangle not in p.membership[i] or triangle not in p.membership[j]:
        raise ValueError("node outside triangle")
    lo, hi = chord_of_triangle(p.strip.triangle(triangle), a, b)
    nodes = list(p.nodes)
    nodes[min(i, j)], nodes[max(i, j)] = lo, hi
    return make_problem(p.strip, nodes)


@dataclass(frozen=True)
class BasicCertificate:
    window: Tuple[int, int]
    kind: WindowType
    chord_left: Optional[Line]
    chord_right: Optional[Line]
    basic: bool


@dataclass(frozen=True)
class MakeBasicResult:
    kind: str  # "basic" | "transformed" | "escalated_three" | "stuck"
    certificate: Optional[BasicCertificate] = None
    problem: Optional[Problem] = None
    triangle: Optional[int] = None
    pair: Optional[Tuple[int, int]] = None


def _end_pairs(p: Problem, window: Tuple[int, int]):
    nodemap = _window_node_map(p, window[0], window[1])
    left = tuple(sorted(nodemap[window[0]]))
    right = tuple(sorted(nodemap[window[1]]))
    return nodemap, left, right


def make_basic(p: Problem, window: Tuple[int, int], wt: TwoOnesTwo) -> MakeBasicResult:
    """Certify a TwoOnesTwo window as basic, or transform one end pair.

    The window is basic when the line through each end pair avoids the
    neighboring window triangle.  A violating end pair is replaced by its
    intersection pair, which normally pushes a node across the interior
    side (shrinking the pattern or escalating a triangle to three nodes).
    On folded strips the replacement can fail to make progress; that is
    reported as "stuck" and the caller falls back to the oracle.
    """
    l, l2 = window
    if classify_window(p, l, l2) != wt:
        raise ValueError("window does not classify as the given type")
    _, left, right = _end_pairs(p, window)
    la, lb = p.nodes[left[0]], p.nodes[left[1]]
    ra, rb = p.nodes[right[0]], p.nodes[right[1]]
    if la == lb or ra == rb:
        return MakeBasicResult("stuck")
    line_left = line_through(la, lb)
    line_right = line_through(ra, rb)
    left_bad = line_meets_triangle(line_left, p.strip.triangle(l + 1))
    right_bad = line_meets_triangle(line_right, p.strip.triangle(l2 - 1))
    if not left_bad and not right_bad:
        cert = BasicCertificate(window, wt, line_left, line_right, True)
        return MakeBasicResult("basic", certificate=cert)
    if left_bad:
        tri, pair = l, left
    else:
        tri, pair = l2, right
    new_p = line_transform(p, tri, pair)
    if sorted(new_p.nodes, key=_point_key) == sorted(p.nodes, key=_point_key):
        return MakeBasicResult("stuck")
    escalated = next(
        (t for t in range(new_p.n) if census(new_p, t, t) >= 3), None
    )
    kind = "escalated_three" if escalated is not None else "transformed"
    return MakeBasicResult(kind, problem=new_p, triangle=escalated, pair=pair)


def _point_key(p: Point):
    return (p.x, p.y)


# ---------------------------------------------------------------------------
# Basic window poisedness by forced propagation


def propagate_candidate(
    wstrip: Strip,
    first_pair: Tuple[Point, Point],
    middles: Sequence[Point],
    last_anchor: Point,
) -> PLFunction:
    """The unique candidate kernel function of a basic window.

    Normalized to value 1 at the first vertex, it vanishes at the two end
    nodes of the first triangle, at each middle node, and at the anchor
    node of the last triangle.  Each triangle determines the next vertex
    value, so the construction is forced; the window is poised exactly when
    the result does not vanish at the remaining last-triangle node.
    """
    w = wstrip.n
    if len(middles) != w - 2:
        raise ValueError("middle node count does not match window width")
    verts = wstrip.vertices
    vals: List[Fraction] = [Fraction(0)] * (w + 2)
    vals[0] = Fraction(1)
    a1, a2 = first_pair
    aff = affine_through((verts[0], a1, a2), (Fraction(1), 0, 0))
    vals[1] = affine_eval(aff, verts[1])
    vals[2] = affine_eval(aff, verts[2])
    for t in range(1, w):
        interior_zero = middles[t - 1] if t <= w - 2 else last_anchor
        aff = affine_through(
            (verts[t], verts[t + 1], interior_zero), (vals[t], vals[t + 1], 0)
        )
        vals[t + 2] = affine_eval(aff, verts[t + 2])
    return PLFunction(wstrip, tuple(vals))


def basic_poised(
    p: Problem, cert: BasicCertificate
) -> Tuple[bool, Optional[PLFunction]]:
    """Decide a certified basic window; returns (poised, witness on the window).

    Three-node windows are poised outright (the certificate already rules
    out collinearity).  For TwoOnesTwo the candidate kernel function is
    propagated and the verdict is whether it vanishes at the last node;
    when it does, the candidate itself is the kernel witness.
    """
    if not cert.basic:
        raise ValueError("not a basic certificate")
    if isinstance(cert.kind, Three):
        return True, None
    l, l2 = cert.window
    nodemap, left, right = _end_pairs(p, cert.window)
    wstrip = substrip(p.strip, l, l2)
    middles = [p.nodes[nodemap[t][0]] for t in range(l + 1, l2)]
    candidate = propagate_candidate(
        wstrip,
        (p.nodes[left[0]], p.nodes[left[1]]),
        middles,
        p.nodes[right[0]],
    )
    if candidate.value_at(p.nodes[right[1]]) != 0:
        return True, None
    return False, candidate


# ---------------------------------------------------------------------------
# Reductions


def reduce_main(
    p: Problem, window: Tuple[int, int]
) -> List[Tuple[int, int, Problem]]:
    """Split off the reduced problems on either side of a poised window.

    The left problem lives on the triangles before the window and keeps the
    non-window nodes there plus the two vertices of the cut side; the right
    problem mirrors this.  Window nodes are consumed by the window even
    when they touch a cut side, which keeps the node count identity
    #left + #right = (n + 2) - #window + 4 exact.  Ends at the strip
    boundary produce no problem on that side.
    """
    l, l2 = window
    n = p.n
    window_nodes = {
        j
        for j, memb in enumerate(p.membership)
        if any(l <= t <= l2 for t in memb)
    }
    out: List[Tuple[int, int, Problem]] = []
    if l >= 1:
        nodes = [
            p.nodes[j]
            for j in range(p.node_count)
            if j not in window_nodes and any(t <= l - 1 for t in p.membership[j])
        ]
        nodes += [p.strip.vertices[l], p.strip.vertices[l + 1]]
        out.append((0, l - 1, make_problem(substrip(p.strip, 0, l - 1), nodes)))
    if l2 <= n - 2:
        nodes = [
            p.nodes[j]
            for j in range(p.node_count)
            if j not in window_nodes and any(t >= l2 + 1 for t in p.membership[j])
        ]
        nodes += [p.strip.vertices[l2 + 1], p.strip.vertices[l2 + 2]]
        out.append(
            (l2 + 1, n - 1, make_problem(substrip(p.strip, l2 + 1, n - 1), nodes))
        )
    return out


def reduce_00(p: Problem, k: int) -> List[Tuple[int, int, Problem]]:
    """Split at an interior empty pair: triangles k and k+1 contain no nodes.

    Requires 1 <= k <= n - 3 so both remainders are nonempty.  The two
    children are plain restrictions; the parent is poised iff both children
    are exact and poised.
    """
    n = p.n
    if not (1 <= k <= n - 3):
        raise ValueError(f"empty pair index {k} out of 1..{n - 3}")
    if census(p, k, k + 1) != 0:
        raise ValueError(f"triangles {k} and {k + 1} are not empty")
    left_nodes = [
        p.nodes[j]
        for j in range(p.node_count)
        if any(t <= k - 1 for t in p.membership[j])
    ]
    right_nodes = [
        p.nodes[j]
        for j in range(p.node_count)
        if any(t >= k + 2 for t in p.membership[j])
    ]
    return [
        (0, k - 1, make_problem(substrip(p.strip, 0, k - 1), left_nodes)),
        (k + 2, n - 1, make_problem(substrip(p.strip, k + 2, n - 1), right_nodes)),
    ]


# ---------------------------------------------------------------------------
# Verdicts and traces


@dataclass(frozen=True)
class Reason:
    kind: str
    details: Tuple[Tuple[str, object], ...] = ()

    def describe(self) -> str:
        if not self.details:
            return self.kind
        inner = " ".join(f"{k}={v}" for k, v in self.details)
        return f"{self.kind} {inner}"


OK = "ok"
NOT_EXACT = "not_exact"
OVERDETERMINED_WINDOW = "overdetermined_window"
NONPOISED_BASIC = "nonpoised_basic"
REDUCED_NOT_EXACT = "reduced_not_exact"
NC_VIOLATION = "nc_violation"
ORACLE_FALLBACK = "oracle_fallback"


@dataclass
class TraceNode:
    action: str
    attrs: Tuple[Tuple[str, object], ...] = ()
    children: Tuple["TraceNode", ...] = ()

    def render(self, indent: int = 0) -> List[str]:
        parts = [self.action] + [f"{k}={v}" for k, v in self.attrs]
        lines = ["  " * indent + " ".join(parts)]
        for child in self.children:
            lines.extend(child.render(indent + 1))
        return lines


@dataclass(frozen=True)
class Verdict:
    poised: bool
    reason: Reason
    witness: Optional[PLFunction]
    trace: Tuple[TraceNode, ...]

    def trace_lines(self) -> List[str]:
        lines: List[str] = []
        for node in self.trace:
            lines.extend(node.render())
        return lines

    @property
    def fallback_count(self) -> int:
        def count(node: TraceNode) -> int:
            return (node.action == "fallback") + sum(
                count(c) for c in node.children
            )

        return sum(count(node) for node in self.trace)


def fingerprint(p: Problem) -> str:
    text = ";".join(f"{v.x},{v.y}" for v in p.strip.vertices)
    text += "|" + ";".join(f"{q.x},{q.y}" for q in p.nodes)
    return hashlib.blake2b(text.encode(), digest_size=4).hexdigest()


def _window_str(window: Tuple[int, int]) -> str:
    return f"{window[0]}..{window[1]}"


def _kind_str(wt: WindowType) -> str:
    if isinstance(wt, Three):
        return "3"
    return f"2+{'1+' * wt.middles}2"


# ---------------------------------------------------------------------------
# The decision procedure


_TRANSFORM_CAP_FACTOR = 4


def decide(p: Problem, nc_filter: bool = True) -> Verdict:
    """Decide poisedness structurally; equals the determinant oracle.

    The necessary-condition filter is a pure accelerator: disabling it
    changes traces but never verdicts.
    """
    return _decide(p, nc_filter)


def _leaf(verdict: str, reason: Reason, **attrs) -> TraceNode:
    items = tuple(attrs.items()) + (("verdict", verdict), ("reason", reason.describe()))
    return TraceNode("leaf", items)


def _extend_witness(
    parent: Problem, a: int, b: int, witness: Optional[PLFunction]
) -> Optional[PLFunction]:
    """Zero-extend a child witness on triangles a..b to the parent strip.

    Valid only when the witness vanishes on the cut sides (its first or
    last two vertex values, whichever sides are interior cuts).
    """
    if witness is None:
        return None
    vals = list(witness.vertex_values)
    if a > 0 and (vals[0] != 0 or vals[1] != 0):
        return None
    if b < parent.n - 1 and (vals[-1] != 0 or vals[-2] != 0):
        return None
    full = [Fraction(0)] * parent.dimension
    full[a : a + len(vals)] = vals
    return PLFunction(parent.strip, tuple(full))


def _combine_children(
    p: Problem,
    action: str,
    attrs: Tuple[Tuple[str, object], ...],
    children: List[Tuple[int, int, Problem]],
    nc: bool,
) -> Tuple[Verdict, TraceNode]:
    child_nodes: List[TraceNode] = []
    poised = True
    reason = Reason(OK)
    witness: Optional[PLFunction] = None
    for a, b, child in children:
        cv = _decide(child, nc)
        wrapper = TraceNode(
            "subproblem",
            (("triangles", f"{a}..{b}"), ("fp", fingerprint(child))),
            tuple(cv.trace),
        )
        child_nodes.append(wrapper)
        if poised and not cv.poised:
            poised = False
            if cv.reason.kind == NOT_EXACT:
                reason = Reason(
                    REDUCED_NOT_EXACT,
                    (("triangles", f"{a}..{b}"),) + cv.reason.details,
                )
            else:
                reason = cv.reason
            witness = _extend_witness(p, a, b, cv.witness)
    node = TraceNode(action, attrs, tuple(child_nodes))
    verdict = Verdict(poised, reason if not poised else Reason(OK), witness, ())
    return verdict, node


def _fallback(p: Problem, steps: List[TraceNode], note: str) -> Verdict:
    ok = oracle_poised(p)
    witness = None
    if not ok:
        basis = kernel_basis(p)
        witness = basis[0] if basis else None
    steps.append(
        TraceNode(
            "fallback",
            (("why", note), ("poised", "yes" if ok else "no"), ("fp", fingerprint(p))),
        )
    )
    reason = Reason(OK) if ok else Reason(ORACLE_FALLBACK, (("why", note),))
    return Verdict(ok, reason, witness, tuple(steps))


def _three_collinear_witness(p: Problem, idx: List[int]) -> Optional[PLFunction]:
    """Whole-strip witness for a single-triangle strip with collinear nodes."""
    pts = [p.nodes[j] for j in idx]
    base = pts[0]
    other = next((q for q in pts[1:] if q != base), None)
    if other is None:
        line = Line.from_coeffs(0, 1, -base.y)
    else:
        line = line_through(base, other)
    vals = tuple(line.eval(v) for v in p.strip.vertices)
    return PLFunction(p.strip, vals)


def _decide(p: Problem, nc: bool) -> Verdict:
    steps: List[TraceNode] = []
    dim = p.dimension
    if p.node_count != dim:
        reason = Reason(NOT_EXACT, (("nodes", p.node_count), ("dim", dim)))
        witness = None
        if p.node_count < dim:
            basis = kernel_basis(p)
            witness = basis[0] if basis else None
        steps.append(_leaf("not_poised", reason, fp=fingerprint(p)))
        return Verdict(False, reason, witness, tuple(steps))

    if nc:
        violation = necessary_conditions(p)
        if violation is not None:
            reason = Reason(
                NC_VIOLATION,
                (
                    ("k", violation.k),
                    ("m", violation.m),
                    ("nu", violation.nu),
                    ("low", violation.low),
                    ("high", violation.high),
                ),
            )
            steps.append(
                TraceNode("nc_filter", (("violation", reason.describe()),))
            )
            return Verdict(False, reason, None, tuple(steps))
        steps.append(TraceNode("nc_filter", (("outcome", "ok"),)))

    k00 = next(
        (k for k in range(1, p.n - 2) if census(p, k, k + 1) == 0), None
    )
    if k00 is not None:
        children = reduce_00(p, k00)
        verdict, node = _combine_children(
            p, "reduce_00", (("k", k00), ("fp", fingerprint(p))), children, nc
        )
        steps.append(node)
        return Verdict(verdict.poised, verdict.reason, verdict.witness, tuple(steps))

    current = p
    transforms = 0
    cap = _TRANSFORM_CAP_FACTOR * (p.n + 2)
    while True:
        three_at = next(
            (t for t in range(current.n) if census(current, t, t) >= 3), None
        )
        if three_at is not None:
            idx = [
                j for j, memb in enumerate(current.membership) if three_at in memb
            ]
            window = (three_at, three_at)
            if len(idx) > 3:
                reason = Reason(
                    OVERDETERMINED_WINDOW,
                    (("k", three_at), ("m", three_at), ("count", len(idx))),
                )
                steps.append(
                    TraceNode(
                        "basic_check",
                        (
                            ("window", _window_str(window)),
                            ("kind", "3"),
                            ("outcome", f"overdetermined count={len(idx)}"),
                        ),
                    )
                )
                return Verdict(False, reason, None, tuple(steps))
            pts = [current.nodes[j] for j in idx]
            if _collinear_nodes(pts):
                reason = Reason(NONPOISED_BASIC, (("window", _window_str(window)),))
                witness = None
                if current.n == 1:
                    witness = _three_collinear_witness(current, idx)
                steps.append(
                    TraceNode(
                        "basic_check",
                        (
                            ("window", _window_str(window)),
                            ("kind", "3"),
                            ("outcome", "collinear"),
                        ),
                    )
                )
                return Verdict(False, reason, witness, tuple(steps))
            steps.append(
                TraceNode(
                    "basic_check",
                    (
                        ("window", _window_str(window)),
                        ("kind", "3"),
                        ("outcome", "poised"),
                    ),
                )
            )
            children = reduce_main(current, window)
            if not children:
                steps.append(_leaf("poised", Reason(OK)))
                return Verdict(True, Reason(OK), None, tuple(steps))
            verdict, node = _combine_children(
                current,
                "reduce_main",
                (("window", _window_str(window)), ("fp", fingerprint(current))),
                children,
                nc,
            )
            steps.append(node)
            return Verdict(
                verdict.poised, verdict.reason, verdict.witness, tuple(steps)
            )

        found = find_reducible_subproblem(current)
        if found is None:
            return _fallback(current, steps, "no-window")
        window, wt = found
        result = make_basic(current, window, wt)
        if result.kind == "stuck":
            return _fallback(current, steps, "stuck-transform")
        if result.kind in ("transformed", "escalated_three"):
            transforms += 1
            steps.append(
                TraceNode(
                    "line_transform",
                    (
                        ("window", _window_str(window)),
                        ("pair", f"{result.pair[0]},{result.pair[1]}"),
                        ("escalated", "yes" if result.kind == "escalated_three" else "no"),
                    ),
                )
            )
            if transforms > cap:
                return _fallback(result.problem, steps, "transform-cap")
            current = result.problem
            continue
        cert = result.certificate
        ok, window_witness = basic_poised(current, cert)
        steps.append(
            TraceNode(
                "basic_check",
                (
                    ("window", _window_str(window)),
                    ("kind", _kind_str(wt)),
                    ("outcome", "poised" if ok else "not_poised"),
                ),
            )
        )
        if not ok:
            reason = Reason(NONPOISED_BASIC, (("window", _window_str(window)),))
            witness = None
            if window == (0, current.n - 1):
                witness = window_witness
            return Verdict(False, reason, witness, tuple(steps))
        children = reduce_main(current, window)
        if not children:
            steps.append(_leaf("poised", Reason(OK)))
            return Verdict(True, Reason(OK), None, tuple(steps))
        verdict, node = _combine_children(
            current,
            "reduce_main",
            (("window", _window_str(window)), ("fp", fingerprint(current))),
            children,
            nc,
        )
        steps.append(node)
        return Verdict(verdict.poised, verdict.reason, verdict.witness, tuple(steps))
