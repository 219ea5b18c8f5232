"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report.
All tolerances are exact (rational arithmetic); the only numeric budget is
the wall-clock bound on the master equivalence run.
"""
import random
import time
from fractions import Fraction

import pytest

from tripoise.generate import (
    GenSpec,
    basic_three_instance,
    generate,
    nonpoised_basic_instance,
    random_zigzag_strip,
)
from tripoise.harness import run_fuzz
from tripoise.oracle import (
    det_exact,
    fundamental_functions,
    interpolate,
    kernel_basis,
    make_problem,
    oracle_poised,
    vandermonde_matrix,
)
from tripoise.problemio import ProblemFile, to_problem
from tripoise.reduction import (
    TwoOnesTwo,
    basic_poised,
    decide,
    find_reducible_subproblem,
    line_transform,
    make_basic,
    necessary_conditions,
    reduce_00,
)

MASTER_COUNT = 1000
MASTER_MAX_N = 10
MASTER_SEED = 7
MASTER_TIME_BUDGET_S = 60.0
# pinned under MASTER_SEED; a change means the constructive coverage moved
EXPECTED_FALLBACK_STEPS = 31


def report(num, text):
    print(f"ACCEPTANCE {num}: PASS - {text}")


@pytest.fixture(scope="module")
def master_run():
    """Criterion 1 run, shared with criterion 5: instances, verdicts, timing."""
    from tripoise.harness import fuzz_instances

    records = []
    t0 = time.perf_counter()
    for spec, problem in fuzz_instances(MASTER_COUNT, MASTER_MAX_N, MASTER_SEED):
        verdict = decide(problem)
        truth = oracle_poised(problem)
        records.append((spec, problem, verdict, truth))
    elapsed = time.perf_counter() - t0
    return records, elapsed


def test_criterion_1_master_equivalence(master_run):
    records, elapsed = master_run
    disagreements = [r for r in records if r[2].poised != r[3]]
    fallbacks = sum(r[2].fallback_count for r in records)
    assert len(records) == MASTER_COUNT
    assert not disagreements, f"{len(disagreements)} disagreements"
    assert elapsed < MASTER_TIME_BUDGET_S, f"took {elapsed:.1f}s"
    report(
        1,
        f"{MASTER_COUNT}/{MASTER_COUNT} decide == oracle "
        f"in {elapsed:.1f}s (fallback steps: {fallbacks})",
    )


def test_criterion_2_vertex_poisedness():
    for k in range(100):
        strip = random_zigzag_strip(1 + k % 10, seed=20000 + k)
        p = make_problem(strip, strip.vertices)
        assert decide(p).poised
        m = vandermonde_matrix(p)
        for i in range(p.dimension):
            for j in range(p.dimension):
                assert m[i][j] == (1 if i == j else 0)
    report(2, "100 vertex node sets poised with identity collocation matrix")


def test_criterion_3_basic_problems():
    # 200 certified 2+1+2 windows: always poised
    for k in range(200):
        p = generate(GenSpec(seed=30000 + k, n=3, pattern="basic_212"))
        window, wt = find_reducible_subproblem(p)
        assert window == (0, 2) and wt == TwoOnesTwo(1)
        cert = make_basic(p, window, wt).certificate
        ok, witness = basic_poised(p, cert)
        assert ok and witness is None
        assert oracle_poised(p)
    # 100 single-triangle problems with three non-collinear nodes
    for k in range(100):
        p = basic_three_instance(seed=31000 + k)
        assert decide(p).poised and oracle_poised(p)
    # constructed non-poised basic instances with verified kernel witnesses
    checked = {0: 0, 2: 0}
    for m in (0, 2):
        for k in range(20):
            p = nonpoised_basic_instance(m, seed=32000 + 100 * m + k)
            v = decide(p)
            assert not v.poised and not oracle_poised(p)
            w = v.witness
            assert w is not None and not w.is_zero
            assert all(w.value_at(q) == 0 for q in p.nodes)
            basis = kernel_basis(p)
            assert len(basis) == 1
            b = basis[0].vertex_values
            wv = w.vertex_values
            assert all(
                wv[i] * b[j] == wv[j] * b[i]
                for i in range(len(wv))
                for j in range(len(wv))
            ), "witness not proportional to the kernel generator"
            checked[m] += 1
    assert checked == {0: 20, 2: 20}
    report(
        3,
        "200x 2+1+2 and 100x three-node windows poised; "
        "20+20 planted non-poised instances carry verified kernel witnesses",
    )


def test_criterion_4_line_transform_invariance():
    rng = random.Random(44)
    checked = 0
    attempt = 0
    while checked < 200:
        attempt += 1
        n = rng.randint(1, 8)
        p = generate(GenSpec(seed=40000 + attempt, n=n, pattern="random_exact"))
        pairs = [
            (i, j, min(set(p.membership[i]) & set(p.membership[j])))
            for i in range(p.node_count)
            for j in range(i + 1, p.node_count)
            if set(p.membership[i]) & set(p.membership[j])
            and p.nodes[i] != p.nodes[j]
        ]
        if not pairs:
            continue
        i, j, tri = pairs[rng.randrange(len(pairs))]
        q = line_transform(p, tri, (i, j))
        assert decide(p).poised == decide(q).poised
        assert oracle_poised(p) == oracle_poised(q)
        checked += 1
    report(4, "200 random line transformations left engine and oracle verdicts unchanged")


def test_criterion_5_necessary_conditions(master_run):
    records, _ = master_run
    poised = [r for r in records if r[3]]
    for _, problem, _, _ in poised:
        assert necessary_conditions(problem) is None
    report(
        5,
        f"all {len(poised)} poised master-run instances satisfy every "
        "counting bound (interior and end-anchored)",
    )


def test_criterion_6_empty_pair_reduction():
    rng = random.Random(66)
    for k in range(100):
        n = rng.randint(4, 10)
        p = generate(GenSpec(seed=60000 + k, n=n, pattern="empty_pair"))
        from tripoise.reduction import census

        k00 = next(
            (t for t in range(1, p.n - 2) if census(p, t, t + 1) == 0), None
        )
        assert k00 is not None
        children = reduce_00(p, k00)
        expected = all(
            child.is_exact and decide(child).poised for _, _, child in children
        )
        got = decide(p).poised
        assert got == expected == oracle_poised(p)
    report(6, "100 interior empty-pair splits agree with both children and the oracle")


def test_criterion_7_interpolation_exactness():
    rng = random.Random(77)
    done = 0
    attempt = 0
    while done < 100:
        attempt += 1
        n = rng.randint(1, 6)
        p = generate(GenSpec(seed=70000 + attempt, n=n, pattern="random_exact"))
        if not oracle_poised(p):
            continue
        data = [
            Fraction(rng.randint(-30, 30), rng.randint(1, 12))
            for _ in range(p.node_count)
        ]
        f = interpolate(p, data)
        for node, c in zip(p.nodes, data):
            assert f.value_at(node) == c
        funcs = fundamental_functions(p)
        for i, fi in enumerate(funcs):
            for j, node in enumerate(p.nodes):
                assert fi.value_at(node) == (1 if i == j else 0)
        done += 1
    report(7, "100 poised instances: interpolants and fundamental functions exact")


def test_criterion_8_determinant_self_check():
    rng = random.Random(88)

    def cofactor_det(m):
        size = len(m)
        if size == 0:
            return Fraction(1)
        if size == 1:
            return m[0][0]
        total = Fraction(0)
        for j in range(size):
            if m[0][j] == 0:
                continue
            minor = [[row[c] for c in range(size) if c != j] for row in m[1:]]
            total += (-1) ** j * m[0][j] * cofactor_det(minor)
        return total

    for k in range(200):
        size = 1 + k % 5
        m = [
            [Fraction(rng.randint(-12, 12), rng.randint(1, 8)) for _ in range(size)]
            for _ in range(size)
        ]
        assert det_exact(m) == cofactor_det(m)
    report(8, "200 fraction-free determinants match cofactor expansion exactly")


def test_criterion_9_boundary_equivalence():
    from tripoise.generate import random_interior_point

    rng = random.Random(99)
    kinds = ("left", "right", "both")
    for k in range(50):
        boundary = kinds[k % 3]
        n = rng.randint(3, 8)
        strip = random_zigzag_strip(n, seed=90000 + k)
        inner_count = strip.dimension - (4 if boundary == "both" else 2)
        inner = tuple(
            random_interior_point(rng, strip.triangle(rng.randrange(strip.n)))
            for _ in range(inner_count)
        )
        flagged = to_problem(ProblemFile(strip.vertices, tuple(inner), boundary))
        extra = []
        if boundary in ("left", "both"):
            extra += [strip.vertices[0], strip.vertices[1]]
        if boundary in ("right", "both"):
            extra += [strip.vertices[-2], strip.vertices[-1]]
        plain = to_problem(
            ProblemFile(strip.vertices, tuple(inner) + tuple(extra), "none")
        )
        assert decide(flagged).poised == decide(plain).poised
    report(9, "50 boundary-flagged problems match their vertex-augmented counterparts")


def test_criterion_10_fallback_stability():
    r = run_fuzz(MASTER_COUNT, MASTER_MAX_N, MASTER_SEED)
    assert r.ok
    assert r.fallback_steps == EXPECTED_FALLBACK_STEPS, (
        f"fallback count moved: {r.fallback_steps} != {EXPECTED_FALLBACK_STEPS}; "
        "constructive coverage changed, update the pin deliberately"
    )
    report(
        10,
        f"oracle fallback steps under seed {MASTER_SEED}: {r.fallback_steps} "
        f"(pinned regression value)",
    )
