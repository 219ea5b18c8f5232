"""Fuzzing harness: structural decision versus determinant oracle.

Generates a seeded stream of exact problems across all patterns, runs both
deciders on each, and reports agreement plus the number of oracle-fallback
steps taken by the structural engine (a regression gauge for how often the
constructive reduction path is abandoned).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .generate import GenSpec, generate
from .oracle import Problem, oracle_poised
from .problemio import format_problem, from_problem
from .reduction import decide

_EXACT_PATTERNS = (
    "random_exact",
    "random_exact",
    "random_exact",
    "random_exact",
    "vertices",
    "collinear_three",
    "empty_pair",
    "basic_212",
    "basic_2m2",
)


def fuzz_instances(count: int, max_n: int, seed: int) -> Iterator[Tuple[GenSpec, Problem]]:
    """Deterministic stream of exact problems with mixed patterns."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        pattern = _EXACT_PATTERNS[produced % len(_EXACT_PATTERNS)]
        n = rng.randint(1, max_n)
        m = None
        if pattern == "empty_pair":
            n = max(n, 4)
        elif pattern == "basic_212":
            n = 3
        elif pattern == "basic_2m2":
            n = max(2, n)
            m = n - 2
        spec = GenSpec(seed=rng.getrandbits(48), n=n, pattern=pattern, m=m)
        yield spec, generate(spec)
        produced += 1


@dataclass
class FuzzReport:
    total: int
    agreements: int
    fallback_steps: int
    disagreements: List[GenSpec]
    counterexample: Optional[str] = None  # problem file text of first mismatch

    @property
    def ok(self) -> bool:
        return not self.disagreements


def run_fuzz(count: int, max_n: int, seed: int, nc_filter: bool = True) -> FuzzReport:
    if count < 1:
        raise ValueError("count must be positive")
    report = FuzzReport(total=0, agreements=0, fallback_steps=0, disagreements=[])
    for spec, problem in fuzz_instances(count, max_n, seed):
        verdict = decide(problem, nc_filter=nc_filter)
        truth = oracle_poised(problem)
        report.total += 1
        report.fallback_steps += verdict.fallback_count
        if verdict.poised == truth:
            report.agreements += 1
        else:
            report.disagreements.append(spec)
            if report.counterexample is None:
                report.counterexample = format_problem(from_problem(problem))
    return report
