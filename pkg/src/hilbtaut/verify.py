"""Cross-checks pitting every closed formula against its brute-force oracle.

Each suite returns the number of comparisons made and a list of failure
descriptions (empty when the routes agree).  The CLI `verify` subcommand
runs all of them; the acceptance tests reuse them with pinned bounds.
"""

from __future__ import annotations

from itertools import product
from typing import NamedTuple

from .characters import (
    brute_force_character_table,
    character_table,
    restrict_to_transposition,
    standard_tensor_multiplicity,
)
from .chern import (
    BundleSpec,
    b_class,
    c1,
    c1_via_blowup,
    generating_polynomial,
    invariant_restriction_rank,
    r_number,
    regular_checksum,
    regular_checksum_via_irreps,
)
from .partitions import (
    dimension,
    enumerate_cosets,
    enumerate_partitions,
    index_p,
    is_rectangular,
    p_reduced,
)


class SuiteResult(NamedTuple):
    name: str
    checks: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _sweep_compositions(max_n: int):
    # canonical descending order plus the reversed (ascending) variant, so
    # unsorted compositions get exercised too
    for n in range(1, max_n + 1):
        for part in enumerate_partitions(n):
            yield tuple(part)
            rev = tuple(reversed(part))
            if rev != tuple(part):
                yield rev


def coset_count_suite(max_n: int = 6) -> SuiteResult:
    """Coset enumeration vs the multinomial index numbers."""
    checks = 0
    failures: list[str] = []
    for lam in _sweep_compositions(max_n):
        cosets = enumerate_cosets(lam)
        singles, pairs = p_reduced(lam)
        checks += 1
        if len(cosets) != index_p(lam):
            failures.append(f"lam={lam}: {len(cosets)} cosets vs index {index_p(lam)}")
            continue
        if not cosets[0].is_identity or any(c.is_identity for c in cosets[1:]):
            failures.append(f"lam={lam}: identity coset not unique or not first")
        if sum(singles.values()) != index_p(lam):
            failures.append(f"lam={lam}: single reductions do not sum to the index")
        first_counts: dict[int, int] = {}
        pair_counts: dict[tuple[int, int], int] = {}
        for coset in cosets:
            first_counts[coset[0]] = first_counts.get(coset[0], 0) + 1
            if len(coset) >= 2:
                key = (coset[0], coset[1])
                pair_counts[key] = pair_counts.get(key, 0) + 1
        for i, expected in singles.items():
            checks += 1
            if first_counts.get(i, 0) != expected:
                failures.append(f"lam={lam}: position-1 label {i} count mismatch")
        if sum(lam) >= 2:
            ordered_total = 0
            for (i, j), expected in pairs.items():
                if i == j:
                    ordered = [(i, i)]
                    ordered_total += expected
                else:
                    ordered = [(i, j), (j, i)]
                    ordered_total += 2 * expected
                for key in ordered:
                    checks += 1
                    if pair_counts.get(key, 0) != expected:
                        failures.append(f"lam={lam}: positions-1,2 labels {key} mismatch")
            checks += 1
            if ordered_total != index_p(lam):
                failures.append(f"lam={lam}: pair reductions do not sum to the index")
    return SuiteResult("coset counts vs index numbers", checks, failures)


def character_suite(max_m: int = 6) -> SuiteResult:
    """Recursive character values vs the tabloid/Gram-Schmidt oracle."""
    checks = 0
    failures: list[str] = []
    for m in range(1, min(max_m, 7) + 1):
        fast = character_table(m)
        slow = brute_force_character_table(m)
        for row_fast, row_slow, d in zip(fast.values, slow.values, fast.diagrams):
            checks += 1
            if row_fast != row_slow:
                failures.append(f"m={m} diagram {tuple(d)}: {row_fast} vs {row_slow}")
        checks += 1
        if fast.class_sizes != slow.class_sizes:
            failures.append(f"m={m}: class sizes {fast.class_sizes} vs {slow.class_sizes}")
    return SuiteResult("characters vs permutation brute force", checks, failures)


def rectangularity_suite(max_m: int = 8) -> SuiteResult:
    """Tensor multiplicity 1 exactly on rectangular diagrams."""
    checks = 0
    failures: list[str] = []
    for m in range(1, max_m + 1):
        for d in enumerate_partitions(m):
            mult = standard_tensor_multiplicity(d)
            checks += 1
            if (mult == 1) != is_rectangular(d):
                failures.append(f"{tuple(d)}: multiplicity {mult}")
            if mult < 1:
                failures.append(f"{tuple(d)}: multiplicity {mult} < 1")
    return SuiteResult("rectangularity vs tensor multiplicity", checks, failures)


def restriction_suite(max_m: int = 10) -> SuiteResult:
    """Trivial/sign multiplicities under a 2-cycle sum to the dimension."""
    checks = 0
    failures: list[str] = []
    for m in range(2, max_m + 1):
        for d in enumerate_partitions(m):
            alpha, beta = restrict_to_transposition(d)
            checks += 1
            if alpha < 0 or beta < 0 or alpha + beta != dimension(d):
                failures.append(f"{tuple(d)}: alpha={alpha} beta={beta} dim={dimension(d)}")
    return SuiteResult("transposition restriction sums", checks, failures)


def _all_specs(n: int, ranks=(1, 2, 3)):
    for lam in enumerate_partitions(n):
        k = len(lam)
        rep_choices = [enumerate_partitions(part) for part in lam]
        for reps in product(*rep_choices):
            for rank_tuple in product(ranks, repeat=k):
                yield BundleSpec.build(
                    tuple(lam),
                    [
                        (rank_tuple[i], f"e{i + 1}", reps[i])
                        for i in range(k)
                    ],
                )


def rank_oracle_suite(max_n: int = 6, ranks=(1, 2, 3)) -> SuiteResult:
    """Closed-form delta coefficient vs the swap-trace oracle, full sweep."""
    checks = 0
    failures: list[str] = []
    for n in range(2, max_n + 1):
        for spec in _all_specs(n, ranks):
            closed = r_number(spec)
            oracle = invariant_restriction_rank(spec)
            checks += 1
            if closed != oracle:
                failures.append(
                    f"lam={tuple(spec.lam)} ranks={[b.rank for b in spec.blocks]} "
                    f"reps={[tuple(b.rep) for b in spec.blocks]}: {closed} vs {oracle}"
                )
                continue
            full = c1(spec)
            assembled = c1_via_blowup(b_class(spec), oracle)
            checks += 1
            if full != assembled or not full.is_integral:
                failures.append(f"lam={tuple(spec.lam)}: c1 routes disagree")
    return SuiteResult("chern delta coefficient vs swap-trace oracle", checks, failures)


def generating_suite(max_n: int = 6) -> SuiteResult:
    """Generating-polynomial coefficients vs per-shape closed formulas."""
    checks = 0
    failures: list[str] = []
    rank_cycle = (2, 1, 3)
    for n in range(2, max_n + 1):
        inputs = [(rank_cycle[i % 3], f"e{i + 1}") for i in range(n)]
        for variant in ("trivial", "sign"):
            poly = generating_polynomial(n, inputs, variant)
            for lam in enumerate_partitions(n):
                k = len(lam)
                expts = tuple(lam) + (0,) * (n - k)
                reps = [
                    (part,) if variant == "trivial" else (1,) * part for part in lam
                ]
                spec = BundleSpec.build(
                    tuple(lam),
                    [(inputs[i][0], inputs[i][1], reps[i]) for i in range(k)],
                )
                checks += 1
                if poly.coefficient_of(expts) != c1(spec):
                    failures.append(
                        f"n={n} {variant} lam={tuple(lam)}: coefficient mismatch"
                    )
    return SuiteResult("generating polynomial coefficients", checks, failures)


def regular_suite(max_n: int = 6, max_rank: int = 3) -> SuiteResult:
    """Closed-form checksum vs the dimension-weighted sum over irreducibles."""
    checks = 0
    failures: list[str] = []
    for n in range(2, max_n + 1):
        for rank in range(1, max_rank + 1):
            checks += 1
            if regular_checksum(n, rank, "e") != regular_checksum_via_irreps(n, rank, "e"):
                failures.append(f"n={n} rank={rank}: checksum mismatch")
    return SuiteResult("regular-representation checksum", checks, failures)


def verify_all(max_n: int = 6) -> list[SuiteResult]:
    """Run every oracle suite with bounds tied to max_n."""
    return [
        coset_count_suite(max_n),
        character_suite(min(max_n, 6)),
        rectangularity_suite(max_n + 2),
        restriction_suite(max_n + 4),
        rank_oracle_suite(max_n),
        generating_suite(max_n),
        regular_suite(max_n),
    ]
