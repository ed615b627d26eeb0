"""Rank and first Chern class of induced bundles.

The closed-form swap correction is checked against the trace oracle, which
recounts invariants directly over the enumerated cosets.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

import pytest

from hilbtaut.chern import (
    BundleSpec,
    b_class,
    c1,
    c1_via_blowup,
    generating_polynomial,
    invariant_restriction_rank,
    r_number,
    rank_G,
    regular_checksum,
    regular_checksum_via_irreps,
)
from hilbtaut.divisors import DivisorClass
from hilbtaut.errors import IntegralityError, SizeLimitError
from hilbtaut.partitions import dimension, enumerate_partitions

RUNNING = BundleSpec.build((2, 1), [(2, "e1", (2,)), (1, "e2", (1,))])


def _taut_spec(n: int, r: int) -> BundleSpec:
    # rank r bundle spread over n points, fully symmetric partner factor
    return BundleSpec.build(
        (n - 1, 1), [(1, "", (n - 1,)), (r, "e", (1,))]
    )


def test_spec_validation():
    with pytest.raises(ValueError):
        BundleSpec.build((2, 1), [(2, "e1", (2,))])  # block count mismatch
    with pytest.raises(ValueError):
        BundleSpec.build((2, 1), [(2, "e1", (3,)), (1, "e2", (1,))])
    with pytest.raises(ValueError):
        BundleSpec.build((2,), [(0, "e1", (2,))])
    with pytest.raises(ValueError):
        BundleSpec.build((2,), [(1, "delta", (2,))])
    spec = BundleSpec.build((2,), [(3, "0", (1, 1))])
    assert spec.blocks[0].c1_class == DivisorClass.zero()


def test_rank_examples():
    assert rank_G(RUNNING) == 12
    for n in range(2, 7):
        line = BundleSpec.build((n,), [(1, "", (n,))])
        assert rank_G(line) == 1
        for r in range(1, 4):
            assert rank_G(_taut_spec(n, r)) == n * r


def test_b_class_examples():
    assert b_class(RUNNING) == DivisorClass({"e1": 4, "e2": 4})
    for n in range(2, 7):
        for r in range(1, 4):
            assert b_class(_taut_spec(n, r)) == DivisorClass({"e": 1})
    spec = BundleSpec.build(
        (1, 1, 1), [(1, "e1", (1,)), (2, "e2", (1,)), (3, "e3", (1,))]
    )
    assert b_class(spec) == DivisorClass({"e1": 12, "e2": 6, "e3": 4})


def test_r_number_examples():
    assert r_number(RUNNING) == 5
    # tautological rank r: correction equals r for every n
    for n in range(2, 7):
        for r in range(1, 4):
            assert r_number(_taut_spec(n, r)) == r
    # two points, one block: trivial rep counts strict pairs, sign rep
    # counts pairs with repetition (checked against the trace oracle)
    for r in range(1, 5):
        triv = BundleSpec.build((2,), [(r, "e", (2,))])
        sgn = BundleSpec.build((2,), [(r, "e", (1, 1))])
        assert r_number(triv) == comb(r, 2)
        assert r_number(sgn) == comb(r + 1, 2)
        assert invariant_restriction_rank(triv) == comb(r, 2)
        assert invariant_restriction_rank(sgn) == comb(r + 1, 2)
    # single point per block never meets the diagonal correction alone
    ones = BundleSpec.build((1,), [(2, "e", (1,))])
    assert r_number(ones) == 0


def test_c1_examples():
    assert c1(RUNNING) == DivisorClass({"e1": 4, "e2": 4}, -5)
    assert c1(RUNNING).render_text() == "4*e1 + 4*e2 - 5*delta"
    for n in range(2, 8):
        for r in range(1, 5):
            assert c1(_taut_spec(n, r)) == DivisorClass({"e": 1}, -r)


def test_c1_all_singleton_blocks_closed_form():
    # lam = (1, .., 1): rank (n-1)! * s per symbol slot, correction from
    # unordered block pairs
    for n in range(2, 6):
        for ranks in itertools.product((1, 2, 3), repeat=n):
            blocks = [(r, f"e{i+1}", (1,)) for i, r in enumerate(ranks)]
            spec = BundleSpec.build((1,) * n, blocks)
            s = 1
            for r in ranks:
                s *= r
            surface = {
                f"e{i+1}": Fraction(factorial(n - 1) * s, r)
                for i, r in enumerate(ranks)
            }
            pair_total = sum(
                factorial(n - 2) for _ in itertools.combinations(range(n), 2)
            )
            expected = DivisorClass(surface, -s * pair_total)
            assert c1(spec) == expected, ranks


def _all_specs(n, ranks=(1, 2, 3)):
    shapes = []
    for part in enumerate_partitions(n):
        shapes.append(tuple(part))
        if tuple(reversed(part)) != tuple(part):
            shapes.append(tuple(reversed(part)))
    for lam in shapes:
        k = len(lam)
        rep_choices = [enumerate_partitions(part) for part in lam]
        for reps in itertools.product(*rep_choices):
            for rank_tuple in itertools.product(ranks, repeat=k):
                blocks = [
                    (rank_tuple[i], f"e{i+1}", reps[i]) for i in range(k)
                ]
                yield BundleSpec.build(lam, blocks)


@pytest.mark.parametrize("n", range(1, 6))
def test_swap_correction_vs_trace_oracle(n):
    ranks = (1, 2, 3) if n <= 4 else (1, 2)
    for spec in _all_specs(n, ranks):
        oracle = invariant_restriction_rank(spec)
        assert r_number(spec) == oracle, spec
        assert c1(spec) == c1_via_blowup(b_class(spec), oracle)


def test_oracle_edge_cases():
    ones = BundleSpec.build((1,), [(3, "e", (1,))])
    assert invariant_restriction_rank(ones) == 0
    assert invariant_restriction_rank(RUNNING) == 5
    with pytest.raises(SizeLimitError):
        big = BundleSpec.build((1,) * 13, [(1, "e", (1,))] * 13)
        invariant_restriction_rank(big)


def test_oracle_regular_identity():
    # summed over all irreducibles of the full symmetric group, weighted by
    # dimension, the invariant count recovers half the regular square
    for n in range(2, 5):
        for r in range(1, 3):
            total = 0
            for rep in enumerate_partitions(n):
                spec = BundleSpec.build((n,), [(r, "e", rep)])
                total += dimension(rep) * invariant_restriction_rank(spec)
            assert total == factorial(n) * r**n // 2


def test_n_equals_one():
    spec = BundleSpec.build((1,), [(2, "e1", (1,))])
    assert rank_G(spec) == 2
    assert r_number(spec) == 0
    assert c1(spec) == DivisorClass({"e1": 1})


def test_generating_polynomial_frozen():
    poly = generating_polynomial(2, [(2, "e")])
    assert poly.coefficient_of((2,)) == DivisorClass({"e": 2}, -1)
    assert set(poly.terms) == {(2,)}
    assert poly.at_ones() == DivisorClass({"e": 2}, -1)

    sign = generating_polynomial(2, [(2, "e")], variant="sign")
    assert sign.coefficient_of((2,)) == DivisorClass({"e": 2}, -3)

    pair = generating_polynomial(2, [(1, "a"), (1, "b")])
    assert pair.coefficient_of((1, 1)) == DivisorClass({"a": 1, "b": 1}, -1)
    assert pair.coefficient_of((2, 0)) == DivisorClass({"a": 1})


@pytest.mark.parametrize("variant", ["trivial", "sign"])
@pytest.mark.parametrize("n", range(2, 5))
def test_generating_polynomial_vs_block_formula(n, variant):
    # the coefficient of t^lam is the class for the spec whose block reps
    # are all trivial (or all sign)
    rank_cycle = (2, 1, 3)
    inputs = [(rank_cycle[i % 3], f"e{i+1}") for i in range(n)]
    for k in range(1, n + 1):
        poly = generating_polynomial(n, inputs[:k], variant=variant)
        for expts in poly.terms:
            assert sum(expts) == n
        for part in enumerate_partitions(n):
            fits = [lam for lam in itertools.permutations(part, len(part))]
            for lam in set(fits):
                if len(lam) > k:
                    continue
                expts = tuple(lam) + (0,) * (k - len(lam))
                rep_of = (
                    (lambda p: (p,)) if variant == "trivial"
                    else (lambda p: (1,) * p)
                )
                blocks = [
                    (inputs[i][0], inputs[i][1], rep_of(lam[i]))
                    for i in range(len(lam))
                ]
                spec = BundleSpec.build(lam, blocks)
                assert poly.coefficient_of(expts) == c1(spec), (lam, variant)


def test_generating_polynomial_validation():
    with pytest.raises(ValueError):
        generating_polynomial(2, [(2, "e")], variant="other")
    with pytest.raises(ValueError):
        generating_polynomial(1, [(2, "e")])
    with pytest.raises(ValueError):
        generating_polynomial(2, [])
    with pytest.raises(ValueError):
        generating_polynomial(2, [(0, "e")])


def test_regular_checksum():
    assert regular_checksum(2, 1, "e") == DivisorClass({"e": 2}, -1)
    assert regular_checksum(3, 2, "e") == DivisorClass({"e": 24}, -24)
    with pytest.raises(ValueError):
        regular_checksum(1, 1, "e")
    for n in range(2, 6):
        for r in range(1, 4):
            direct = regular_checksum(n, r, "e")
            summed = regular_checksum_via_irreps(n, r, "e")
            assert direct == summed, (n, r)
            assert direct == DivisorClass(
                {"e": factorial(n) * r ** (n - 1)},
                -Fraction(factorial(n), 2) * r**n,
            )


def test_integrality_enforced():
    # every class produced by the closed forms is integral by construction
    for n in range(1, 5):
        for spec in _all_specs(n, (1, 2)):
            assert c1(spec).is_integral
            assert b_class(spec).is_integral
