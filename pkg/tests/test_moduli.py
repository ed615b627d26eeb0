"""Hom table conditions, equivariant End dimensions, stability certificates.

The per-coset degree-1 shortcut is checked against a direct census over
explicit permutations with no shortcuts.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from hilbtaut.chern import BundleSpec
from hilbtaut.errors import (
    ModuliDimensionMismatchError,
    NotApplicableError,
    ShapeMismatchError,
    SizeLimitError,
)
from hilbtaut.moduli import (
    HomTable,
    check_conditions,
    equivariant_end_dims,
    hom_between,
    moduli_component_dim,
    offdiagonal_ext1_vanishing,
    slope_of_induced,
    stability_certificate,
)
from hilbtaut.partitions import enumerate_cosets, enumerate_partitions


def _table(hom, ext1, labels=None, slopes=None, **kw):
    k = len(hom)
    labels = labels if labels is not None else [f"L{i+1}" for i in range(k)]
    slopes = slopes if slopes is not None else [0] * k
    return HomTable(
        tuple(map(tuple, hom)),
        tuple(map(tuple, ext1)),
        tuple(labels),
        tuple(Fraction(s) for s in slopes),
        **kw,
    )


RUNNING_TABLE = _table(
    [[1, 0], [0, 1]], [[2, 0], [0, 4]], ["A", "B"], [Fraction(1, 2), Fraction(1, 2)]
)
RUNNING_SPEC = BundleSpec.build((2, 1), [(2, "e1", (2,)), (1, "e2", (1,))])


def test_table_validation():
    with pytest.raises(ShapeMismatchError):
        _table([[1, 0]], [[0]])
    with pytest.raises(ShapeMismatchError):
        HomTable(((1,),), ((0,),), ("A",), (Fraction(0), Fraction(1)))
    with pytest.raises(ValueError):
        _table([[1, -1], [0, 1]], [[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        _table([[0]], [[0]])  # identity map missing
    with pytest.raises(ValueError):
        _table([[1, 0], [0, 1]], [[0, 0], [0, 0]], ["A", "A"], [0, 1])
    t = _table([[1]], [[7]], ext2=[[5]], locally_free=False)
    assert t.ext2 == ((5,),)
    assert not t.locally_free
    assert t.end1_self == (7,)
    assert RUNNING_TABLE.k == 2


def test_table_json_roundtrip():
    blob = RUNNING_TABLE.to_json_dict()
    assert blob["k"] == 2
    assert blob["slopes"] == ["1/2", "1/2"]
    assert HomTable.from_json_dict(blob) == RUNNING_TABLE
    t = _table([[1]], [[3]], ext2=[[2]], locally_free=False)
    assert HomTable.from_json_dict(t.to_json_dict()) == t
    with pytest.raises(ValueError):
        HomTable.from_json_dict({"hom": [[1]], "ext1": [[0]], "labels": ["A"]})
    with pytest.raises(ValueError):
        blob2 = RUNNING_TABLE.to_json_dict()
        blob2["k"] = 3
        HomTable.from_json_dict(blob2)
    with pytest.raises(ValueError):
        blob3 = RUNNING_TABLE.to_json_dict()
        blob3["mystery"] = 1
        HomTable.from_json_dict(blob3)


def test_check_conditions_basic():
    assert check_conditions(_table([[1]], [[5]])).grouping == ((1,),)
    report = check_conditions(RUNNING_TABLE)
    assert report.satisfied and report.distinct_ok
    assert report.grouping == ((1,), (2,))
    assert report.witnesses == ()


def test_check_conditions_order_sensitive():
    # hom from block 2 to block 1 survives, so block 2 must come first
    t = _table([[1, 0], [1, 1]], [[0, 0], [0, 0]])
    assert check_conditions(t).grouping == ((2,), (1,))
    # same with a backward ext1 only
    t2 = _table([[1, 0], [0, 1]], [[0, 0], [1, 0]])
    assert check_conditions(t2).grouping == ((2,), (1,))


def test_check_conditions_joint_group():
    # mutual ext1 blocks both orders; homs vanish, so one group takes both
    t = _table([[1, 0], [0, 1]], [[0, 1], [1, 0]])
    assert check_conditions(t).grouping == ((1, 2),)


def test_check_conditions_unsat_pairwise():
    t = _table([[1, 1], [1, 1]], [[0, 0], [0, 0]])
    report = check_conditions(t)
    assert not report.satisfied
    assert report.grouping is None
    assert any("no arrangement" in w for w in report.witnesses)


def test_check_conditions_unsat_cycle():
    # pairwise placements exist but the order constraints form a cycle
    hom = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    ext1 = [[0] * 3 for _ in range(3)]
    report = check_conditions(_table(hom, ext1))
    assert not report.satisfied
    assert report.witnesses == (
        "no ordered grouping satisfies the vanishing constraints",
    )


def test_check_conditions_non_simple():
    report = check_conditions(_table([[2, 0], [0, 1]], [[0, 0], [0, 0]]))
    assert not report.satisfied
    assert any("not simple" in w for w in report.witnesses)


def test_check_conditions_distinct_flag_and_bound():
    t = _table([[1, 0], [0, 1]], [[0, 0], [0, 0]], ["A", "A"], [0, 0])
    report = check_conditions(t)
    assert report.satisfied and not report.distinct_ok
    k = 11
    eye = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    zero = [[0] * k for _ in range(k)]
    with pytest.raises(SizeLimitError):
        check_conditions(_table(eye, zero))


def test_vanishing_running_example():
    report = offdiagonal_ext1_vanishing((2, 1), RUNNING_TABLE)
    assert report.holds
    assert report.failing_coset is None and report.degree1_dim == 0


def test_vanishing_failure_frozen():
    t = _table([[1, 1], [1, 1]], [[0, 0], [1, 0]])
    report = offdiagonal_ext1_vanishing((2, 1), t)
    assert not report.holds
    assert tuple(report.failing_coset) == (1, 2, 1)
    assert report.degree1_dim == 1


def _brute_vanishing(lam, table):
    # no-shortcut oracle: visit label tuples through explicit permutations
    ident = []
    for i, part in enumerate(lam, start=1):
        ident.extend([i] * part)
    n = len(ident)
    seen = {}
    for perm in itertools.permutations(range(n)):
        labels = tuple(ident[p] for p in perm)
        seen[labels] = seen.get(labels, 0) + 1
    stab = 1
    for part in lam:
        for v in range(1, part + 1):
            stab *= v
    assert all(v == stab for v in seen.values())
    for labels in sorted(seen):
        if labels == tuple(ident):
            continue
        deg1 = 0
        for p in range(n):
            term = table.ext1[ident[p] - 1][labels[p] - 1]
            for q in range(n):
                if q != p:
                    term *= table.hom[ident[q] - 1][labels[q] - 1]
            deg1 += term
        if deg1:
            return (False, labels, deg1)
    return (True, None, 0)


def test_vanishing_vs_permutation_oracle():
    rng = random.Random(421)
    shapes = []
    for n in range(2, 6):
        for part in enumerate_partitions(n):
            shapes.append(tuple(part))
            if tuple(reversed(part)) != tuple(part):
                shapes.append(tuple(reversed(part)))
    for lam in shapes:
        k = len(lam)
        for _ in range(6):
            hom = [
                [1 if i == j else rng.randrange(3) for j in range(k)]
                for i in range(k)
            ]
            ext1 = [[rng.randrange(3) for _ in range(k)] for i in range(k)]
            t = _table(hom, ext1)
            got = offdiagonal_ext1_vanishing(lam, t)
            want = _brute_vanishing(lam, t)
            assert got.holds == want[0], (lam, hom, ext1)
            coset = None if got.failing_coset is None else tuple(got.failing_coset)
            assert (coset, got.degree1_dim) == (want[1], want[2])


def test_vanishing_bounds_and_shape():
    with pytest.raises(ShapeMismatchError):
        offdiagonal_ext1_vanishing((2, 1, 1), RUNNING_TABLE)
    with pytest.raises(SizeLimitError):
        offdiagonal_ext1_vanishing((2, 1), RUNNING_TABLE, max_cosets=2)


def test_end_dims_running_example():
    dims = equivariant_end_dims(RUNNING_SPEC, RUNNING_TABLE)
    assert dims.end0 == 1
    assert dims.end1 == 6
    assert dims.offdiagonal_vanishes
    assert dims.failing_coset is None


def test_end_dims_multiplicity():
    # single full block: rectangular rep contributes once, hook rep twice
    for d in (1, 3, 20):
        t1 = _table([[1]], [[d]])
        rect = BundleSpec.build((3,), [(1, "e", (3,))])
        hook = BundleSpec.build((3,), [(1, "e", (2, 1))])
        assert equivariant_end_dims(rect, t1).end1 == d
        assert equivariant_end_dims(hook, t1).end1 == 2 * d


def test_end_dims_offdiagonal_failure():
    t = _table([[1, 1], [1, 1]], [[2, 0], [1, 4]])
    dims = equivariant_end_dims(RUNNING_SPEC, t)
    assert not dims.offdiagonal_vanishes
    assert dims.end1 == 6  # identity-coset part only
    assert tuple(dims.failing_coset) == (1, 2, 1)
    with pytest.raises(ValueError):
        moduli_component_dim(t, RUNNING_SPEC)


def test_end_dims_requires_simple():
    t = _table([[2, 0], [0, 1]], [[2, 0], [0, 4]])
    with pytest.raises(ValueError):
        equivariant_end_dims(RUNNING_SPEC, t)
    with pytest.raises(ValueError):
        moduli_component_dim(t, RUNNING_SPEC)


def test_moduli_component_dim():
    assert moduli_component_dim(RUNNING_TABLE, RUNNING_SPEC) == 6
    t20 = _table([[1]], [[20]])
    spec = BundleSpec.build((3,), [(1, "e", (3,))])
    assert moduli_component_dim(t20, spec) == 20


def test_moduli_component_dim_mismatch():
    t = _table([[1]], [[2]])
    hook = BundleSpec.build((3,), [(1, "e", (2, 1))])
    with pytest.raises(ModuliDimensionMismatchError) as exc:
        moduli_component_dim(t, hook)
    assert exc.value.image_dim == 2
    assert exc.value.tangent_dim == 4


def test_hom_between():
    a = RUNNING_SPEC
    b = BundleSpec.build((2, 1), [(3, "f1", (2,)), (2, "f2", (1,))])
    assert hom_between(a, b, [[1, 0], [0, 1]]) == 1
    assert hom_between(a, b, [[2, 0], [0, 1]]) == 4
    assert hom_between(a, b, [[2, 0], [0, 3]]) == 12
    assert hom_between(a, b, [[0, 0], [0, 1]]) == 0
    with pytest.raises(NotApplicableError):
        hom_between(a, b, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        hom_between(a, BundleSpec.build((3,), [(1, "f", (3,))]), [[1]])
    mismatched = BundleSpec.build((2, 1), [(2, "f1", (1, 1)), (1, "f2", (1,))])
    with pytest.raises(ValueError):
        hom_between(a, mismatched, [[1, 0], [0, 1]])


def test_slope_of_induced():
    assert slope_of_induced((2, 1), [Fraction(1, 2), 3]) == 4
    assert slope_of_induced((3,), [Fraction(-1, 3)]) == -1
    assert isinstance(slope_of_induced((1, 1), [0, 0]), Fraction)
    with pytest.raises(ShapeMismatchError):
        slope_of_induced((2, 1), [1])


def test_stability_running_example():
    cert = stability_certificate((2, 1), RUNNING_TABLE)
    assert cert.ok
    assert cert.failing_coset is None
    assert [(tuple(c), p) for c, p in cert.witnesses] == [
        ((1, 2, 1), 2),
        ((2, 1, 1), 1),
    ]


def test_stability_single_block_vacuous():
    t = _table([[1]], [[0]])
    cert = stability_certificate((3,), t)
    assert cert.ok and cert.witnesses == ()


def test_stability_duplicate_label_fails():
    t = _table([[1, 0], [0, 1]], [[0, 0], [0, 0]], ["A", "A"], [0, 0])
    cert = stability_certificate((2, 1), t)
    assert not cert.ok
    assert tuple(cert.failing_coset) == tuple(enumerate_cosets((2, 1))[1])


def test_stability_iff_distinct_labels():
    rng = random.Random(422)
    for n in range(2, 6):
        for part in enumerate_partitions(n):
            lam = tuple(part)
            k = len(lam)
            eye = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
            zero = [[0] * k for _ in range(k)]
            slopes = [
                Fraction(rng.randrange(-6, 7), rng.randrange(1, 4))
                for _ in range(k)
            ]
            distinct = _table(eye, zero, [f"L{i}" for i in range(k)], slopes)
            assert stability_certificate(lam, distinct).ok, lam
            assert len(stability_certificate(lam, distinct).witnesses) == (
                len(enumerate_cosets(lam)) - 1
            )
            if k >= 2:
                labels = [f"L{i}" for i in range(k)]
                a, b = rng.sample(range(k), 2)
                labels[b] = labels[a]
                dup_slopes = list(slopes)
                dup_slopes[b] = dup_slopes[a]
                dup = _table(eye, zero, labels, dup_slopes)
                assert not stability_certificate(lam, dup).ok, lam


def test_stability_bounds_and_shape():
    with pytest.raises(ShapeMismatchError):
        stability_certificate((2, 1, 1), RUNNING_TABLE)
    with pytest.raises(SizeLimitError):
        stability_certificate((2, 1), RUNNING_TABLE, max_cosets=2)
