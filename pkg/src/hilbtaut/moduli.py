"""Hom/Ext bookkeeping between input bundles and what it certifies.

A HomTable records exact dimensions of Hom and Ext^1 between the input
bundles on the surface.  From it the package checks the ordered-grouping
vanishing condition, certifies that off-diagonal equivariant Ext^1
contributions die coset by coset, sums self-extension dimensions into
moduli component dimensions, counts Homs between two induced bundles with
the same shape, and produces per-coset slope certificates for stability.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Mapping, NamedTuple, Sequence

from .chern import BundleSpec
from .characters import standard_tensor_multiplicity
from .errors import (
    ModuliDimensionMismatchError,
    NotApplicableError,
    ShapeMismatchError,
    SizeLimitError,
)
from .partitions import (
    LabeledComposition,
    LabeledSetPartition,
    MAX_COSETS,
    _label_tuples,
    index_p,
)

MAX_GROUPING_BLOCKS = 10


def _as_matrix(rows, k: int, what: str, allow_none: bool = False):
    if rows is None and allow_none:
        return None
    rows = tuple(tuple(int(v) for v in row) for row in rows)
    if len(rows) != k or any(len(row) != k for row in rows):
        raise ShapeMismatchError(f"{what} must be a {k}x{k} matrix")
    if any(v < 0 for row in rows for v in row):
        raise ValueError(f"{what} entries must be non-negative")
    return rows


@dataclass(frozen=True)
class HomTable:
    """Pairwise Hom/Ext^1 dimensions between k input bundles.

    hom[i][j] and ext1[i][j] are dim Hom(E_i, E_j) and dim Ext^1(E_i, E_j)
    (0-based storage, 1-based in messages).  iso_labels name isomorphism
    classes; equal labels must come with equal slopes.  ext2 is accepted and
    stored but never used; locally_free is recorded only.
    """

    hom: tuple[tuple[int, ...], ...]
    ext1: tuple[tuple[int, ...], ...]
    iso_labels: tuple[str, ...]
    slopes: tuple[Fraction, ...]
    ext2: tuple[tuple[int, ...], ...] | None = None
    locally_free: bool = True

    def __post_init__(self):
        k = len(self.iso_labels)
        object.__setattr__(self, "iso_labels", tuple(str(s) for s in self.iso_labels))
        object.__setattr__(self, "slopes", tuple(Fraction(s) for s in self.slopes))
        if len(self.slopes) != k:
            raise ShapeMismatchError(f"{len(self.slopes)} slopes for {k} labels")
        object.__setattr__(self, "hom", _as_matrix(self.hom, k, "hom"))
        object.__setattr__(self, "ext1", _as_matrix(self.ext1, k, "ext1"))
        object.__setattr__(self, "ext2", _as_matrix(self.ext2, k, "ext2", allow_none=True))
        for i in range(k):
            if self.hom[i][i] < 1:
                raise ValueError(f"hom[{i + 1}][{i + 1}] must be >= 1 (identity map)")
        by_label: dict[str, Fraction] = {}
        for label, slope in zip(self.iso_labels, self.slopes):
            if label in by_label and by_label[label] != slope:
                raise ValueError(f"label {label!r} carries two different slopes")
            by_label[label] = slope

    @property
    def k(self) -> int:
        return len(self.iso_labels)

    @property
    def end1_self(self) -> tuple[int, ...]:
        return tuple(self.ext1[i][i] for i in range(self.k))

    def to_json_dict(self) -> dict:
        out = {
            "k": self.k,
            "hom": [list(row) for row in self.hom],
            "ext1": [list(row) for row in self.ext1],
            "labels": list(self.iso_labels),
            "slopes": [str(s) for s in self.slopes],
            "locally_free": self.locally_free,
        }
        if self.ext2 is not None:
            out["ext2"] = [list(row) for row in self.ext2]
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> HomTable:
        if not isinstance(data, Mapping):
            raise ValueError(f"hom table must be an object, got {data!r}")
        unknown = set(data) - {"k", "hom", "ext1", "labels", "slopes", "ext2", "locally_free"}
        if unknown:
            raise ValueError(f"unknown hom-table keys {sorted(unknown)}")
        for key in ("hom", "ext1", "labels", "slopes"):
            if key not in data:
                raise ValueError(f"hom table is missing {key!r}")
        table = cls(
            hom=data["hom"],
            ext1=data["ext1"],
            iso_labels=data["labels"],
            slopes=[Fraction(s) for s in data["slopes"]],
            ext2=data.get("ext2"),
            locally_free=bool(data.get("locally_free", True)),
        )
        if "k" in data and int(data["k"]) != table.k:
            raise ValueError(f"declared k = {data['k']} but tables have size {table.k}")
        return table


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the ordered-grouping vanishing check."""

    distinct_ok: bool
    grouping: tuple[tuple[int, ...], ...] | None
    witnesses: tuple[str, ...]

    @property
    def satisfied(self) -> bool:
        return self.grouping is not None


def check_conditions(table: HomTable, max_k: int = MAX_GROUPING_BLOCKS) -> ConditionReport:
    """Search for an ordered grouping of the blocks under which all maps
    from later groups to earlier groups vanish in degrees 0 and 1, blocks in
    one group have no maps between distinct members, and every block is
    simple.  Returns the first grouping in deterministic order (groups built
    left to right, candidate subsets by size then lexicographically), or the
    reasons none exists.
    """
    k = table.k
    if k > max_k:
        raise SizeLimitError(f"grouping search capped at {max_k} blocks, got {k}")
    distinct_ok = len(set(table.iso_labels)) == k
    witnesses: list[str] = []

    non_simple = [i for i in range(k) if table.hom[i][i] != 1]
    for i in non_simple:
        witnesses.append(f"block {i + 1} is not simple: hom[{i + 1}][{i + 1}] = {table.hom[i][i]}")
    if non_simple:
        return ConditionReport(distinct_ok, None, tuple(witnesses))

    def same_ok(i: int, j: int) -> bool:
        return table.hom[i][j] == 0 and table.hom[j][i] == 0

    def before_ok(i: int, j: int) -> bool:
        # i in an earlier group than j: maps from j back to i must vanish
        return table.hom[j][i] == 0 and table.ext1[j][i] == 0

    for i, j in combinations(range(k), 2):
        if not (same_ok(i, j) or before_ok(i, j) or before_ok(j, i)):
            witnesses.append(
                f"blocks {i + 1} and {j + 1} admit no arrangement: "
                "maps survive in both directions"
            )
    if witnesses:
        return ConditionReport(distinct_ok, None, tuple(witnesses))

    def search(remaining: tuple[int, ...], earlier: tuple[int, ...], placed):
        if not remaining:
            return tuple(placed)
        for size in range(1, len(remaining) + 1):
            for subset in combinations(remaining, size):
                if all(same_ok(a, b) for a, b in combinations(subset, 2)) and all(
                    before_ok(e, s) for e in earlier for s in subset
                ):
                    rest = tuple(x for x in remaining if x not in subset)
                    found = search(rest, earlier + subset, placed + [subset])
                    if found:
                        return found
        return None

    grouping = search(tuple(range(k)), (), [])
    if grouping is None:
        return ConditionReport(
            distinct_ok,
            None,
            ("no ordered grouping satisfies the vanishing constraints",),
        )
    one_based = tuple(tuple(i + 1 for i in group) for group in grouping)
    return ConditionReport(distinct_ok, one_based, ())


class VanishingReport(NamedTuple):
    holds: bool
    failing_coset: LabeledSetPartition | None
    degree1_dim: int


def _require_block_match(lam: LabeledComposition, table: HomTable) -> None:
    if lam.k != table.k:
        raise ShapeMismatchError(f"{lam.k} blocks but the table has {table.k}")


def offdiagonal_ext1_vanishing(
    lam: Sequence[int], table: HomTable, max_cosets: int = MAX_COSETS
) -> VanishingReport:
    """Check that every nontrivial coset contributes zero in degree 1.

    Per coset the degree-1 dimension factors through positions: a sum over
    positions of ext1 at that position times hom at all others, with the
    block of each position on the left and the coset label on the right.
    Returns the first violating coset with its dimension, if any.
    """
    lam = LabeledComposition(lam)
    _require_block_match(lam, table)
    count = index_p(lam)
    if count > max_cosets:
        raise SizeLimitError(f"{count} cosets exceed the bound {max_cosets}")
    ident = lam.identity_labels()
    n = lam.n
    hom, ext1 = table.hom, table.ext1
    for labels in _label_tuples(tuple(lam)):
        if labels == ident:
            continue
        h = [hom[ident[p] - 1][labels[p] - 1] for p in range(n)]
        zeros = h.count(0)
        if zeros >= 2:
            continue
        e = [ext1[ident[p] - 1][labels[p] - 1] for p in range(n)]
        if zeros == 1:
            p0 = h.index(0)
            deg1 = e[p0] * prod(h[p] for p in range(n) if p != p0)
        else:
            full = prod(h)
            deg1 = sum(e[p] * (full // h[p]) for p in range(n))
        if deg1:
            return VanishingReport(False, LabeledSetPartition(labels), deg1)
    return VanishingReport(True, None, 0)


@dataclass(frozen=True)
class EndDims:
    """Equivariant self-Hom and self-Ext^1 dimensions of an induced bundle.

    end1 is always the identity-coset contribution (per-block multiplicity
    times self-extension count, summed); offdiagonal_vanishes reports
    whether that is the whole answer.
    """

    end0: int
    end1: int
    offdiagonal_vanishes: bool
    failing_coset: LabeledSetPartition | None


def _require_simple_diagonal(table: HomTable) -> None:
    for i in range(table.k):
        if table.hom[i][i] != 1:
            raise ValueError(
                f"block {i + 1} is not simple (hom[{i + 1}][{i + 1}] = {table.hom[i][i]})"
            )


def equivariant_end_dims(
    spec: BundleSpec, table: HomTable, max_cosets: int = MAX_COSETS
) -> EndDims:
    """Equivariant End dimensions in degrees 0 and 1.

    Degree 0 is 1 (simple blocks, one irreducible per block).  Degree 1 from
    the identity coset weighs each block's self-extension count by the
    multiplicity of its representation inside permutation-module times
    itself, which is 1 exactly for rectangular diagrams.  When some
    off-diagonal coset survives in degree 1 the flag is lowered and the
    returned end1 is only the identity-coset part.
    """
    _require_block_match(spec.lam, table)
    _require_simple_diagonal(table)
    end1 = sum(
        standard_tensor_multiplicity(blk.rep) * table.ext1[i][i]
        for i, blk in enumerate(spec.blocks)
    )
    vanishing = offdiagonal_ext1_vanishing(spec.lam, table, max_cosets)
    return EndDims(1, end1, vanishing.holds, vanishing.failing_coset)


def moduli_component_dim(
    table: HomTable, spec: BundleSpec, max_cosets: int = MAX_COSETS
) -> int:
    """Dimension of the moduli component traced out by the construction.

    The image dimension (sum of self-extension counts) must equal the
    tangent dimension (multiplicity-weighted sum); they agree exactly when
    every block representation is rectangular, otherwise a mismatch error
    carrying both numbers is raised.
    """
    _require_block_match(spec.lam, table)
    _require_simple_diagonal(table)
    vanishing = offdiagonal_ext1_vanishing(spec.lam, table, max_cosets)
    if not vanishing.holds:
        raise ValueError(
            f"off-diagonal Ext^1 survives on coset {tuple(vanishing.failing_coset)}; "
            "the tangent space is not under control"
        )
    image_dim = sum(table.end1_self)
    tangent_dim = sum(
        standard_tensor_multiplicity(blk.rep) * table.ext1[i][i]
        for i, blk in enumerate(spec.blocks)
    )
    if image_dim != tangent_dim:
        raise ModuliDimensionMismatchError(image_dim, tangent_dim)
    return image_dim


def hom_between(spec_a: BundleSpec, spec_b: BundleSpec, cross: Sequence[Sequence[int]]) -> int:
    """Dimension of Hom between two induced bundles of the same shape.

    cross[i][j] is dim Hom(A_i, B_j) between the block inputs.  The product
    formula needs every off-diagonal cross Hom to vanish; otherwise the
    closed form does not apply and NotApplicableError is raised.
    """
    if spec_a.lam != spec_b.lam:
        raise ValueError(f"compositions differ: {tuple(spec_a.lam)} vs {tuple(spec_b.lam)}")
    for idx, (ba, bb) in enumerate(zip(spec_a.blocks, spec_b.blocks), start=1):
        if ba.rep != bb.rep:
            raise ValueError(f"block {idx} representations differ: {ba.rep} vs {bb.rep}")
    k = spec_a.k
    matrix = _as_matrix(cross, k, "cross hom table")
    for i in range(k):
        for j in range(k):
            if i != j and matrix[i][j]:
                raise NotApplicableError(
                    f"cross hom[{i + 1}][{j + 1}] = {matrix[i][j]} is nonzero; "
                    "the product formula does not apply"
                )
    return prod(matrix[j][j] ** spec_a.lam[j] for j in range(k))


def slope_of_induced(lam: Sequence[int], slopes: Sequence[Fraction | int]) -> Fraction:
    """Slope sum of one coset arrangement: sum of lambda_i * slope_i.

    Every coset rearranges the same multiset of factors, so this sum is the
    same for all of them; that balance is what drives the certificates.
    """
    lam = LabeledComposition(lam)
    slopes = [Fraction(s) for s in slopes]
    if len(slopes) != lam.k:
        raise ShapeMismatchError(f"{len(slopes)} slopes for {lam.k} blocks")
    return sum((size * mu for size, mu in zip(lam, slopes)), Fraction(0))


@dataclass(frozen=True)
class StabilityCertificate:
    """Per-coset witnesses that destabilising maps cannot exist.

    A witness for a coset is a 1-based position whose identity-side factor
    and coset-side factor are non-isomorphic with identity-side slope not
    smaller.  ok means every nontrivial coset has one.
    """

    ok: bool
    witnesses: tuple[tuple[LabeledSetPartition, int], ...]
    failing_coset: LabeledSetPartition | None


def stability_certificate(
    lam: Sequence[int], table: HomTable, max_cosets: int = MAX_COSETS
) -> StabilityCertificate:
    """Find a slope witness on every nontrivial coset, or the first coset
    without one.  With pairwise distinct block labels a witness always
    exists; with repeated labels the slope balance makes every coset that
    only mixes equal-label blocks fail.
    """
    lam = LabeledComposition(lam)
    _require_block_match(lam, table)
    count = index_p(lam)
    if count > max_cosets:
        raise SizeLimitError(f"{count} cosets exceed the bound {max_cosets}")
    ident = lam.identity_labels()
    labels_of = table.iso_labels
    slopes = table.slopes
    witnesses: list[tuple[LabeledSetPartition, int]] = []
    for labels in _label_tuples(tuple(lam)):
        if labels == ident:
            continue
        found = 0
        for p in range(lam.n):
            a, b = ident[p] - 1, labels[p] - 1
            if labels_of[a] != labels_of[b] and slopes[a] >= slopes[b]:
                found = p + 1
                break
        if not found:
            return StabilityCertificate(False, tuple(witnesses), LabeledSetPartition(labels))
        witnesses.append((LabeledSetPartition(labels), found))
    return StabilityCertificate(True, tuple(witnesses), None)
