"""Rank and first Chern class of induced bundles on Hilbert schemes.

A bundle spec fixes a composition lambda = (lambda_1, ..., lambda_k) of n,
one input bundle per block (rank and a first-Chern symbol on the surface)
and one irreducible representation of the symmetric group of each block
size.  The induced object on the Hilbert scheme of n points has an integer
rank and a first Chern class of the form B - R*delta; both are computed by
closed formulas and, independently, by enumerating cosets and taking traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .characters import character, restrict_to_transposition, transposition_type
from .divisors import ClassPolynomial, DivisorClass, RationalPolynomial, poly_mul
from .errors import IntegralityError, SizeLimitError
from .partitions import (
    LabeledComposition,
    MAX_COSETS,
    YoungDiagram,
    _label_tuples,
    dimension,
    enumerate_partitions,
    index_p,
    p_reduced,
)

_ZERO_SYMBOLS = ("", "0")


def _symbol_class(symbol: str) -> DivisorClass:
    if symbol in _ZERO_SYMBOLS:
        return DivisorClass.zero()
    return DivisorClass.symbol(symbol)


@dataclass(frozen=True)
class BundleBlock:
    """One input bundle with the representation attached to its block."""

    rank: int
    c1_symbol: str
    rep: YoungDiagram

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        object.__setattr__(self, "rep", YoungDiagram(self.rep))
        _symbol_class(self.c1_symbol)  # validates the symbol

    @property
    def c1_class(self) -> DivisorClass:
        return _symbol_class(self.c1_symbol)

    @property
    def rep_dim(self) -> int:
        return dimension(self.rep)


@dataclass(frozen=True)
class BundleSpec:
    """Composition of n together with one BundleBlock per part."""

    lam: LabeledComposition
    blocks: tuple[BundleBlock, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", LabeledComposition(self.lam))
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if len(self.blocks) != self.lam.k:
            raise ValueError(
                f"{len(self.blocks)} blocks for a composition with {self.lam.k} parts"
            )
        for idx, (size, blk) in enumerate(zip(self.lam, self.blocks), start=1):
            if blk.rep.n != size:
                raise ValueError(
                    f"block {idx}: rep {tuple(blk.rep)} is not a partition of {size}"
                )

    @classmethod
    def build(
        cls, sizes: Sequence[int], blocks: Iterable[tuple[int, str, Sequence[int]]]
    ) -> BundleSpec:
        return cls(
            LabeledComposition(sizes),
            tuple(BundleBlock(rank, symbol, YoungDiagram(rep)) for rank, symbol, rep in blocks),
        )

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def k(self) -> int:
        return self.lam.k

    @property
    def s(self) -> int:
        """Product of rank_i ** lambda_i (the fibre dimension of one summand)."""
        out = 1
        for size, blk in zip(self.lam, self.blocks):
            out *= blk.rank**size
        return out

    @property
    def w(self) -> int:
        """Product of the representation dimensions."""
        out = 1
        for blk in self.blocks:
            out *= blk.rep_dim
        return out


def rank_G(spec: BundleSpec) -> int:
    """Rank of the induced bundle: (number of cosets) * s * w."""
    return index_p(spec.lam) * spec.s * spec.w


def b_class(spec: BundleSpec) -> DivisorClass:
    """The surface part of the first Chern class (no delta component)."""
    singles, _ = p_reduced(spec.lam)
    sw = spec.s * spec.w
    total = DivisorClass.zero()
    for i, blk in enumerate(spec.blocks, start=1):
        coeff = Fraction(sw * singles[i], blk.rank)
        total = total + blk.c1_class * coeff
    return total.require_integral("b_class")


def r_number(spec: BundleSpec) -> int:
    """Coefficient of -delta in the first Chern class, by the closed formula.

    Cross-block pairs contribute their coset index; same-block pairs weigh
    the second exterior and symmetric binomials by the trivial/sign
    multiplicities of the block representation restricted to a 2-cycle.
    """
    _, pairs = p_reduced(spec.lam)
    total = Fraction(0)
    for (i, j), p in pairs.items():
        if i != j:
            total += p
        else:
            blk = spec.blocks[i - 1]
            alpha, beta = restrict_to_transposition(blk.rep)
            weight = alpha * comb(blk.rank, 2) + beta * comb(blk.rank + 1, 2)
            total += Fraction(p * weight, blk.rank**2 * blk.rep_dim)
    value = spec.s * spec.w * total
    if value.denominator != 1:
        raise IntegralityError(f"r_number came out as {value}")
    return int(value)


def c1(spec: BundleSpec) -> DivisorClass:
    """First Chern class b_class - r_number * delta."""
    return (b_class(spec) + DivisorClass.delta_class(-r_number(spec))).require_integral("c1")


def c1_via_blowup(b: DivisorClass, invariant_rank: int) -> DivisorClass:
    """Assemble the Chern class from the surface part and the rank of the
    sign-twisted restriction to the pairwise diagonal (the blowup route)."""
    return (b + DivisorClass.delta_class(-invariant_rank)).require_integral("c1_via_blowup")


@lru_cache(maxsize=None)
def _same_label_pair_counts(parts: tuple[int, ...]) -> dict[int, int]:
    # Brute-force census: how many cosets give positions 1 and 2 the same
    # label i.  Counted by scanning the enumeration, never by formula.
    counts: dict[int, int] = {}
    for labels in _label_tuples(parts):
        if labels[0] == labels[1]:
            counts[labels[0]] = counts.get(labels[0], 0) + 1
    return counts


def invariant_restriction_rank(spec: BundleSpec, max_cosets: int = MAX_COSETS) -> int:
    """Rank of the invariants of the sign-twisted restriction to the
    pairwise diagonal, via the trace of the swap.

    Independent oracle for r_number: rank = (dim - trace)/2 where dim is the
    full fibre dimension and the trace gets a contribution only from cosets
    fixed by swapping positions 1 and 2 (both positions carrying one label i),
    each worth r_i * (s / r_i^2) * chi_i(transposition) * (w / w_i).
    Returns 0 when n < 2 (there is no pairwise diagonal).
    """
    n = spec.n
    if n < 2:
        return 0
    if index_p(spec.lam) > max_cosets:
        raise SizeLimitError(f"{index_p(spec.lam)} cosets exceed the bound {max_cosets}")
    counts = _same_label_pair_counts(tuple(spec.lam))
    s, w = spec.s, spec.w
    trace = 0
    for i, cnt in counts.items():
        blk = spec.blocks[i - 1]
        # a fixed coset forces at least two copies of label i, so r_i^2 | s
        chi = character(blk.rep, transposition_type(spec.lam[i - 1]))
        trace += cnt * blk.rank * (s // blk.rank**2) * chi * (w // blk.rep_dim)
    dim = rank_G(spec)
    if (dim - trace) % 2:
        raise IntegralityError(f"odd swap trace defect: dim {dim}, trace {trace}")
    return (dim - trace) // 2


def generating_polynomial(
    n: int, inputs: Sequence[tuple[int, str]], variant: str = "trivial"
) -> ClassPolynomial:
    """Chern generating polynomial in one variable per input bundle.

    The coefficient of t_1^{a_1} * ... * t_k^{a_k} with sum a_i = n is the
    first Chern class of the spec whose blocks are the inputs with sizes a_i
    and all-trivial (variant 'trivial') or all-sign (variant 'sign')
    representations.  The delta correction is the rank of the second
    exterior (resp. symmetric) power of the weighted sum of the inputs; the
    plain binomial in the weighted total rank only agrees with it after
    setting every t_i = 1.
    """
    if variant not in ("trivial", "sign"):
        raise ValueError(f"variant must be 'trivial' or 'sign', got {variant!r}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    inputs = list(inputs)
    k = len(inputs)
    if k < 1:
        raise ValueError("at least one input bundle required")
    for rank, symbol in inputs:
        if rank < 1:
            raise ValueError(f"rank must be >= 1, got {rank}")
        _symbol_class(symbol)

    rt = RationalPolynomial.zero(k)
    rt_sq = RationalPolynomial.zero(k)
    c1t = ClassPolynomial.zero(k)
    for i, (rank, symbol) in enumerate(inputs, start=1):
        ti = RationalPolynomial.variable(i, k)
        rt = rt + rank * ti
        rt_sq = rt_sq + rank * poly_mul(ti, ti)
        c1t = c1t + poly_mul(ti, ClassPolynomial.constant(_symbol_class(symbol), k))

    pair_rank = (poly_mul(rt, rt) + (rt_sq if variant == "sign" else -rt_sq)) * Fraction(1, 2)
    main = poly_mul(rt**(n - 1), c1t)
    correction = poly_mul(
        rt ** (n - 2) * pair_rank,
        ClassPolynomial.constant(DivisorClass.delta_class(1), k),
    )
    return main - correction


def regular_checksum(n: int, rank: int, symbol: str) -> DivisorClass:
    """Closed-form total Chern class over all representations of one block.

    Equals n! * rank^(n-1) * c1 - (n!/2) * rank^n * delta, which the
    dimension-weighted sum of c1 over all irreducibles must reproduce.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    base = _symbol_class(symbol) * (factorial(n) * rank ** (n - 1))
    delta_part = DivisorClass.delta_class(-(factorial(n) // 2) * rank**n)
    return (base + delta_part).require_integral("regular_checksum")


def regular_checksum_via_irreps(n: int, rank: int, symbol: str) -> DivisorClass:
    """The same total, assembled irreducible by irreducible (the slow route)."""
    total = DivisorClass.zero()
    for d in enumerate_partitions(n):
        spec = BundleSpec.build((n,), [(rank, symbol, d)])
        total = total + c1(spec) * dimension(d)
    return total
