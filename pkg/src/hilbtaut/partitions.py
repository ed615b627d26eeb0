"""Integer partitions, labeled compositions and Young-subgroup cosets.

The combinatorial layer everything else sits on: partitions of n in a fixed
deterministic order, Young diagrams with their hook-length dimension, and the
right cosets of a Young subgroup of the symmetric group, realised as labeled
set partitions of the positions 1..n.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import SizeLimitError

# Default safety bounds; every enumeration takes an explicit override.
MAX_PARTITION_N = 14
MAX_COSETS = 10**6


class Partition(tuple):
    """A partition: non-increasing tuple of positive integers.

    The empty partition (of 0) is allowed; it shows up as the result of
    reducing small compositions.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        t = tuple(int(p) for p in parts)
        if t and t[-1] < 1:
            raise ValueError(f"partition parts must be positive, got {t}")
        for a, b in zip(t, t[1:]):
            if a < b:
                raise ValueError(f"partition parts must be non-increasing, got {t}")
        return super().__new__(cls, t)

    @property
    def n(self) -> int:
        return sum(self)


# A Young diagram is a partition used as a shape (rows of cells).
YoungDiagram = Partition


class LabeledComposition(tuple):
    """Ordered block sizes (lambda_1, ..., lambda_k), every entry positive.

    Unlike a partition the order is significant: block j owns the positions
    I_j = [1 + sum(lambda_i, i < j), sum(lambda_i, i <= j)], in order.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]):
        t = tuple(int(p) for p in parts)
        if any(p < 1 for p in t):
            raise ValueError(f"composition parts must be positive, got {t}")
        return super().__new__(cls, t)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def k(self) -> int:
        return len(self)

    def partition(self) -> Partition:
        """The underlying partition (parts re-sorted non-increasingly)."""
        return Partition(sorted(self, reverse=True))

    def block_ranges(self) -> list[range]:
        """1-based position ranges of the blocks, in block order."""
        out = []
        start = 1
        for p in self:
            out.append(range(start, start + p))
            start += p
        return out

    def identity_labels(self) -> tuple[int, ...]:
        return tuple(j + 1 for j, p in enumerate(self) for _ in range(p))


class LabeledSetPartition(tuple):
    """One block label (1-based) per position; entry p-1 labels position p.

    Represents a right coset of the Young subgroup for a composition lambda:
    the coset of g assigns position p the label of the block containing g(p).
    """

    __slots__ = ()

    @property
    def is_identity(self) -> bool:
        """True for the coset of the subgroup itself (labels non-decreasing)."""
        return all(a <= b for a, b in zip(self, self[1:]))

    def label_of(self, position: int) -> int:
        """Label of a 1-based position."""
        if not 1 <= position <= len(self):
            raise IndexError(f"position {position} out of range 1..{len(self)}")
        return self[position - 1]

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for lab in self:
            out[lab] = out.get(lab, 0) + 1
        return out


@lru_cache(maxsize=None)
def _partitions_desc(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, max_n: int = MAX_PARTITION_N) -> list[Partition]:
    """All partitions of n, in descending lexicographic order.

    The first entry is (n), the last is (1,)*n.  The order is the canonical
    enumeration order used throughout the package.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > max_n:
        raise SizeLimitError(f"n = {n} exceeds the partition bound {max_n}")
    return [Partition(p) for p in _partitions_desc(n, n)]


def conjugate(d: Sequence[int]) -> Partition:
    """Transpose of a Young diagram."""
    d = Partition(d)
    if not d:
        return d
    return Partition(sum(1 for row in d if row > j) for j in range(d[0]))


def is_rectangular(d: Sequence[int]) -> bool:
    """True iff the diagram has at most one distinct part length."""
    return len(set(Partition(d))) <= 1


def dimension(d: Sequence[int]) -> int:
    """Number of standard tableaux of the shape, by the hook-length formula."""
    d = Partition(d)
    if d.n == 0:
        return 1
    conj = conjugate(d)
    hooks = prod(
        (row - j) + (conj[j] - i) - 1 for i, row in enumerate(d) for j in range(row)
    )
    q, rem = divmod(factorial(d.n), hooks)
    assert rem == 0, f"hook product {hooks} does not divide {d.n}!"
    return q


def count_standard_tableaux(d: Sequence[int]) -> int:
    """Count standard tableaux by brute-force growth of the shape.

    Independent of the hook-length formula: cells are added one at a time,
    keeping row lengths weakly decreasing, and complete growth paths are
    counted.  Meant for small shapes (the call count equals the answer).
    """
    d = Partition(d)
    rows = [0] * len(d)

    def grow(placed: int) -> int:
        if placed == d.n:
            return 1
        total = 0
        for i in range(len(d)):
            if rows[i] < d[i] and (i == 0 or rows[i] < rows[i - 1]):
                rows[i] += 1
                total += grow(placed + 1)
                rows[i] -= 1
        return total

    return grow(0)


def multinomial_index(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(parts!); the index of a Young subgroup."""
    return factorial(sum(parts)) // prod(factorial(p) for p in parts)


def index_p(lam: Sequence[int]) -> int:
    """Number of right cosets of the Young subgroup of a composition."""
    return multinomial_index(LabeledComposition(lam))


def reduce_once(lam: Sequence[int], i: int) -> Partition:
    """Decrement block i (1-based), drop zero parts, re-sort canonically."""
    lam = LabeledComposition(lam)
    if not 1 <= i <= lam.k:
        raise IndexError(f"block index {i} out of range 1..{lam.k}")
    parts = list(lam)
    parts[i - 1] -= 1
    return Partition(sorted((p for p in parts if p), reverse=True))


def reduce_twice(lam: Sequence[int], i: int, j: int) -> Partition:
    """Decrement blocks i and j (i == j takes 2 from one block; needs size >= 2)."""
    lam = LabeledComposition(lam)
    for idx in (i, j):
        if not 1 <= idx <= lam.k:
            raise IndexError(f"block index {idx} out of range 1..{lam.k}")
    parts = list(lam)
    if i == j:
        if parts[i - 1] < 2:
            raise ValueError(f"block {i} has size {parts[i - 1]} < 2")
        parts[i - 1] -= 2
    else:
        parts[i - 1] -= 1
        parts[j - 1] -= 1
    return Partition(sorted((p for p in parts if p), reverse=True))


def p_reduced(lam: Sequence[int]) -> tuple[dict[int, int], dict[tuple[int, int], int]]:
    """Index numbers of all single and double reductions of a composition.

    Returns (singles, pairs): singles[i] counts cosets whose position 1 carries
    label i; pairs[(i, j)] (i <= j, with (i, i) present only when block i has
    size >= 2) counts cosets with prescribed labels on positions 1 and 2.
    """
    lam = LabeledComposition(lam)
    singles = {i: multinomial_index(reduce_once(lam, i)) for i in range(1, lam.k + 1)}
    pairs: dict[tuple[int, int], int] = {}
    for i in range(1, lam.k + 1):
        for j in range(i, lam.k + 1):
            if i == j and lam[i - 1] < 2:
                continue
            pairs[(i, j)] = multinomial_index(reduce_twice(lam, i, j))
    return singles, pairs


@lru_cache(maxsize=None)
def _label_tuples(parts: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    # All arrangements of the multiset {1^parts[0], 2^parts[1], ...} in
    # lexicographic order; the identity labeling comes first.
    n = sum(parts)
    k = len(parts)
    counts = list(parts)
    seq: list[int] = []
    out: list[tuple[int, ...]] = []

    def rec() -> None:
        if len(seq) == n:
            out.append(tuple(seq))
            return
        for j in range(k):
            if counts[j]:
                counts[j] -= 1
                seq.append(j + 1)
                rec()
                seq.pop()
                counts[j] += 1

    rec()
    return tuple(out)


def enumerate_cosets(
    lam: Sequence[int], max_cosets: int = MAX_COSETS
) -> list[LabeledSetPartition]:
    """All cosets of the Young subgroup, as labeled set partitions.

    Deterministic lexicographic order on the label tuples; the identity coset
    is the first element.  Raises SizeLimitError before enumerating anything
    when index_p(lam) exceeds the bound.
    """
    lam = LabeledComposition(lam)
    count = index_p(lam)
    if count > max_cosets:
        raise SizeLimitError(f"{count} cosets exceed the bound {max_cosets}")
    return [LabeledSetPartition(t) for t in _label_tuples(tuple(lam))]


def identity_coset(lam: Sequence[int]) -> LabeledSetPartition:
    return LabeledSetPartition(LabeledComposition(lam).identity_labels())
