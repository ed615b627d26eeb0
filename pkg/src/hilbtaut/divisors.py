"""Exact divisor-class bookkeeping and sparse polynomials over it.

A DivisorClass is a rational combination of named surface classes plus a
multiple of the exceptional half-diagonal class `delta`.  Polynomials come in
two flavours sharing one term layout, exponent tuple -> coefficient: rational
coefficients (RationalPolynomial) and divisor-class coefficients
(ClassPolynomial).  All arithmetic is exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import IntegralityError, ShapeMismatchError

_SYMBOL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TERM_RE = re.compile(r"^(-?\d+(?:/\d+)?)\*([A-Za-z_][A-Za-z0-9_]*)$")

Rational = int | Fraction


def _frac_to_json(value: Fraction) -> int | str:
    return int(value) if value.denominator == 1 else str(value)


def _frac_from_json(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected integer or 'p/q' string, got {value!r}")
    return Fraction(value)


class DivisorClass:
    """Formal class sum(coeff_s * s for surface symbols s) + coeff * delta.

    Immutable by convention: do not mutate `surface` after construction.
    Symbol names must be identifiers and must not be named 'delta'.
    """

    __slots__ = ("surface", "delta")

    def __init__(self, surface: Mapping[str, Rational] | None = None, delta: Rational = 0):
        clean: dict[str, Fraction] = {}
        for name, coeff in sorted((surface or {}).items()):
            if not _SYMBOL_RE.match(name) or name == "delta":
                raise ValueError(f"invalid surface symbol {name!r}")
            coeff = Fraction(coeff)
            if coeff:
                clean[name] = coeff
        self.surface = clean
        self.delta = Fraction(delta)

    @classmethod
    def zero(cls) -> DivisorClass:
        return cls()

    @classmethod
    def symbol(cls, name: str, coeff: Rational = 1) -> DivisorClass:
        return cls({name: coeff})

    @classmethod
    def delta_class(cls, coeff: Rational = 1) -> DivisorClass:
        return cls(delta=coeff)

    def __add__(self, other: DivisorClass) -> DivisorClass:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        merged = dict(self.surface)
        for name, coeff in other.surface.items():
            merged[name] = merged.get(name, 0) + coeff
        return DivisorClass(merged, self.delta + other.delta)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __neg__(self) -> DivisorClass:
        return self * -1

    def __mul__(self, scalar: Rational) -> DivisorClass:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return DivisorClass(
            {name: coeff * scalar for name, coeff in self.surface.items()},
            self.delta * scalar,
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.surface == other.surface and self.delta == other.delta

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.surface.items())), self.delta))

    def __repr__(self) -> str:
        return f"DivisorClass({self.render_text()!r})"

    @property
    def is_zero(self) -> bool:
        return not self.surface and not self.delta

    @property
    def is_integral(self) -> bool:
        return self.delta.denominator == 1 and all(
            c.denominator == 1 for c in self.surface.values()
        )

    def require_integral(self, context: str = "divisor class") -> DivisorClass:
        if not self.is_integral:
            raise IntegralityError(f"{context} has non-integer coefficients: {self.render_text()}")
        return self

    def render_text(self) -> str:
        """Deterministic text form, e.g. '4*e1 + 4*e2 - 5*delta'."""
        items = sorted(self.surface.items())
        if self.delta:
            items.append(("delta", self.delta))
        if not items:
            return "0"
        pieces = [f"{items[0][1]}*{items[0][0]}"]
        for name, coeff in items[1:]:
            sign, mag = ("-", -coeff) if coeff < 0 else ("+", coeff)
            pieces.append(f"{sign} {mag}*{name}")
        return " ".join(pieces)

    @classmethod
    def parse_text(cls, text: str) -> DivisorClass:
        """Inverse of render_text (whitespace-insensitive between terms)."""
        tokens = text.split()
        if tokens == ["0"]:
            return cls.zero()
        if not tokens:
            raise ValueError("empty divisor-class expression")
        surface: dict[str, Fraction] = {}
        delta = Fraction(0)
        sign = 1
        expect_term = True
        for tok in tokens:
            if not expect_term:
                if tok == "+":
                    sign = 1
                elif tok == "-":
                    sign = -1
                else:
                    raise ValueError(f"expected '+' or '-', got {tok!r}")
                expect_term = True
                continue
            m = _TERM_RE.match(tok)
            if not m:
                raise ValueError(f"malformed term {tok!r}")
            coeff = sign * Fraction(m.group(1))
            name = m.group(2)
            if name == "delta":
                delta += coeff
            else:
                surface[name] = surface.get(name, 0) + coeff
            sign = 1
            expect_term = False
        if expect_term:
            raise ValueError(f"dangling operator in {text!r}")
        return cls(surface, delta)

    def to_json_dict(self) -> dict:
        return {
            "surface": {name: _frac_to_json(c) for name, c in sorted(self.surface.items())},
            "delta": _frac_to_json(self.delta),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> DivisorClass:
        if not isinstance(data, Mapping):
            raise ValueError(f"expected an object, got {data!r}")
        unknown = set(data) - {"surface", "delta"}
        if unknown:
            raise ValueError(f"unknown divisor-class keys {sorted(unknown)}")
        surface = data.get("surface", {})
        if not isinstance(surface, Mapping):
            raise ValueError("'surface' must be an object")
        return cls(
            {name: _frac_from_json(v) for name, v in surface.items()},
            _frac_from_json(data.get("delta", 0)),
        )


def _check_exponents(nvars: int, expts: Sequence[int]) -> tuple[int, ...]:
    t = tuple(int(e) for e in expts)
    if len(t) != nvars:
        raise ShapeMismatchError(f"exponent tuple {t} does not have arity {nvars}")
    if any(e < 0 for e in t):
        raise ValueError(f"negative exponent in {t}")
    return t


class RationalPolynomial:
    """Sparse polynomial in t_1..t_nvars with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Rational] | None = None):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], Fraction] = {}
        for expts, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[_check_exponents(self.nvars, expts)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> RationalPolynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, value: Rational, nvars: int) -> RationalPolynomial:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> RationalPolynomial:
        """The monomial t_index (1-based)."""
        if not 1 <= index <= nvars:
            raise IndexError(f"variable index {index} out of range 1..{nvars}")
        expts = tuple(1 if i == index - 1 else 0 for i in range(nvars))
        return cls(nvars, {expts: 1})

    def _require_same_arity(self, other) -> None:
        if self.nvars != other.nvars:
            raise ShapeMismatchError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        self._require_same_arity(other)
        merged = dict(self.terms)
        for expts, coeff in other.terms.items():
            merged[expts] = merged.get(expts, 0) + coeff
        return RationalPolynomial(self.nvars, merged)

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (other * -1)

    def __neg__(self) -> RationalPolynomial:
        return self * -1

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(
                self.nvars, {e: c * other for e, c in self.terms.items()}
            )
        if isinstance(other, (RationalPolynomial, ClassPolynomial)):
            return poly_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> RationalPolynomial:
        if exponent < 0:
            raise ValueError(f"negative power {exponent}")
        out = RationalPolynomial.constant(1, self.nvars)
        for _ in range(exponent):
            out = poly_mul(self, out)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self) -> str:
        return f"RationalPolynomial({self.nvars}, {self.terms})"

    def coefficient(self, expts: Sequence[int]) -> Fraction:
        return self.terms.get(_check_exponents(self.nvars, expts), Fraction(0))

    def at_ones(self) -> Fraction:
        """Evaluate at t_1 = ... = t_nvars = 1."""
        return sum(self.terms.values(), Fraction(0))


class ClassPolynomial:
    """Sparse polynomial whose coefficients are DivisorClass values."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], DivisorClass] | None = None):
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], DivisorClass] = {}
        for expts, cls_val in (terms or {}).items():
            if not isinstance(cls_val, DivisorClass):
                raise ValueError(f"coefficient of {tuple(expts)} is not a DivisorClass")
            if not cls_val.is_zero:
                clean[_check_exponents(self.nvars, expts)] = cls_val
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> ClassPolynomial:
        return cls(nvars)

    @classmethod
    def constant(cls, value: DivisorClass, nvars: int) -> ClassPolynomial:
        return cls(nvars, {(0,) * nvars: value})

    def _require_same_arity(self, other) -> None:
        if self.nvars != other.nvars:
            raise ShapeMismatchError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: ClassPolynomial) -> ClassPolynomial:
        if not isinstance(other, ClassPolynomial):
            return NotImplemented
        self._require_same_arity(other)
        merged = dict(self.terms)
        for expts, val in other.terms.items():
            merged[expts] = merged.get(expts, DivisorClass.zero()) + val
        return ClassPolynomial(self.nvars, merged)

    def __sub__(self, other: ClassPolynomial) -> ClassPolynomial:
        return self + other.scale(-1)

    def scale(self, scalar: Rational) -> ClassPolynomial:
        return ClassPolynomial(
            self.nvars, {e: v * scalar for e, v in self.terms.items()}
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, RationalPolynomial):
            return poly_mul(other, self)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __repr__(self) -> str:
        return f"ClassPolynomial({self.nvars}, {len(self.terms)} terms)"

    def coefficient_of(self, expts: Sequence[int]) -> DivisorClass:
        return self.terms.get(_check_exponents(self.nvars, expts), DivisorClass.zero())

    def at_ones(self) -> DivisorClass:
        """Sum of all coefficients (evaluation at every t_i = 1)."""
        total = DivisorClass.zero()
        for val in self.terms.values():
            total = total + val
        return total

    def render_text(self) -> str:
        """One line per monomial, highest exponent tuple first."""
        if not self.terms:
            return "0"
        lines = []
        for expts in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"t{i + 1}^{e}" if e > 1 else f"t{i + 1}"
                for i, e in enumerate(expts)
                if e
            ) or "1"
            lines.append(f"{mono}: {self.terms[expts].render_text()}")
        return "\n".join(lines)


def poly_mul(p: RationalPolynomial, q: RationalPolynomial | ClassPolynomial):
    """Product of a rational polynomial with a polynomial of either kind.

    Returns the same kind as q.
    """
    if not isinstance(p, RationalPolynomial):
        raise ValueError("left factor must be a RationalPolynomial")
    if p.nvars != q.nvars:
        raise ShapeMismatchError(f"arity mismatch: {p.nvars} vs {q.nvars}")
    if isinstance(q, RationalPolynomial):
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return RationalPolynomial(p.nvars, out)
    if isinstance(q, ClassPolynomial):
        cls_out: dict[tuple[int, ...], DivisorClass] = {}
        for e1, c1 in p.terms.items():
            for e2, v2 in q.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                cls_out[key] = cls_out.get(key, DivisorClass.zero()) + v2 * c1
        return ClassPolynomial(p.nvars, cls_out)
    raise ValueError(f"cannot multiply by {type(q).__name__}")


def binom_poly(p: RationalPolynomial, shift: int) -> RationalPolynomial:
    """p*(p-1)/2 for shift 0, p*(p+1)/2 for shift 1, exactly."""
    if shift not in (0, 1):
        raise ValueError(f"shift must be 0 or 1, got {shift}")
    linear = p if shift else p * -1
    return (poly_mul(p, p) + linear) * Fraction(1, 2)
