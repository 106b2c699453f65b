"""Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .exact import DimensionError, IntVector


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.  Floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coefficient {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class LaurentPolynomial:
    """Finite map from exponent vectors to nonzero rational coefficients.

    Instances are immutable; arithmetic returns new polynomials.  Iteration
    over :attr:`terms` is lexicographic in the exponent.
    """

    __slots__ = ("_terms", "_nvars")

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None, nvars: int | None = None):
        clean: dict[IntVector, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if nvars is None:
                nvars = len(exp)
            elif len(exp) != nvars:
                raise DimensionError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            c = parse_rational(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        if nvars is None:
            raise ValueError("number of variables unknown for an empty polynomial")
        self._terms = {m: clean[m] for m in sorted(clean) if clean[m]}
        self._nvars = nvars

    @classmethod
    def monomial(cls, exponent: Iterable[int], coeff=1) -> LaurentPolynomial:
        exponent = tuple(exponent)
        return cls({exponent: coeff}, nvars=len(exponent))

    @classmethod
    def zero(cls, nvars: int) -> LaurentPolynomial:
        return cls({}, nvars=nvars)

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[IntVector, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> list[IntVector]:
        return list(self._terms)

    def coefficient(self, exponent: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: LaurentPolynomial) -> None:
        if other.nvars != self.nvars:
            raise DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return LaurentPolynomial(out, self.nvars)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({m: -c for m, c in self._terms.items()}, self.nvars)

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, k) -> LaurentPolynomial:
        if isinstance(k, float):
            return NotImplemented
        k = Fraction(k)
        return LaurentPolynomial({m: k * c for m, c in self._terms.items()}, self.nvars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms.items():
            mono = "x^(" + ",".join(map(str, m)) + ")"
            parts.append(mono if c == 1 else f"{format_rational(c)}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"exponent": list(m), "coeff": format_rational(c)} for m, c in self._terms.items()]

    @classmethod
    def from_json(cls, terms: list[dict], nvars: int) -> LaurentPolynomial:
        return cls({tuple(t["exponent"]): t["coeff"] for t in terms}, nvars)
