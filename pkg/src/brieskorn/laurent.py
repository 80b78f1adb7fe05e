"""Exact integer Laurent polynomials in one variable."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPolynomial:
    """Sparse ``sum c_k x^k`` with Python ints and (possibly negative) integer ``k``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None, var: str = "t"):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                e = int(e)
                acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1, var: str = "t") -> "LaurentPolynomial":
        return cls({exponent: coefficient}, var)

    @classmethod
    def constant(cls, c: int, var: str = "t") -> "LaurentPolynomial":
        return cls({0: c}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        return min(self._terms)

    def max_degree(self) -> int:
        return max(self._terms)

    def coefficient(self, e: int) -> int:
        return self._terms.get(e, 0)

    # ring operations -------------------------------------------------
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            m = -n
            return LaurentPolynomial({-e * m: c ** m}, self.var)
        result = LaurentPolynomial({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other}, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # transformations --------------------------------------------------
    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()}, self.var)

    def invert_variable(self) -> "LaurentPolynomial":
        """``p(x) -> p(1/x)``."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()}, self.var)

    def rescale_exponents(self, factor: int, var: str | None = None) -> "LaurentPolynomial":
        """Substitute ``x = y**(1/factor)``; every exponent must divide evenly.

        ``factor`` may be negative, e.g. ``-4`` turns a bracket in ``A`` into
        a polynomial in ``t = A**-4``.
        """
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(e, factor)
            if r:
                raise ValueError(f"exponent {e} not divisible by {factor}")
            out[q] = c
        return LaurentPolynomial(out, var or self.var)

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e - 1: c * e for e, c in self._terms.items() if e}, self.var)

    def __call__(self, x):
        """Exact evaluation; ints and Fractions stay exact."""
        if x == 0 and any(e < 0 for e in self._terms):
            raise ZeroDivisionError("negative power at 0")
        total = 0
        for e, c in self._terms.items():
            total += c * (Fraction(x) ** e if e < 0 else x ** e)
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    # serialization ----------------------------------------------------
    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self.items()]

    @classmethod
    def from_pairs(cls, pairs, var: str = "t") -> "LaurentPolynomial":
        return cls(((e, c) for e, c in pairs), var)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        text = "".join(s + b for s, b in parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.to_pairs()!r}, var={self.var!r})"
