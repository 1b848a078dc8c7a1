"""Exact Laurent polynomials with integer coefficients in one variable."""

from __future__ import annotations

from typing import Mapping


class LaurentPolynomial:
    """Sparse map exponent -> nonzero integer coefficient.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "t"):
        self._terms = {int(k): int(v) for k, v in (terms or {}).items() if v}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coef: int = 1, var: str = "t") -> "LaurentPolynomial":
        return cls({exp: coef}, var)

    @classmethod
    def const(cls, c: int, var: str = "t") -> "LaurentPolynomial":
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

    def span(self) -> int:
        return self.max_degree() - self.min_degree() if self._terms else 0

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.const(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -v for k, v in self._terms.items()}, self.var)

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
        out: dict[int, int] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (k, v), = self._terms.items()
            if v not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPolynomial({k * n: v ** (-n)}, self.var)
        out = LaurentPolynomial.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by var**k."""
        return LaurentPolynomial({e + k: v for e, v in self._terms.items()}, self.var)

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPolynomial":
        """Replace var by var**k (k may be negative); k=-1 is the bar involution."""
        return LaurentPolynomial({e * k: v for e, v in self._terms.items()}, var or self.var)

    def evaluate(self, x: int):
        from fractions import Fraction
        total = Fraction(0)
        for e, v in self._terms.items():
            total += v * Fraction(x) ** e
        return total.numerator if total.denominator == 1 else total

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.const(other, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"LaurentPolynomial({dict(self.items())!r}, var={self.var!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> list[str]:
        """Sorted ``coef*x^exp`` term strings, ascending exponent."""
        return [f"{c}*{self.var}^{e}" for e, c in self.items()]

    @classmethod
    def from_json(cls, terms: list[str], var: str | None = None) -> "LaurentPolynomial":
        out = {}
        for term in terms:
            coef, mono = term.split("*", 1)
            v, exp = mono.split("^", 1)
            if var is None:
                var = v
            out[int(exp)] = out.get(int(exp), 0) + int(coef)
        return cls(out, var or "t")
