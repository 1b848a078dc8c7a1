"""Fractions p/q classifying 2-bridge closures, in Schubert normal form.

The state of the plat after each syllable is a rational tangle whose slope
is tracked as a column vector (num, den), starting from the 1/0 tangle
formed by the top caps.  A sigma_1 syllable twists the bottom pair of
tangle ends (lower-triangular matrix), a sigma_2 syllable the right pair
(upper-triangular).  Words ending in sigma_2 close as the numerator of the
tangle, words ending in sigma_1 as the denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .braid import BraidWord, Syllable, UnconvertibleWord

# Calibrated against the determinant and Jones oracles; see
# tests/test_twobridge.py::test_calibration_frozen.
SIGMA1_TWIST = -1
SIGMA2_TWIST = 1


class NotAKnotFraction(ValueError):
    """The closure is a two-component link (even or zero numerator)."""


@dataclass(frozen=True, order=True)
class Fraction:
    p: int
    q: int

    def __post_init__(self):
        if self.p <= 0:
            raise ValueError("p must be positive")
        if not 0 <= self.q < self.p or (self.p > 1 and gcd(self.p, self.q) != 1):
            raise ValueError(f"({self.p},{self.q}) is not a reduced fraction with 0 <= q < p")
        if self.p == 1 and self.q != 0:
            raise ValueError("p = 1 requires q = 0")

    @classmethod
    def canonical(cls, p: int, q: int) -> "Fraction":
        """Schubert normal form: q replaced by min(q mod p, q^-1 mod p)."""
        if p == 0:
            raise NotAKnotFraction("p = 0: the closure is a split link")
        if p < 0:
            p, q = -p, -q
        if p == 1:
            return cls(1, 0)
        q %= p
        if gcd(p, q) != 1:
            raise ValueError(f"gcd({p},{q}) != 1")
        return cls(p, min(q, pow(q, -1, p)))

    def __str__(self):
        return f"S({self.p},{self.q})"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, obj: dict) -> "Fraction":
        return cls(int(obj["p"]), int(obj["q"]))


def tangle_vector(syllables: Sequence[Syllable]) -> tuple[int, int]:
    num, den = 1, 0
    for g, e in syllables:
        if g == 1:
            den += SIGMA1_TWIST * e * num
        else:
            num += SIGMA2_TWIST * e * den
    return num, den


def closure_ratio(syllables: Sequence[Syllable], bottom_rule: int | None = None) -> tuple[int, int]:
    """Unreduced (p, q) of the closure; p may be even or zero for links."""
    if bottom_rule is None:
        gens = [g for g, e in syllables if e]
        if not gens:
            raise UnconvertibleWord("empty word")
        bottom_rule = gens[-1]
    num, den = tangle_vector(syllables)
    if bottom_rule == 2:
        return num, den
    # denominator closure of num/den is the numerator closure of -den/num
    return -den, num


def plat_fraction(syllables: Sequence[Syllable], bottom_rule: int | None = None) -> Fraction:
    p, q = closure_ratio(syllables, bottom_rule)
    if p % 2 == 0:
        raise NotAKnotFraction(f"closure is a 2-component link (p = {abs(p)})")
    return Fraction.canonical(p, q)


def word_to_fraction(w: BraidWord) -> Fraction:
    if not w.syllables:
        raise UnconvertibleWord("empty word")
    if w.first_generator != 1:
        raise UnconvertibleWord("word must start with sigma_1")
    return plat_fraction(w.syllables)


def cf_value(a: Sequence[int]) -> tuple[int, int]:
    """a1 + 1/(a2 + 1/(... + 1/an)) as an unreduced pair (num, den)."""
    if not a:
        raise ValueError("empty continued fraction")
    num, den = 1, 0
    for x in reversed(a):
        num, den = x * num + den, num
    return num, den


def cf_to_fraction(a: Sequence[int]) -> Fraction:
    if any(x == 0 for x in a):
        raise ValueError("continued-fraction terms must be nonzero")
    p, q = cf_value(a)
    if p % 2 == 0:
        raise NotAKnotFraction(f"continued fraction gives p = {abs(p)}: not a knot")
    return Fraction.canonical(p, q)


def schubert_equivalent(f1: Fraction, f2: Fraction) -> bool:
    if f1.p != f2.p:
        return False
    p = f1.p
    if p == 1:
        return True
    return (f1.q - f2.q) % p == 0 or (f1.q * f2.q - 1) % p == 0


def continued_fraction(p: int, q: int) -> list[int]:
    """Expansion of p/q with positive terms (q > 0)."""
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return terms


def word_from_cf(terms: Sequence[int]) -> BraidWord:
    """Word sigma_1^a1 sigma_2^-a2 sigma_1^a3 ... for cf terms a1, a2, a3, ..."""
    return BraidWord.of((1 + i % 2, x if i % 2 == 0 else -x) for i, x in enumerate(terms))


def fraction_to_canonical_word(f: Fraction) -> BraidWord:
    if f.p % 2 == 0:
        raise NotAKnotFraction("even p is a link")
    if f.p == 1:
        return BraidWord(((1, 1),))
    for q in (f.q, pow(f.q, -1, f.p)):
        for terms in _odd_expansions(f.p, q):
            w = word_from_cf(terms)
            if len(w) % 2 == 1 and w.first_generator == 1 and word_to_fraction(w) == f:
                return w
    raise AssertionError(f"no odd-length word found for {f}")  # pragma: no cover


def _odd_expansions(p: int, q: int):
    terms = continued_fraction(p, q)
    yield terms if len(terms) % 2 else terms[:-1] + [terms[-1] - 1, 1]
    neg = continued_fraction(p, p - q)
    yield [-x for x in neg] if len(neg) % 2 else [-x for x in neg[:-1] + [neg[-1] - 1, 1]]
