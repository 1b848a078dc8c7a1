"""Words in the 3-strand braid group B3.

A word is stored as a tuple of syllables ``(generator, exponent)`` with
generator 1 or 2, meaning sigma_1^a1 sigma_2^a2 ...  Words are kept in
normal form: no zero exponents and no two adjacent syllables on the same
generator.  Sign convention: sigma_i with exponent +1 is the right-handed
half twist of strands i and i+1, i.e. a positive crossing when both strands
run downward.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Syllable = tuple[int, int]


class BraidParseError(ValueError):
    pass


class UnconvertibleWord(ValueError):
    pass


def free_normalize(syllables: Iterable[Sequence[int]]) -> tuple[Syllable, ...]:
    """Merge equal neighbours and drop zero exponents, cascading."""
    out: list[list[int]] = []
    for gen, exp in syllables:
        gen, exp = int(gen), int(exp)
        if gen not in (1, 2):
            raise ValueError(f"generator must be 1 or 2, got {gen}")
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([gen, exp])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class BraidWord:
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        syl = tuple((int(g), int(e)) for g, e in self.syllables)
        for i, (g, e) in enumerate(syl):
            if g not in (1, 2):
                raise ValueError(f"generator must be 1 or 2, got {g}")
            if e == 0:
                raise ValueError("zero exponent in normal-form word")
            if i and syl[i - 1][0] == g:
                raise ValueError("adjacent syllables share a generator; use BraidWord.of()")
        object.__setattr__(self, "syllables", syl)

    @classmethod
    def of(cls, syllables: Iterable[Sequence[int]]) -> "BraidWord":
        """Build a word from an arbitrary syllable sequence, normalizing it."""
        return cls(free_normalize(syllables))

    @classmethod
    def from_exponents(cls, exponents: Sequence[int]) -> "BraidWord":
        """Alternating sigma_1, sigma_2, ... starting at sigma_1."""
        if any(int(a) == 0 for a in exponents):
            raise BraidParseError("zero exponent in exponent vector")
        return cls.of((1 + i % 2, a) for i, a in enumerate(exponents))

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __getitem__(self, i):
        return self.syllables[i]

    def __str__(self):
        return format_braid_word(self)

    @property
    def length(self) -> int:
        return len(self.syllables)

    @property
    def crossing_count(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    @property
    def first_generator(self) -> int | None:
        return self.syllables[0][0] if self.syllables else None

    @property
    def last_generator(self) -> int | None:
        return self.syllables[-1][0] if self.syllables else None

    def exponents(self) -> list[int]:
        return [e for _, e in self.syllables]

    def to_json(self) -> list[list[int]]:
        return [[g, e] for g, e in self.syllables]


@dataclass(frozen=True)
class SiteRef:
    syllable_index: int

    def check(self, w: BraidWord) -> None:
        if not 0 <= self.syllable_index < len(w):
            raise IndexError(
                f"site {self.syllable_index} out of range for word of length {len(w)}")


_TOKEN = re.compile(r"s([12])(?:\^([+-]?\d+))?$")


def parse_braid_word(text: str) -> BraidWord:
    """Parse ``"s1^3 s2^-2"`` or the exponent-vector form ``"[3,-2]"``."""
    text = text.strip()
    if text.startswith("["):
        try:
            vec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BraidParseError(f"malformed exponent vector: {text!r}") from exc
        if not isinstance(vec, list) or not all(
                isinstance(a, int) and not isinstance(a, bool) for a in vec):
            raise BraidParseError(f"exponent vector must be a list of integers: {text!r}")
        return BraidWord.from_exponents(vec)
    syllables = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise BraidParseError(f"unknown token {tok!r}")
        syllables.append((int(m.group(1)), int(m.group(2)) if m.group(2) else 1))
    return BraidWord.of(syllables)


def format_braid_word(w: BraidWord) -> str:
    return " ".join(f"s{g}" if e == 1 else f"s{g}^{e}" for g, e in w.syllables)


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(tuple((g, -e) for g, e in reversed(w.syllables)))


def concat(*words: BraidWord) -> BraidWord:
    return BraidWord.of(s for w in words for s in w.syllables)


def mirror(w: BraidWord) -> BraidWord:
    return BraidWord(tuple((g, -e) for g, e in w.syllables))


def power(gen: int, exp: int) -> BraidWord:
    return BraidWord.of([(gen, exp)])


def reduce_closure_word(w: BraidWord) -> BraidWord:
    """Apply closure-preserving simplifications until nothing changes.

    Besides free reduction, a leading sigma_2 syllable is dropped: the top
    cap joining strands 2 and 3 untwists it.
    """
    syl = free_normalize(w.syllables)
    while syl and syl[0][0] == 2:
        syl = free_normalize(syl[1:])
    return BraidWord(syl)


def normalize_to_odd_length(w: BraidWord) -> BraidWord:
    """Rewrite an even-length word so it ends on sigma_1, keeping the knot.

    The word's fraction is the continued fraction [a1, -a2, a3, ...] and the
    last term obeys ``[..., c] = [..., c - s, s]`` for ``s = +-1``.  So the
    final sigma_2^a becomes sigma_2^(a + s) sigma_1^s.  With ``|a| >= 2`` we
    take ``s = -sign(a)``, moving one crossing off the last syllable;
    with ``|a| == 1`` we take ``s = sign(a)``, which adds a crossing.
    """
    if not w.syllables:
        raise UnconvertibleWord("empty word")
    if w.first_generator != 1:
        raise UnconvertibleWord("word must start with sigma_1")
    if len(w) % 2 == 1:
        return w
    *head, (_, a) = w.syllables
    s = 1 if a > 0 else -1
    if abs(a) >= 2:
        s = -s
    out = BraidWord.of([*head, (2, a + s), (1, s)])
    if not out.syllables or out.first_generator != 1 or len(out) % 2 == 0:
        raise UnconvertibleWord(f"cannot bring {format_braid_word(w)!r} to odd length")
    return out
