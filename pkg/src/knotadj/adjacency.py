"""The K_beta(m,n) family, twist surgery on its sites, and adjacency obstructions.

K_beta(m,n) is the 2-bridge closure of beta s2^m beta^-1 s2^n beta.  Surgery
on the crossing circle around either sigma_2 box is modelled, as in the
construction, by deleting that box from the word.  Everything that is
claimed about a family member is checked on diagrams: the surgered closures
are fingerprinted from the plat with the box removed and the original caps
kept, not from the simplified word.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .braid import (BraidWord, SiteRef, concat, free_normalize, invert, power,
                    reduce_closure_word)
from .diagram import NotAKnot, plat_diagram, site_algebraic_intersection, two_bridge_closure
from .invariants import Fingerprint, fingerprint


class ConstructionError(ValueError):
    pass


class CosmeticFlag(str, enum.Enum):
    TRIVIALIZABLE = "trivializable"
    COSMETIC = "cosmetic"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FamilyParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m == 0 or self.n == 0:
            raise ConstructionError("m and n must be nonzero")


@dataclass(frozen=True)
class SurgerySite:
    site: SiteRef
    order: int

    def __post_init__(self):
        if self.order == 0:
            raise ValueError("surgery order must be nonzero")


def _check_base(beta: BraidWord) -> None:
    if not beta.syllables or beta.first_generator != 1:
        raise ConstructionError("beta must be nonempty and start with sigma_1")
    if len(beta) % 2 == 0:
        raise ConstructionError(
            f"beta has even length {len(beta)}; apply normalize_to_odd_length first")
    if two_bridge_closure(beta).n_components != 1:
        raise NotAKnot("the closure of beta is a 2-component link")


def k_beta_family(beta: BraidWord, params: FamilyParams) -> tuple[BraidWord, tuple[SurgerySite, SurgerySite]]:
    _check_base(beta)
    word = concat(beta, power(2, params.m), invert(beta), power(2, params.n), beta)
    L = len(beta)
    # beta and beta^-1 both start and end on sigma_1, so nothing merges
    assert len(word) == 3 * L + 2
    assert word[L] == (2, params.m) and word[2 * L + 1] == (2, params.n)
    sites = (SurgerySite(SiteRef(L), params.m), SurgerySite(SiteRef(2 * L + 1), params.n))
    return word, sites


def _renormalize_keeping_caps(raw, bottom_rule: int) -> BraidWord:
    """Free-normalize a surgered sequence without changing its closure.

    If reduction exposes a final sigma_2 while the diagram closes with the
    sigma_1 caps (0-1, 2-3), that syllable is untwisted by the 2-3 cap and
    dropped.  The converse case cannot be expressed by a normal-form word.
    """
    syl = free_normalize(raw)
    if bottom_rule == 1:
        while syl and syl[-1][0] == 2:
            syl = free_normalize(syl[:-1])
    elif syl and syl[-1][0] != 2:
        raise ConstructionError("surgery result needs the sigma_2 bottom caps "
                                "but no longer ends in sigma_2")
    return BraidWord(syl)


def delete_syllable_surgery(w: BraidWord, s: SiteRef | SurgerySite | tuple) -> BraidWord:
    """Remove one or more syllables, renormalizing with the original caps."""
    sites = s if isinstance(s, tuple) else (s,)
    idx = set()
    for site in sites:
        ref = site.site if isinstance(site, SurgerySite) else site
        ref.check(w)
        idx.add(ref.syllable_index)
    raw = [syl for i, syl in enumerate(w.syllables) if i not in idx]
    return _renormalize_keeping_caps(raw, w.last_generator)


def surgered_diagram(w: BraidWord, sites):
    raw = [syl for i, syl in enumerate(w.syllables)
           if i not in {x.site.syllable_index if isinstance(x, SurgerySite) else x.syllable_index
                        for x in sites}]
    return plat_diagram(raw, bottom_rule=w.last_generator)


def site_is_crossing_circle(w: BraidWord, s: SiteRef) -> bool:
    """True when a disk around the syllable's two strands has intersection 0.

    On a two-component closure the two strands may belong to different
    components; orientations can then be chosen to make the count vanish.
    """
    d = two_bridge_closure(w)
    if d.n_components == 1:
        return site_algebraic_intersection(d, s) == 0
    left, right = d.site_components[s.syllable_index]
    return left != right or site_algebraic_intersection(d, s) == 0


def generalized_crossing_change(w: BraidWord, s: SurgerySite) -> BraidWord:
    """Order-d change: d full twists, i.e. the site's exponent grows by 2d."""
    s.site.check(w)
    if not site_is_crossing_circle(w, s.site):
        d = two_bridge_closure(w)
        raise ConstructionError(
            f"site {s.site.syllable_index} has algebraic intersection "
            f"{site_algebraic_intersection(d, s.site)}; not a crossing circle")
    i = s.site.syllable_index
    g, e = w[i]
    raw = list(w.syllables)
    raw[i] = (g, e + 2 * s.order)
    return _renormalize_keeping_caps(raw, w.last_generator)


@dataclass(frozen=True)
class AdjacencyWitness:
    base_word: BraidWord
    params: FamilyParams
    family_word: BraidWord
    sites: tuple[SurgerySite, SurgerySite]
    base_fingerprint: Fingerprint
    family_fingerprint: Fingerprint
    # surgery on C1 only, C2 only, both
    surgered_words: tuple[BraidWord, BraidWord, BraidWord]
    surgered_fingerprints: tuple[Fingerprint, Fingerprint, Fingerprint]
    site_intersections: Optional[tuple[int, int]]
    verdict: bool
    cosmetic_flag: CosmeticFlag = CosmeticFlag.TRIVIALIZABLE
    notes: tuple[str, ...] = field(default=())

    @property
    def family_is_knot(self) -> bool:
        return self.family_fingerprint.component_count == 1

    @property
    def sites_are_crossing_circles(self) -> bool:
        return self.site_intersections == (0, 0)

    @property
    def deletion_is_twist_surgery(self) -> bool:
        """Deleting s2^k is an order -k/2 change only for even k."""
        return self.params.m % 2 == 0 and self.params.n % 2 == 0

    @property
    def is_adjacency(self) -> bool:
        """Verdict plus the hypotheses the construction needs to be a 2-adjacency."""
        return (self.verdict and self.family_is_knot and self.sites_are_crossing_circles
                and self.deletion_is_twist_surgery)

    def to_json(self) -> dict:
        return {
            "base_word": self.base_word.to_json(),
            "params": {"m": self.params.m, "n": self.params.n},
            "family_word": self.family_word.to_json(),
            "sites": [{"syllable": s.site.syllable_index, "order": s.order} for s in self.sites],
            "base_fingerprint": self.base_fingerprint.to_json(),
            "family_fingerprint": self.family_fingerprint.to_json(),
            "surgered": [
                {"subset": subset, "word": w.to_json(), "fingerprint": fp.to_json()}
                for subset, w, fp in zip(("C1", "C2", "C1+C2"), self.surgered_words,
                                         self.surgered_fingerprints)
            ],
            "site_intersections": list(self.site_intersections) if self.site_intersections else None,
            "verdict": self.verdict,
            "family_is_knot": self.family_is_knot,
            "sites_are_crossing_circles": self.sites_are_crossing_circles,
            "deletion_is_twist_surgery": self.deletion_is_twist_surgery,
            "is_adjacency": self.is_adjacency,
            "cosmetic_flag": self.cosmetic_flag.value,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AdjacencyWitness":
        sites = tuple(SurgerySite(SiteRef(s["syllable"]), s["order"]) for s in obj["sites"])
        sur = obj["surgered"]
        return cls(
            base_word=BraidWord.of(obj["base_word"]),
            params=FamilyParams(obj["params"]["m"], obj["params"]["n"]),
            family_word=BraidWord.of(obj["family_word"]),
            sites=sites,
            base_fingerprint=Fingerprint.from_json(obj["base_fingerprint"]),
            family_fingerprint=Fingerprint.from_json(obj["family_fingerprint"]),
            surgered_words=tuple(BraidWord.of(x["word"]) for x in sur),
            surgered_fingerprints=tuple(Fingerprint.from_json(x["fingerprint"]) for x in sur),
            site_intersections=(tuple(obj["site_intersections"])
                                if obj.get("site_intersections") else None),
            verdict=obj["verdict"],
            cosmetic_flag=CosmeticFlag(obj.get("cosmetic_flag", "unknown")),
            notes=tuple(obj.get("notes", ())),
        )


def verify_two_adjacency(beta: BraidWord, params: FamilyParams,
                         alexander_cap: int | None = None) -> AdjacencyWitness:
    family, sites = k_beta_family(beta, params)
    base_fp = fingerprint(two_bridge_closure(beta), alexander_cap)
    fam_d = two_bridge_closure(family)
    fam_fp = fingerprint(fam_d, alexander_cap)
    inter = None
    if fam_d.n_components == 1:
        inter = tuple(site_algebraic_intersection(fam_d, s.site) for s in sites)

    subsets = ((sites[0],), (sites[1],), sites)
    words, fps = [], []
    for subset in subsets:
        word = reduce_closure_word(delete_syllable_surgery(family, tuple(s.site for s in subset)))
        fp = fingerprint(surgered_diagram(family, subset), alexander_cap)
        words.append(word)
        fps.append(fp)
    verdict = all(fp.matches(base_fp) for fp in fps)

    notes = []
    if fam_d.n_components != 1:
        notes.append("family closure is a 2-component link")
    elif inter != (0, 0):
        notes.append(f"site algebraic intersections {inter}: not both crossing circles")
    if params.m % 2 or params.n % 2:
        notes.append("odd box: deletion is not a full-twist surgery")
    if fam_d.n_components == 1 and fam_fp.matches(base_fp):
        notes.append("family knot is isotopic to the base knot")
    return AdjacencyWitness(
        base_word=beta,
        params=params,
        family_word=family,
        sites=sites,
        base_fingerprint=base_fp,
        family_fingerprint=fam_fp,
        surgered_words=tuple(words),
        surgered_fingerprints=tuple(fps),
        site_intersections=inter,
        verdict=verdict,
        cosmetic_flag=CosmeticFlag.TRIVIALIZABLE if base_fp.fraction else CosmeticFlag.UNKNOWN,
        notes=tuple(notes),
    )


def tower_extend(beta_i: BraidWord, params_i: FamilyParams) -> BraidWord:
    word, _ = k_beta_family(beta_i, params_i)
    return word


class UnknotObstruction(str, enum.Enum):
    OBSTRUCTED_GENUS = "obstructed_genus"
    OBSTRUCTED_ALEXANDER = "obstructed_alexander"
    NOT_OBSTRUCTED = "not_obstructed"


def obstruct_unknot_adjacency(g: int, n: int, delta) -> UnknotObstruction:
    """Can a nontrivial knot of genus g be n-adjacent to the unknot?

    ``not_obstructed`` only means neither test applies.
    """
    if g < 1:
        raise ValueError("genus must be >= 1 (the unknot is outside the predicate's domain)")
    if n < 1:
        raise ValueError("adjacency order must be >= 1")
    if n >= 3 * g - 1:
        return UnknotObstruction.OBSTRUCTED_GENUS
    if n >= 3 and delta != 1:
        return UnknotObstruction.OBSTRUCTED_ALEXANDER
    return UnknotObstruction.NOT_OBSTRUCTED


def obstruct_pair_adjacency(g_k: int, g_k2: int, n: int) -> bool:
    """True when K ->n K' is impossible because g(K) > g(K') and n > 6 g(K) - 3."""
    if n < 1:
        raise ValueError("adjacency order must be >= 1")
    return g_k > g_k2 and n > 6 * g_k - 3


def obstruct_fibered_target(target_fibered: bool, g_k: int, g_k2: int, isotopic: bool) -> bool:
    # a fibered target forces K isotopic to K' or g(K) > g(K')
    return bool(target_fibered and not isotopic and g_k <= g_k2)
