import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from knotadj.adjacency import (AdjacencyWitness, ConstructionError, FamilyParams, SurgerySite,
                               UnknotObstruction, delete_syllable_surgery,
                               generalized_crossing_change, k_beta_family,
                               obstruct_fibered_target, obstruct_pair_adjacency,
                               obstruct_unknot_adjacency, site_is_crossing_circle,
                               tower_extend, verify_two_adjacency)
from knotadj.braid import BraidWord, SiteRef, parse_braid_word, reduce_closure_word
from knotadj.diagram import NotAKnot, two_bridge_closure
from knotadj.invariants import fingerprint
from knotadj.laurent import LaurentPolynomial as LP
from knotadj.twobridge import Fraction

TREFOIL = parse_braid_word("s1^3")
even = st.sampled_from([-4, -2, 2, 4])


def test_family_word_and_sites():
    word, (c1, c2) = k_beta_family(TREFOIL, FamilyParams(1, 1))
    assert word.syllables == ((1, 3), (2, 1), (1, -3), (2, 1), (1, 3))
    assert (c1.site.syllable_index, c1.order) == (1, 1)
    assert (c2.site.syllable_index, c2.order) == (3, 1)


@pytest.mark.parametrize("beta, exc", [
    (parse_braid_word("s1^2 s2"), ConstructionError),
    (parse_braid_word("s2 s1"), ConstructionError),
    (BraidWord(), ConstructionError),
    (parse_braid_word("s1^2"), NotAKnot),
])
def test_family_rejects(beta, exc):
    with pytest.raises(exc):
        k_beta_family(beta, FamilyParams(2, 2))


def test_params_nonzero():
    with pytest.raises(ConstructionError):
        FamilyParams(0, 1)
    with pytest.raises(ValueError):
        SurgerySite(SiteRef(0), 0)


def test_deletion_keeps_caps():
    word, (c1, c2) = k_beta_family(TREFOIL, FamilyParams(1, 1))
    assert delete_syllable_surgery(word, c1).syllables == ((2, 1), (1, 3))
    assert delete_syllable_surgery(word, c2).syllables == ((1, 3),)
    assert delete_syllable_surgery(word, (c1, c2)).syllables == ((1, 3),)
    with pytest.raises(IndexError):
        delete_syllable_surgery(word, SiteRef(9))


def test_generalized_crossing_change():
    w = parse_braid_word("s1^3 s2^4 s1^-3")
    out = generalized_crossing_change(w, SurgerySite(SiteRef(1), 1))
    assert out.syllables == ((1, 3), (2, 6), (1, -3))
    with pytest.raises(ConstructionError):
        generalized_crossing_change(TREFOIL, SurgerySite(SiteRef(0), 1))


def test_trefoil_even_grid_is_adjacency():
    for m in (-2, 2):
        for n in (-2, 2):
            wit = verify_two_adjacency(TREFOIL, FamilyParams(m, n))
            assert wit.verdict and wit.is_adjacency
            assert wit.site_intersections == (0, 0)
            assert all(fp.fraction == Fraction(3, 1) for fp in wit.surgered_fingerprints)
            assert wit.family_fingerprint.fraction != Fraction(3, 1)


def test_odd_cells_are_flagged():
    wit = verify_two_adjacency(TREFOIL, FamilyParams(1, 1))
    assert wit.verdict and not wit.family_is_knot and not wit.is_adjacency
    assert any("link" in n for n in wit.notes)
    wit = verify_two_adjacency(TREFOIL, FamilyParams(2, 1))
    assert wit.family_is_knot and not wit.sites_are_crossing_circles
    assert not wit.deletion_is_twist_surgery


def test_witness_json_roundtrip():
    wit = verify_two_adjacency(TREFOIL, FamilyParams(2, -2))
    back = AdjacencyWitness.from_json(wit.to_json())
    assert back == wit and back.is_adjacency


def test_tower_lengths():
    beta, lengths = TREFOIL, []
    for _ in range(4):
        lengths.append(len(beta))
        beta = tower_extend(beta, FamilyParams(2, 2))
    assert lengths == [1, 5, 17, 53]


def odd_knot(w):
    return len(w) % 2 == 1 and two_bridge_closure(w).n_components == 1


@settings(max_examples=30)
@given(words(max_syllables=5, odd=True, max_crossings=10), even, even)
def test_even_boxes_give_adjacency(beta, m, n):
    if not odd_knot(beta):
        return
    wit = verify_two_adjacency(beta, FamilyParams(m, n))
    assert wit.is_adjacency
    base = wit.base_fingerprint
    assert all(fp.matches(base) for fp in wit.surgered_fingerprints)


@settings(max_examples=30)
@given(words(max_syllables=5, odd=True, max_crossings=10),
       st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool))
def test_parity_law(beta, m, n):
    if not odd_knot(beta):
        return
    family, sites = k_beta_family(beta, FamilyParams(m, n))
    d = two_bridge_closure(family)
    if m % 2 and n % 2:
        assert d.n_components == 2
        return
    assert d.n_components == 1
    crossing = [site_is_crossing_circle(family, s.site) for s in sites]
    if m % 2 == 0 and n % 2 == 0:
        assert crossing == [True, True]
    else:
        # one odd box: the even box's strands run parallel
        assert crossing == [m % 2 == 1, n % 2 == 1]


@settings(max_examples=30)
@given(words(max_syllables=5, odd=True, max_crossings=10), even)
def test_deleting_a_box_is_a_crossing_change(beta, m):
    if not odd_knot(beta):
        return
    family, (c1, _) = k_beta_family(beta, FamilyParams(m, 2))
    deleted = delete_syllable_surgery(family, c1)
    change = generalized_crossing_change(family, SurgerySite(c1.site, -m // 2))
    fp = lambda w: fingerprint(two_bridge_closure(reduce_closure_word(w)))
    assert fp(change) == fp(deleted)


@pytest.mark.parametrize("g, n, delta, out", [
    (1, 2, 1, UnknotObstruction.OBSTRUCTED_GENUS),
    (1, 1, 1, UnknotObstruction.NOT_OBSTRUCTED),
    (2, 3, LP({1: 1, 0: -1, -1: 1}), UnknotObstruction.OBSTRUCTED_ALEXANDER),
    (2, 3, LP.const(1), UnknotObstruction.NOT_OBSTRUCTED),
    (2, 5, 1, UnknotObstruction.OBSTRUCTED_GENUS),
    (3, 2, LP({1: 1, 0: -1, -1: 1}), UnknotObstruction.NOT_OBSTRUCTED),
])
def test_unknot_obstruction(g, n, delta, out):
    assert obstruct_unknot_adjacency(g, n, delta) == out


def test_unknot_obstruction_domain():
    with pytest.raises(ValueError):
        obstruct_unknot_adjacency(0, 2, 1)
    with pytest.raises(ValueError):
        obstruct_unknot_adjacency(1, 0, 1)


@pytest.mark.parametrize("gk, gk2, n, out", [
    (1, 0, 4, True), (1, 0, 3, False), (2, 1, 10, True), (2, 1, 9, False), (1, 1, 100, False),
])
def test_pair_obstruction(gk, gk2, n, out):
    assert obstruct_pair_adjacency(gk, gk2, n) is out


@pytest.mark.parametrize("fibered, gk, gk2, iso, out", [
    (True, 0, 1, False, True),
    (True, 1, 1, True, False),
    (True, 2, 1, False, False),
    (False, 0, 1, False, False),
])
def test_fibered_obstruction(fibered, gk, gk2, iso, out):
    assert obstruct_fibered_target(fibered, gk, gk2, iso) is out
