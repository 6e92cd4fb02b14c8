import pytest
from hypothesis import given, strategies as st

from linkgrp.diagram import BLACK, WHITE, compute_regions, parse_diagram
from linkgrp.errors import ContainsX0, NotLoopLike, PreconditionsViolated
from linkgrp.presentation import augmented_dehn
from linkgrp.rewriting import FREE, Step, free_reduce, is_identity, reduce_to_geodesic
from linkgrp.topology import (DOWN, UP, IntersectionSequence, annotate_moves, canonical_word,
                              include_word, is_nontrivial, longitude_word, meridian,
                              normalize_zigzag, parity_changes)
from linkgrp.words import inverse, parse_word as W

from conftest import load_pd

DIAGRAMS = ["trefoil", "fig8", "hopf"]


def test_include_word():
    assert include_word(W("x1")) == W("x1 x0^-1")
    assert include_word(()) == ()
    assert free_reduce(include_word(W("x1 x3^-1"))) == W("x1 x3^-1")
    with pytest.raises(ContainsX0):
        include_word(W("x0"))


dehn_words = st.lists(st.sampled_from([2, -2, 3, -3, 4, -4, 5, -5]), max_size=8).map(tuple)


@given(dehn_words, dehn_words)
def test_include_word_homomorphism(u, v):
    assert free_reduce(include_word(u + v)) == free_reduce(include_word(u) + include_word(v))


def test_canonical_word():
    assert canonical_word(IntersectionSequence(((1, DOWN), (0, UP)))) == W("x1 x0^-1")
    assert canonical_word(IntersectionSequence(())) == ()
    with pytest.raises(NotLoopLike):
        canonical_word(IntersectionSequence(((1, DOWN), (2, DOWN))))
    with pytest.raises(NotLoopLike):
        canonical_word(IntersectionSequence(((1, "sideways"), (2, UP))))


@pytest.mark.parametrize("name", DIAGRAMS)
def test_longitude_parity_law(name):
    d, r = load_pd(name)
    p = augmented_dehn(r, d)
    for i in range(d.components):
        lon = longitude_word(d, r, i, p)
        assert lon.word and lon.parity_changes == 1
        assert free_reduce(lon.word) == lon.word
        assert sorted(lon.word) == sorted(lon.raw_word)


@pytest.mark.parametrize("name", DIAGRAMS)
def test_longitude_commutes_with_meridian(name):
    d, r = load_pd(name)
    p = augmented_dehn(r, d)
    for i in range(d.components):
        lam = longitude_word(d, r, i, p).raw_word
        mu = meridian(d, r, i)
        assert is_identity(p, lam + mu + inverse(lam) + inverse(mu))
        assert not is_identity(p, mu)


def test_trefoil_longitude_nontrivial_in_oracle(model):
    d, r = load_pd("trefoil")
    lam = longitude_word(d, r, 0).raw_word
    assert model.normal_form(lam)


def test_longitude_needs_crossings():
    d = parse_diagram("loops=1")
    with pytest.raises(PreconditionsViolated):
        longitude_word(d, compute_regions(d), 0)


def test_longitude_rejects_reducible_projection():
    d = parse_diagram("X[1,2,2,1]")
    with pytest.raises(PreconditionsViolated):
        longitude_word(d, compute_regions(d), 0)


@pytest.mark.parametrize("name", DIAGRAMS)
def test_is_nontrivial(name):
    d, r = load_pd(name)
    ok, evidence = is_nontrivial(d)
    assert ok and len(evidence) == d.components
    for e in evidence:
        assert e["geodesic"] != "1" and e["parity_changes"] == 1
        assert e["commutes_with_meridian"]
        assert {"component", "longitude_word", "geodesic", "parity_changes"} <= set(e)


def test_normalize_zigzag_shape(trefoil):
    w = W("x1 x4^-1 x2 x0^-1 x3 x4^-1")
    z = normalize_zigzag(trefoil, w)
    assert parity_changes(trefoil, z) == 1
    assert sorted(z) == sorted(w)
    assert [trefoil.parity(a) for a in z][0] == WHITE


def test_annotate_chain_collapse(trefoil):
    _, trace = reduce_to_geodesic(trefoil, W("x1 x0^-1 x3"))
    moves = annotate_moves(trace, trefoil)
    assert [m["move"] for m in moves] == ["type-2", "type-1"]
    assert moves[0]["colour"] == BLACK


def test_annotate_free_and_empty(trefoil):
    assert annotate_moves([]) == []
    trace = [Step(FREE, W("x1 x1^-1"), ())]
    assert [m["move"] for m in annotate_moves(trace)] == ["type-1"]


@pytest.mark.parametrize("name", ["trefoil", "fig8"])
def test_annotation_length_accounting(name):
    import random
    from conftest import load_pres
    p = load_pres(name)
    rng = random.Random(11)
    for _ in range(200):
        w = tuple(rng.choice(p.letters()) for _ in range(rng.randint(0, 12)))
        geo, trace = reduce_to_geodesic(p, w)
        ones = sum(1 for m in annotate_moves(trace, p) if m["move"] == "type-1")
        assert 2 * ones == len(w) - len(geo)
