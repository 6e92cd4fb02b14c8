import random

import pytest
from hypothesis import given, settings, strategies as st

from linkgrp.diagram import BLACK, WHITE
from linkgrp.errors import BadParityShape, NotSmallCancellation, ProcessYFailed, StaleOccurrence
from linkgrp.oracle import oracle_equal, oracle_is_identity
from linkgrp.rewriting import (CHAIN, FREE, collapse_chain, cyclic_geodesic,
                               cyclic_geodesic_with_conjugator, dugopolski_is_identity,
                               find_chains, free_reduce, geodesic, is_cyclically_geodesic,
                               is_geodesic, is_identity, process_y, reduce_to_geodesic, switch)
from linkgrp.topology import include_word
from linkgrp.words import format_word, inverse, parse_word as W

from conftest import freely_reduced_words, load_pres


def test_free_reduce_examples():
    assert free_reduce(W("x1 x1^-1")) == ()
    assert free_reduce(W("x3^-1 x4 x0^-1 x2")) == W("x3^-1 x4 x0^-1 x2")
    assert free_reduce(W("x1 x2 x2^-1 x2 x2^-1 x1^-1 x3")) == W("x3")


def test_one_column_chain(trefoil, model):
    w = W("x1 x0^-1 x3")
    (c,) = find_chains(trefoil, w)
    assert c.inner_link_path == W("x4") and len(c) == 1
    assert collapse_chain(w, c) == W("x4")
    assert oracle_is_identity(trefoil, w + inverse(W("x4")), model=model)


def test_fig8_two_column_chain(fig8):
    w = W("x0 x1^-1 x2 x0^-1")
    (c,) = find_chains(fig8, w)
    assert len(c.columns) == 2
    out = collapse_chain(w, c)
    assert out == W("x3 x1^-1") and len(out) == len(w) - 2
    assert oracle_equal(fig8, w, out).answer == "yes"


def test_geodesic_fixture_has_no_chains(trefoil):
    w = W("x3^-1 x4 x0^-1 x2")
    assert find_chains(trefoil, w) == []
    assert geodesic(trefoil, w) == w
    assert cyclic_geodesic(trefoil, w) == w


def test_no_pairs_no_chains(trefoil):
    w = W("x1 x2 x3")
    assert not any(trefoil.is_pair(a, b) for a, b in zip(w, w[1:]))
    assert find_chains(trefoil, w) == []


def test_stale_occurrence(trefoil):
    (c,) = find_chains(trefoil, W("x1 x0^-1 x3"))
    with pytest.raises(StaleOccurrence):
        collapse_chain(W("x2 x1 x0^-1 x3"), c)


def test_identity_examples(trefoil):
    assert is_identity(trefoil, ())
    assert is_identity(trefoil, W("x1 x4^-1 x2 x0^-1"))
    assert not is_identity(trefoil, W("x1"))


def test_reduce_trace(trefoil):
    geo, trace = reduce_to_geodesic(trefoil, W("x1 x0^-1 x3"))
    assert geo == W("x4")
    assert [s.tag for s in trace] == [CHAIN]
    lines = trace.to_jsonl().splitlines()
    assert '"after": "x4"' in lines[0]


def test_requires_small_cancellation():
    with pytest.raises(NotSmallCancellation):
        geodesic(load_pres("nonalt_sc"), W("x1"))


def _random_words(p, n, max_len, seed):
    rng = random.Random(seed)
    letters = p.letters()
    rels = sorted(p.relators)
    out = []
    for _ in range(n):
        if rng.random() < 0.5:
            w = ()
            for _ in range(rng.randint(1, 3)):
                c = tuple(rng.choice(letters) for _ in range(rng.randint(0, 2)))
                w += c + rng.choice(rels) + inverse(c)
        else:
            w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        out.append(w)
    return out


def test_trace_steps_preserve_element(trefoil, model):
    for w in _random_words(trefoil, 300, 8, 1):
        _, trace = reduce_to_geodesic(trefoil, w)
        for s in trace:
            assert model.normal_form(s.before) == model.normal_form(s.after)
            if s.tag == CHAIN:
                assert len(s.after) == len(s.before) - 2


def test_trace_steps_preserve_element_fig8(fig8):
    for w in _random_words(fig8, 40, 6, 2):
        _, trace = reduce_to_geodesic(fig8, w)
        for s in trace:
            assert oracle_equal(fig8, s.before, s.after, max_states=50000).answer != "no"


@pytest.mark.parametrize("name", ["trefoil", "fig8"])
def test_collapse_count_bound(name):
    p = load_pres(name)
    for w in _random_words(p, 200, 12, 3):
        geo, trace = reduce_to_geodesic(p, w)
        collapses = sum(1 for s in trace if s.tag == CHAIN)
        assert collapses <= len(w) // 2
        assert is_geodesic(p, geo)


def test_geodesic_characterization_small(trefoil, model):
    # shorter equal words over the full alphabet, up to length 3
    keys = {}
    for v in freely_reduced_words(trefoil.letters(), 3):
        keys.setdefault(model.normal_form(v), len(v))
    for w in freely_reduced_words(trefoil.letters(), 4):
        shorter = keys.get(model.normal_form(w), 99) < len(w)
        assert is_geodesic(trefoil, w) == (not shorter), format_word(w)


def test_cyclic_geodesic_of_conjugate(trefoil, model):
    w = W("x3^-1 x4 x0^-1 x2")
    for a in trefoil.letters():
        v = cyclic_geodesic(trefoil, (a,) + w + (-a,))
        assert len(v) == len(w)
    assert cyclic_geodesic(trefoil, ()) == ()


@pytest.mark.parametrize("name", ["trefoil", "fig8"])
def test_cyclic_geodesic_contract(name):
    p = load_pres(name)
    for w in _random_words(p, 150, 10, 4):
        v, c = cyclic_geodesic_with_conjugator(p, w)
        assert is_cyclically_geodesic(p, v)
        assert is_identity(p, c + v + inverse(c) + inverse(w))
        assert len(cyclic_geodesic(p, v)) == len(v)


def test_process_y_and_switch(trefoil):
    w = W("x1 x0^-1 x3")
    assert process_y(trefoil, w)["success"]
    assert switch(trefoil, w) == W("x4")
    assert process_y(trefoil, W("x1 x1^-1")) == {"success": True, "final": W("x1 x1^-1")}
    assert switch(trefoil, W("x1 x1^-1")) == ()


def test_process_y_failure(trefoil):
    w = W("x1 x4 x2")  # x1 x4 is not a pair
    assert not trefoil.is_pair(*W("x1 x4"))
    res = process_y(trefoil, w)
    assert res == {"success": False, "final": w}
    with pytest.raises(ProcessYFailed):
        switch(trefoil, w)


def test_process_y_shape(trefoil):
    with pytest.raises(BadParityShape):
        process_y(trefoil, W("x0 x1 x0"))


@pytest.mark.parametrize("name", ["trefoil", "fig8"])
def test_switch_equals_collapse(name):
    p = load_pres(name)
    hits = 0
    for w in _random_words(p, 400, 8, 5):
        w = free_reduce(w)
        for c in find_chains(p, w):
            if p.parity(c.chain_word[0]) != BLACK:
                continue
            assert switch(p, c.chain_word) == c.inner_link_path
            hits += 1
    assert hits > 0


def test_dugopolski_examples(trefoil):
    assert dugopolski_is_identity(trefoil, include_word(W("x1 x4^-1 x2")) + W("x0 x0^-1"))
    rel = W("x1 x4^-1 x2 x0^-1")
    assert dugopolski_is_identity(trefoil, rel)
    assert not dugopolski_is_identity(trefoil, include_word(W("x1")))


@pytest.mark.parametrize("name", ["trefoil", "fig8"])
@pytest.mark.parametrize("boundary", [BLACK, WHITE])
def test_dugopolski_agrees(name, boundary):
    p = load_pres(name)
    for w in _random_words(p, 400, 12, 6):
        assert dugopolski_is_identity(p, w, boundary) == is_identity(p, w)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4, 5, -5]), max_size=12))
def test_geodesic_idempotent(w):
    p = load_pres("trefoil")
    g = geodesic(p, tuple(w))
    assert geodesic(p, g) == g and len(g) <= len(w) and len(g) % 2 == len(w) % 2


def test_colour_filter_trace(trefoil):
    w = W("x1 x0^-1 x3")
    assert reduce_to_geodesic(trefoil, w, colour_filter=BLACK)[0] == w
    assert reduce_to_geodesic(trefoil, w, colour_filter=WHITE)[0] == W("x4")
    with pytest.raises(ValueError):
        reduce_to_geodesic(trefoil, w, colour_filter="red")
