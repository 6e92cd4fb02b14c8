import pytest
from hypothesis import given, strategies as st

from linkgrp.errors import ParseError
from linkgrp.words import (cyclic_reduce, format_word, free_reduce, inverse, is_cyclic_rotation,
                           min_rotation, parse_word, rotate, rotations)

letters = st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4, 5, -5])
words = st.lists(letters, max_size=14).map(tuple)


def test_parse_and_format_round_trip():
    w = parse_word("x3^-1 x4 x0^-1 x2")
    assert w == (-4, 5, -1, 3)
    assert format_word(w) == "x3^-1 x4 x0^-1 x2"
    assert parse_word("") == () and format_word(()) == "1"


def test_bad_token():
    with pytest.raises(ParseError):
        parse_word("y1")


def test_free_reduce_examples():
    assert free_reduce(parse_word("x1 x1^-1")) == ()
    assert free_reduce(parse_word("x1 x2 x2^-1 x2 x2^-1 x1^-1 x3")) == parse_word("x3")


@given(words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert free_reduce(w + inverse(w)) == ()


@given(words)
def test_cyclic_reduce_conjugates_back(w):
    v, k = cyclic_reduce(w)
    c = free_reduce(w)[:k]
    assert free_reduce(c + v + inverse(c)) == free_reduce(w)


@given(words, st.integers(0, 20))
def test_rotation_helpers(w, k):
    if not w:
        return
    r = rotate(w, k)
    assert is_cyclic_rotation(r, w)
    assert min_rotation(r) == min_rotation(w) == min(rotations(w))
