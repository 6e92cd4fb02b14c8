"""The compiled kernels and the pure-Python fallback must agree exactly."""
import pytest
from hypothesis import given, settings, strategies as st

from linkgrp import kernels

from conftest import load_pres

pytestmark = pytest.mark.skipif(kernels.compiled_backend is None,
                                reason="compiled kernels not built")

PRES = {n: load_pres(n) for n in ("trefoil", "fig8")}


def word_strategy(p):
    return st.lists(st.sampled_from(p.letters()), max_size=30).map(tuple)


@pytest.mark.parametrize("name", sorted(PRES))
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_backends_agree(name, data):
    p = PRES[name]
    w = data.draw(word_strategy(p))
    colour = data.draw(st.sampled_from([-1, 0, 1]))
    tables = p.kernel_tables
    py, c = kernels.python_backend, kernels.compiled_backend
    assert py.free_reduce(w) == c.free_reduce(w)
    assert py.first_chain(w, *tables, colour) == c.first_chain(w, *tables, colour)
    assert py.reduce_word(w, *tables, colour) == c.reduce_word(w, *tables, colour)
    for i in range(max(len(w) - 2, 0)):
        assert py.scan_chain(w, i, *tables, colour) == c.scan_chain(w, i, *tables, colour)


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.backend.BACKEND == kernels.BACKEND
