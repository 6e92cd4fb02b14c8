# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewriting kernels; same contract as linkgrp._pykernels."""
from cpython cimport array
import array

BACKEND = "cython"


cdef inline int _idx(int a) nogil:
    if a > 0:
        return 2 * (a - 1)
    return 2 * (-a - 1) + 1


cdef int _free_reduce(int* w, int n) nogil:
    cdef int top = 0, i
    for i in range(n):
        if top > 0 and w[top - 1] == -w[i]:
            top -= 1
        else:
            w[top] = w[i]
            top += 1
    return top


def free_reduce(word):
    cdef array.array buf = array.array("i", word)
    cdef int n = _free_reduce(buf.data.as_ints, len(buf))
    return tuple(buf[:n])


cdef int _scan(int* w, int n, int start, int m, int* ex_s, int* ex_u,
               int* par, int colour, int* inner, int* verts, long* work) nogil:
    """Returns the end index of the chain at ``start`` or -1; fills inner/verts."""
    cdef int u = w[start], k = start + 1, ni = 0, t, j, s
    verts[0] = u
    while k < n:
        t = w[k]
        work[0] += 1
        if t == -u and ni > 0:
            if colour >= 0 and par[_idx(inner[0])] != colour:
                return -1
            return k
        j = _idx(u) * m + _idx(t)
        s = ex_s[j]
        if s == 0:
            return -1
        inner[ni] = s
        ni += 1
        u = ex_u[j]
        verts[ni] = u
        k += 1
    return -1


def scan_chain(word, int start, int m, ex_s, ex_u, par, int colour):
    cdef array.array w = array.array("i", word)
    cdef array.array es = array.array("i", ex_s)
    cdef array.array eu = array.array("i", ex_u)
    cdef array.array pa = array.array("i", par)
    cdef int n = len(w)
    cdef array.array inner = array.array("i", [0] * (n + 1))
    cdef array.array verts = array.array("i", [0] * (n + 2))
    cdef long work = 0
    cdef int end = _scan(w.data.as_ints, n, start, m, es.data.as_ints,
                         eu.data.as_ints, pa.data.as_ints, colour,
                         inner.data.as_ints, verts.data.as_ints, &work)
    if end < 0:
        return None, work
    cdef int k = end - start - 1
    return (end, tuple(inner[:k]), tuple(verts[:k + 1])), work


def first_chain(word, int m, ex_s, ex_u, par, int colour):
    cdef array.array w = array.array("i", word)
    cdef array.array es = array.array("i", ex_s)
    cdef array.array eu = array.array("i", ex_u)
    cdef array.array pa = array.array("i", par)
    cdef int n = len(w), i, end
    cdef array.array inner = array.array("i", [0] * (n + 1))
    cdef array.array verts = array.array("i", [0] * (n + 2))
    cdef long work = 0
    for i in range(n - 2):
        end = _scan(w.data.as_ints, n, i, m, es.data.as_ints, eu.data.as_ints,
                    pa.data.as_ints, colour, inner.data.as_ints,
                    verts.data.as_ints, &work)
        if end >= 0:
            k = end - i - 1
            return (i, end, tuple(inner[:k]), tuple(verts[:k + 1])), work
    return None, work


def reduce_word(word, int m, ex_s, ex_u, par, int colour):
    cdef array.array es = array.array("i", ex_s)
    cdef array.array eu = array.array("i", ex_u)
    cdef array.array pa = array.array("i", par)
    cdef int n0 = len(word)
    cdef array.array w = array.array("i", word)
    cdef array.array inner = array.array("i", [0] * (n0 + 1))
    cdef array.array verts = array.array("i", [0] * (n0 + 2))
    cdef int* wp = w.data.as_ints
    cdef int* ip = inner.data.as_ints
    cdef int n, i, end, k, j, before
    cdef long work = 0
    ops = []
    n = _free_reduce(wp, n0)
    if n != n0:
        ops.append(("free", None, None, None))
    while True:
        end = -1
        for i in range(n - 2):
            end = _scan(wp, n, i, m, es.data.as_ints, eu.data.as_ints,
                        pa.data.as_ints, colour, ip, verts.data.as_ints, &work)
            if end >= 0:
                break
        if end < 0:
            return tuple(w[:n]), ops, work
        k = end - i - 1
        ops.append(("chain", i, end, tuple(inner[:k])))
        # splice: w[:i] + inner + w[end+1:], in place (result is shorter)
        for j in range(k):
            wp[i + j] = ip[j]
        for j in range(end + 1, n):
            wp[j - 2] = wp[j]
        n -= 2
        before = n
        n = _free_reduce(wp, n)
        work += before
        if n != before:
            ops.append(("free", None, None, None))
