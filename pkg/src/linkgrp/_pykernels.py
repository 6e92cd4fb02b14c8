"""Pure-Python rewriting kernels.

Letters are signed ints; ``m`` is twice the number of generators and
``ex_s``/``ex_u`` are flat ``m * m`` tables: for a pair ``(a, b)`` with
relator ``a b c d`` they hold ``-d`` and ``-c`` (the exchanged pair), and 0
when ``ab`` is not a pair.  ``par[idx]`` is 1 for black letters.
``colour`` filters chains by inner-link-path parity: -1 any, 0 white, 1 black.
"""

BACKEND = "python"


def _idx(a):
    return 2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1


def free_reduce(word):
    out = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def scan_chain(word, start, m, ex_s, ex_u, par, colour):
    """Chain word beginning at ``start``: (end, inner, verticals, work) or None.

    ``end`` is the index of the last letter; ``verticals`` are u_0..u_n.
    """
    n = len(word)
    u = word[start]
    k = start + 1
    inner = []
    verts = [u]
    work = 0
    while k < n:
        t = word[k]
        work += 1
        if t == -u and inner:
            if colour >= 0 and par[_idx(inner[0])] != colour:
                return None, work
            return (k, tuple(inner), tuple(verts)), work
        j = _idx(u) * m + _idx(t)
        s = ex_s[j]
        if not s:
            break
        inner.append(s)
        u = ex_u[j]
        verts.append(u)
        k += 1
    return None, work


def first_chain(word, m, ex_s, ex_u, par, colour):
    total = 0
    for i in range(len(word) - 2):
        hit, work = scan_chain(word, i, m, ex_s, ex_u, par, colour)
        total += work
        if hit is not None:
            return (i,) + hit, total
    return None, total


def reduce_word(word, m, ex_s, ex_u, par, colour):
    """Free reduction plus leftmost-first chain collapse until stable.

    Returns (result, ops, work) with ops a list of ("free", None, None) and
    ("chain", start, end, inner) records in application order.
    """
    ops = []
    work = 0
    w = free_reduce(word)
    if len(w) != len(word):
        ops.append(("free", None, None, None))
    while True:
        hit, cost = first_chain(w, m, ex_s, ex_u, par, colour)
        work += cost
        if hit is None:
            return w, ops, work
        i, end, inner, _ = hit
        w = w[:i] + inner + w[end + 1:]
        ops.append(("chain", i, end, inner))
        r = free_reduce(w)
        work += len(w)
        if len(r) != len(w):
            ops.append(("free", None, None, None))
            w = r
