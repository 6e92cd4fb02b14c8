"""Word problem: free reduction, chains, geodesics and the black-chain variant.

A chain word ``t_0 t_1 ... t_n t_{n+1}`` is the top boundary of a row of ``n``
relator squares; the verticals ``u_0 = t_0, u_1, ..., u_n = t_{n+1}^-1`` are
shared between consecutive squares, and ``(u_{k-1}, t_k)`` is a pair whose
exchange is ``(s_k, u_k)``.  The bottom boundary ``s_1 ... s_n`` is the inner
link path; collapsing a chain replaces the chain word by it.
"""
import json
from dataclasses import dataclass, field

from . import kernels
from .diagram import BLACK, WHITE
from .errors import (BadParityShape, NotSmallCancellation, ProcessYFailed,
                     StaleOccurrence)
from .words import cyclic_reduce, format_word, inverse, rotate
from .words import free_reduce as _free_reduce

FREE = "free-reduction"
CHAIN = "chain-collapse"
EXCHANGE = "pair-exchange"
ROTATE = "cyclic-permutation"

_COLOUR_CODE = {None: -1, "both": -1, WHITE: 0, BLACK: 1}


@dataclass(frozen=True)
class ChainOccurrence:
    start: int
    chain_word: tuple
    inner_link_path: tuple
    columns: tuple
    colour: str
    verticals: tuple = ()

    @property
    def end(self):
        return self.start + len(self.chain_word) - 1

    def __len__(self):
        return len(self.inner_link_path)


@dataclass(frozen=True)
class Step:
    tag: str
    before: tuple
    after: tuple
    chain: ChainOccurrence = None
    shift: int = 0

    def to_dict(self):
        d = {"step": self.tag, "before": format_word(self.before),
             "after": format_word(self.after)}
        if self.chain is not None:
            d["start"] = self.chain.start
            d["inner_link_path"] = format_word(self.chain.inner_link_path)
            d["colour"] = self.chain.colour
        if self.tag == ROTATE:
            d["k"] = self.shift
        return d


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    work: int = 0  # letters inspected by the kernel scans

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_jsonl(self):
        return "\n".join(json.dumps(s.to_dict()) for s in self.steps)


def _colour_code(colour_filter):
    try:
        return _COLOUR_CODE[colour_filter]
    except KeyError:
        raise ValueError(f"unknown colour filter {colour_filter!r}") from None


def require_small_cancellation(p):
    if not p.small_cancellation:
        raise NotSmallCancellation("presentation fails C''(4) or T(4)")


def free_reduce(w):
    return kernels.free_reduce(tuple(w))


def _occurrence(p, w, start, end, inner, verts):
    cols = tuple(p.pair_table[(verts[k], w[start + k + 1])][0]
                 for k in range(len(inner)))
    return ChainOccurrence(start, tuple(w[start:end + 1]), tuple(inner), cols,
                           p.parity(inner[0]), tuple(verts))


def chain_at(p, w, start, colour_filter=None):
    """The chain word beginning at ``start``, or None."""
    m, ex_s, ex_u, par = p.kernel_tables
    hit, _ = kernels.scan_chain(tuple(w), start, m, ex_s, ex_u, par,
                                _colour_code(colour_filter))
    if hit is None:
        return None
    end, inner, verts = hit
    return _occurrence(p, w, start, end, inner, verts)


def find_chains(p, w, colour_filter=None):
    """All maximal chain subwords of a freely reduced word, left to right."""
    w = tuple(w)
    found = [c for c in (chain_at(p, w, i, colour_filter)
                         for i in range(len(w) - 2)) if c is not None]
    return [c for c in found
            if not any(o is not c and o.start <= c.start and o.end >= c.end
                       for o in found)]


def collapse_chain(w, c):
    w = tuple(w)
    if w[c.start:c.end + 1] != c.chain_word:
        raise StaleOccurrence(f"chain {format_word(c.chain_word)} is not at {c.start}")
    return w[:c.start] + c.inner_link_path + w[c.end + 1:]


def reduce_to_geodesic(p, w, colour_filter=None, trace=True):
    """Free-reduce and collapse chains leftmost-first until none remain.

    Returns (word, ReductionTrace).  With ``trace=False`` the trace only
    carries the kernel work count, which keeps long inputs fast.
    """
    require_small_cancellation(p)
    w = tuple(w)
    m, ex_s, ex_u, par = p.kernel_tables
    code = _colour_code(colour_filter)
    result, ops, work = kernels.reduce_word(w, m, ex_s, ex_u, par, code)
    t = ReductionTrace(work=work)
    if not trace:
        return result, t
    cur = w
    for kind, i, end, _ in ops:
        if kind == "free":
            nxt = _free_reduce(cur)
            t.steps.append(Step(FREE, cur, nxt))
        else:
            c = chain_at(p, cur, i, colour_filter)
            nxt = collapse_chain(cur, c)
            t.steps.append(Step(CHAIN, cur, nxt, chain=c))
        cur = nxt
    assert cur == result
    return result, t


def geodesic(p, w):
    return reduce_to_geodesic(p, w, trace=False)[0]


def is_identity(p, w):
    return not geodesic(p, w)


def is_geodesic(p, w):
    """Freely reduced with no chain subword."""
    w = tuple(w)
    if _free_reduce(w) != w:
        return False
    m, ex_s, ex_u, par = p.kernel_tables
    return kernels.first_chain(w, m, ex_s, ex_u, par, -1)[0] is None


def is_cyclically_geodesic(p, w):
    return all(is_geodesic(p, rotate(tuple(w), k)) for k in range(max(len(w), 1)))


def cyclic_geodesic_with_conjugator(p, w):
    """Return (v, c) with v cyclically geodesic and w = c v c^-1 in the group."""
    require_small_cancellation(p)
    v = geodesic(p, w)
    c = ()
    progress = True
    while progress:
        progress = False
        r, k = cyclic_reduce(v)
        c = _free_reduce(c + v[:k])
        v = r
        for k in range(1, len(v)):
            g = geodesic(p, rotate(v, k))
            if len(g) < len(v):
                c = _free_reduce(c + v[:k])
                v = g
                progress = True
                break
    return v, c


def cyclic_geodesic(p, w):
    return cyclic_geodesic_with_conjugator(p, w)[0]


def _shape(p, w, boundary):
    inner = WHITE if boundary == BLACK else BLACK
    if len(w) < 2 or p.parity(w[0]) != boundary or p.parity(w[-1]) != boundary:
        raise BadParityShape("word must begin and end with a boundary-parity letter")
    if any(p.parity(a) != inner for a in w[1:-1]):
        raise BadParityShape("interior letters must have the opposite parity")


def process_y(p, w, boundary=BLACK):
    """Repeatedly replace the head pair by the boundary-parity letter of its relator.

    Returns {"success", "final"}; success means the terminal two letters
    freely cancel.
    """
    w = tuple(w)
    _shape(p, w, boundary)
    cur = w
    while len(cur) > 2 and p.is_pair(cur[0], cur[1]):
        _, (_, u) = p.pair_table[(cur[0], cur[1])]
        cur = (u,) + cur[2:]
    return {"success": len(cur) == 2 and cur[0] == -cur[1], "final": cur}


def switch(p, w, boundary=BLACK):
    """Substitute the other pair of each relator met by process Y, then cancel."""
    w = tuple(w)
    if not process_y(p, w, boundary)["success"]:
        raise ProcessYFailed(f"process Y fails on {format_word(w)}")
    out = []
    u = w[0]
    for t in w[1:-1]:
        _, (s, u) = p.pair_table[(u, t)]
        out.append(s)
    return tuple(out)


def dugopolski_is_identity(p, w, boundary=BLACK):
    """Identity test using cyclic free reduction and black-bounded chains only.

    The collapsed chains begin and end with black letters, so their inner
    link paths are white.  Collapses found in any cyclic permutation are
    applied, which is sound because conjugates of the identity are trivial.
    ``boundary=WHITE`` runs the mirror test with white-bounded chains.
    """
    require_small_cancellation(p)
    m, ex_s, ex_u, par = p.kernel_tables
    code = _colour_code(WHITE if boundary == BLACK else BLACK)
    v = cyclic_reduce(w)[0]
    while v:
        for k in range(len(v)):
            r = rotate(v, k)
            res, _, _ = kernels.reduce_word(r, m, ex_s, ex_u, par, code)
            res = cyclic_reduce(res)[0]
            if len(res) < len(v):
                v = res
                break
        else:
            return False
    return True
