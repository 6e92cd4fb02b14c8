"""Conjugacy problem: standard embeddings, geodesic completions and strips.

Lattice conventions: ``H[(x, y)]`` labels the step (x, y) -> (x+1, y) and
``V[(x, y)]`` the step (x, y) -> (x, y+1).  A unit square with lower-left
corner (x, y) reads ``h(x,y) v(x+1,y) h(x,y+1)^-1 v(x,y)^-1`` counterclockwise.
Paths built here are monotone staircases heading right and up.
"""
import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotGeodesic, TilingConflict
from .presentation import PAIR, PSEUDO_PAIR, classify_two_letter
from .rewriting import (cyclic_geodesic_with_conjugator, is_geodesic,
                        is_identity, require_small_cancellation)
from . import kernels
from .words import (alternates_in_sign, format_word, free_reduce, inverse,
                    min_rotation, rotate, rotations)

RIGHT = (1, 0)
UP = (0, 1)


@dataclass(frozen=True)
class LatticePath:
    vertices: tuple
    edge_labels: tuple

    def __post_init__(self):
        if len(self.vertices) != len(self.edge_labels) + 1:
            raise ValueError("a path needs one more vertex than edges")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if abs(x1 - x0) + abs(y1 - y0) != 1:
                raise ValueError("lattice paths move by unit steps")

    @property
    def end(self):
        return self.vertices[-1]


@dataclass
class SquareTiling:
    base_path: LatticePath
    H: dict = field(default_factory=dict)
    V: dict = field(default_factory=dict)
    squares: dict = field(default_factory=dict)

    @property
    def bounding_box(self):
        pts = {v for v in self.base_path.vertices}
        pts |= set(self.H) | {(x + 1, y) for x, y in self.H}
        pts |= set(self.V) | {(x, y + 1) for x, y in self.V}
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        return (min(xs), min(ys)), (max(xs), max(ys))

    def set_edge(self, table, key, label):
        old = table.get(key)
        if old is not None and old != label:
            kind = "H" if table is self.H else "V"
            raise TilingConflict(f"edge {kind}{key} carries {old}, not {label}")
        table[key] = label

    def add_square(self, x, y, relator):
        h, v1, mh, mv = relator
        self.set_edge(self.H, (x, y), h)
        self.set_edge(self.V, (x + 1, y), v1)
        self.set_edge(self.H, (x, y + 1), -mh)
        self.set_edge(self.V, (x, y), -mv)
        self.squares[(x, y)] = tuple(relator)

    def lay_path(self, start, letters, step):
        x, y = start
        for a in letters:
            if step == RIGHT:
                self.set_edge(self.H, (x, y), a)
            else:
                self.set_edge(self.V, (x, y), a)
            x, y = x + step[0], y + step[1]

    def column_up(self, x, y):
        """Labels of the maximal vertical run starting at (x, y) going up."""
        out = []
        while (x, y) in self.V:
            out.append(self.V[(x, y)])
            y += 1
        return tuple(out)

    def column_down(self, x, y):
        """Labels of the maximal vertical run ending at (x, y), bottom to top."""
        out = []
        while (x, y - 1) in self.V:
            y -= 1
            out.append(self.V[(x, y)])
        return tuple(reversed(out))

    def complete(self, p, rng=None):
        """Fill pair-labelled monotone right angles until none remain."""
        todo = list({v for e in (self.H, self.V) for v in _edge_vertices(e)})
        if rng is not None:
            rng.shuffle(todo)
        queue = deque(todo)
        queued = set(todo)
        while queue:
            if rng is not None and len(queue) > 1:
                k = rng.randrange(len(queue))
                queue[0], queue[k] = queue[k], queue[0]
            v = queue.popleft()
            queued.discard(v)
            for sq in self._fills(p, v):
                x, y = sq[0]
                self.add_square(x, y, sq[1])
                for c in ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)):
                    if c not in queued:
                        queued.add(c)
                        queue.append(c)

    def _fills(self, p, v):
        x, y = v
        out = []
        # in from the left, out upward: square to the upper left of v
        a, b = self.H.get((x - 1, y)), self.V.get((x, y))
        if a and b and (x - 1, y) not in self.squares and p.is_pair(a, b):
            out.append(((x - 1, y), p.pair_table[(a, b)][0]))
        # in from below, out right: square to the lower right of v
        a, b = self.V.get((x, y - 1)), self.H.get((x, y))
        if a and b and (x, y - 1) not in self.squares and p.is_pair(a, b):
            out.append(((x, y - 1), inverse(p.pair_table[(a, b)][0])))
        return out

    def monotone_labels(self, start, end):
        """Labels of all right/up edge paths from start to end."""
        (x0, y0), (x1, y1) = start, end
        if x1 < x0 or y1 < y0:
            return set()
        memo = {}

        def go(v):
            if v == end:
                return {()}
            if v in memo:
                return memo[v]
            x, y = v
            out = set()
            if x < x1 and (x, y) in self.H:
                out |= {(self.H[(x, y)],) + t for t in go((x + 1, y))}
            if y < y1 and (x, y) in self.V:
                out |= {(self.V[(x, y)],) + t for t in go((x, y + 1))}
            memo[v] = out
            return out

        return go(start)

    def to_dict(self):
        (x0, y0), (x1, y1) = self.bounding_box
        return {
            "bounding_box": [[x0, y0], [x1, y1]],
            "base_path": {"vertices": [list(v) for v in self.base_path.vertices],
                          "word": format_word(self.base_path.edge_labels)},
            "squares": [{"x": x, "y": y, "relator": format_word(r)}
                        for (x, y), r in sorted(self.squares.items())],
            "horizontal": [{"x": x, "y": y, "label": format_word((a,))}
                           for (x, y), a in sorted(self.H.items())],
            "vertical": [{"x": x, "y": y, "label": format_word((a,))}
                         for (x, y), a in sorted(self.V.items())],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_svg(self, unit=48):
        (x0, y0), (x1, y1) = self.bounding_box
        pad = unit
        width = (x1 - x0) * unit + 2 * pad
        height = (y1 - y0) * unit + 2 * pad

        def pt(x, y):
            return pad + (x - x0) * unit, height - pad - (y - y0) * unit

        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
                 f'height="{height}" font-family="sans-serif" font-size="11">']
        for (x, y) in sorted(self.squares):
            px, py = pt(x, y + 1)
            parts.append(f'<rect x="{px}" y="{py}" width="{unit}" height="{unit}" '
                         'fill="#e8eef7" stroke="none"/>')
        base = set(zip(self.base_path.vertices, self.base_path.vertices[1:]))
        for table, (dx, dy) in ((self.H, RIGHT), (self.V, UP)):
            for (x, y), a in sorted(table.items()):
                ax, ay = pt(x, y)
                bx, by = pt(x + dx, y + dy)
                bold = ((x, y), (x + dx, y + dy)) in base
                parts.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                             f'stroke="black" stroke-width="{3 if bold else 1}"/>')
                mx, my = (ax + bx) / 2 + 3 * dy, (ay + by) / 2 - 3 * dx
                parts.append(f'<text x="{mx}" y="{my}">{format_word((a,))}</text>')
        parts.append("</svg>")
        return "\n".join(parts)


def _edge_vertices(table):
    for x, y in table:
        yield (x, y)


def standard_embedding(p, w):
    """Staircase path for a geodesic word, turning at pairs and pseudo-pairs."""
    w = tuple(w)
    if not w:
        raise NotGeodesic("the standard embedding needs a nonempty word")
    if not is_geodesic(p, w):
        raise NotGeodesic(f"{format_word(w)} is not geodesic")
    step = RIGHT
    pts = [(0, 0)]
    for k, a in enumerate(w):
        if k and classify_two_letter(p, w[k - 1:k + 1]) in (PAIR, PSEUDO_PAIR):
            step = UP if step == RIGHT else RIGHT
        x, y = pts[-1]
        pts.append((x + step[0], y + step[1]))
    return LatticePath(tuple(pts), w)


def _tiling_from_path(path):
    t = SquareTiling(path)
    for (a, b), lab in zip(zip(path.vertices, path.vertices[1:]), path.edge_labels):
        if b[0] == a[0] + 1:
            t.set_edge(t.H, a, lab)
        else:
            t.set_edge(t.V, a, lab)
    return t


def geodesic_completion(p, w, rng=None):
    """Square tiling generated from the standard embedding of a geodesic.

    ``rng`` (a random.Random) shuffles the fill order; the result does not
    depend on it.
    """
    t = _tiling_from_path(standard_embedding(p, w))
    t.complete(p, rng)
    return t


def exchanges(p, w, cyclic=False):
    """Words obtained from w by exchanging one pair."""
    w = tuple(w)
    n = len(w)
    stop = n if cyclic and n > 2 else n - 1
    for i in range(max(stop, 0)):
        j = (i + 1) % n
        hit = p.pair_table.get((w[i], w[j]))
        if hit is None:
            continue
        s, u = hit[1]
        if j == i + 1:
            yield w[:i] + (s, u) + w[i + 2:]
        else:  # the pair straddles the end of the word
            yield (u,) + w[1:i] + (s,)


def equivalent_geodesics(p, w):
    """Closure of {w} under exchanging pairs."""
    w = tuple(w)
    if w and not is_geodesic(p, w):
        raise NotGeodesic(f"{format_word(w)} is not geodesic")
    seen = {w}
    todo = [w]
    while todo:
        v = todo.pop()
        for u in exchanges(p, v):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


# -- mixed parity: the strip --------------------------------------------------

@dataclass
class ConjugacyStrip:
    tiling: SquareTiling
    width: int
    height: int
    left_columns: list
    right_columns: list
    offsets: range
    steps: int

    def column_label(self, n):
        """Label of x = 0 from (0, 0) to (0, n) as a group element."""
        if n >= 0:
            return tuple(self.tiling.V[(0, y)] for y in range(n))
        return inverse(tuple(self.tiling.V[(0, y)] for y in range(n, 0)))

    def transversals(self, n):
        """Labels of monotone paths from (0, n) to (I, J + n)."""
        return self.tiling.monotone_labels((0, n), (self.width, self.height + n))

    def find(self, u):
        """First (offset, rotation) whose transversal reads rotate(u, r)."""
        u = tuple(u)
        k = len(u)
        uu = u + u
        for n in self.offsets:
            start = (0, n)
            end = (self.width, self.height + n)
            states = {start: set(range(k))}
            order = sorted({start} | {v for v in self.tiling.H} | {v for v in self.tiling.V},
                           key=lambda v: v[0] + v[1])
            for v in order:
                rs = states.get(v)
                if not rs or v == end:
                    continue
                x, y = v
                pos = x + (y - n)
                for nxt, lab, ok in (((x + 1, y), self.tiling.H.get(v), x < self.width),
                                     ((x, y + 1), self.tiling.V.get(v), y < self.height + n)):
                    if not ok or lab is None:
                        continue
                    good = {r for r in rs if uu[r + pos] == lab}
                    if good:
                        states.setdefault(nxt, set()).update(good)
            if states.get(end):
                return n, min(states[end])
        return None


def conjugacy_strip(p, w, max_steps=None, rng=None):
    """Stack left/right boundary columns of the completion until they repeat."""
    t = geodesic_completion(p, w, rng)
    I, J = t.base_path.end
    cap = max_steps if max_steps is not None else p.ngens * (len(w) + 1)
    steps = 0
    lefts, rights = [], []
    base, top = 0, J
    while steps < cap:
        col = t.column_up(0, base)
        if not col:
            break
        repeated = col in lefts
        lefts.append(col)
        t.lay_path((I, top), col, UP)
        t.complete(p, rng)
        base += len(col)
        top += len(col)
        steps += 1
        if repeated:
            break
    low, bottom = J, 0
    while steps < cap:
        col = t.column_down(I, low)
        if not col:
            break
        repeated = col in rights
        rights.append(col)
        t.lay_path((0, bottom - len(col)), col, UP)
        t.complete(p, rng)
        low -= len(col)
        bottom -= len(col)
        steps += 1
        if repeated:
            break
    return ConjugacyStrip(t, I, J, lefts, rights, range(bottom, base + 1), steps)


@lru_cache(maxsize=4096)
def conjugacy_strips(p, w):
    """One strip per distinct cyclic permutation of a cyclic geodesic.

    A pair straddling the end of the word only becomes a corner of the
    completion once some rotation puts it inside the word.
    """
    out = []
    seen = set()
    for k in range(len(w)):
        r = rotate(w, k)
        if r not in seen:
            seen.add(r)
            out.append(conjugacy_strip(p, r))
        else:
            out.append(out[[rotate(w, j) for j in range(k)].index(r)])
    return tuple(out)


# -- single parity: conjugacy chains -----------------------------------------

@dataclass
class ConjugacyChainComplex:
    side_words: dict = field(default_factory=dict)   # canonical -> word
    chains: set = field(default_factory=set)         # (a, t, s): a t a^-1 -> s
    parent: dict = field(default_factory=dict)       # canonical -> (conj, from)
    fan_out: dict = field(default_factory=dict)      # exact side word -> count

    @property
    def max_fan_out(self):
        return max(self.fan_out.values(), default=0)


class FanOutExceeded(AssertionError):
    pass


def conjugacy_chains_of(p, v):
    """Letters a with a v a^-1 a chain word spanning the whole word, and its inner path."""
    m, ex_s, ex_u, par = p.kernel_tables
    out = []
    for a in p.letters():
        if a == -v[0] or a == v[-1]:
            continue
        word = (a,) + tuple(v) + (-a,)
        hit, _ = kernels.scan_chain(word, 0, m, ex_s, ex_u, par, -1)
        if hit is not None and hit[0] == len(word) - 1:
            out.append((a, hit[1]))
    return out


def conjugacy_chain_complex(p, w, check_fan_out=True):
    """Saturate the sides of conjugacy chains reachable from w."""
    w = tuple(w)
    cx = ConjugacyChainComplex()
    key = min_rotation(w)
    cx.side_words[key] = w
    cx.parent[key] = (None, None)
    queue = deque([w])
    while queue:
        v = queue.popleft()
        for r in range(len(v)):
            t = rotate(v, r)
            found = conjugacy_chains_of(p, t)
            cx.fan_out[t] = len(found)
            if check_fan_out and len(found) > 2:
                raise FanOutExceeded(f"{format_word(t)} bounds {len(found)} chains")
            for a, s in found:
                cx.chains.add((a, t, s))
                ks = min_rotation(s)
                if ks not in cx.side_words:
                    cx.side_words[ks] = s
                    # s = g v g^-1 with g = a v[:r]^-1
                    cx.parent[ks] = ((a,) + inverse(v[:r]), min_rotation(v))
                    queue.append(s)
    return cx


def _chain_conjugator(cx, key):
    """g with side(key) = g w g^-1 for the root w."""
    g = ()
    while True:
        step, prev = cx.parent[key]
        if step is None:
            return g
        g = free_reduce(g + step)
        key = prev


# -- the decision -------------------------------------------------------------

@dataclass
class ConjugacyResult:
    conjugate: bool
    certificate: dict

    def __bool__(self):
        return self.conjugate


def conjugacy_invariants(p, v):
    """Quantities shared by conjugate cyclic geodesics."""
    black = sum(1 for a in v if p.parity(a) == "black")
    return (len(v), black, sum(1 for a in v if a > 0),
            alternates_in_sign(v + v[:1]) if v else True)


def _has_both_parities(p, v):
    return len({p.parity(a) for a in v}) == 2


def _verify(p, u0, w0, g):
    return is_identity(p, free_reduce(g + w0 + inverse(g) + inverse(u0)))


def are_conjugate(p, u, w):
    """Decide conjugacy; the certificate carries a verified conjugator g with u = g w g^-1."""
    require_small_cancellation(p)
    u0, w0 = tuple(u), tuple(w)
    cu, gu = cyclic_geodesic_with_conjugator(p, u0)
    cw, gw = cyclic_geodesic_with_conjugator(p, w0)
    cert = {"u": format_word(cu), "w": format_word(cw)}
    if not cu or not cw:
        ok = not cu and not cw
        cert["reason"] = "identity" if ok else "exactly one side is the identity"
        if ok:
            cert["conjugator"] = "1"
        return ConjugacyResult(ok, cert)
    iu, iw = conjugacy_invariants(p, cu), conjugacy_invariants(p, cw)
    if iu != iw:
        cert["reason"] = "precheck"
        cert["invariants"] = {"u": list(iu), "w": list(iw)}
        return ConjugacyResult(False, cert)
    if _has_both_parities(p, cw):
        cert["method"] = "strip"
        for k, strip in enumerate(conjugacy_strips(p, cw)):
            hit = strip.find(cu)
            if hit is not None:
                break
        else:
            cert["reason"] = "no transversal reads a cyclic permutation of u"
            return ConjugacyResult(False, cert)
        n, r = hit
        col = strip.column_label(n)
        # the strip was built on rotate(cw, k) = cw[:k]^-1 cw cw[:k]
        inner = free_reduce(cu[:r] + inverse(col) + inverse(cw[:k]))
        cert.update(base_rotation=k, offset=n, rotation=r,
                    strip_steps=strip.steps, path=format_word(rotate(cu, r)))
    else:
        cx = conjugacy_chain_complex(p, cw)
        key = min_rotation(cu)
        cert["method"] = "conjugacy-chains"
        cert["sides"] = len(cx.side_words)
        if key not in cx.side_words:
            cert["reason"] = "u is not a side of any chain"
            return ConjugacyResult(False, cert)
        side = cx.side_words[key]
        g = _chain_conjugator(cx, key)                 # side = g cw g^-1
        k = next(k for k in range(len(cu)) if rotate(side, k) == cu)
        inner = free_reduce(inverse(side[:k]) + g)     # cu = inner cw inner^-1
    conj = free_reduce(gu + inner + inverse(gw))
    if not _verify(p, u0, w0, conj):
        raise AssertionError("recovered conjugator failed verification")
    cert["conjugator"] = format_word(conj)
    return ConjugacyResult(True, cert)


def conjugacy_class_geodesics(p, w):
    """All cyclic geodesic words conjugate to w."""
    require_small_cancellation(p)
    v, _ = cyclic_geodesic_with_conjugator(p, tuple(w))
    if not v:
        return {()}
    if _has_both_parities(p, v):
        reps = set()
        for strip in conjugacy_strips(p, v):
            for n in strip.offsets:
                reps |= strip.transversals(n)
    else:
        reps = set(conjugacy_chain_complex(p, v).side_words.values())
    return {r for s in reps for r in rotations(s)}


def cyclic_exchange_closure(p, w):
    """Closure of the rotations of w under exchanging pairs at any cyclic position."""
    w = tuple(w)
    seen = set(rotations(w))
    todo = list(seen)
    while todo:
        v = todo.pop()
        for u in exchanges(p, v, cyclic=True):
            for r in rotations(u):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
    return seen
