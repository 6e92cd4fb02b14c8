"""Brute-force checks that do not share code with the rewriting engine.

Three independent sources of truth:

* bounded breadth-first closure under relator substitution (finds "yes");
* homomorphic invariants: integer abelian functionals and homomorphisms to
  small symmetric groups (certify "no");
* an optional exact model.  For a presentation whose Dehn group is the
  3-strand braid group, ``x_i = y_i t`` splits the augmented group as
  ``B_3 * <t>``, and free-product normal forms decide both equality and
  conjugacy.
"""
import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import permutations, product
from math import lcm

import sympy

from .words import format_word, free_reduce, inverse, parse_word, rotations

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class OracleVerdict:
    answer: str
    explored: int
    bound: int
    depth: int
    method: str = "closure"

    def __bool__(self):
        return self.answer == YES


# -- bounded closure -------------------------------------------------------

def _substitutions(p):
    """Map a relator prefix to the words that may replace it."""
    subs = {}
    for r in p.relators:
        for k in range(len(r) + 1):
            subs.setdefault(r[:k], set()).add(inverse(r[k:]))
    return {k: sorted(v) for k, v in subs.items()}


def _neighbours(v, subs, cap):
    n = len(v)
    for i in range(n + 1):
        for k in range(0, min(4, n - i) + 1):
            for repl in subs.get(v[i:i + k], ()):
                u = free_reduce(v[:i] + repl + v[i + k:])
                if len(u) <= cap:
                    yield u


def closure_search(p, start, goal, length_cap, depth_cap, max_states=200000):
    """BFS from the words in ``start`` until ``goal(word)`` holds.

    Returns (found word or None, explored, exhausted).
    """
    subs = _substitutions(p)
    seen = set()
    q = deque()
    for s in start:
        s = free_reduce(s)
        if s not in seen and len(s) <= length_cap:
            seen.add(s)
            q.append((s, 0))
    for v, _ in q:
        if goal(v):
            return v, len(seen), False
    cut = False
    while q:
        v, d = q.popleft()
        if d >= depth_cap:
            cut = True
            continue
        for u in _neighbours(v, subs, length_cap):
            if u not in seen:
                # goal tested on generation so a hit never waits behind its level
                if goal(u):
                    return u, len(seen) + 1, False
                if len(seen) >= max_states:
                    return None, len(seen), False
                seen.add(u)
                q.append((u, d + 1))
    return None, len(seen), not cut


# -- invariants ------------------------------------------------------------

class AbelianInvariant:
    """Integer functionals on exponent vectors that kill every relator."""

    def __init__(self, p):
        n = p.ngens
        rows = []
        for r in p.base_relators:
            row = [0] * n
            for a in r:
                row[abs(a) - 1] += 1 if a > 0 else -1
            rows.append(row)
        basis = sympy.Matrix(rows or [[0] * n]).nullspace()
        self.functionals = []
        for v in basis:
            den = reduce(lcm, (Fraction(str(x)).denominator for x in v), 1)
            self.functionals.append(tuple(int(x * den) for x in v))

    def __call__(self, w):
        exps = {}
        for a in w:
            exps[abs(a) - 1] = exps.get(abs(a) - 1, 0) + (1 if a > 0 else -1)
        return tuple(sum(f[g] * e for g, e in exps.items()) for f in self.functionals)


def _compose(s, t):
    """Permutation product: apply s, then t."""
    return tuple(t[i] for i in s)


def _perm_inverse(s):
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def _cycle_type(s):
    seen, out = set(), []
    for i in range(len(s)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = s[j]
            k += 1
        out.append(k)
    return tuple(sorted(out))


def symmetric_homomorphisms(p, degree, limit=5000):
    """Homomorphisms to S_degree, one per conjugacy orbit, by backtracking.

    Permutations are indexed and multiplied through a table; the image of
    x_0 is restricted to one representative per conjugacy class, which every
    orbit meets.
    """
    elems = list(permutations(range(degree)))
    index = {e: k for k, e in enumerate(elems)}
    mul = [[index[_compose(a, b)] for b in elems] for a in elems]
    inv = [index[_perm_inverse(a)] for a in elems]
    one = index[tuple(range(degree))]
    n = p.ngens
    by_gen = {}
    for r in p.base_relators:
        top = max(abs(a) - 1 for a in r)
        by_gen.setdefault(top, []).append(r)
    reps, covered = [], set()
    for k in range(len(elems)):
        if k not in covered:
            reps.append(k)
            covered |= {mul[mul[inv[g]][k]][g] for g in range(len(elems))}
    found, keys = [], set()
    img = [0] * n

    def ok(r):
        acc = one
        for a in r:
            acc = mul[acc][img[a - 1] if a > 0 else inv[img[-a - 1]]]
        return acc == one

    def canon():
        return min(tuple(mul[mul[inv[g]][x]][g] for x in img) for g in range(len(elems)))

    def go(k):
        if len(found) >= limit:
            return
        if k == n:
            key = canon()
            if key not in keys:
                keys.add(key)
                found.append(tuple(elems[x] for x in img))
            return
        for e in (reps if k == 0 else range(len(elems))):
            img[k] = e
            if all(ok(r) for r in by_gen.get(k, ())):
                go(k + 1)

    go(0)
    return found


class FiniteQuotients:
    def __init__(self, p, degrees=(3, 4), limit=5000):
        self.homs = []
        for d in degrees:
            self.homs += symmetric_homomorphisms(p, d, limit)

    def images(self, w):
        out = []
        for h in self.homs:
            acc = tuple(range(len(h[0])))
            for a in w:
                acc = _compose(acc, h[a - 1] if a > 0 else _perm_inverse(h[-a - 1]))
            out.append(acc)
        return tuple(out)

    def cycle_types(self, w):
        return tuple(_cycle_type(s) for s in self.images(w))


class Invariants:
    """Element and conjugacy fingerprints from homomorphic images."""

    def __init__(self, p, degrees=(3, 4)):
        self.abelian = AbelianInvariant(p)
        self.quotients = FiniteQuotients(p, degrees)

    def element(self, w):
        return (self.abelian(w), self.quotients.images(w))

    def conjugacy(self, w):
        return (self.abelian(w), self.quotients.cycle_types(w))

    def nontrivial(self, w):
        return self.element(w) != self.element(())


# -- exact model via B_3 -----------------------------------------------------
#
# B_3 = <a, b | a^2 = b^3> with a = s1 s2 s1, b = s1 s2, and the centre is
# generated by a^2, of exponent sum 6.  Modulo the centre B_3 is the free
# product Z/2 * Z/3, so a braid is determined by its image there together with
# its exponent sum, and two braids are conjugate iff their images are
# conjugate and their exponent sums agree.

# s1 = b^-1 a, s2 = a^-1 b^2; syllables ("a", 1) and ("b", 1 or 2)
_MODULAR = {1: (("b", 2), ("a", 1)), -1: (("a", 1), ("b", 1)),
            2: (("a", 1), ("b", 2)), -2: (("b", 1), ("a", 1))}
_ORDER = {"a": 2, "b": 3}


def _push(stack, kind, k, order):
    """Multiply a syllable onto a free-product stack; ``order`` maps kind -> modulus."""
    if stack and stack[-1][0] == kind:
        _, j = stack.pop()
        k = j + k
    mod = order.get(kind)
    if mod:
        k %= mod
    if k:
        stack.append((kind, k))


def _cyclic_syllables(nf, combine):
    nf = list(nf)
    while len(nf) >= 2 and nf[0][0] == nf[-1][0]:
        kind, last = nf.pop()
        val = combine(kind, last, nf[0][1])
        if val is None:
            nf.pop(0)
        else:
            nf[0] = (kind, val)
    return tuple(nf)


def braid_key(braid):
    """Exact invariant of a braid in B_3: (Z/2 * Z/3 normal form, exponent sum)."""
    stack = []
    for s in braid:
        for kind, k in _MODULAR[s]:
            _push(stack, kind, k, _ORDER)
    return tuple(stack), sum(1 if s > 0 else -1 for s in braid)


def braid_conjugacy_key(braid):
    nf, e = braid_key(braid)

    def combine(kind, x, y):
        return (x + y) % _ORDER[kind] or None

    cyc = _cyclic_syllables(nf, combine)
    return (min(rotations(cyc)) if cyc else ()), e


_IDENTITY_KEY = braid_key(())


class BraidModel:
    """Exact normal forms in ``B_3 * <x_0>`` for a Dehn group isomorphic to B_3.

    ``images`` maps generator index i >= 1 to a braid word for y_i = x_i x_0^-1;
    ``inverse_images`` gives words in the presentation for s1 and s2.  The
    constructor checks that both maps are homomorphisms and that they compose
    to the identity on generators, so the model is an isomorphism.
    """

    def __init__(self, p, images, inverse_images, length_cap=12, depth_cap=8):
        self.p = p
        self.images = {i: tuple(b) for i, b in images.items()}
        for r in p.base_relators:
            if self.normal_form(r):
                raise ValueError(f"relator {format_word(r)} is not killed by the model")
        psi = {k: tuple(w) for k, w in inverse_images.items()}
        for k, w in psi.items():
            if self.normal_form(w) != (("b", braid_key((k,))),):
                raise ValueError(f"inverse image of s{k} does not map back")
        psi.update({-k: inverse(w) for k, w in list(psi.items())})

        def lift(braid):
            return free_reduce(sum((psi[s] for s in braid), ()))

        checks = [lift((1, 2, 1, -2, -1, -2))]
        for i in range(1, p.ngens):
            checks.append(free_reduce(lift(self.images[i]) + (1, -(i + 1))))
        for w in checks:
            hit, _, _ = closure_search(p, [w], lambda v: not v, length_cap, depth_cap)
            if hit is None:
                raise ValueError("could not confirm that the model is an isomorphism")

    @classmethod
    def from_json(cls, p, text):
        data = json.loads(text)
        images = {int(k): v for k, v in data["images"].items()}
        inv = {int(k): parse_word(v) for k, v in data["inverse"].items()}
        return cls(p, images, inv)

    def _syllables(self, w):
        """Raw syllables: ("b", braid word) and ("t", exponent)."""
        out = []
        for a in w:
            if a > 0:
                toks = ([("b", self.images[a - 1])] if a != 1 else []) + [("t", 1)]
            else:
                toks = [("t", -1)] + ([("b", inverse(self.images[-a - 1]))] if a != -1 else [])
            for kind, val in toks:
                if out and out[-1][0] == kind:
                    _, prev = out.pop()
                    val = prev + val
                if (kind == "t" and val == 0) or (kind == "b" and braid_key(val) == _IDENTITY_KEY):
                    continue
                out.append((kind, val))
        return out

    def normal_form(self, w):
        """Alternating syllables ("b", braid key) / ("t", exponent)."""
        return tuple((k, braid_key(v) if k == "b" else v) for k, v in self._syllables(w))

    def conjugacy_key(self, w):
        """Exact conjugacy invariant; returns (True, key)."""

        def combine(kind, x, y):
            v = x + y
            if kind == "t":
                return v or None
            return None if braid_key(v) == _IDENTITY_KEY else v

        cyc = _cyclic_syllables(self._syllables(w), combine)
        if len(cyc) == 1 and cyc[0][0] == "b":
            return True, ("b", braid_conjugacy_key(cyc[0][1]))
        keyed = tuple((k, braid_key(v) if k == "b" else v) for k, v in cyc)
        return True, (min(rotations(keyed)) if keyed else ())


def load_model(p, name):
    """Exact model shipped for a fixture presentation, or None."""
    from importlib.resources import files
    f = files("linkgrp.data").joinpath(f"{name}.b3.json")
    if not f.is_file():
        return None
    return BraidModel.from_json(p, f.read_text())


# -- public verdicts ---------------------------------------------------------

def oracle_is_identity(p, w, length_cap=None, depth_cap=None, model=None,
                       invariants=None, max_states=200000):
    w = free_reduce(tuple(w))
    length_cap = length_cap if length_cap is not None else 2 * len(w) + 4
    depth_cap = depth_cap if depth_cap is not None else 2 * len(w) + 4
    if model is not None:
        ans = YES if not model.normal_form(w) else NO
        return OracleVerdict(ans, 1, length_cap, depth_cap, "braid-normal-form")
    if invariants is not None and invariants.nontrivial(w):
        return OracleVerdict(NO, 1, length_cap, depth_cap, "invariant")
    hit, explored, exhausted = closure_search(
        p, [w], lambda v: not v, length_cap, depth_cap, max_states)
    if hit is not None:
        return OracleVerdict(YES, explored, length_cap, depth_cap)
    if exhausted and length_cap >= 2 * len(w) + 4:
        return OracleVerdict(NO, explored, length_cap, depth_cap)
    return OracleVerdict(UNKNOWN, explored, length_cap, depth_cap)


def oracle_equal(p, u, w, **caps):
    return oracle_is_identity(p, tuple(u) + inverse(tuple(w)), **caps)


def oracle_are_conjugate(p, u, w, length_cap=None, depth_cap=None, model=None,
                         invariants=None, conjugator_cap=0, max_states=200000):
    """Conjugacy by exact model, invariants, cyclic closure and conjugator search."""
    u, w = free_reduce(tuple(u)), free_reduce(tuple(w))
    n = max(len(u), len(w))
    length_cap = length_cap if length_cap is not None else 2 * n + 4
    depth_cap = depth_cap if depth_cap is not None else 2 * n + 4
    if model is not None:
        eu, ku = model.conjugacy_key(u)
        ew, kw = model.conjugacy_key(w)
        if eu and ew:
            return OracleVerdict(YES if ku == kw else NO, 1, length_cap, depth_cap,
                                 "braid-normal-form")
        if ku != kw:
            return OracleVerdict(NO, 1, length_cap, depth_cap, "braid-normal-form")
    if invariants is not None and invariants.conjugacy(u) != invariants.conjugacy(w):
        return OracleVerdict(NO, 1, length_cap, depth_cap, "invariant")
    targets = set(rotations(u))
    subs = _substitutions(p)
    if len(u) == len(w) and _cyclic_closure_hits(w, targets, subs, max_states):
        return OracleVerdict(YES, len(targets), length_cap, depth_cap, "cyclic-closure")
    seen = set()
    q = deque()
    for s in rotations(w):
        s = free_reduce(s)
        if s not in seen:
            seen.add(s)
            q.append((s, 0))
    exhausted = True
    while q:
        v, d = q.popleft()
        if v in targets:
            return OracleVerdict(YES, len(seen), length_cap, depth_cap)
        if d >= depth_cap:
            exhausted = False
            continue
        nbrs = list(_neighbours(v, subs, length_cap)) + rotations(v)
        for x in nbrs:
            x = free_reduce(x)
            if x not in seen:
                if x in targets:
                    return OracleVerdict(YES, len(seen) + 1, length_cap, depth_cap)
                if len(seen) >= max_states:
                    q.clear()
                    exhausted = False
                    break
                seen.add(x)
                q.append((x, d + 1))
    letters = p.letters()
    for k in range(1, conjugator_cap + 1):
        for c in product(letters, repeat=k):
            v = free_reduce(c + w + inverse(c) + inverse(u))
            if oracle_is_identity(p, v, model=model, max_states=max_states // 10):
                return OracleVerdict(YES, len(seen), length_cap, depth_cap, "conjugator")
    if exhausted and length_cap >= 2 * n + 4:
        return OracleVerdict(NO, len(seen), length_cap, depth_cap)
    return OracleVerdict(UNKNOWN, len(seen), length_cap, depth_cap)


def _cyclic_closure_hits(w, targets, subs, max_states):
    """Search the length-preserving relator moves on cyclic words for a target."""
    seen = set(rotations(w))
    q = deque(seen)
    while q:
        v = q.popleft()
        if v in targets:
            return True
        for r in rotations(v):
            for repl in subs.get(r[:2], ()):
                if len(repl) != 2:
                    continue
                for x in rotations(free_reduce(repl + r[2:])):
                    if len(x) == len(w) and x not in seen:
                        if len(seen) >= max_states:
                            return False
                        seen.add(x)
                        q.append(x)
    return False


def shorter_equal_exists(p, w, table=None, model=None, length_cap=None,
                         depth_cap=6, max_states=20000):
    """Does some word shorter than w represent the same element?

    ``table`` maps element fingerprints of every word shorter than w to True
    (see ``fingerprint_table``); with an exact model the lookup decides the
    question, otherwise a missing fingerprint certifies "no".
    """
    w = tuple(w)
    if free_reduce(w) != w:
        return OracleVerdict(YES, 0, len(w), 0, "free-reduction")
    cap = length_cap if length_cap is not None else len(w)
    hit, explored, _ = closure_search(p, [w], lambda v: len(v) < len(w), cap,
                                      depth_cap, max_states)
    if hit is not None:
        return OracleVerdict(YES, explored, cap, depth_cap)
    if table is not None:
        key = table.key(w)
        if key not in table.keys:
            return OracleVerdict(NO, explored, cap, depth_cap, table.method)
        if table.exact:
            return OracleVerdict(YES, explored, cap, depth_cap, table.method)
    return OracleVerdict(UNKNOWN, explored, cap, depth_cap)


class FingerprintTable:
    """Fingerprints of all freely reduced words up to a length."""

    def __init__(self, p, max_length, model=None, invariants=None):
        self.exact = model is not None
        if model is not None:
            self.key = model.normal_form
            self.method = "braid-normal-form"
        else:
            self.key = invariants.element
            self.method = "invariant"
        self.keys = set()
        letters = p.letters()
        frontier = [()]
        for length in range(max_length + 1):
            nxt = []
            for v in frontier:
                self.keys.add(self.key(v))
                if length < max_length:
                    nxt += [v + (a,) for a in letters if not v or v[-1] != -a]
            frontier = nxt
