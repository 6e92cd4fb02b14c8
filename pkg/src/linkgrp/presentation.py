"""Augmented Dehn presentations and their small-cancellation tables."""
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .diagram import BLACK, WHITE
from .errors import ConventionMismatch, NotAPair, ParseError
from .words import (format_word, gen_of, inverse, letter, parse_word,
                    rotations)

PAIR = "pair"
SISTER_SET = "sister-set"
PSEUDO_PAIR = "pseudo-pair"
NONE = "none"

_PARITY = re.compile(r"^parity\s+x(\d+)\s*=\s*(white|black)$")
_GENS = re.compile(r"^generators\s*=\s*(\d+)$")


@dataclass(frozen=True)
class Generator:
    index: int
    parity: str


def symmetrize(relators):
    """Close a set of words under cyclic permutation and inversion."""
    out = set()
    for r in relators:
        r = tuple(r)
        for w in (r, inverse(r)):
            out.update(rotations(w))
    out.discard(())
    return frozenset(out)


def canonical_relator(r):
    """A fixed representative of the symmetrization orbit of r."""
    return min(symmetrize([r]))


@dataclass(frozen=True, eq=False)
class SymPresentation:
    generators: tuple
    base_relators: tuple
    relators: frozenset = field(default=None)

    def __post_init__(self):
        if self.relators is None:
            object.__setattr__(self, "relators", symmetrize(self.base_relators))

    @property
    def ngens(self):
        return len(self.generators)

    def parity(self, a):
        return self.generators[gen_of(a)].parity

    def letters(self):
        return [letter(g, e) for g in range(self.ngens) for e in (1, -1)]

    @cached_property
    def pair_relators(self):
        """Map two-letter word -> list of relators (rotated to start with it)."""
        table = {}
        for r in self.relators:
            table.setdefault(r[:2], []).append(r)
        return table

    @cached_property
    def pair_table(self):
        """Map pair -> (relator, exchanged pair); first relator wins on ambiguity."""
        table = {}
        for key, rels in self.pair_relators.items():
            r = min(rels)
            table[key] = (r, (-r[3], -r[2]))
        return table

    def is_pair(self, a, b):
        return (a, b) in self.pair_table

    @cached_property
    def class_table(self):
        return {(a, b): _classify(self, a, b)
                for a, b in product(self.letters(), repeat=2)}

    @cached_property
    def pseudo_pairs(self):
        return frozenset(_l_shaped_crooks(self))

    @cached_property
    def kernel_tables(self):
        """Flat tables for the compiled kernels (see linkgrp.kernels)."""
        m = 2 * self.ngens
        ex_s = [0] * (m * m)
        ex_u = [0] * (m * m)
        for (a, b), (_, (s, u)) in self.pair_table.items():
            k = letter_index(a) * m + letter_index(b)
            ex_s[k] = s
            ex_u[k] = u
        par = [1 if self.generators[i // 2].parity == BLACK else 0 for i in range(m)]
        return m, ex_s, ex_u, par

    @cached_property
    def small_cancellation(self):
        return check_c4(self)[0] and check_t4(self)[0]

    def relator_words(self):
        return sorted(self.relators)

    def to_text(self):
        lines = [f"generators = {self.ngens}"]
        lines += [f"parity x{g.index} = {g.parity}" for g in self.generators]
        lines += [format_word(r) for r in self.base_relators]
        return "\n".join(lines) + "\n"


def letter_index(a):
    return 2 * (abs(a) - 1) + (a < 0)


def check_parity(p):
    """True when every relator alternates in parity."""
    for r in p.relators:
        for i in range(len(r)):
            if p.parity(r[i]) == p.parity(r[(i + 1) % len(r)]):
                return False
    return True


def augmented_dehn(r, d):
    """Augmented Dehn presentation of a connected diagram.

    At each crossing the corners are read counterclockwise starting from the
    corner on the left of the incoming under-strand (sector 3), giving the
    relator x_a x_b^-1 x_c x_d^-1.  x_0 is not killed.
    """
    gens = tuple(Generator(k, r.colour[k]) for k in range(len(r.regions)))
    rels = []
    for c in range(len(d.crossings)):
        a, b, cc, dd = (r.sector_region[(c, i)] for i in (3, 0, 1, 2))
        rels.append((letter(a), -letter(b), letter(cc), -letter(dd)))
    p = SymPresentation(gens, tuple(rels))
    if not check_parity(p):
        raise ConventionMismatch("a crossing relator does not alternate in parity")
    return p


def parse_presentation(text):
    """Parse the presentation-file format.

    One relator per line (``x1 x4^-1 x2 x0^-1``), ``parity x<k> = white|black``
    directives, optional ``generators = N``, ``#`` comments.  Generators not
    given a parity default to white.
    """
    rels, parity = [], {}
    ngens = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PARITY.match(line)
        if m:
            parity[int(m.group(1))] = m.group(2)
            continue
        m = _GENS.match(line)
        if m:
            ngens = int(m.group(1))
            continue
        try:
            w = parse_word(line)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        rels.append(w)
    top = max([gen_of(a) for r in rels for a in r] + list(parity) + [ngens - 1, 0])
    gens = tuple(Generator(k, parity.get(k, WHITE)) for k in range(top + 1))
    return SymPresentation(gens, tuple(rels))


def check_c4(p):
    """C''(4) for length-4 relators.

    Returns (ok, witness); the witness is (piece, relator, other relator) for a
    piece of length >= 2, or (relator, None, None) for a bad relator.
    """
    for r in sorted(p.relators):
        if len(r) != 4 or any(r[i] == -r[(i + 1) % 4] for i in range(4)):
            return False, (r, None, None)
    for key in sorted(p.pair_relators):
        rels = sorted(p.pair_relators[key])
        if len(rels) > 1:
            return False, (key, rels[0], rels[1])
    return True, None


def t4_violation(r1, r2, r3):
    """True if no two are mutually inverse and all three products cancel."""
    if inverse(r1) in (r2, r3) or inverse(r2) == r3:
        return False
    return r1[-1] == -r2[0] and r2[-1] == -r3[0] and r3[-1] == -r1[0]


def check_t4(p):
    """T(4): returns (ok, witness triple or None)."""
    by_first = {}
    for r in p.relators:
        by_first.setdefault(r[0], []).append(r)
    for r1 in sorted(p.relators):
        for r2 in sorted(by_first.get(-r1[-1], ())):
            for r3 in sorted(by_first.get(-r2[-1], ())):
                if t4_violation(r1, r2, r3):
                    return False, (r1, r2, r3)
    return True, None


def is_small_cancellation(p):
    return p.small_cancellation


def _l_shaped_crooks(p):
    """Inner-crook labels of reduced L-shaped three-square tilings that are not pairs.

    Squares A at (0,0), B at (1,0), C at (0,1); a square with lower-left corner
    (x, y) reads h(x,y) v(x+1,y) h(x,y+1)^-1 v(x,y)^-1 counterclockwise.  The
    crook at (1,1) reads h(1,1)^-1 v(1,1) going from (2,1) to (1,2).
    """
    rels = sorted(p.relators)
    by_last = {}
    by_first = {}
    for s in rels:
        by_last.setdefault(s[3], []).append(s)
        by_first.setdefault(s[0], []).append(s)
    found = set()
    for h00, v10, mh01, mv00 in rels:
        h01, v00 = -mh01, -mv00
        for h10, v20, mh11, _ in by_last.get(-v10, ()):
            if h10 == -h00:  # B mirrors A
                continue
            for _, v11, mh02, mv01 in by_first.get(h01, ()):
                if -mv01 == -v00:  # C mirrors A
                    continue
                crook = (mh11, v11)
                if crook[0] == -crook[1] or p.is_pair(*crook):
                    continue
                found.add(crook)
                found.add(inverse(crook))
    return found


def _classify(p, a, c):
    if a == -c:
        return NONE
    if p.is_pair(a, c):
        return PAIR
    for b in p.letters():
        if p.is_pair(a, b) and p.is_pair(-b, c):
            return SISTER_SET
    if (a, c) in p.pseudo_pairs:
        return PSEUDO_PAIR
    return NONE


def classify_two_letter(p, w):
    if len(w) != 2:
        raise ValueError("expected a two-letter word")
    return p.class_table.get(tuple(w), NONE)


def exchange_pair(p, w):
    w = tuple(w)
    try:
        return p.pair_table[w][1]
    except KeyError:
        raise NotAPair(f"{format_word(w)} is not a pair") from None
