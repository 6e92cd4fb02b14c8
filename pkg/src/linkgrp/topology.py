"""Loops, longitudes and move annotation.

A loop is recorded by the regions it passes through: downward through
``x_i`` reads ``x_i``, upward reads ``x_i^-1``.  Words of the Dehn
presentation enter the augmented presentation through ``x_i -> x_i x_0^-1``.

Longitudes use the blackboard pushoff to the left of the oriented component.
The pushoff follows the component through each crossing, so between
consecutive crossings it meets the region on its left exactly when the
over/under state changes.  With the relator orientation used here the loop
sits below the regions along over-passes of the PD code, so it heads down
when leaving an under-pass and up when leaving an over-pass.  The base point
is taken at an under-pass, where the pushoff sits above the regions.

Word-level outputs are conjugacy-class representatives: the path joining a
loop to the base point is only fixed up to conjugacy.  Nontriviality is
reported as evidence: the geodesic of the longitude, which is nonempty
exactly when the longitude is a nontrivial element.
"""
from dataclasses import dataclass

from .diagram import BLACK, WHITE, classify_projection, compute_regions
from .errors import ContainsX0, NotLoopLike, PreconditionsViolated
from .presentation import augmented_dehn
from .rewriting import CHAIN, EXCHANGE, FREE, ROTATE, is_identity, reduce_to_geodesic
from .words import alternates_in_sign, format_word, free_reduce, inverse, letter

DOWN = "down"
UP = "up"


@dataclass(frozen=True)
class IntersectionSequence:
    entries: tuple  # (region label, DOWN | UP)
    base_point_marker: int = 0

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class LongitudeSpec:
    component: int
    word: tuple
    parity_changes: int
    raw_word: tuple = ()
    sequence: IntersectionSequence = None


def include_word(w):
    """Image under x_i -> x_i x_0^-1, left unreduced."""
    out = []
    for a in w:
        if abs(a) == 1:
            raise ContainsX0("included words are built from x_1, x_2, ...")
        out += [a, -1] if a > 0 else [1, a]
    return tuple(out)


def canonical_word(s):
    word = []
    for region, direction in s.entries:
        if direction not in (DOWN, UP):
            raise NotLoopLike(f"unknown direction {direction!r}")
        word.append(letter(region, 1 if direction == DOWN else -1))
    word = tuple(word)
    if len(word) % 2 or not alternates_in_sign(word):
        raise NotLoopLike("a loop crosses the regions alternately down and up")
    return word


def parity_changes(p, w):
    return sum(1 for a, b in zip(w, w[1:]) if p.parity(a) != p.parity(b))


def _check_projection(d, r):
    kind = classify_projection(d, r)
    bad = [k for k, ok in kind.items() if not ok]
    if bad:
        raise PreconditionsViolated("projection is not " + ", ".join(bad))


def longitude_sequence(d, r, i):
    """Regions met by the left pushoff of component i, from its first crossing."""
    if not d.crossings:
        raise PreconditionsViolated("component has no crossings")
    comps = d.strand_components()
    if not 0 <= i < len(comps):
        raise PreconditionsViolated(f"no component {i}")
    comp = _from_under(d, comps[i])
    entries = []
    for k, (c, pin, pout) in enumerate(comp):
        c2, pin2, _ = comp[(k + 1) % len(comp)]
        here = d.crossings[c].is_over(pin)
        there = d.crossings[c2].is_over(pin2)
        if here != there:
            left = r.sector_region[(c, pout)]
            entries.append((left, UP if here else DOWN))
    return IntersectionSequence(tuple(entries))


def _from_under(d, comp):
    for k, (c, pin, _) in enumerate(comp):
        if not d.crossings[c].is_over(pin):
            return comp[k:] + comp[:k]
    raise PreconditionsViolated("component never passes under")


def normalize_zigzag(p, w):
    """Stable partition of a cyclic word: white letters first, then black.

    The base point is placed at a black-to-white boundary of the cyclic word
    so the white block starts a run.  This is the combinatorial stand-in for
    the isotopy that gathers white intersections before black ones; it does
    not preserve the group element.
    """
    n = len(w)
    start = 0
    for k in range(n):
        if p.parity(w[k]) == WHITE and p.parity(w[k - 1]) == BLACK:
            start = k
            break
    rot = w[start:] + w[:start]
    return (tuple(a for a in rot if p.parity(a) == WHITE)
            + tuple(a for a in rot if p.parity(a) == BLACK))


def longitude_word(d, r, i, p=None):
    _check_projection(d, r)
    p = p or augmented_dehn(r, d)
    seq = longitude_sequence(d, r, i)
    raw = canonical_word(seq)
    if not raw:
        raise PreconditionsViolated(f"component {i} has no crossings")
    word = normalize_zigzag(p, raw)
    return LongitudeSpec(i, word, parity_changes(p, word), raw, seq)


def meridian(d, r, i):
    """Loop around the edge at the longitude base point: down its left region, up its right."""
    c, _, pout = _from_under(d, d.strand_components()[i])[0]
    return (letter(r.sector_region[(c, pout)]), -letter(r.sector_region[(c, (pout - 1) % 4)]))


def is_nontrivial(d, r=None):
    """Longitude evidence per component; True iff some longitude geodesic is nonempty."""
    if not d.crossings:
        raise PreconditionsViolated("diagram has no crossings")
    r = r or compute_regions(d)
    _check_projection(d, r)
    p = augmented_dehn(r, d)
    evidence = []
    for i in range(d.components):
        lon = longitude_word(d, r, i, p)
        geo, _ = reduce_to_geodesic(p, lon.raw_word)
        mu = meridian(d, r, i)
        comm = lon.raw_word + mu + inverse(lon.raw_word) + inverse(mu)
        evidence.append({
            "component": i,
            "longitude_word": format_word(lon.word),
            "raw_word": format_word(lon.raw_word),
            "geodesic": format_word(geo),
            "normalized_geodesic": format_word(reduce_to_geodesic(p, lon.word)[0]),
            "parity_changes": lon.parity_changes,
            "commutes_with_meridian": is_identity(p, comm),
        })
    return any(e["geodesic"] != "1" for e in evidence), evidence


def expand_chain(c):
    """Pair exchanges of a chain collapse, ending with the spike to cancel."""
    words = []
    u = c.verticals
    t = c.chain_word
    s = c.inner_link_path
    for k in range(len(s)):
        words.append(s[:k + 1] + (u[k + 1],) + t[k + 2:])
    return words


def annotate_moves(trace, p=None):
    """Tag trace steps as type-1 reductions, type-2 deformations or base-point moves.

    Free reductions give one type-1 tag per cancelled pair.  A chain collapse
    with n columns becomes n type-2 deformations, coloured by the boundary
    letter of the chain, followed by one type-1 reduction.
    """
    out = []
    for idx, step in enumerate(trace.steps if hasattr(trace, "steps") else trace):
        if step.tag == FREE:
            for _ in range((len(step.before) - len(step.after)) // 2):
                out.append({"step": idx, "move": "type-1"})
        elif step.tag == CHAIN:
            c = step.chain
            colour = BLACK if c.colour == WHITE else WHITE
            for _ in c.inner_link_path:
                out.append({"step": idx, "move": "type-2", "colour": colour})
            out.append({"step": idx, "move": "type-1"})
        elif step.tag == EXCHANGE:
            colour = p.parity(_first_change(step.before, step.after)) if p else None
            out.append({"step": idx, "move": "type-2", "colour": colour})
        elif step.tag == ROTATE:
            out.append({"step": idx, "move": "base-point", "k": step.shift})
    return out


def _first_change(before, after):
    for a, b in zip(before, after):
        if a != b:
            return a
    return before[0]


def included_free(w):
    return free_reduce(include_word(w))
