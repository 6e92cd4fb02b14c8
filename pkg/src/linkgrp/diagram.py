"""Link diagrams given as PD-style crossing tuples.

Grammar (one statement per line, ``#`` starts a comment)::

    X[a,b,c,d]            crossing; edges counterclockwise, a is the incoming
                          under-strand so a -> c passes under b -- d
    X[a,b,c,d] over=ac    the a -- c strand is the over-strand instead; the
                          tuple is rotated so that b becomes the incoming under
    outer=<edge>,<L|R>    outer face is on the left/right of <edge>, looking
                          away from the crossing where <edge> first occurs
    loops=<k>             k crossing-free circles (only valid with no crossings)
    relabel=<i>:<j>,...   rename region x_i to x_j after face tracing

Several crossings may share a line.  Without ``outer=`` the outer face is
``outer=<e>,L`` for the smallest edge label ``e`` (edge 1 for the usual codes).

A *sector* ``(c, i)`` is the corner of crossing ``c`` between position ``i``
and position ``i + 1`` (counterclockwise).  Looking outward along position
``i`` the sector ``(c, i)`` is on the left and ``(c, i - 1)`` on the right.
"""
import re
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import DanglingEdge, Disconnected, NonPlanar, ParseError

WHITE = "white"
BLACK = "black"

_CROSSING = re.compile(
    r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]"
    r"(?:\s*over\s*=\s*(ac|bd))?")
_OUTER = re.compile(r"^outer\s*=\s*(-?\d+)\s*,\s*([LR])$")
_LOOPS = re.compile(r"^loops\s*=\s*(\d+)$")
_RELABEL = re.compile(r"^relabel\s*=\s*(.+)$")


@dataclass(frozen=True)
class Crossing:
    incident_edges: tuple
    # (0, 2): positions 0 and 2 pass over; (1, 3): positions 1 and 3 pass over.
    over_pair: tuple = (1, 3)

    def is_over(self, pos):
        return pos in self.over_pair


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    components: int
    edge_count: int
    loops: int = 0
    outer: tuple = None
    relabel: tuple = ()
    occurrences: dict = field(default=None, compare=False, repr=False)

    def other_end(self, c, i):
        """The (crossing, position) at the far end of the edge at (c, i)."""
        a, b = self.occurrences[self.crossings[c].incident_edges[i]]
        return b if a == (c, i) else a

    def strand_components(self):
        """Trace each link component; returns lists of (crossing, in_pos, out_pos)."""
        n = len(self.crossings)
        seen = set()
        comps = []
        starts = [(c, 0) for c in range(n)] + [(c, 1) for c in range(n)]
        for c0, p0 in starts:
            if (c0, p0) in seen:
                continue
            comp = []
            c, p = c0, p0
            while (c, p) not in seen:
                q = (p + 2) % 4
                seen.add((c, p))
                seen.add((c, q))
                comp.append((c, p, q))
                c, p = self.other_end(c, q)
            comps.append(comp)
        return comps


def _sector_faces(crossings, occurrences):
    n = len(crossings)
    edges = [cr.incident_edges for cr in crossings]

    def other(c, i):
        a, b = occurrences[edges[c][i]]
        return b if a == (c, i) else a

    face_of = {}
    faces = []
    for c in range(n):
        for i in range(4):
            if (c, i) in face_of:
                continue
            fid = len(faces)
            cyc = []
            s = (c, i)
            while s not in face_of:
                face_of[s] = fid
                cyc.append(s)
                s = other(s[0], (s[1] + 1) % 4)
            faces.append(cyc)
    return faces, face_of


def _graph_components(crossings, occurrences):
    n = len(crossings)
    comp = [-1] * n
    k = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = k
        todo = [s]
        while todo:
            c = todo.pop()
            for e in crossings[c].incident_edges:
                for c2, _ in occurrences[e]:
                    if comp[c2] < 0:
                        comp[c2] = k
                        todo.append(c2)
        k += 1
    return k


def build_diagram(tuples, over=None, outer=None, loops=0, relabel=()):
    """Validate crossing tuples and build a LinkDiagram."""
    crossings = []
    for idx, t in enumerate(tuples):
        t = tuple(int(e) for e in t)
        if len(t) != 4:
            raise ParseError(f"crossing {idx} does not have four edges")
        if over is not None and over[idx] == "ac":
            t = t[1:] + t[:1]
        crossings.append(Crossing(t))
    counts = Counter(e for cr in crossings for e in cr.incident_edges)
    bad = sorted(e for e, k in counts.items() if k != 2)
    if bad:
        raise DanglingEdge(f"edges appearing other than twice: {bad}")
    if loops and crossings:
        raise Disconnected("free loops alongside crossings form a split diagram")
    occ = {}
    for c, cr in enumerate(crossings):
        for i, e in enumerate(cr.incident_edges):
            occ.setdefault(e, []).append((c, i))
    occ = {e: tuple(v) for e, v in occ.items()}
    if crossings:
        faces, _ = _sector_faces(crossings, occ)
        k = _graph_components(crossings, occ)
        v = len(crossings)
        # faces are traced per connected piece, so each piece contributes 2
        if v - 2 * v + len(faces) != 2 * k:
            raise NonPlanar(
                f"V - E + F = {v - 2 * v + len(faces)}, expected {2 * k}")
    if outer is not None and outer[0] not in occ:
        raise ParseError(f"outer edge {outer[0]} is not in the diagram")
    d = LinkDiagram(tuple(crossings), 0, len(occ), loops, outer, tuple(relabel), occ)
    ncomp = len(d.strand_components()) if crossings else loops
    return LinkDiagram(tuple(crossings), ncomp, len(occ), loops, outer, tuple(relabel), occ)


def parse_diagram(text):
    """Parse the diagram-file format described in the module docstring."""
    tuples, over = [], []
    outer = None
    loops = 0
    relabel = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("X"):
            pos = 0
            for m in _CROSSING.finditer(line):
                if line[pos:m.start()].strip(" ,;"):
                    raise ParseError(f"line {lineno}: unexpected {line[pos:m.start()]!r}")
                tuples.append(m.groups()[:4])
                over.append(m.group(5) or "bd")
                pos = m.end()
            if pos == 0 or line[pos:].strip(" ,;"):
                raise ParseError(f"line {lineno}: malformed crossing {line!r}")
            continue
        m = _OUTER.match(line)
        if m:
            outer = (int(m.group(1)), m.group(2))
            continue
        m = _LOOPS.match(line)
        if m:
            loops = int(m.group(1))
            continue
        m = _RELABEL.match(line)
        if m:
            try:
                relabel = [tuple(int(x) for x in item.split(":"))
                           for item in m.group(1).split(",")]
            except ValueError:
                raise ParseError(f"line {lineno}: bad relabel directive") from None
            continue
        raise ParseError(f"line {lineno}: cannot parse {line!r}")
    if not tuples and not loops:
        raise ParseError("diagram has neither crossings nor loops")
    return build_diagram(tuples, over, outer, loops, relabel)


@dataclass(frozen=True)
class RegionMap:
    """Faces of a connected diagram.

    ``regions[k]`` is the cyclic list of sectors of face ``x_k``; ``x_0`` is the
    outer face.  ``sector_region`` maps a sector (c, i) to its region label.
    """
    regions: tuple
    outer_region: int
    colour: dict
    sector_region: dict

    def __len__(self):
        return len(self.regions)

    def edge_sides(self, d):
        """Map edge -> (left region, right region) seen from its first occurrence."""
        out = {}
        for e, ((c, i), _) in d.occurrences.items():
            out[e] = (self.sector_region[(c, i)], self.sector_region[(c, (i - 1) % 4)])
        return out

    def adjacency(self, d):
        """Region adjacency as {region: set of regions sharing an edge}."""
        adj = {r: set() for r in range(len(self.regions))}
        for a, b in self.edge_sides(d).values():
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        if not d.crossings:
            adj = {0: {1}, 1: {0}}
        return adj

    def distances(self, d):
        adj = self.adjacency(d)
        dist = {}
        for s in adj:
            row = {s: 0}
            q = deque([s])
            while q:
                r = q.popleft()
                for t in adj[r]:
                    if t not in row:
                        row[t] = row[r] + 1
                        q.append(t)
            dist[s] = row
        return dist


def compute_regions(d, relabel=None):
    """Trace faces, label them x_0 (outer), x_1, ... and checkerboard-colour them.

    ``relabel`` (or the diagram's ``relabel=`` directive) renames labels after
    tracing; it must fix 0 and be a bijection.
    """
    if not d.crossings:
        if d.loops != 1:
            raise Disconnected("split diagram of free loops")
        return RegionMap(((), ()), 0, {0: WHITE, 1: BLACK}, {})
    if _graph_components(d.crossings, d.occurrences) != 1:
        raise Disconnected("diagram is a split union; split the input into factors")
    faces, face_of = _sector_faces(d.crossings, d.occurrences)
    if d.outer is not None:
        e, side = d.outer
    else:
        e, side = min(d.occurrences), "L"
    c, i = d.occurrences[e][0]
    outer_face = face_of[(c, i) if side == "L" else (c, (i - 1) % 4)]
    order = [outer_face] + [f for f in range(len(faces)) if f != outer_face]
    label = {f: k for k, f in enumerate(order)}
    mapping = dict(relabel) if relabel is not None else dict(d.relabel)
    if mapping:
        full = {k: mapping.get(k, k) for k in range(len(faces))}
        if sorted(full.values()) != list(range(len(faces))) or full[0] != 0:
            raise ValueError("relabelling must be a bijection fixing x_0")
        label = {f: full[k] for f, k in label.items()}
    sector_region = {s: label[f] for s, f in face_of.items()}
    regions = [None] * len(faces)
    for f, cyc in enumerate(faces):
        regions[label[f]] = tuple(cyc)
    colour = _checkerboard(d, sector_region, len(faces))
    return RegionMap(tuple(regions), 0, colour, sector_region)


def _checkerboard(d, sector_region, nfaces):
    adj = {r: set() for r in range(nfaces)}
    for e, occ in d.occurrences.items():
        c, i = occ[0]
        a = sector_region[(c, i)]
        b = sector_region[(c, (i - 1) % 4)]
        adj[a].add(b)
        adj[b].add(a)
    colour = {0: WHITE}
    q = deque([0])
    while q:
        r = q.popleft()
        for t in adj[r]:
            want = BLACK if colour[r] == WHITE else WHITE
            if t not in colour:
                colour[t] = want
                q.append(t)
            elif colour[t] != want:
                raise NonPlanar("regions do not admit a checkerboard colouring")
    return colour


def classify_projection(d, r):
    """Report whether the projection is alternating, reduced and elementary."""
    if not d.crossings:
        return {"alternating": True, "reduced": True, "elementary": True}
    alternating = True
    for comp in d.strand_components():
        states = [d.crossings[c].is_over(p) for c, p, _ in comp]
        if any(states[k] == states[(k + 1) % len(states)] for k in range(len(states))):
            alternating = False
    reduced = all(
        len({r.sector_region[(c, i)] for i in range(4)}) == 4
        for c in range(len(d.crossings)))
    shared = Counter()
    for a, b in r.edge_sides(d).values():
        if a != b:
            shared[frozenset((a, b))] += 1
    elementary = reduced and all(k <= 1 for k in shared.values())
    return {"alternating": alternating, "reduced": reduced, "elementary": elementary}
