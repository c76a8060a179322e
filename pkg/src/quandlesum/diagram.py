"""Oriented knot and link diagrams in PD form.

Conventions
-----------
A crossing ``(a, b, c, d)`` lists its four edges counterclockwise,
starting from the incoming under-edge ``a``; ``c`` is the outgoing
under-edge and ``b``, ``d`` are the over-edges.  The crossing is
positive when the over-strand runs ``d -> b`` and negative when it runs
``b -> d``.

Slots 0..3 of a crossing are the positions of ``a, b, c, d``.  Each slot
is either the head of its edge (the edge ends there) or its tail.  Slot 0
is always a head and slot 2 a tail; for the over-strand, slot 3 is the
head at positive crossings and slot 1 at negative ones.

Components are cyclic edge lists in orientation order.  A component of a
single edge that meets no crossing is a free loop.
"""

from __future__ import annotations

import json
import re
from collections import Counter

from .errors import (
    AmbiguousOverDirection,
    DiagramError,
    EdgeCountMismatch,
    NonPlanarRotation,
    OverStrandMismatch,
    PDSyntaxError,
    SignConflict,
    UnderStrandMismatch,
    UnpairedCrossing,
)


def head_slots(sign):
    return (0, 3) if sign > 0 else (0, 1)


def tail_slots(sign):
    return (2, 1) if sign > 0 else (2, 3)


class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


class Diagram:
    """A validated oriented diagram.

    Derived data, all computed at construction:

    ``signs``      crossing signs (+1 / -1)
    ``head``       edge -> (crossing, slot) where the edge ends (None for free loops)
    ``tail``       edge -> (crossing, slot) where it starts
    ``arcs``       tuple of arcs; each arc is its edges in strand order
    ``edge_arc``   edge -> arc id
    ``faces``      tuple of faces; a face is a cyclic tuple of darts
                   ``(edge, direction)`` walked with the face on the left
    """

    def __init__(self, crossings, components, signs=None):
        self.crossings = tuple(tuple(int(x) for x in c) for c in crossings)
        self.components = tuple(tuple(int(e) for e in comp) for comp in components)
        for i, c in enumerate(self.crossings):
            if len(c) != 4:
                raise DiagramError(f"crossing {i} has {len(c)} entries, expected 4")
            if any(e < 1 for e in c):
                raise DiagramError(f"crossing {i} has a non-positive edge label")
        self._check_edges()
        self.successor = {}
        for comp in self.components:
            for k, e in enumerate(comp):
                self.successor[e] = comp[(k + 1) % len(comp)]
        for i, (a, b, c, d) in enumerate(self.crossings):
            if self.successor[a] != c:
                raise UnderStrandMismatch(i)
        self.signs = self._resolve_signs(signs)
        try:
            self._resolve_signs(None)
            self.needs_signs = False
        except AmbiguousOverDirection:
            self.needs_signs = True
        self._slot_maps()
        self._compute_arcs()
        self._compute_faces()

    # -- validation -----------------------------------------------------
    def _check_edges(self):
        counts = Counter(e for c in self.crossings for e in c)
        for e in sorted(counts):
            if counts[e] != 2:
                raise EdgeCountMismatch(e, counts[e])
        seen = set()
        for comp in self.components:
            if not comp:
                raise DiagramError("empty component")
            for e in comp:
                if e < 1:
                    raise DiagramError(f"non-positive edge label {e}")
                if e in seen:
                    raise DiagramError(f"edge {e} listed in two components or twice")
                seen.add(e)
                if counts.get(e, 0) == 0 and len(comp) > 1:
                    raise EdgeCountMismatch(e, 0)
        missing = set(counts) - seen
        if missing:
            raise DiagramError(f"edges {sorted(missing)} are not on any component")
        self.edges = tuple(sorted(seen))

    def _resolve_signs(self, given):
        n = len(self.crossings)
        succ = self.successor
        options = []
        for i, (a, b, c, d) in enumerate(self.crossings):
            opts = set()
            if succ[d] == b:
                opts.add(1)
            if succ[b] == d:
                opts.add(-1)
            if not opts:
                raise OverStrandMismatch(i)
            options.append(opts)
        if given is not None:
            given = [int(s) for s in given]
            if len(given) != n:
                raise DiagramError(f"{len(given)} signs for {n} crossings")
            for i, s in enumerate(given):
                if s not in options[i]:
                    raise SignConflict(i)
            return tuple(given)

        signs = [None] * n
        heads, tails = Counter(), Counter()
        for i, (a, b, c, d) in enumerate(self.crossings):
            heads[a] += 1
            tails[c] += 1
            if len(options[i]) == 1:
                s = next(iter(options[i]))
                signs[i] = s
                heads[d if s > 0 else b] += 1
                tails[b if s > 0 else d] += 1
        changed = True
        while changed:
            changed = False
            for i, (a, b, c, d) in enumerate(self.crossings):
                if signs[i] is not None or b == d:
                    continue
                s = None
                if heads[b] or tails[d]:
                    s = 1
                elif heads[d] or tails[b]:
                    s = -1
                if s is not None:
                    signs[i] = s
                    heads[d if s > 0 else b] += 1
                    tails[b if s > 0 else d] += 1
                    changed = True
        for i, s in enumerate(signs):
            if s is None:
                raise AmbiguousOverDirection(i)
        return tuple(signs)

    def _slot_maps(self):
        self.head, self.tail = {}, {}
        for i, rec in enumerate(self.crossings):
            s = self.signs[i]
            for k in head_slots(s):
                if rec[k] in self.head:
                    raise OverStrandMismatch(i if k else self.head[rec[k]][0],
                                             f"edge {rec[k]} would end at two crossings")
                self.head[rec[k]] = (i, k)
            for k in tail_slots(s):
                if rec[k] in self.tail:
                    raise OverStrandMismatch(i if k != 2 else self.tail[rec[k]][0],
                                             f"edge {rec[k]} would start at two crossings")
                self.tail[rec[k]] = (i, k)
        for e in self.edges:
            if (e in self.head) != (e in self.tail):
                raise DiagramError(f"edge {e} has only one end")
            if e not in self.head:
                self.head[e] = self.tail[e] = None
        # successor must agree with the slot geometry
        for e in self.edges:
            h = self.head[e]
            if h is not None:
                i, k = h
                if self.crossings[i][(k + 2) % 4] != self.successor[e]:
                    raise DiagramError(f"orientation of edge {e} is inconsistent")

    def _compute_arcs(self):
        uf = _UnionFind(self.edges)
        for a, b, c, d in self.crossings:
            uf.union(b, d)
        groups = {}
        for e in self.edges:
            groups.setdefault(uf.find(e), []).append(e)
        arcs = []
        for members in groups.values():
            mset = set(members)
            start = None
            for e in members:
                t = self.tail[e]
                if t is not None and t[1] == 2:
                    start = e
                    break
            if start is None:
                start = min(members)
            ordered = [start]
            e = start
            while True:
                h = self.head[e]
                if h is None or h[1] == 0:
                    break
                e = self.successor[e]
                if e == start or e not in mset:
                    break
                ordered.append(e)
            arcs.append(tuple(ordered))
        arcs.sort(key=min)
        self.arcs = tuple(arcs)
        self.edge_arc = {e: i for i, arc in enumerate(arcs) for e in arc}
        self.over_arc = tuple(self.edge_arc[c[1]] for c in self.crossings)
        self.in_arc = tuple(self.edge_arc[c[0]] for c in self.crossings)
        self.out_arc = tuple(self.edge_arc[c[2]] for c in self.crossings)

    def _slot_role(self, i, k):
        return "head" if k in head_slots(self.signs[i]) else "tail"

    def next_dart(self, dart):
        """The dart following ``dart`` around the face on its left."""
        e, direction = dart
        i, k = self.head[e] if direction > 0 else self.tail[e]
        k2 = (k - 1) % 4
        e2 = self.crossings[i][k2]
        return (e2, 1 if self._slot_role(i, k2) == "tail" else -1)

    def _compute_faces(self):
        faces = []
        seen = set()
        for e in self.edges:
            for direction in (1, -1):
                dart = (e, direction)
                if dart in seen:
                    continue
                if self.head[e] is None:
                    seen.add(dart)
                    faces.append((dart,))
                    continue
                face = []
                while dart not in seen:
                    seen.add(dart)
                    face.append(dart)
                    dart = self.next_dart(dart)
                k = face.index(min(face))
                faces.append(tuple(face[k:] + face[:k]))
        faces.sort()
        self.faces = tuple(faces)
        self.dart_face = {d: f for f, face in enumerate(faces) for d in face}

        # Euler check on each connected piece (free loops are their own piece)
        uf = _UnionFind(range(len(self.crossings)))
        for e in self.edges:
            if self.head[e] is not None:
                uf.union(self.head[e][0], self.tail[e][0])
        pieces = {}
        for i in range(len(self.crossings)):
            pieces.setdefault(uf.find(i), set()).add(i)
        face_piece = Counter()
        for face in faces:
            e = face[0][0]
            if self.head[e] is not None:
                face_piece[uf.find(self.head[e][0])] += 1
        for root, members in pieces.items():
            V = len(members)
            E = 2 * V
            F = face_piece[root]
            if V - E + F != 2:
                raise NonPlanarRotation(V, E, F)

    # -- accessors -------------------------------------------------------
    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def writhe(self):
        return sum(self.signs)

    def crossing_sign(self, i):
        return self.signs[i]

    def free_loops(self):
        return [e for e in self.edges if self.head[e] is None]

    def component_of(self, e):
        for k, comp in enumerate(self.components):
            if e in comp:
                return k
        raise KeyError(e)

    def to_json(self):
        out = {"crossings": [list(c) for c in self.crossings],
               "components": [list(c) for c in self.components]}
        if self.needs_signs:
            out["signs"] = list(self.signs)
        return out

    def dumps(self):
        return json.dumps(self.to_json())

    def __eq__(self, other):
        return (isinstance(other, Diagram) and self.crossings == other.crossings
                and self.components == other.components and self.signs == other.signs)

    def __hash__(self):
        return hash((self.crossings, self.components, self.signs))

    def __repr__(self):
        return f"Diagram(crossings={list(self.crossings)}, components={list(self.components)})"


def reverse_orientation(diagram):
    """The same diagram with every component's orientation reversed."""
    crossings = [(c, d, a, b) for a, b, c, d in diagram.crossings]
    components = [[comp[0]] + list(reversed(comp[1:])) for comp in diagram.components]
    return Diagram(crossings, components, diagram.signs if diagram.needs_signs else None)


def mirror(diagram):
    """Reflection in the plane: swap ``b`` and ``d`` at every crossing."""
    crossings = [(a, d, c, b) for a, b, c, d in diagram.crossings]
    signs = [-s for s in diagram.signs] if diagram.needs_signs else None
    return Diagram(crossings, diagram.components, signs)


def crossing_sign(diagram, crossing):
    return diagram.signs[crossing]


def faces(diagram):
    return diagram.faces


def fundamental_presentation(diagram):
    """Generators (arc ids) and one relation per crossing.

    A relation ``(out, in, over, sign)`` reads ``out = in ▷^sign over``.
    """
    gens = list(range(len(diagram.arcs)))
    rels = [(diagram.out_arc[i], diagram.in_arc[i], diagram.over_arc[i], diagram.signs[i])
            for i in range(diagram.n_crossings)]
    return gens, rels


# ------------------------------------------------------------- builders

def diagram_from_slots(crossings, signs, loops=(), order_key=None):
    """Build a Diagram from crossing records with arbitrary edge labels.

    Edges are renumbered 1..E by walking components in orientation
    order.  Components are visited in increasing order of their smallest
    ``order_key(label)`` (default: the label itself), each starting at
    that edge.  Returns ``(diagram, relabel)`` with ``relabel[old] = new``.
    """
    key = order_key or (lambda x: x)
    heads = {}
    for i, rec in enumerate(crossings):
        for k in head_slots(signs[i]):
            heads[rec[k]] = (i, k)
    labels = set(heads) | set(loops)
    succ = {}
    for e, (i, k) in heads.items():
        succ[e] = crossings[i][(k + 2) % 4]
    for e in loops:
        succ[e] = e
    comps = []
    seen = set()
    for e in labels:
        if e in seen:
            continue
        comp = [e]
        seen.add(e)
        x = succ[e]
        while x != e:
            if x in seen:
                raise DiagramError("edge successor structure is not a union of cycles")
            comp.append(x)
            seen.add(x)
            x = succ[x]
        start = min(range(len(comp)), key=lambda j: key(comp[j]))
        comps.append(comp[start:] + comp[:start])
    comps.sort(key=lambda c: key(c[0]))
    relabel = {}
    for comp in comps:
        for e in comp:
            relabel[e] = len(relabel) + 1
    new_crossings = [tuple(relabel[e] for e in rec) for rec in crossings]
    new_components = [[relabel[e] for e in comp] for comp in comps]
    return Diagram(new_crossings, new_components, signs), relabel


def braid_closure(word, strands=None):
    """Closure of a braid word.

    ``word`` holds nonzero ints: ``i`` is σ_i (the strand from position i
    passes over to i+1, a positive crossing), ``-i`` its inverse.
    Strands run upward and close up on the right.
    """
    n = strands or (max((abs(g) for g in word), default=0) + 1)
    if any(g == 0 or abs(g) >= n for g in word):
        raise ValueError("generator out of range")
    fresh = iter(range(1, 10 ** 9))
    start = {p: next(fresh) for p in range(1, n + 1)}
    cur = dict(start)
    crossings, signs = [], []
    for g in word:
        i = abs(g)
        bl, br = cur[i], cur[i + 1]
        tl, tr = next(fresh), next(fresh)
        if g > 0:
            crossings.append([br, tr, tl, bl])
            signs.append(1)
        else:
            crossings.append([bl, br, tr, tl])
            signs.append(-1)
        cur[i], cur[i + 1] = tl, tr
    uf = _UnionFind()
    for p in range(1, n + 1):
        uf.union(cur[p], start[p])
    crossings = [[uf.find(e) for e in rec] for rec in crossings]
    used = {e for rec in crossings for e in rec}
    loops = sorted({uf.find(start[p]) for p in range(1, n + 1)} - used)
    diagram, _ = diagram_from_slots(crossings, signs, loops)
    return diagram


# -------------------------------------------------------------- parsing

_PD_TOKEN = re.compile(r"\s*(PD|X|\[|\]|,|-?\d+)", re.ASCII)


def _tokenize_pd(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _PD_TOKEN.match(text, pos)
        if not m:
            raise PDSyntaxError(pos, f"unexpected character {text[pos]!r}")
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


def _parse_classic_pd(text):
    toks = _tokenize_pd(text)
    k = 0

    def expect(value):
        nonlocal k
        tok, pos = toks[k]
        if tok != value:
            raise PDSyntaxError(pos, f"expected {value!r}, found {tok!r}")
        k += 1

    def number():
        nonlocal k
        tok, pos = toks[k]
        if not re.fullmatch(r"-?\d+", tok):
            raise PDSyntaxError(pos, f"expected an integer, found {tok!r}")
        k += 1
        return int(tok)

    expect("PD")
    expect("[")
    crossings = []
    if toks[k][0] != "]":
        while True:
            expect("X")
            expect("[")
            rec = [number()]
            for _ in range(3):
                expect(",")
                rec.append(number())
            expect("]")
            crossings.append(rec)
            if toks[k][0] == ",":
                k += 1
                continue
            break
    expect("]")
    tok, pos = toks[k]
    if tok != "<end>":
        raise PDSyntaxError(pos, "trailing input")
    return crossings


def parse_pd(text):
    """Parse a diagram from JSON or from classic ``PD[X[a,b,c,d], ...]`` text.

    Classic text describes a knot whose edges are numbered 1..2n
    consecutively along the strand; ``PD[]`` is the crossingless unknot.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PDSyntaxError(exc.pos, exc.msg) from exc
        return diagram_from_json(data)
    crossings = _parse_classic_pd(stripped)
    if not crossings:
        return Diagram([], [[1]])
    counts = Counter(e for c in crossings for e in c)
    for e in sorted(counts):
        if counts[e] != 2:
            raise EdgeCountMismatch(e, counts[e])
    n = 2 * len(crossings)
    for e in range(1, n + 1):
        if counts.get(e, 0) != 2:
            raise EdgeCountMismatch(e, counts.get(e, 0))
    return Diagram(crossings, [list(range(1, n + 1))])


def diagram_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    if "crossings" not in data or "components" not in data:
        raise DiagramError("diagram JSON needs 'crossings' and 'components'")
    return Diagram(data["crossings"], data["components"], data.get("signs"))


_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+\-−])")


def parse_gauss(text):
    """Parse an oriented signed Gauss code, one component per line.

    Tokens look like ``O1+`` or ``U2-``: passage type (over/under),
    crossing label, crossing sign.
    """
    comps = []
    offset = 0
    for line in text.splitlines():
        toks = line.split()
        if not toks:
            continue
        passes = []
        for tok in toks:
            m = _GAUSS_TOKEN.fullmatch(tok)
            if not m:
                raise PDSyntaxError(offset + line.find(tok), f"bad Gauss token {tok!r}")
            sign = 1 if m.group(3) == "+" else -1
            passes.append((m.group(1), int(m.group(2)), sign))
        comps.append(passes)
        offset += len(line) + 1
    if not comps:
        raise PDSyntaxError(0, "empty Gauss code")

    seen = {}
    next_edge = 1
    comp_edges = []
    for passes in comps:
        n = len(passes)
        edges = list(range(next_edge, next_edge + n))
        next_edge += n
        comp_edges.append(edges)
        for j, (kind, label, sign) in enumerate(passes):
            entry = seen.setdefault(label, {})
            if kind in entry:
                raise UnpairedCrossing(label)
            # edges[j-1] arrives at passage j, edges[j] leaves it
            entry[kind] = (edges[j - 1], edges[j], sign)
    crossings, signs = [], []
    for label in sorted(seen):
        entry = seen[label]
        if set(entry) != {"O", "U"}:
            raise UnpairedCrossing(label)
        u_in, u_out, su = entry["U"]
        o_in, o_out, so = entry["O"]
        if su != so:
            raise SignConflict(label)
        if su > 0:
            crossings.append([u_in, o_out, u_out, o_in])
        else:
            crossings.append([u_in, o_in, u_out, o_out])
        signs.append(su)
    return Diagram(crossings, comp_edges, signs)


def to_gauss(diagram):
    lines = []
    for comp in diagram.components:
        toks = []
        for e in comp:
            h = diagram.head[e]
            if h is None:
                continue
            i, k = h
            kind = "U" if k == 0 else "O"
            toks.append(f"{kind}{i + 1}{'+' if diagram.signs[i] > 0 else '-'}")
        lines.append(" ".join(toks))
    return "\n".join(lines)


def to_pd_text(diagram):
    return "PD[" + ", ".join("X[%d,%d,%d,%d]" % c for c in diagram.crossings) + "]"


def load_diagram(text, fmt=None):
    """Read a diagram in JSON, classic PD or Gauss form (auto-detected)."""
    s = text.strip()
    if fmt == "gauss" or (fmt is None and not s.startswith("{") and not s.startswith("PD")):
        return parse_gauss(s)
    return parse_pd(s)


# ---------------------------------------------------------- isomorphism

def _relabel_piece(diagram, start):
    labels = {}
    order = []
    visited = []
    queue = [start]
    while queue:
        e0 = queue.pop(0)
        if e0 in labels:
            continue
        e = e0
        while e not in labels:
            labels[e] = len(labels) + 1
            h = diagram.head[e]
            if h is not None and h[0] not in order:
                order.append(h[0])
                visited.append(h[0])
            e = diagram.successor[e]
        for i in order:
            for x in diagram.crossings[i]:
                if x not in labels:
                    queue.append(x)
    recs = sorted((tuple(labels[x] for x in diagram.crossings[i]), diagram.signs[i]) for i in order)
    return tuple(recs)


def canonical_form(diagram):
    """A key equal for two diagrams exactly when they differ only by
    edge and crossing renumbering (same rotation system and signs)."""
    uf = _UnionFind(diagram.edges)
    for rec in diagram.crossings:
        for x in rec[1:]:
            uf.union(rec[0], x)
    pieces = {}
    for e in diagram.edges:
        pieces.setdefault(uf.find(e), []).append(e)
    keys = []
    for members in pieces.values():
        if len(members) == 1 and diagram.head[members[0]] is None:
            keys.append(())
            continue
        keys.append(min(_relabel_piece(diagram, e) for e in members))
    return tuple(sorted(keys))


def isomorphic(d1, d2):
    return canonical_form(d1) == canonical_form(d2)
