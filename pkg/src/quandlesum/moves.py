"""Reidemeister moves as local rewrites of PD diagrams.

Every move returns the new diagram together with a ``Correspondence``
recording, for each edge of the new diagram, the edge of the old one it
descends from (``None`` for edges created inside the move's disk).
Colors are carried across a move by seeding those inherited edges and
propagating the crossing relations over the rest.

Sites
-----
``R1_insert``  site ``{"edge": e}``, variant ``{"sign": ±1, "side": "left"|"right"}``
``R1_delete``  site ``{"crossing": i}``
``R2_insert``  site ``{"face": f, "over": k, "under": l}``: positions of two
               darts of face ``f``; the strand of dart ``k`` is pushed over
               the strand of dart ``l``
``R2_delete``  site ``{"face": f}``, a bigon
``R3``         site ``{"face": f}``, a triangle crossed by a top, middle
               and bottom strand
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .coloring import check_coloring, require_coloring
from .diagram import Diagram, _UnionFind, diagram_from_slots, head_slots
from .errors import InvalidColoring, PatternMismatch

KINDS = ("R1_insert", "R1_delete", "R2_insert", "R2_delete", "R3")


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: dict
    variant: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "site": dict(self.site), "variant": dict(self.variant)}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        kind = data.get("kind")
        if kind not in KINDS:
            raise PatternMismatch(data.get("site"), f"unknown move kind {kind!r}")
        return cls(kind, dict(data.get("site", {})), dict(data.get("variant", {})))

    def __hash__(self):
        return hash(self.dumps())


@dataclass
class Correspondence:
    source: Diagram
    target: Diagram
    spec: MoveSpec
    edge_origin: dict  # target edge -> source edge or None

    @property
    def arc_map(self):
        """Source arc id -> sorted target arc ids sharing inherited edges."""
        out = {}
        for e, o in sorted(self.edge_origin.items()):
            if o is not None:
                out.setdefault(self.source.edge_arc[o], set()).add(self.target.edge_arc[e])
        return {a: sorted(v) for a, v in sorted(out.items())}


class _Work:
    """Mutable copy of a diagram's crossing records."""

    def __init__(self, diagram):
        self.d = diagram
        self.crossings = [list(c) for c in diagram.crossings]
        self.signs = list(diagram.signs)
        self.loops = list(diagram.free_loops())
        self.origin = {e: e for e in diagram.edges}
        self.next_label = max(diagram.edges) + 1

    def fresh(self, origin):
        e = self.next_label
        self.next_label += 1
        self.origin[e] = origin
        return e

    def splice(self, removed, inner):
        """Delete crossings, joining the strands that ran through them.

        ``inner`` are edges lying inside the move's disk; they never
        donate their origin to a joined edge.
        """
        uf = _UnionFind()
        for i in removed:
            a, b, c, d = self.crossings[i]
            uf.union(a, c)
            uf.union(b, d)
        for i in removed:
            self.crossings[i] = None
        classes = {}
        for i in removed_edges(self.d, removed):
            classes.setdefault(uf.find(i), []).append(i)
        for members in classes.values():
            outer = [e for e in members if e not in inner]
            rep = min(outer or members)
            if not outer:
                self.origin[rep] = None
            touched = False
            for rec in self.crossings:
                if rec is None:
                    continue
                for k, e in enumerate(rec):
                    if e in members:
                        rec[k] = rep
                        touched = True
            if not touched:
                self.loops.append(rep)

    def finish(self, spec):
        keep = [i for i, rec in enumerate(self.crossings) if rec is not None]
        crossings = [self.crossings[i] for i in keep]
        signs = [self.signs[i] for i in keep]
        target, relabel = diagram_from_slots(crossings, signs, self.loops)
        origin = {new: self.origin[old] for old, new in relabel.items()}
        return target, Correspondence(self.d, target, spec, origin)


def removed_edges(diagram, removed):
    return sorted({e for i in removed for e in diagram.crossings[i]})


def _face(diagram, site, size=None):
    try:
        f = int(site["face"])
    except (KeyError, TypeError, ValueError):
        raise PatternMismatch(site, "site needs an integer 'face'")
    if not 0 <= f < len(diagram.faces):
        raise PatternMismatch(site, f"face {f} does not exist")
    face = diagram.faces[f]
    if size is not None and len(face) != size:
        raise PatternMismatch(site, f"face has {len(face)} sides, expected {size}")
    return face


def _is_over(k):
    return k % 2 == 1


# ----------------------------------------------------------------- R1

def _r1_insert(work, spec):
    d = work.d
    site, variant = spec.site, spec.variant
    e = site.get("edge")
    if e not in d.head:
        raise PatternMismatch(site, f"no edge {e!r}")
    sign = variant.get("sign", 1)
    side = variant.get("side", "left")
    if sign not in (1, -1) or side not in ("left", "right"):
        raise PatternMismatch(site, "variant needs sign ±1 and side left|right")
    o = work.origin[e]
    loop = work.fresh(o)
    if d.head[e] is None:
        e2 = e
        work.loops.remove(e)
    else:
        e2 = work.fresh(o)
        i, k = d.head[e]
        work.crossings[i][k] = e2
    e1 = e
    if side == "right":
        rec = [e1, loop, loop, e2] if sign < 0 else [loop, loop, e2, e1]
    else:
        rec = [e1, e2, loop, loop] if sign > 0 else [loop, e1, e2, loop]
    work.crossings.append(rec)
    work.signs.append(sign)


def _r1_delete(work, spec):
    d = work.d
    site = spec.site
    i = site.get("crossing")
    if not isinstance(i, int) or not 0 <= i < d.n_crossings:
        raise PatternMismatch(site, f"no crossing {i!r}")
    rec = d.crossings[i]
    loop = None
    for k in range(4):
        e = rec[k]
        if rec[(k + 1) % 4] == e:
            for dart in ((e, 1), (e, -1)):
                if len(d.faces[d.dart_face[dart]]) == 1:
                    loop = e
    if loop is None:
        raise PatternMismatch(site, "crossing does not bound a monogon")
    work.splice([i], {loop})


# ----------------------------------------------------------------- R2

def _r2_insert(work, spec):
    d = work.d
    site = spec.site
    face = _face(d, site)
    try:
        kp, kq = int(site["over"]), int(site["under"])
        (p, dp), (q, dq) = face[kp], face[kq]
    except (KeyError, TypeError, ValueError, IndexError):
        raise PatternMismatch(site, "'over' and 'under' must be dart positions on the face")
    if p == q:
        raise PatternMismatch(site, "the two darts lie on the same edge")

    def split(e, keep_mid):
        # pieces in orientation order; e keeps its tail end
        o = work.origin[e]
        mid = work.fresh(o if keep_mid else None)
        last = work.fresh(o)
        i, k = d.head[e]
        work.crossings[i][k] = last
        return e, mid, last

    p1, p2, p3 = split(p, True)
    q1, q2, q3 = split(q, False)
    P_pre, P_m, P_post = (p1, p2, p3) if dp > 0 else (p3, p2, p1)
    Q_pre, Q_m, Q_post = (q1, q2, q3) if dq > 0 else (q3, q2, q1)
    # rays counterclockwise E, N, W, S at the east and west crossings
    east = [Q_post, P_pre, Q_m, P_m]
    west = [Q_m, P_post, Q_pre, P_m]
    p_in = {"east": P_pre if dp > 0 else P_m, "west": P_m if dp > 0 else P_post}
    for name, rays in (("east", east), ("west", west)):
        under_in = 2 if dq > 0 else 0  # index of the incoming under ray
        rec = rays[under_in:] + rays[:under_in]
        sign = 1 if rec[3] == p_in[name] else -1
        work.crossings.append(rec)
        work.signs.append(sign)


def _r2_delete(work, spec):
    d = work.d
    site = spec.site
    face = _face(d, site, 2)
    (e1, s1), (e2, s2) = face
    if e1 == e2:
        raise PatternMismatch(site, "bigon bounded by a single edge")
    ends = {e: (d.head[e], d.tail[e]) for e in (e1, e2)}
    if any(h is None for h, _ in ends.values()):
        raise PatternMismatch(site, "free loop")
    xs = {ends[e1][0][0], ends[e1][1][0]}
    if len(xs) != 2 or xs != {ends[e2][0][0], ends[e2][1][0]}:
        raise PatternMismatch(site, "bigon edges must join two distinct crossings")
    roles = {e: (_is_over(h[1]), _is_over(t[1])) for e, (h, t) in ends.items()}
    if sorted(roles.values()) != [(False, False), (True, True)]:
        raise PatternMismatch(site, "one strand must pass over at both crossings")
    work.splice(sorted(xs), {e1, e2})


# ----------------------------------------------------------------- R3

def _r3(work, spec):
    d = work.d
    site = spec.site
    face = _face(d, site, 3)
    edges = [e for e, _ in face]
    if len(set(edges)) != 3:
        raise PatternMismatch(site, "triangle edges must be distinct")
    strands = []
    for e in edges:
        h, t = d.head[e], d.tail[e]
        if h is None or h[0] == t[0]:
            raise PatternMismatch(site, "triangle edge is a loop")
        strands.append((e, t, h, _is_over(h[1]) + _is_over(t[1])))
    if len({t[0] for _, t, _, _ in strands} | {h[0] for _, _, h, _ in strands}) != 3:
        raise PatternMismatch(site, "triangle needs three distinct crossings")
    if sorted(s[3] for s in strands) != [0, 1, 2]:
        raise PatternMismatch(site, "strands must be stacked top, middle, bottom")
    orig = [list(rec) for rec in work.crossings]
    for e, (x, b1), (y, b2), _ in strands:
        a1, a2 = (b1 + 2) % 4, (b2 + 2) % 4
        outer_in, outer_out = orig[x][a1], orig[y][a2]
        work.crossings[x][a1] = e
        work.crossings[x][b1] = outer_out
        work.crossings[y][b2] = outer_in
        work.crossings[y][a2] = e
        work.origin[e] = None


_APPLY = {"R1_insert": _r1_insert, "R1_delete": _r1_delete, "R2_insert": _r2_insert,
          "R2_delete": _r2_delete, "R3": _r3}


def apply_move(diagram, spec):
    """Rewrite ``diagram`` by ``spec``; returns ``(new_diagram, correspondence)``."""
    if isinstance(spec, dict):
        spec = MoveSpec.from_json(spec)
    if spec.kind not in _APPLY:
        raise PatternMismatch(spec.site, f"unknown move kind {spec.kind!r}")
    work = _Work(diagram)
    _APPLY[spec.kind](work, spec)
    return work.finish(spec)


# ------------------------------------------------------ color transport

def transport_coloring(coloring, correspondence, quandle):
    """The coloring of the target diagram matching ``coloring`` outside the move's disk."""
    src, tgt = correspondence.source, correspondence.target
    require_coloring(src, quandle, coloring)
    colors = [None] * len(tgt.arcs)
    for e, o in correspondence.edge_origin.items():
        if o is None:
            continue
        a, c = tgt.edge_arc[e], coloring[src.edge_arc[o]]
        if colors[a] is not None and colors[a] != c:
            raise InvalidColoring(-1, f"inherited colors disagree on target arc {a}")
        colors[a] = c
    changed = True
    while changed:
        changed = False
        for i in range(tgt.n_crossings):
            y = colors[tgt.over_arc[i]]
            if y is None:
                continue
            a_in, a_out, s = tgt.in_arc[i], tgt.out_arc[i], tgt.signs[i]
            if colors[a_in] is not None and colors[a_out] is None:
                colors[a_out] = quandle.act(colors[a_in], y, s)
                changed = True
            elif colors[a_out] is not None and colors[a_in] is None:
                colors[a_in] = quandle.act(colors[a_out], y, -s)
                changed = True
    if any(c is None for c in colors):
        raise InvalidColoring(-1, "transport left arcs uncolored")
    out = tuple(colors)
    bad = check_coloring(tgt, quandle, out)
    if bad is not None:
        raise InvalidColoring(bad, "after transport")
    return out


# ----------------------------------------------------------- exploring

def available_moves(diagram, kinds=KINDS):
    """Every move spec whose site matches its pattern, in a fixed order."""
    out = []
    if "R1_insert" in kinds:
        for e in diagram.edges:
            for sign in (1, -1):
                for side in ("left", "right"):
                    out.append(MoveSpec("R1_insert", {"edge": e}, {"sign": sign, "side": side}))
    for kind in ("R1_delete", "R2_delete", "R3"):
        if kind not in kinds:
            continue
        sites = ([{"crossing": i} for i in range(diagram.n_crossings)] if kind == "R1_delete"
                 else [{"face": f} for f in range(len(diagram.faces))])
        for site in sites:
            spec = MoveSpec(kind, site)
            try:
                _APPLY[kind](_Work(diagram), spec)
            except PatternMismatch:
                continue
            out.append(spec)
    if "R2_insert" in kinds:
        for f, face in enumerate(diagram.faces):
            for k in range(len(face)):
                for l in range(len(face)):
                    if face[k][0] != face[l][0]:
                        out.append(MoveSpec("R2_insert", {"face": f, "over": k, "under": l}))
    return out


def random_move(diagram, rng, max_crossings=12):
    """A uniformly chosen move kind among those available, then a uniform site.

    Insertions are withheld once the diagram reaches ``max_crossings``.
    """
    kinds = [k for k in KINDS if not (k.endswith("insert") and
                                      diagram.n_crossings + (2 if k == "R2_insert" else 1) > max_crossings)]
    by_kind = {}
    for spec in available_moves(diagram, kinds):
        by_kind.setdefault(spec.kind, []).append(spec)
    choices = [k for k in KINDS if k in by_kind]
    if not choices:
        by_kind = {"R1_insert": available_moves(diagram, ("R1_insert",))}
        choices = ["R1_insert"]
    kind = rng.choice(choices)
    return rng.choice(by_kind[kind])


def orbit_explore(diagram, coloring, quandle, depth, max_states=10000, kinds=KINDS):
    """Breadth-first set of (diagram, coloring) pairs reachable in ``depth`` moves.

    Pairs are keyed by the diagram's JSON and the coloring; exploration
    stops early once ``max_states`` pairs are known.
    """
    start = (diagram, tuple(coloring))
    seen = {(diagram.dumps(), start[1]): start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for d, c in frontier:
            for spec in available_moves(d, kinds):
                d2, corr = apply_move(d, spec)
                c2 = transport_coloring(c, corr, quandle)
                key = (d2.dumps(), c2)
                if key not in seen:
                    seen[key] = (d2, c2)
                    nxt.append((d2, c2))
                    if len(seen) >= max_states:
                        return list(seen.values())
        frontier = nxt
    return list(seen.values())


def random_sequence(diagram, length, rng=None, seed=0, max_crossings=12):
    """Apply ``length`` random moves; returns the list of correspondences."""
    rng = rng or random.Random(seed)
    out = []
    for _ in range(length):
        d2, corr = apply_move(diagram, random_move(diagram, rng, max_crossings))
        out.append(corr)
        diagram = d2
    return out
