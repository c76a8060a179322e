"""Quandle colorings of diagrams.

A coloring assigns a quandle element to every arc so that at each
crossing ``out = in ▷ over`` (positive) or ``out = in ▷⁻¹ over``
(negative).  Colorings are tuples indexed by arc id.

The search engine seeds one unknown arc at a time and propagates the
crossing relations until nothing more is forced.  A relation fires as
soon as the over color and one of the two under colors are known.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

from .errors import InvalidColoring, SizeLimitExceeded

BRUTE_FORCE_LIMIT = 10 ** 7


def check_coloring(diagram, quandle, coloring):
    """Index of the first crossing whose relation fails, or ``None``."""
    if len(coloring) != len(diagram.arcs):
        return -1
    for i in range(diagram.n_crossings):
        x_in = coloring[diagram.in_arc[i]]
        y = coloring[diagram.over_arc[i]]
        if quandle.act(x_in, y, diagram.signs[i]) != coloring[diagram.out_arc[i]]:
            return i
    return None


def is_coloring(diagram, quandle, coloring):
    return check_coloring(diagram, quandle, coloring) is None


def require_coloring(diagram, quandle, coloring):
    bad = check_coloring(diagram, quandle, coloring)
    if bad == -1:
        raise InvalidColoring(-1, f"expected {len(diagram.arcs)} arc colors, got {len(coloring)}")
    if bad is not None:
        raise InvalidColoring(bad)
    for c in coloring:
        if not 0 <= c < quandle.order:
            raise InvalidColoring(-1, f"color {c} outside the quandle")


class _Engine:
    """Backtracking search with relation propagation."""

    def __init__(self, diagram, quandle):
        self.n = len(diagram.arcs)
        self.q = quandle
        self.rels = [(diagram.in_arc[i], diagram.over_arc[i], diagram.out_arc[i], diagram.signs[i])
                     for i in range(diagram.n_crossings)]
        self.watch = [[] for _ in range(self.n)]
        for r, (a_in, a_ov, a_out, _) in enumerate(self.rels):
            for a in {a_in, a_ov, a_out}:
                self.watch[a].append(r)
        # how many relations an arc could trigger once colored
        self.degree = [len(w) for w in self.watch]

    def _assign(self, colors, arc, value, trail):
        """Set ``arc`` and propagate; return False on a contradiction."""
        colors[arc] = value
        trail.append(arc)
        stack = [arc]
        act = self.q.act
        while stack:
            a = stack.pop()
            for r in self.watch[a]:
                i, o, u, s = self.rels[r]
                ci, co, cu = colors[i], colors[o], colors[u]
                if co is None:
                    continue
                if ci is not None:
                    want = act(ci, co, s)
                    if cu is None:
                        colors[u] = want
                        trail.append(u)
                        stack.append(u)
                    elif cu != want:
                        return False
                elif cu is not None:
                    colors[i] = act(cu, co, -s)
                    trail.append(i)
                    stack.append(i)
        return True

    def _choose(self, colors):
        best = None
        for a in range(self.n):
            if colors[a] is None and (best is None or self.degree[a] > self.degree[best]):
                best = a
        return best

    def search(self, colors, out):
        arc = self._choose(colors)
        if arc is None:
            out.append(tuple(colors))
            return
        for v in range(self.q.order):
            trail = []
            if self._assign(colors, arc, v, trail):
                self.search(colors, out)
            for a in trail:
                colors[a] = None

    def count(self, colors):
        arc = self._choose(colors)
        if arc is None:
            return 1
        total = 0
        for v in range(self.q.order):
            trail = []
            if self._assign(colors, arc, v, trail):
                total += self.count(colors)
            for a in trail:
                colors[a] = None
        return total

    def root_branch(self, value, counting):
        colors = [None] * self.n
        if self.n == 0:
            return 1 if counting else [()]
        arc = self._choose(colors)
        trail = []
        if not self._assign(colors, arc, value, trail):
            return 0 if counting else []
        if counting:
            return self.count(colors)
        out = []
        self.search(colors, out)
        return out


def _branch_worker(args):
    diagram, quandle, value, counting = args
    return _Engine(diagram, quandle).root_branch(value, counting)


def _run(diagram, quandle, counting, workers):
    engine = _Engine(diagram, quandle)
    if engine.n == 0:
        return 1 if counting else [()]
    values = range(quandle.order)
    if workers and workers > 1 and quandle.order > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_branch_worker, [(diagram, quandle, v, counting) for v in values]))
    else:
        parts = [engine.root_branch(v, counting) for v in values]
    if counting:
        return sum(parts)
    return sorted(itertools.chain.from_iterable(parts))


def enumerate_colorings(diagram, quandle, workers=1):
    """All colorings, sorted lexicographically by arc-indexed color vector.

    With ``workers > 1`` the colors of the first branching arc are split
    across processes; the merged result is identical to the serial one.
    """
    return _run(diagram, quandle, False, workers)


def count_colorings(diagram, quandle, workers=1):
    return _run(diagram, quandle, True, workers)


def brute_force_colorings(diagram, quandle, limit=BRUTE_FORCE_LIMIT):
    """Try every arc-color vector; same contract as ``enumerate_colorings``."""
    n = len(diagram.arcs)
    size = quandle.order ** n
    if size > limit:
        raise SizeLimitExceeded(size, limit)
    return [c for c in itertools.product(range(quandle.order), repeat=n)
            if check_coloring(diagram, quandle, c) is None]
