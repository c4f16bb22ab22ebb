"""De Bruijn graph of an automaton, its pair graph, and the searches on them.

Vertices are integers: a word ``z`` of length ``r-1`` is numbered in base
``k`` like the rule table. The edge leaving ``v`` that appends letter ``y``
carries the rule label ``v*k + y`` and enters ``(v*k + y) % k**(r-1)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ContractError, ConsistencyError

Word = tuple[int, ...]


@dataclass(frozen=True)
class DbEdge:
    frm: int
    to: int
    label: int
    sq_weight: Fraction


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk from the source; ``labels`` are the rule words in order."""

    labels: tuple[Word, ...]
    sq_product: Fraction


@dataclass(frozen=True, eq=False)
class WeightedDeBruijnGraph:
    k: int
    r: int
    quiescent: int
    out_edges: tuple[tuple[DbEdge, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.out_edges)

    @property
    def source(self) -> int:
        return vertex_index((self.quiescent,) * (self.r - 1), self.k)

    def edges(self) -> Iterable[DbEdge]:
        for out in self.out_edges:
            yield from out

    def vertex_word(self, v: int) -> Word:
        return decode(v, self.k, self.r - 1)

    def label_word(self, label: int) -> Word:
        return decode(label, self.k, self.r)

    def edge(self, frm: int, letter: int) -> DbEdge:
        return self.out_edges[frm][letter]


def vertex_index(word: Sequence[int], k: int) -> int:
    idx = 0
    for x in word:
        idx = idx * k + x
    return idx


def decode(index: int, k: int, length: int) -> Word:
    out = []
    for _ in range(length):
        index, x = divmod(index, k)
        out.append(x)
    return tuple(reversed(out))


def build_debruijn(a) -> WeightedDeBruijnGraph:
    """Complete de Bruijn graph on ``Σ^(r-1)`` with squared rule norms as weights."""
    if not a.is_simple():
        raise ContractError("de Bruijn graph needs a simple automaton; simplify first")
    k, r = a.k, a.r
    nv = k ** (r - 1)
    out = []
    for v in range(nv):
        edges = []
        for y in range(k):
            label = v * k + y
            edges.append(DbEdge(v, label % nv, label, a.sq_norm_at(label)))
        out.append(tuple(edges))
    return WeightedDeBruijnGraph(k, r, a.quiescent, tuple(out))


def _relax_min(cand: Fraction, cur: Fraction | None) -> bool:
    return cur is None or cand < cur


def _relax_max(cand: Fraction, cur: Fraction | None) -> bool:
    return cand > cur


def _detect(g: WeightedDeBruijnGraph, better: Callable, unreached) -> CycleWitness | None:
    n = g.num_vertices
    est: list = [unreached] * n
    est[g.source] = Fraction(1)
    pred: list[DbEdge | None] = [None] * n
    for _ in range(n - 1):
        changed = False
        for e in g.edges():
            cur = est[e.frm]
            if cur is None or not cur:
                continue
            cand = cur * e.sq_weight
            if better(cand, est[e.to]):
                est[e.to] = cand
                pred[e.to] = e
                changed = True
        if not changed:
            break
    for e in g.edges():
        cur = est[e.frm]
        if cur is None or not cur:
            continue
        if better(cur * e.sq_weight, est[e.to]):
            pred[e.to] = e
            return _close_cycle(g, _extract_cycle(pred, e.to, n))
    return None


def _extract_cycle(pred: list[DbEdge | None], start: int, n: int) -> list[DbEdge]:
    v = start
    for _ in range(n):
        e = pred[v]
        if e is None:
            raise ConsistencyError("predecessor chain left the relaxed cycle")
        v = e.frm
    cycle = []
    u = v
    while True:
        e = pred[u]
        cycle.append(e)
        u = e.frm
        if u == v:
            break
    cycle.reverse()
    return cycle


def _product(edges: Iterable[DbEdge]) -> Fraction:
    p = Fraction(1)
    for e in edges:
        p *= e.sq_weight
    return p


def _walk_appending(g: WeightedDeBruijnGraph, frm: int, letters: Iterable[int]) -> list[DbEdge]:
    walk = []
    for y in letters:
        e = g.edge(frm, y)
        walk.append(e)
        frm = e.to
    return walk


def _close_cycle(g: WeightedDeBruijnGraph, cycle: list[DbEdge]) -> CycleWitness:
    ratio = _product(cycle)
    if ratio == 1:
        raise ConsistencyError("Bellman-Ford returned a cycle of unit weight")
    starts = [e.frm for e in cycle]
    if g.source in starts:
        # rotate so the walk needs no connecting paths
        i = starts.index(g.source)
        cycle = cycle[i:] + cycle[:i]
    anchor = cycle[0].frm
    if anchor == g.source:
        pre, post = [], []
    else:
        pre = _walk_appending(g, g.source, g.vertex_word(anchor))
        post = _walk_appending(g, anchor, (g.quiescent,) * (g.r - 1))
    outer = _product(pre) * _product(post)
    # outer * ratio**reps == 1 for at most one value of reps
    reps = 1 if outer * ratio != 1 else 2
    walk = pre + cycle * reps + post
    total = outer * ratio**reps
    return CycleWitness(tuple(g.label_word(e.label) for e in walk), total)


def detect_small_cycle(g: WeightedDeBruijnGraph) -> CycleWitness | None:
    """Find a cycle of squared weight below 1, if one is reachable.

    Bellman-Ford with products in place of sums, minimizing. The cycle is
    returned spliced into a closed walk through the source whose product
    differs from 1.
    """
    return _detect(g, _relax_min, None)


def detect_large_cycle(g: WeightedDeBruijnGraph) -> CycleWitness | None:
    """As :func:`detect_small_cycle`, maximizing; finds products above 1."""
    return _detect(g, _relax_max, Fraction(0))


@dataclass(frozen=True)
class PairEdge:
    frm: tuple[int, int]
    to: tuple[int, int]
    label: tuple[int, int]


@dataclass(frozen=True, eq=False)
class PairGraph:
    k: int
    r: int
    quiescent: int
    out_edges: dict[tuple[int, int], tuple[PairEdge, ...]]

    @property
    def source(self) -> tuple[int, int]:
        s = vertex_index((self.quiescent,) * (self.r - 1), self.k)
        return (s, s)

    @property
    def vertices(self) -> list[tuple[int, int]]:
        return list(self.out_edges)

    def successors(self, v: tuple[int, int]) -> list[tuple[int, int]]:
        return [e.to for e in self.out_edges[v]]

    def label_words(self, e: PairEdge) -> tuple[Word, Word]:
        return decode(e.label[0], self.k, self.r), decode(e.label[1], self.k, self.r)


def build_pair_graph(a) -> PairGraph:
    """Pairs of de Bruijn transitions whose rules are not orthogonal."""
    if not a.is_simple():
        raise ContractError("pair graph needs a simple automaton; simplify first")
    if a.r < 2:
        raise ContractError("pair graph is only built for neighborhoods of size >= 2")
    k = a.k
    nv = k ** (a.r - 1)
    nonorth = [[bool(a.inner_at(i, j)) for j in range(k ** a.r)] for i in range(k ** a.r)]
    out: dict[tuple[int, int], tuple[PairEdge, ...]] = {}
    for u1 in range(nv):
        for u2 in range(nv):
            edges = []
            for y1 in range(k):
                l1 = u1 * k + y1
                row = nonorth[l1]
                for y2 in range(k):
                    l2 = u2 * k + y2
                    if row[l2]:
                        edges.append(PairEdge((u1, u2), (l1 % nv, l2 % nv), (l1, l2)))
            out[(u1, u2)] = tuple(edges)
    return PairGraph(k, a.r, a.quiescent, out)


def tarjan_scc(roots: Iterable[Hashable], successors: Callable) -> list[list]:
    """Strongly connected components reachable from ``roots``.

    Iterative, so deep graphs do not hit the recursion limit. Components
    come out in reverse topological order.
    """
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    sccs: list[list] = []
    counter = 0
    for root in roots:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors(root)))]
        while work:
            v, it = work[-1]
            descended = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    descended = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def scc_of_source(h: PairGraph) -> set[tuple[int, int]]:
    for comp in tarjan_scc([h.source], h.successors):
        if h.source in comp:
            return set(comp)
    raise ConsistencyError("source missing from its own search")  # pragma: no cover


def _bfs_path(h: PairGraph, start, goal, allowed: set, nonempty: bool) -> list[PairEdge]:
    """Shortest edge path inside ``allowed``; with ``nonempty`` the path has >= 1 edge."""
    if start == goal and not nonempty:
        return []
    parent: dict = {}
    queue = deque()
    for e in h.out_edges[start]:
        if e.to in allowed and e.to not in parent:
            parent[e.to] = e
            queue.append(e.to)
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for e in h.out_edges[v]:
            if e.to in allowed and e.to not in parent:
                parent[e.to] = e
                queue.append(e.to)
    if goal not in parent:
        raise ContractError(f"{goal} is not reachable from {start}")
    path = []
    v = goal
    while True:
        e = parent[v]
        path.append(e)
        v = e.frm
        if v == start:
            break
    path.reverse()
    return path


def closed_walk_through(h: PairGraph, v: tuple[int, int],
                        scc: set[tuple[int, int]] | None = None) -> list[PairEdge]:
    """Closed walk from the source through ``v``, staying inside the source's SCC."""
    if scc is None:
        scc = scc_of_source(h)
    if v not in scc:
        raise ContractError(f"vertex {v} is not in the component of the source")
    if v == h.source:
        return _bfs_path(h, h.source, h.source, scc, nonempty=True)
    return _bfs_path(h, h.source, v, scc, False) + _bfs_path(h, v, h.source, scc, False)
