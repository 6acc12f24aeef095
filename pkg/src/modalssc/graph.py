"""Graphs derived from a network description.

Two graph views matter. The global graph has one vertex per state
variable and reads edges straight off the assembled pattern. The
delta-network graph has one weighted vertex per subsystem; its
self-loops come from the characteristic vector (not from the diagonal
patterns) and a coupling edge is strong exactly when the coupling block
keeps full row rank over its whole pattern class.

Edges point from the influencing vertex to the influenced one: entry
(i, j) being nonzero puts an edge j -> i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecValidationError
from .pattern import ARB, STAR, ZERO, PatternMatrix, derive_characteristic

_rank_cache = {}


@dataclass(frozen=True)
class LoopDigraph:
    """A directed graph with weighted vertices, strong/weak edges, loops allowed.

    Vertices are 1..n. strong and weak are disjoint frozensets of (u, v)
    pairs meaning an edge u -> v.
    """

    n: int
    weights: tuple
    strong: frozenset
    weak: frozenset

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "strong", frozenset(self.strong))
        object.__setattr__(self, "weak", frozenset(self.weak))
        if self.n < 0:
            raise SpecValidationError("vertex count must be nonnegative")
        if len(self.weights) != self.n or any(w < 1 for w in self.weights):
            raise SpecValidationError("need one positive weight per vertex")
        for (u, v) in self.strong | self.weak:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise SpecValidationError(f"edge ({u},{v}) outside 1..{self.n}")
        if self.strong & self.weak:
            raise SpecValidationError("an edge cannot be both strong and weak")

    def edges(self):
        return sorted(self.strong | self.weak)

    def edge_kind(self, u, v):
        if (u, v) in self.strong:
            return "strong"
        if (u, v) in self.weak:
            return "weak"
        return None

    def out_neighbors(self, v):
        return tuple(sorted(u for (s, u) in self.strong | self.weak if s == v))

    def has_self_loops(self):
        return any(u == v for (u, v) in self.strong | self.weak)

    def vertex_weight(self, subset):
        return sum(self.weights[v - 1] for v in subset)

    def adjacency(self):
        """0-based int8 matrix: 0 none, 1 strong, 2 weak."""
        adj = np.zeros((self.n, self.n), dtype=np.int8)
        for (u, v) in self.strong:
            adj[u - 1, v - 1] = 1
        for (u, v) in self.weak:
            adj[u - 1, v - 1] = 2
        return adj

    @classmethod
    def from_pattern(cls, pattern, weights=None):
        """Graph of a square pattern: entry (i, j) != 0 puts an edge j -> i."""
        q, p = pattern.shape
        if q != p:
            raise SpecValidationError("expected a square pattern")
        strong, weak = set(), set()
        for i in range(q):
            for j in range(q):
                sym = pattern.entry(i, j)
                if sym == STAR:
                    strong.add((j + 1, i + 1))
                elif sym == ARB:
                    weak.add((j + 1, i + 1))
        if weights is None:
            weights = tuple(1 for _ in range(q))
        return cls(q, tuple(weights), frozenset(strong), frozenset(weak))


@dataclass(frozen=True)
class BipartiteGraph:
    """Edges from the local vertices of one subsystem into another's.

    pattern has shape dim(dst) x dim(src); its entry (a, b) != 0 is an
    edge from src vertex b to dst vertex a, strong when the entry is '*'.
    """

    src: int
    dst: int
    pattern: PatternMatrix

    def edges(self):
        q, p = self.pattern.shape
        out = []
        for b in range(p):
            for a in range(q):
                sym = self.pattern.entry(a, b)
                if sym != ZERO:
                    out.append((b + 1, a + 1, "strong" if sym == STAR else "weak"))
        return out


@dataclass(frozen=True)
class DeltaNetworkGraph:
    """The subsystem-level graph together with the data it was built from."""

    graph: LoopDigraph
    f: tuple
    delta: object


def pattern_full_row_rank(pattern):
    """Whether every realization of the pattern has full row rank.

    Decided by coloring the bipartite graph of the pattern from all-white:
    column vertices are scanned in ascending order and blacken their
    unique white row when that edge is certain. Full row rank holds iff
    every row ends up black. Returns (verdict, chronicle) with the
    chronicle a tuple of (column, row) pairs, 1-based.
    """
    verdict, chronicle, _ = _row_rank_coloring(pattern)
    return verdict, chronicle


def pattern_white_rows(pattern):
    """Rows never blackened by the full-row-rank coloring, 1-based ascending."""
    _, _, whites = _row_rank_coloring(pattern)
    return whites


def _row_rank_coloring(pattern):
    cached = _rank_cache.get(pattern.rows)
    if cached is not None:
        return cached
    q, p = pattern.shape
    black = [False] * q
    chron = []
    progressed = True
    while progressed:
        progressed = False
        for j in range(p):
            cnt = 0
            row = -1
            kind = None
            for i in range(q):
                sym = pattern.entry(i, j)
                if sym != ZERO and not black[i]:
                    cnt += 1
                    row = i
                    kind = sym
                    if cnt > 1:
                        break
            if cnt == 1 and kind == STAR:
                black[row] = True
                chron.append((j + 1, row + 1))
                progressed = True
                break
    whites = tuple(i + 1 for i in range(q) if not black[i])
    result = (not whites, tuple(chron), whites)
    _rank_cache[pattern.rows] = result
    return result


def build_global_graph(spec):
    """One unit-weight vertex per state variable, edges off the assembled pattern."""
    return LoopDigraph.from_pattern(spec.assembled_pattern())


def build_delta_network_graph(spec):
    """One vertex per subsystem, weighted by its dimension.

    Self-loops encode the characteristic vector: '*' gives a strong loop,
    '?' a weak one, '0' none. A nonzero coupling block (i, j) gives an
    edge j -> i, strong iff the block is full row rank as a pattern.
    """
    f = derive_characteristic(spec)
    strong, weak = set(), set()
    for i in range(1, spec.n + 1):
        if f[i] == STAR:
            strong.add((i, i))
        elif f[i] == ARB:
            weak.add((i, i))
    for (i, j), pat in spec.couplings:
        if pat.is_all_zero():
            continue
        full, _ = pattern_full_row_rank(pat)
        (strong if full else weak).add((j, i))
    graph = LoopDigraph(spec.n, spec.blocks.dims, frozenset(strong), frozenset(weak))
    return DeltaNetworkGraph(graph=graph, f=f.f, delta=spec.delta)


def coupling_subgraph(spec, i, j):
    """The pair of bipartite graphs between subsystems i and j.

    Returns (i -> j, j -> i); their union is the coupling subgraph on
    the local vertices of i and j. The diagonal case i == j is not a
    coupling and is rejected.
    """
    if i == j:
        raise SpecValidationError("coupling_subgraph needs two distinct subsystems")
    for k in (i, j):
        if not (1 <= k <= spec.n):
            raise SpecValidationError(f"subsystem {k} outside 1..{spec.n}")
    pat_ji = spec.coupling(j, i) or PatternMatrix.zeros(spec.dim(j), spec.dim(i))
    pat_ij = spec.coupling(i, j) or PatternMatrix.zeros(spec.dim(i), spec.dim(j))
    return BipartiteGraph(i, j, pat_ji), BipartiteGraph(j, i, pat_ij)


def coupling_union_digraph(spec, i, j):
    """The union of the two coupling bipartite graphs as one loop-free digraph.

    Vertices 1..dim(i) are subsystem i's, the rest subsystem j's. Returns
    (graph, labels) with labels like "3^2" in vertex order.
    """
    fwd, back = coupling_subgraph(spec, i, j)
    di, dj = spec.dim(i), spec.dim(j)
    strong, weak = set(), set()
    for (b, a, kind) in fwd.edges():
        (strong if kind == "strong" else weak).add((b, di + a))
    for (b, a, kind) in back.edges():
        (strong if kind == "strong" else weak).add((di + b, a))
    labels = tuple(f"{i}^{a}" for a in range(1, di + 1)) + tuple(
        f"{j}^{a}" for a in range(1, dj + 1)
    )
    graph = LoopDigraph(di + dj, tuple(1 for _ in range(di + dj)), frozenset(strong), frozenset(weak))
    return graph, labels
