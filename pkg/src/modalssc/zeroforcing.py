"""Coloring and forcing-set computations on loop digraphs.

Rule note (this drives every verdict downstream): a vertex v, black or
white, forces a vertex u when u is v's unique white out-neighbor counting
both strong and weak edges, and the edge v -> u itself is strong. White
out-neighbors over weak edges therefore block forcing but can never be
forced across the weak edge. Under the alternative reading, where only
strong out-neighbors are counted for uniqueness, the empty set would
force a cycle of weakly coupled vertices with strong self-loops, which is
exactly the situation the weak edges are meant to keep open.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass

import numpy as np

from ._kernels import forcing_closure
from .errors import ConfigError, SearchLimitError, SpecValidationError

SEARCH_CAP_DEFAULT = 20


@dataclass(frozen=True)
class ZfsReport:
    """Outcome of running the closure from an initial set.

    vertex_weight is the weight of the initial set, not of the closure.
    chronicle lists the applied forces as (forcer, forced) pairs in order.
    """

    is_zfs: bool
    derived: tuple
    vertex_weight: int
    chronicle: tuple


def _check_subset(g, z):
    z = tuple(sorted(set(z)))
    for v in z:
        if not (1 <= v <= g.n):
            raise SpecValidationError(f"vertex {v} outside 1..{g.n}")
    return z


def derived_set(g, z, backend=None):
    """Close the initial set z under the forcing rule."""
    z = _check_subset(g, z)
    black0 = np.zeros(g.n, dtype=np.bool_)
    for v in z:
        black0[v - 1] = True
    black, forces = forcing_closure(g.adjacency(), black0, backend=backend)
    derived = tuple(int(v) + 1 for v in np.nonzero(black)[0])
    return ZfsReport(
        is_zfs=bool(black.all()),
        derived=derived,
        vertex_weight=g.vertex_weight(z),
        chronicle=tuple((v + 1, u + 1) for (v, u) in forces),
    )


def is_zfs(g, z):
    """Whether z colors the whole graph."""
    return derived_set(g, z).is_zfs


def min_zfs(g, cap=None):
    """A minimum-weight forcing set, with deterministic tie-breaking.

    Subsets are visited by nondecreasing total vertex weight, ties broken
    lexicographically, so the reported set is reproducible. Exhaustive in
    the worst case; refuses graphs above the node cap (default 20,
    override with MODAL_SSC_SEARCH_CAP or the cap argument). Returns
    (subset, weight); the empty set wins with weight 0 when it forces.
    """
    if cap is None:
        raw = os.environ.get("MODAL_SSC_SEARCH_CAP")
        if raw is None:
            cap = SEARCH_CAP_DEFAULT
        else:
            try:
                cap = int(raw)
            except ValueError:
                raise ConfigError(
                    f"MODAL_SSC_SEARCH_CAP must be an integer, got {raw!r}"
                ) from None
    if g.n > cap:
        raise SearchLimitError(
            f"minimum forcing-set search over {g.n} vertices exceeds the cap of {cap}; "
            "raise MODAL_SSC_SEARCH_CAP to allow it"
        )
    adj = g.adjacency()
    # lazily enumerate subsets in (weight, lexicographic) order
    heap = [(0, ())]
    while heap:
        weight, subset = heapq.heappop(heap)
        black0 = np.zeros(g.n, dtype=np.bool_)
        for v in subset:
            black0[v - 1] = True
        black, _ = forcing_closure(adj, black0)
        if black.all():
            return subset, weight
        start = subset[-1] + 1 if subset else 1
        for v in range(start, g.n + 1):
            heapq.heappush(heap, (weight + g.weights[v - 1], subset + (v,)))
    raise SearchLimitError("subset enumeration exhausted without a forcing set")


def ordinary_derived_set(g, z):
    """The classical coloring, where only black vertices force.

    Defined for loop-free graphs whose edges are all strong; self-loops or
    weak edges are rejected. Vertices are scanned in ascending order and
    the first valid force restarts the scan, as in derived_set.
    """
    if g.has_self_loops():
        raise SpecValidationError("the classical rule is defined for loop-free graphs")
    if g.weak:
        raise SpecValidationError("the classical rule is defined for all-strong graphs")
    z = _check_subset(g, z)
    black = [False] * (g.n + 1)
    for v in z:
        black[v] = True
    chron = []
    progressed = True
    while progressed:
        progressed = False
        for v in range(1, g.n + 1):
            if not black[v]:
                continue
            whites = [u for u in g.out_neighbors(v) if not black[u]]
            if len(whites) == 1:
                black[whites[0]] = True
                chron.append((v, whites[0]))
                progressed = True
                break
    derived = tuple(v for v in range(1, g.n + 1) if black[v])
    return ZfsReport(
        is_zfs=len(derived) == g.n,
        derived=derived,
        vertex_weight=g.vertex_weight(z),
        chronicle=tuple(chron),
    )
