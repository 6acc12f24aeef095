"""Reference implementations and generators the tests check the package against.

Everything here is written independently of the package internals (set
logic instead of adjacency kernels, simultaneous instead of scan-order
closures) so a bug in the package cannot hide in its own oracle.
"""

import itertools
from pathlib import Path

import numpy as np

from modalssc import (
    BlockStructure,
    DeltaSet,
    LoopDigraph,
    NetworkSpec,
    PatternMatrix,
    SpectralKnowledge,
    n1ds_spec,
)

FIXTURES = Path(__file__).parent / "fixtures"

DELTA_VARIANTS = (
    DeltaSet.all_complex(),
    DeltaSet.nonzero_complex(),
    DeltaSet.closed_right_half_plane(),
    DeltaSet.singleton(0.0),
    DeltaSet.finite_real((-1.0, 3.0)),
    DeltaSet.real_interval(-1.0, 1.0),
)


def valid_forces(g, black):
    """All (v, u) the rule allows right now: u is v's unique white out-neighbor
    over strong and weak edges, the edge v -> u is strong."""
    out = []
    for v in range(1, g.n + 1):
        whites = [u for u in g.out_neighbors(v) if u not in black]
        if len(whites) == 1 and (v, whites[0]) in g.strong:
            out.append((v, whites[0]))
    return out


def closure_any_order(g, z, rng):
    """Close z applying valid forces in random order; confluence says the
    result matches the scan-order engine."""
    black = set(z)
    while True:
        forces = valid_forces(g, black)
        if not forces:
            return black
        v, u = forces[rng.integers(0, len(forces))]
        black.add(u)


def closure_simultaneous(g, z):
    """Close z applying every valid force at once each round."""
    black = set(z)
    while True:
        new = {u for (_, u) in valid_forces(g, black)}
        if new <= black:
            return black
        black |= new


def replay_chronicle(g, z, chronicle):
    """Check every force in a chronicle was legal when applied; returns the
    final black set."""
    black = set(z)
    for (v, u) in chronicle:
        assert u not in black, f"force ({v},{u}) on an already black vertex"
        whites = [w for w in g.out_neighbors(v) if w not in black]
        assert whites == [u], f"({v},{u}) fired with white out-neighbors {whites}"
        assert (v, u) in g.strong, f"({v},{u}) fired over a weak edge"
        black.add(u)
    return black


def subsets_by_weight(g):
    """Every vertex subset, sorted by (total weight, lexicographic)."""
    all_subsets = []
    for k in range(g.n + 1):
        for combo in itertools.combinations(range(1, g.n + 1), k):
            all_subsets.append((g.vertex_weight(combo), combo))
    all_subsets.sort()
    return all_subsets


def brute_min_zfs(g):
    for weight, combo in subsets_by_weight(g):
        if closure_simultaneous(g, combo) == set(range(1, g.n + 1)):
            return combo, weight
    raise AssertionError("the full vertex set always forces")


def rank_by_search(pattern):
    """Nondeterministic version of the row-rank coloring: full row rank iff
    some order of single-white-star forces blackens every row."""
    q, p = pattern.shape

    def step(black):
        if len(black) == q:
            return True
        for j in range(p):
            whites = [
                i for i in range(q) if i not in black and pattern.entry(i, j) != "0"
            ]
            if len(whites) == 1 and pattern.entry(whites[0], j) == "*":
                if step(black | {whites[0]}):
                    return True
        return False

    return step(frozenset())


def pbh_rank_deficient(A, B, lam):
    """Independent mode test via numpy's default matrix rank."""
    N = A.shape[0]
    pencil = np.hstack([A - lam * np.eye(N), B])
    return np.linalg.matrix_rank(pencil) < N


def random_loop_digraph(rng, n_max=8, w_max=3):
    n = int(rng.integers(1, n_max + 1))
    weights = tuple(int(w) for w in rng.integers(1, w_max + 1, size=n))
    strong, weak = set(), set()
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            r = rng.random()
            if r < 0.18:
                strong.add((u, v))
            elif r < 0.32:
                weak.add((u, v))
    return LoopDigraph(n, weights, frozenset(strong), frozenset(weak))


def random_n1ds_pattern(rng, n, density=0.35):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append("0*?"[rng.integers(0, 3)])
            elif rng.random() < density:
                row.append("*" if rng.random() < 0.5 else "?")
            else:
                row.append("0")
        rows.append("".join(row))
    return PatternMatrix(tuple(rows))


def random_control(rng, n):
    size = int(rng.integers(0, n + 1))
    return tuple(sorted(rng.choice(np.arange(1, n + 1), size=size, replace=False).tolist()))


def random_n1ds_spec(rng, delta, n_max=6):
    n = int(rng.integers(1, n_max + 1))
    pattern = random_n1ds_pattern(rng, n)
    return n1ds_spec(pattern, delta, control=random_control(rng, n))


def _random_block_pattern(rng, q, p, diagonal):
    rows = []
    for a in range(q):
        row = []
        for b in range(p):
            r = rng.random()
            if diagonal and a == b:
                row.append("0*?"[rng.integers(0, 3)])
            elif r < 0.55:
                row.append("0")
            elif r < 0.8:
                row.append("*")
            else:
                row.append("?")
        rows.append("".join(row))
    return PatternMatrix(tuple(rows))


def random_network_spec(rng, total_max=10):
    """A mixed-dimension network with knowledge the sampler can realize."""
    deltas = (
        DeltaSet.closed_right_half_plane(),
        DeltaSet.singleton(0.0),
        DeltaSet.real_interval(-1.0, 1.0),
        DeltaSet.finite_real((0.0, 2.0)),
    )
    delta = deltas[rng.integers(0, len(deltas))]
    dims = []
    while sum(dims) < total_max - 2 and len(dims) < 5:
        dims.append(int(rng.integers(1, 4)))
        if rng.random() < 0.25:
            break
    dims = tuple(dims) if dims else (1,)
    n = len(dims)
    node_patterns, knowledge = [], []
    for i in range(n):
        pat = _random_block_pattern(rng, dims[i], dims[i], diagonal=True)
        know = SpectralKnowledge.unknown()
        if rng.random() < 0.4:
            if delta.kind == "singleton" and rng.random() < 0.4:
                # mu * I knowledge needs a pattern with no off-diagonal stars
                rows = []
                for a in range(dims[i]):
                    row = ["?" if a == b else "0?"[rng.integers(0, 2)] for b in range(dims[i])]
                    rows.append("".join(row))
                pat = PatternMatrix(tuple(rows))
                know = SpectralKnowledge.mu_identity(0.0)
            else:
                # disjoint knowledge gets a full star diagonal so the
                # rejection sampler can realistically escape delta
                rows = []
                for a in range(dims[i]):
                    row = ["*" if a == b else pat.entry(a, b) for b in range(dims[i])]
                    rows.append("".join(row))
                pat = PatternMatrix(tuple(rows))
                know = SpectralKnowledge.disjoint()
        node_patterns.append(pat)
        knowledge.append(know)
    couplings = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < 0.3:
                pat = _random_block_pattern(rng, dims[i - 1], dims[j - 1], diagonal=False)
                if not pat.is_all_zero():
                    couplings.append(((i, j), pat))
    return NetworkSpec(
        blocks=BlockStructure(dims),
        node_patterns=tuple(node_patterns),
        couplings=tuple(couplings),
        delta=delta,
        knowledge=tuple(knowledge),
        control=random_control(rng, n),
    )
