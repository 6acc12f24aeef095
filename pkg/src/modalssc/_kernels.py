"""Forcing-closure kernels.

The closure loop is the hot path (minimum forcing-set search calls it on
up to 2^n subsets), so two interchangeable implementations live here: a
pure numpy one and a numba one. MODAL_SSC_BACKEND selects which
("numpy" is the default; "numba" opts into JIT compilation, which pays
off on repeated large closures but costs a slow import up front).

Adjacency encoding: adj[u, v] is 0 for no edge, 1 for a strong edge
u -> v, 2 for a weak edge. Vertices are 0-based here.

Rule: scan vertices in ascending order; vertex v (any color) forces its
unique white out-neighbor u, counting white out-neighbors over strong and
weak edges alike, provided the edge v -> u itself is strong. The first
valid force is applied and the scan restarts. This makes chronicles
deterministic; any application order reaches the same closure.
"""

import os
import warnings

from .errors import ConfigError

import numpy as np

_numba_closure = None


def _closure_numpy(adj, black):
    black = black.copy()
    forces = []
    progressed = True
    while progressed:
        progressed = False
        white_mask = (adj != 0) & ~black[None, :]
        counts = white_mask.sum(axis=1)
        for v in np.nonzero(counts == 1)[0]:
            u = int(np.argmax(white_mask[v]))
            if adj[v, u] == 1:
                black[u] = True
                forces.append((int(v), u))
                progressed = True
                break
    return black, forces


def _build_numba_closure():
    from numba import njit

    @njit(cache=True)
    def closure(adj, black0):
        n = adj.shape[0]
        black = black0.copy()
        forces = np.empty((n, 2), np.int64)
        k = 0
        progressed = True
        while progressed:
            progressed = False
            for v in range(n):
                cnt = 0
                uu = -1
                for u in range(n):
                    if adj[v, u] != 0 and not black[u]:
                        cnt += 1
                        uu = u
                        if cnt > 1:
                            break
                if cnt == 1 and adj[v, uu] == 1:
                    black[uu] = True
                    forces[k, 0] = v
                    forces[k, 1] = uu
                    k += 1
                    progressed = True
                    break
        return black, forces[:k]

    return closure


def forcing_closure(adj, black, backend=None):
    """Run the closure; returns (black mask, list of (v, u) forces), 0-based."""
    global _numba_closure
    if backend is None:
        backend = os.environ.get("MODAL_SSC_BACKEND", "numpy").lower()
    if backend == "numba":
        if _numba_closure is None:
            try:
                _numba_closure = _build_numba_closure()
            except ImportError:
                warnings.warn("numba unavailable, falling back to MODAL_SSC_BACKEND=numpy")
                _numba_closure = False
        if _numba_closure:
            out_black, out_forces = _numba_closure(adj, black)
            return out_black, [(int(v), int(u)) for v, u in out_forces]
    elif backend != "numpy":
        raise ConfigError(f"MODAL_SSC_BACKEND must be 'numpy' or 'numba', got {backend!r}")
    return _closure_numpy(adj, black)
