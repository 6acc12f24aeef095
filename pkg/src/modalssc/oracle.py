"""Numeric cross-checks: sampled realizations and eigenvalue tests.

Everything here works on dense numpy matrices and is deliberately
independent of the graph machinery, so the two routes can disagree in
tests if one of them is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SamplingError, SpecValidationError
from .pattern import ARB, DEFAULT_TOL, DISJOINT, MU_IDENTITY, STAR, ZERO

STAR_LOW, STAR_HIGH = 0.1, 2.0
ARB_ZERO_PROB = 0.3
MAX_SAMPLE_ATTEMPTS = 10000


@dataclass(frozen=True)
class RealizationMatrix:
    """A numeric (A, B) pair drawn from a network's pattern class."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        self.A.setflags(write=False)
        self.B.setflags(write=False)


@dataclass(frozen=True)
class VerificationReport:
    """Monte Carlo verdict; violations hold (trial, eigenvalue, sigma_min) triples."""

    trials: int
    violations: tuple

    @property
    def passed(self):
        return not self.violations


def _sample_entry(rng, sym):
    if sym == ZERO:
        return 0.0
    if sym == ARB and rng.random() < ARB_ZERO_PROB:
        return 0.0
    mag = rng.uniform(STAR_LOW, STAR_HIGH)
    sign = -1.0 if rng.random() < 0.5 else 1.0
    return sign * mag


def _sample_block(rng, pat):
    q, p = pat.shape
    M = np.zeros((q, p))
    for a in range(q):
        for b in range(p):
            M[a, b] = _sample_entry(rng, pat.entry(a, b))
    return M


def sample_realization(spec, seed, tol=DEFAULT_TOL):
    """Draw one (A, B) from the spec's class, deterministically in (spec, seed).

    Blocks are filled in a fixed order: node blocks by index, then
    couplings by (row block, column block). Star entries get a uniform
    magnitude in [0.1, 2] with a random sign; arbitrary entries are zero
    with probability 0.3 and star-like otherwise. Blocks known disjoint
    from delta are rejection-sampled until their spectrum clears delta
    with margin 10 * tol; mu-identity blocks are set to mu * I exactly.
    B has one standard-basis column per actuated state variable.
    """
    rng = np.random.default_rng(seed)
    N = spec.blocks.total
    A = np.zeros((N, N))
    for i in range(1, spec.n + 1):
        know = spec.knowledge[i - 1]
        pat = spec.node_patterns[i - 1]
        off = spec.blocks.offset(i)
        d = spec.dim(i)
        if know.kind == MU_IDENTITY:
            A[off : off + d, off : off + d] = know.mu * np.eye(d)
        elif know.kind == DISJOINT:
            for _ in range(MAX_SAMPLE_ATTEMPTS):
                M = _sample_block(rng, pat)
                eigs = np.linalg.eigvals(M)
                if not any(spec.delta.contains(lam, 10 * tol) for lam in eigs):
                    break
            else:
                raise SamplingError(
                    f"block {i} never cleared delta {spec.delta} in {MAX_SAMPLE_ATTEMPTS} draws"
                )
            A[off : off + d, off : off + d] = M
        else:
            A[off : off + d, off : off + d] = _sample_block(rng, pat)
    for (i, j), pat in spec.couplings:
        ri, rj = spec.blocks.offset(i), spec.blocks.offset(j)
        A[ri : ri + spec.dim(i), rj : rj + spec.dim(j)] = _sample_block(rng, pat)
    cols = spec.control_vertices()
    B = np.zeros((N, len(cols)))
    for k, v in enumerate(cols):
        B[v - 1, k] = 1.0
    return RealizationMatrix(A=A, B=B)


def validate_realization(spec, A, tol=DEFAULT_TOL):
    """Raise unless A realizes the pattern and respects the spectral knowledge."""
    if not spec.assembled_pattern().contains(A, tol):
        raise SpecValidationError("matrix leaves the pattern class")
    for i in range(1, spec.n + 1):
        know = spec.knowledge[i - 1]
        off = spec.blocks.offset(i)
        d = spec.dim(i)
        block = A[off : off + d, off : off + d]
        if know.kind == MU_IDENTITY:
            if not np.allclose(block, know.mu * np.eye(d), atol=tol):
                raise SpecValidationError(f"block {i} is not mu * I")
        elif know.kind == DISJOINT:
            for lam in np.linalg.eigvals(block):
                if spec.delta.contains(lam, tol):
                    raise SpecValidationError(
                        f"block {i} has eigenvalue {lam:.6g} inside delta {spec.delta}"
                    )


def pbh_controllable(A, B, lam, tol=DEFAULT_TOL):
    """Eigenvalue test for the mode lam: is [A - lam I, B] full row rank.

    Returns (verdict, sigma_min) where sigma_min is the smallest singular
    value of the pencil and the verdict compares it against
    tol * sigma_max * N.
    """
    N = A.shape[0]
    pencil = np.hstack([A - lam * np.eye(N), B]).astype(complex)
    s = np.linalg.svd(pencil, compute_uv=False)
    smin = float(s[-1])
    return smin > tol * float(s[0]) * N, smin


def numeric_geometric_multiplicity(A, lam, tol=DEFAULT_TOL):
    """Dimension of the eigenspace of lam, via an SVD rank of A - lam I."""
    N = A.shape[0]
    s = np.linalg.svd(A - lam * np.eye(N, dtype=complex), compute_uv=False)
    rank = int(np.sum(s > tol * float(s[0]) * N)) if s[0] > 0 else 0
    return N - rank


def numeric_rank(M, tol=DEFAULT_TOL):
    """SVD rank with the same relative threshold the other tests use."""
    if M.size == 0:
        return 0
    s = np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * float(s[0]) * max(M.shape)))


def controllable_eigen_report(A, B, delta, tol=DEFAULT_TOL):
    """Each eigenvalue of A with its delta membership and mode test.

    Returns a list of (eigenvalue, in_delta, controllable) triples sorted
    by (real, imaginary) part.
    """
    out = []
    for lam in sorted(np.linalg.eigvals(A), key=lambda z: (z.real, z.imag)):
        ok, _ = pbh_controllable(A, B, lam, tol)
        out.append((complex(lam), bool(delta.contains(lam, tol)), ok))
    return out


def monte_carlo_verify(spec, trials, base_seed, tol=DEFAULT_TOL):
    """Sample realizations and eigenvalue-test every mode that lands in delta.

    Trial t uses np.random.default_rng((base_seed, t)). A violation is an
    uncontrollable mode inside delta; the report passes iff there are none.
    """
    violations = []
    for t in range(trials):
        real = sample_realization(spec, (base_seed, t), tol=tol)
        for lam in np.linalg.eigvals(real.A):
            if spec.delta.contains(lam, tol):
                ok, smin = pbh_controllable(real.A, real.B, lam, tol)
                if not ok:
                    violations.append((t, complex(lam), smin))
    return VerificationReport(trials=trials, violations=tuple(violations))
