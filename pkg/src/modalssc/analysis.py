"""Controllability verdicts and explicit certificates.

The decision route is graph-theoretic: color the delta-network graph from
the controlled subsystems. A full coloring is sufficient for strong
structural controllability relative to delta; for networks of scalar
subsystems (every block one-dimensional) whose delta meets the real axis
it is also necessary, and a failed coloring then comes with a concrete
uncontrollable realization as a certificate.

Verdicts are relative to the supplied spectral knowledge. If the given
knowledge is strictly weaker than what the pattern itself implies, the
negative branch can name a class that is controllable for vacuous
reasons; the certificate construction then finds nothing and the verdict
carries a note instead of a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import SpecValidationError, WitnessError
from .graph import (
    build_delta_network_graph,
    pattern_full_row_rank,
    pattern_white_rows,
)
from .pattern import (
    ARB,
    DEFAULT_TOL,
    STAR,
    ZERO,
    DeltaSet,
    NetworkSpec,
    PatternMatrix,
    SpectralKnowledge,
    derive_characteristic,
    derive_n1ds_knowledge,
)
from .zeroforcing import derived_set, min_zfs

SUFFICIENT = "sufficient"
IFF_HOLDS = "iff_holds"
IFF_FAILS = "iff_fails"
INCONCLUSIVE = "inconclusive"

_FORT_SEARCH_CAP = 16


@dataclass(frozen=True)
class UncontrollableWitness:
    """A realization A with a left eigenpair (mu, nu) invisible to the inputs.

    nu^T A = mu nu^T and nu^T B = 0 for the B built from the control set,
    so the mode mu in delta is uncontrollable. nu is supported on white
    (never colored) subsystems.
    """

    A: np.ndarray
    nu: np.ndarray
    mu: float

    def __post_init__(self):
        self.A.setflags(write=False)
        self.nu.setflags(write=False)


@dataclass(frozen=True)
class SscVerdict:
    verdict: str
    zfs_report: object
    witness: UncontrollableWitness = None
    note: str = None

    @property
    def affirmative(self):
        return self.verdict in (SUFFICIENT, IFF_HOLDS)


def is_delta_ssc(spec, tol=DEFAULT_TOL, build_witness=True):
    """Decide strong structural controllability of the class relative to delta.

    The control set is colored in the delta-network graph. Full coloring
    gives "sufficient" in general and "iff_holds" for scalar-block
    networks (where the coloring criterion is exact). A stalled coloring
    gives "iff_fails" with an uncontrollable witness for scalar-block
    networks, otherwise "inconclusive".
    """
    dg = build_delta_network_graph(spec)
    report = derived_set(dg.graph, spec.control)
    exact = spec.is_n1ds() and spec.delta.intersects_reals()
    if report.is_zfs:
        return SscVerdict(verdict=IFF_HOLDS if exact else SUFFICIENT, zfs_report=report)
    if not exact:
        return SscVerdict(
            verdict=INCONCLUSIVE,
            zfs_report=report,
            note="coloring stalled; the criterion is only sufficient for multi-dimensional blocks",
        )
    if not build_witness:
        return SscVerdict(verdict=IFF_FAILS, zfs_report=report)
    try:
        witness = construct_uncontrollable_witness(spec, tol=tol, _report=report)
    except WitnessError as exc:
        return SscVerdict(verdict=IFF_FAILS, zfs_report=report, note=str(exc))
    return SscVerdict(verdict=IFF_FAILS, zfs_report=report, witness=witness)


def _candidate_modes(delta, mu):
    if mu is not None:
        cands = [float(mu)]
    else:
        cands = [delta.mu_rep()]
        if delta.kind == "all":
            cands += [0.0, 1.0, -1.0, 0.5, 2.0, -2.0]
        elif delta.kind == "nonzero":
            cands += [1.0, -1.0, 0.5, 2.0, -2.0]
        elif delta.kind == "crhp":
            cands += [0.0, 1.0, 0.5, 2.0]
        elif delta.kind == "finite":
            cands += sorted(delta.values)
        elif delta.kind == "interval":
            cands += [delta.a, delta.b, (delta.a + delta.b) / 2.0]
            if delta.a < 0.0 < delta.b:
                cands.append(0.0)
    out = []
    for c in cands:
        if c not in out and delta.contains(c, 0.0):
            out.append(c)
    if not out:
        raise WitnessError(f"no real candidate mode inside delta {delta}")
    return out


def _choose_outside_delta(delta, tol, allow_zero, avoid=()):
    """A real value robustly outside delta, nonzero unless allow_zero."""
    candidates = [0.0] if allow_zero else []
    for k in range(1, 60):
        candidates += [-float(k), float(k), -float(k) - 0.5, float(k) + 0.5]
    for c in candidates:
        if c == 0.0 and not allow_zero:
            continue
        if any(abs(c - a) <= 10 * tol for a in avoid):
            continue
        if not delta.contains(c, 10 * tol):
            return c
    raise WitnessError(f"found no value outside delta {delta}")


def _solve_column(target, fixed, anys, stars, diag_domain, delta, tol):
    """Assign the column's free entries so the constrained rows sum to target.

    fixed is the part already pinned. anys and stars are lists of keys
    (row indices) for unconstrained and nonzero entries; diag_domain, when
    present, is a (key, allow_zero) pair for a diagonal that must stay
    robustly outside delta. Returns a dict key -> value, or None when no
    assignment exists.
    """
    t = target - fixed
    out = {}
    if anys:
        d = 0.0
        if diag_domain is not None:
            key, allow_zero = diag_domain
            d = _choose_outside_delta(delta, tol, allow_zero)
            out[key] = d
        for k in stars:
            out[k] = 1.0
        out[anys[0]] = t - d - float(len(stars))
        for k in anys[1:]:
            out[k] = 0.0
        return out
    if diag_domain is not None:
        key, allow_zero = diag_domain
        k = len(stars)
        if k == 0:
            if delta.contains(t, 10 * tol) or (abs(t) <= 10 * tol and not allow_zero):
                return None
            out[key] = t
            return out
        # keep the last star nonzero by steering the diagonal away from t - (k - 1)
        d = _choose_outside_delta(delta, tol, allow_zero, avoid=(t - (k - 1),))
        out[key] = d
        for r in stars[:-1]:
            out[r] = 1.0
        out[stars[-1]] = t - d - float(k - 1)
        return out
    k = len(stars)
    if k == 0:
        return out if t == 0.0 else None
    if k == 1:
        if abs(t) <= 10 * tol:
            return None
        out[stars[0]] = t
        return out
    first = 1.0 if abs(t - (k - 1)) > 10 * tol else 2.0
    out[stars[0]] = first
    for r in stars[1:-1]:
        out[r] = 1.0
    out[stars[-1]] = t - first - float(k - 2)
    return out


def _is_fort(graph, whites):
    """Whether blackening everything except `whites` yields no force at all."""
    black = tuple(v for v in range(1, graph.n + 1) if v not in whites)
    report = derived_set(graph, black)
    return len(report.derived) == len(black)


def construct_uncontrollable_witness(spec, mu=None, tol=DEFAULT_TOL, _report=None):
    """Build (A, nu, mu) certifying an uncontrollable mode for a stalled coloring.

    Only defined for scalar-block networks. The coloring from the control
    set must stall (otherwise the class is controllable and asking for a
    witness is a logic error). nu is the indicator of the white set when a
    single mode balances it; otherwise other in-delta modes and then
    smaller white sub-forts are tried.
    """
    if not spec.is_n1ds():
        raise SpecValidationError("witness construction needs one-dimensional blocks")
    dg = build_delta_network_graph(spec)
    report = _report if _report is not None else derived_set(dg.graph, spec.control)
    if report.is_zfs:
        raise WitnessError("the control set colors the whole graph; no witness exists")
    n = spec.n
    f = derive_characteristic(spec)
    pat = spec.assembled_pattern()
    whites = tuple(v for v in range(1, n + 1) if v not in report.derived)
    modes = _candidate_modes(spec.delta, mu)

    def try_support(support, mode):
        support_set = set(support)
        A = np.zeros((n, n))
        # rows outside the support get symbol defaults; diagonals follow f
        for i in range(1, n + 1):
            if i in support_set:
                continue
            for j in range(1, n + 1):
                sym = pat.entry(i - 1, j - 1)
                if i == j:
                    if f[i] == ZERO:
                        A[i - 1, i - 1] = spec.delta.mu
                    elif f[i] == STAR:
                        if sym != ZERO:
                            A[i - 1, i - 1] = _choose_outside_delta(
                                spec.delta, tol, allow_zero=sym == ARB
                            )
                    elif sym != ZERO:
                        A[i - 1, i - 1] = 1.0
                elif sym != ZERO:
                    A[i - 1, j - 1] = 1.0
        for j in range(1, n + 1):
            target = mode if j in support_set else 0.0
            fixed = 0.0
            anys, stars = [], []
            diag_domain = None
            for i in support:
                sym = pat.entry(i - 1, j - 1)
                if sym == ZERO and i != j:
                    continue
                if i != j:
                    (stars if sym == STAR else anys).append(i)
                    continue
                # the support diagonal: obey the node's spectral knowledge
                if f[j] == ZERO:
                    fixed += spec.delta.mu
                    A[j - 1, j - 1] = spec.delta.mu
                elif f[j] == STAR:
                    if sym != ZERO:
                        diag_domain = (i, sym == ARB)
                elif sym == STAR:
                    stars.append(i)
                elif sym == ARB:
                    anys.append(i)
            assignment = _solve_column(target, fixed, anys, stars, diag_domain, spec.delta, tol)
            if assignment is None:
                return None
            for i, val in assignment.items():
                A[i - 1, j - 1] = val
        return A

    supports = [whites]
    if 1 < len(whites) <= _FORT_SEARCH_CAP:
        for size in range(len(whites) - 1, 0, -1):
            for combo in itertools.combinations(whites, size):
                if _is_fort(dg.graph, set(combo)):
                    supports.append(combo)
    for support in supports:
        for mode in modes:
            A = try_support(support, mode)
            if A is not None:
                return _finish_witness(spec, A, support, mode, tol)
    raise WitnessError(
        "no uncontrollable realization balances any white sub-fort; the supplied "
        "knowledge is weaker than the pattern itself and the class is controllable "
        "for vacuous reasons"
    )


def _finish_witness(spec, A, support, mode, tol):
    from .oracle import validate_realization

    n = spec.n
    nu = np.zeros(n)
    for v in support:
        nu[v - 1] = 1.0
    validate_realization(spec, A, tol)
    resid = float(np.max(np.abs(nu @ A - mode * nu)))
    scale = float(np.linalg.norm(A, np.inf)) or 1.0
    if resid > 1e-10 * scale:
        raise WitnessError(f"left eigenvector residual {resid:g} out of tolerance")
    for v in spec.control_vertices():
        if nu[v - 1] != 0.0:
            raise WitnessError("witness support touches the control set")
    return UncontrollableWitness(A=A, nu=nu, mu=mode)


def construct_rank_deficient_witness(pattern, tol=DEFAULT_TOL):
    """A realization M of a rank-deficient pattern plus a left kernel vector.

    w is the indicator of the rows the rank coloring never blackens; the
    columns of M are filled so those rows cancel, giving w^T M = 0.
    Calling this on a full-row-rank pattern is a logic error.
    """
    full, _ = pattern_full_row_rank(pattern)
    if full:
        raise WitnessError("pattern is full row rank; no kernel witness exists")
    whites = pattern_white_rows(pattern)
    white_set = set(whites)
    q, p = pattern.shape
    M = np.zeros((q, p))
    for i in range(1, q + 1):
        if i in white_set:
            continue
        for j in range(1, p + 1):
            if pattern.entry(i - 1, j - 1) != ZERO:
                M[i - 1, j - 1] = 1.0
    for j in range(1, p + 1):
        anys, stars = [], []
        for i in whites:
            sym = pattern.entry(i - 1, j - 1)
            if sym == STAR:
                stars.append(i)
            elif sym == ARB:
                anys.append(i)
        assignment = _solve_column(0.0, 0.0, anys, stars, None, None, tol)
        if assignment is None:
            raise WitnessError(
                f"column {j} has a single certain white entry; the coloring should have fired"
            )
        for i, val in assignment.items():
            M[i - 1, j - 1] = val
    w = np.zeros(q)
    for i in whites:
        w[i - 1] = 1.0
    M.setflags(write=False)
    w.setflags(write=False)
    return M, w


def build_abar(pattern):
    """The companion pattern for the nonzero modes: diagonal '0' becomes '*',
    any other diagonal becomes '?', off-diagonal entries are kept."""
    q, p = pattern.shape
    if q != p:
        raise SpecValidationError("expected a square pattern")
    rows = []
    for i in range(q):
        row = []
        for j in range(p):
            sym = pattern.entry(i, j)
            if i == j:
                row.append(STAR if sym == ZERO else ARB)
            else:
                row.append(sym)
        rows.append("".join(row))
    return PatternMatrix(tuple(rows))


_ZERO_SINGLETON = DeltaSet.singleton(0.0)
_NONZERO = DeltaSet.nonzero_complex()


def _is_zero_nonzero_partition(partition):
    kinds = sorted(d.kind for d in partition)
    if kinds != ["nonzero", "singleton"]:
        return False
    single = next(d for d in partition if d.kind == "singleton")
    return single.mu == 0.0


def is_strongly_structurally_controllable(spec, partition=None, tol=DEFAULT_TOL):
    """Plain strong structural controllability via a partition of the modes.

    The delta and knowledge carried by `spec` are ignored; knowledge is
    re-derived for each partition member (off the diagonal for scalar
    blocks, nothing otherwise). Only partitions verifiably covering the
    plane are accepted: the whole plane alone, or {0} with the punctured
    plane (the default). Returns True, False, or None when some member
    stays undecided.
    """
    if partition is None:
        partition = (_ZERO_SINGLETON, _NONZERO)
    partition = tuple(partition)
    if not (
        (len(partition) == 1 and partition[0].kind == "all")
        or (len(partition) == 2 and _is_zero_nonzero_partition(partition))
    ):
        raise SpecValidationError(
            "partition must be the whole plane or {0} plus the punctured plane"
        )
    verdicts = []
    for delta in partition:
        if spec.is_n1ds():
            knowledge = derive_n1ds_knowledge(spec.assembled_pattern(), delta)
        else:
            knowledge = tuple(SpectralKnowledge.unknown() for _ in range(spec.n))
        sub = NetworkSpec(
            blocks=spec.blocks,
            node_patterns=spec.node_patterns,
            couplings=spec.couplings,
            delta=delta,
            knowledge=knowledge,
            control=spec.control,
        )
        verdicts.append(is_delta_ssc(sub, tol=tol, build_witness=False).verdict)
    if any(v == IFF_FAILS for v in verdicts):
        return False
    if all(v in (SUFFICIENT, IFF_HOLDS) for v in verdicts):
        return True
    return None


def geometric_multiplicity_bound(spec, cap=None):
    """Worst-case geometric multiplicity of any mode in delta, over the class.

    Equals the minimum vertex weight of a forcing set of the delta-network
    graph. Exhaustive; honors the same node cap as min_zfs.
    """
    dg = build_delta_network_graph(spec)
    _, weight = min_zfs(dg.graph, cap=cap)
    return weight


def spectrum_exclusion_n1ds(spec):
    """Whether no realization consistent with the knowledge has a mode in delta.

    Scalar blocks only; holds iff the empty set forces the delta-network
    graph.
    """
    if not spec.is_n1ds():
        raise SpecValidationError("spectrum exclusion is decided for one-dimensional blocks only")
    dg = build_delta_network_graph(spec)
    return derived_set(dg.graph, ()).is_zfs
