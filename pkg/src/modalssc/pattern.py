"""Pattern matrices, delta sets, and network descriptions.

A pattern matrix fixes each entry of a real matrix to be zero ('0'),
nonzero ('*'), or unconstrained ('?'). A network couples n subsystems
(blocks) through pattern-constrained blocks; what is known about each
block's spectrum relative to a set Delta of complex modes is carried as
per-node spectral knowledge. All types here are immutable values.

Indexing convention: subsystems and vertices are numbered from 1 in every
public interface. Entry access on PatternMatrix is 0-based because it
mirrors Python sequences; the docstrings say which one applies.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .errors import SpecValidationError

DEFAULT_TOL = 1e-8

ZERO = "0"
STAR = "*"
ARB = "?"
SYMBOLS = (ZERO, STAR, ARB)


@dataclass(frozen=True)
class PatternMatrix:
    """A {0, *, ?} pattern, stored as a tuple of row strings like ("0*?", "?00")."""

    rows: tuple

    def __post_init__(self):
        if isinstance(self.rows, list):
            object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise SpecValidationError("pattern must have at least one row")
        width = len(self.rows[0])
        for r, row in enumerate(self.rows):
            if not isinstance(row, str) or len(row) != width or width == 0:
                raise SpecValidationError(f"pattern row {r + 1} is not a string of width {width}")
            for c, ch in enumerate(row):
                if ch not in SYMBOLS:
                    raise SpecValidationError(
                        f"pattern entry ({r + 1},{c + 1}) is {ch!r}, expected one of '0', '*', '?'"
                    )

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]))

    def entry(self, i, j):
        """Symbol at 0-based position (i, j)."""
        return self.rows[i][j]

    def is_all_zero(self):
        return all(set(row) <= {ZERO} for row in self.rows)

    def contains(self, M, tol=DEFAULT_TOL):
        """Whether the numeric matrix M realizes this pattern.

        Zero entries must satisfy |m| <= tol, star entries |m| > tol,
        arbitrary entries are unconstrained.
        """
        q, p = self.shape
        if getattr(M, "shape", None) != (q, p):
            return False
        for i in range(q):
            for j in range(p):
                sym = self.rows[i][j]
                m = abs(M[i, j])
                if sym == ZERO and m > tol:
                    return False
                if sym == STAR and m <= tol:
                    return False
        return True

    @classmethod
    def zeros(cls, q, p):
        return cls(tuple(ZERO * p for _ in range(q)))

    @classmethod
    def arbitrary(cls, q, p):
        return cls(tuple(ARB * p for _ in range(q)))

    def __str__(self):
        return "[" + "; ".join(self.rows) + "]"


@dataclass(frozen=True)
class BlockStructure:
    """Subsystem dimensions (l_1, ..., l_n); global vertices are numbered 1..N."""

    dims: tuple

    def __post_init__(self):
        if isinstance(self.dims, list):
            object.__setattr__(self, "dims", tuple(self.dims))
        if not self.dims or any(not isinstance(d, int) or d < 1 for d in self.dims):
            raise SpecValidationError("block dimensions must be a nonempty tuple of positive ints")

    @property
    def n(self):
        return len(self.dims)

    @property
    def total(self):
        return sum(self.dims)

    def offset(self, i):
        """0-based global offset of block i (1-based)."""
        return sum(self.dims[: i - 1])

    def vertices(self, i):
        """1-based global vertex indices belonging to block i."""
        start = self.offset(i)
        return tuple(range(start + 1, start + 1 + self.dims[i - 1]))

    def block_of(self, v):
        """(block index, local index), both 1-based, for global vertex v."""
        acc = 0
        for i, d in enumerate(self.dims, start=1):
            if v <= acc + d:
                return i, v - acc
            acc += d
        raise SpecValidationError(f"vertex {v} outside 1..{self.total}")


_DELTA_KINDS = ("all", "nonzero", "crhp", "singleton", "finite", "interval")


@dataclass(frozen=True)
class DeltaSet:
    """A set of complex modes against which controllability is required.

    Variants: the whole plane, the punctured plane, the closed right half
    plane, a real singleton {mu}, a finite set of reals, or a closed real
    interval [a, b].
    """

    kind: str
    mu: float = 0.0
    values: tuple = ()
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.kind not in _DELTA_KINDS:
            raise SpecValidationError(f"unknown delta kind {self.kind!r}")
        if isinstance(self.values, list):
            object.__setattr__(self, "values", tuple(self.values))
        if self.kind == "singleton":
            if not _is_real_number(self.mu):
                raise SpecValidationError("singleton delta takes a finite real value")
        if self.kind == "finite":
            if not self.values or any(not _is_real_number(v) for v in self.values):
                raise SpecValidationError("finite delta takes a nonempty tuple of finite reals")
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.kind == "interval":
            if not (_is_real_number(self.a) and _is_real_number(self.b) and self.a < self.b):
                raise SpecValidationError("interval delta requires finite reals a < b")

    @classmethod
    def all_complex(cls):
        return cls("all")

    @classmethod
    def nonzero_complex(cls):
        return cls("nonzero")

    @classmethod
    def closed_right_half_plane(cls):
        return cls("crhp")

    @classmethod
    def singleton(cls, mu):
        return cls("singleton", mu=float(mu))

    @classmethod
    def finite_real(cls, values):
        return cls("finite", values=tuple(float(v) for v in values))

    @classmethod
    def real_interval(cls, a, b):
        return cls("interval", a=float(a), b=float(b))

    def contains(self, lam, tol=DEFAULT_TOL):
        """Membership of the complex number lam, up to tolerance tol."""
        lam = complex(lam)
        if self.kind == "all":
            return True
        if self.kind == "nonzero":
            return abs(lam) > tol
        if self.kind == "crhp":
            return lam.real >= -tol
        if self.kind == "singleton":
            return abs(lam - self.mu) <= tol
        if self.kind == "finite":
            return min(abs(lam - v) for v in self.values) <= tol
        return abs(lam.imag) <= tol and (self.a - tol) <= lam.real <= (self.b + tol)

    def is_singleton(self):
        return self.kind == "singleton"

    def intersects_reals(self):
        # every representable variant meets the real axis
        return True

    def mu_rep(self):
        """A representative real member, used as the default witness mode."""
        if self.kind in ("all", "crhp"):
            return 0.0
        if self.kind == "nonzero":
            return 1.0
        if self.kind == "singleton":
            return self.mu
        if self.kind == "finite":
            return min(self.values)
        return self.a

    def to_json(self):
        if self.kind == "singleton":
            return {"kind": "singleton", "value": self.mu}
        if self.kind == "finite":
            return {"kind": "finite", "values": list(self.values)}
        if self.kind == "interval":
            return {"kind": "interval", "a": self.a, "b": self.b}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise SpecValidationError("delta must be an object with a 'kind' field")
        kind = obj["kind"]
        if kind == "singleton":
            return cls.singleton(_require_real(obj, "value"))
        if kind == "finite":
            vals = obj.get("values")
            if not isinstance(vals, list):
                raise SpecValidationError("finite delta needs a 'values' list")
            return cls.finite_real(vals)
        if kind == "interval":
            return cls.real_interval(_require_real(obj, "a"), _require_real(obj, "b"))
        if kind in ("all", "nonzero", "crhp"):
            return cls(kind)
        raise SpecValidationError(f"unknown delta kind {kind!r}")

    def __str__(self):
        if self.kind == "all":
            return "C"
        if self.kind == "nonzero":
            return "C\\{0}"
        if self.kind == "crhp":
            return "Re>=0"
        if self.kind == "singleton":
            return "{%g}" % self.mu
        if self.kind == "finite":
            return "{" + ", ".join("%g" % v for v in self.values) + "}"
        return "[%g, %g]" % (self.a, self.b)


def _is_real_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _require_real(obj, key):
    v = obj.get(key)
    if not _is_real_number(v):
        raise SpecValidationError(f"delta field {key!r} must be a finite real number")
    return float(v)


UNKNOWN = "unknown"
DISJOINT = "disjoint_from_delta"
MU_IDENTITY = "mu_identity"


@dataclass(frozen=True)
class SpectralKnowledge:
    """What is known about one block's spectrum relative to Delta.

    unknown: nothing assumed. disjoint_from_delta: the block's eigenvalues
    avoid Delta. mu_identity: the block equals mu * I (only meaningful when
    Delta is the singleton {mu}).
    """

    kind: str
    mu: float = 0.0

    def __post_init__(self):
        if self.kind not in (UNKNOWN, DISJOINT, MU_IDENTITY):
            raise SpecValidationError(f"unknown spectral knowledge kind {self.kind!r}")

    @classmethod
    def unknown(cls):
        return cls(UNKNOWN)

    @classmethod
    def disjoint(cls):
        return cls(DISJOINT)

    @classmethod
    def mu_identity(cls, mu):
        return cls(MU_IDENTITY, mu=float(mu))

    def to_json(self):
        if self.kind == MU_IDENTITY:
            return {"mu_identity": self.mu}
        return self.kind

    @classmethod
    def from_json(cls, obj):
        if obj == UNKNOWN:
            return cls.unknown()
        if obj == DISJOINT:
            return cls.disjoint()
        if isinstance(obj, dict) and set(obj) == {"mu_identity"}:
            if not _is_real_number(obj["mu_identity"]):
                raise SpecValidationError("mu_identity takes a finite real value")
            return cls.mu_identity(obj["mu_identity"])
        raise SpecValidationError(
            f"spectral knowledge must be 'unknown', 'disjoint_from_delta', or {{'mu_identity': mu}}, got {obj!r}"
        )


@dataclass(frozen=True)
class CharacteristicVector:
    """Per-node summary of spectral knowledge: '*' disjoint, '0' mu-identity, '?' unknown."""

    f: tuple

    def __post_init__(self):
        if isinstance(self.f, list):
            object.__setattr__(self, "f", tuple(self.f))
        for k, sym in enumerate(self.f):
            if sym not in SYMBOLS:
                raise SpecValidationError(f"characteristic entry {k + 1} is {sym!r}")

    def __getitem__(self, k):
        """Symbol for node k, 1-based."""
        return self.f[k - 1]

    def __len__(self):
        return len(self.f)


@dataclass(frozen=True)
class NetworkSpec:
    """A pattern-constrained network of dynamical subsystems.

    couplings maps the pair (i, j), i != j, to the pattern of the block
    through which subsystem j drives subsystem i (an l_i by l_j pattern).
    Missing pairs are all-zero blocks. control lists the directly actuated
    subsystems.
    """

    blocks: BlockStructure
    node_patterns: tuple
    couplings: tuple
    delta: DeltaSet
    knowledge: tuple
    control: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "node_patterns", tuple(self.node_patterns))
        object.__setattr__(self, "knowledge", tuple(self.knowledge))
        object.__setattr__(self, "control", tuple(sorted(set(self.control))))
        coups = tuple(sorted(tuple((tuple(k), v) for k, v in self.couplings)))
        object.__setattr__(self, "couplings", coups)
        self._validate()

    @property
    def n(self):
        return self.blocks.n

    def dim(self, i):
        return self.blocks.dims[i - 1]

    def is_n1ds(self):
        return all(d == 1 for d in self.blocks.dims)

    def coupling(self, i, j):
        """Pattern of block (i, j), or None when the block is identically zero."""
        for key, pat in self.couplings:
            if key == (i, j):
                return pat
        return None

    def control_vertices(self):
        """Global vertex indices actuated by the control set, ascending."""
        out = []
        for i in self.control:
            out.extend(self.blocks.vertices(i))
        return tuple(out)

    def assembled_pattern(self):
        """The full N by N pattern with node blocks on the diagonal."""
        n, dims = self.n, self.blocks.dims
        rows = []
        for i in range(1, n + 1):
            for a in range(dims[i - 1]):
                chunks = []
                for j in range(1, n + 1):
                    if i == j:
                        chunks.append(self.node_patterns[i - 1].rows[a])
                    else:
                        pat = self.coupling(i, j)
                        chunks.append(pat.rows[a] if pat is not None else ZERO * dims[j - 1])
                rows.append("".join(chunks))
        return PatternMatrix(tuple(rows))

    def _validate(self):
        n = self.n
        if len(self.node_patterns) != n:
            raise SpecValidationError(f"expected {n} node patterns, got {len(self.node_patterns)}")
        if len(self.knowledge) != n:
            raise SpecValidationError(f"expected {n} knowledge entries, got {len(self.knowledge)}")
        for i in range(1, n + 1):
            d = self.dim(i)
            pat = self.node_patterns[i - 1]
            if pat.shape != (d, d):
                raise SpecValidationError(f"node {i} pattern shape {pat.shape} != ({d}, {d})")
        seen = set()
        for (i, j), pat in self.couplings:
            if not (1 <= i <= n and 1 <= j <= n):
                raise SpecValidationError(f"coupling ({i},{j}) references an unknown subsystem")
            if i == j:
                raise SpecValidationError(f"coupling ({i},{j}) addresses a diagonal block")
            if (i, j) in seen:
                raise SpecValidationError(f"coupling ({i},{j}) given twice")
            seen.add((i, j))
            if pat.shape != (self.dim(i), self.dim(j)):
                raise SpecValidationError(
                    f"coupling ({i},{j}) shape {pat.shape} != ({self.dim(i)}, {self.dim(j)})"
                )
        for i in self.control:
            if not (1 <= i <= n):
                raise SpecValidationError(f"control set references unknown subsystem {i}")
        for i in range(1, n + 1):
            self._validate_knowledge(i)

    def _validate_knowledge(self, i):
        know = self.knowledge[i - 1]
        pat = self.node_patterns[i - 1]
        d = self.dim(i)
        if know.kind == MU_IDENTITY:
            if not self.delta.is_singleton():
                raise SpecValidationError(
                    f"node {i}: mu_identity knowledge requires a singleton delta"
                )
            if know.mu != self.delta.mu:
                raise SpecValidationError(
                    f"node {i}: mu_identity value {know.mu:g} differs from delta {self.delta}"
                )
            for a in range(d):
                for b in range(d):
                    sym = pat.entry(a, b)
                    if a != b and sym == STAR:
                        raise SpecValidationError(
                            f"node {i}: mu_identity conflicts with off-diagonal '*' at ({a + 1},{b + 1})"
                        )
                    if a == b and sym == STAR and know.mu == 0.0:
                        raise SpecValidationError(
                            f"node {i}: mu_identity(0) conflicts with diagonal '*' at ({a + 1},{a + 1})"
                        )
                    if a == b and sym == ZERO and know.mu != 0.0:
                        raise SpecValidationError(
                            f"node {i}: mu_identity({know.mu:g}) conflicts with diagonal '0' at ({a + 1},{a + 1})"
                        )
        if know.kind == DISJOINT:
            if self.delta.kind == "all":
                raise SpecValidationError(
                    f"node {i}: no spectrum can avoid the whole complex plane"
                )
            if d == 1:
                sym = pat.entry(0, 0)
                if sym == ZERO and self.delta.contains(0.0):
                    raise SpecValidationError(
                        f"node {i}: diagonal is pinned to 0 but 0 lies in delta {self.delta}"
                    )
                if sym == STAR and self.delta.kind == "nonzero":
                    raise SpecValidationError(
                        f"node {i}: a nonzero scalar block cannot avoid delta {self.delta}"
                    )


def derive_characteristic(spec):
    """Characteristic vector of a network: '*' disjoint, '0' mu-identity, '?' unknown."""
    f = []
    for know in spec.knowledge:
        if know.kind == DISJOINT:
            f.append(STAR)
        elif know.kind == MU_IDENTITY:
            f.append(ZERO)
        else:
            f.append(ARB)
    vec = CharacteristicVector(tuple(f))
    if not spec.delta.is_singleton() and ZERO in vec.f:
        raise SpecValidationError("a '0' characteristic entry requires a singleton delta")
    return vec


def derive_n1ds_knowledge(pattern, delta):
    """Spectral knowledge readable off the diagonal of a one-dimensional-blocks pattern.

    For delta = {0}: a '*' diagonal avoids delta, a '0' diagonal equals 0 * I.
    For the punctured plane, a '0' diagonal avoids delta. Every other case,
    including the whole plane, gives no information.
    """
    q, p = pattern.shape
    if q != p:
        raise SpecValidationError("expected a square pattern")
    out = []
    zero_singleton = delta.is_singleton() and delta.mu == 0.0
    for k in range(q):
        sym = pattern.entry(k, k)
        if zero_singleton:
            if sym == STAR:
                out.append(SpectralKnowledge.disjoint())
            elif sym == ZERO:
                out.append(SpectralKnowledge.mu_identity(0.0))
            else:
                out.append(SpectralKnowledge.unknown())
        elif delta.kind == "nonzero" and sym == ZERO:
            out.append(SpectralKnowledge.disjoint())
        else:
            out.append(SpectralKnowledge.unknown())
    return tuple(out)


def n1ds_spec(pattern, delta, control=(), knowledge=None):
    """Convenience builder for a network of scalar subsystems from one square pattern."""
    q, p = pattern.shape
    if q != p:
        raise SpecValidationError("expected a square pattern")
    if knowledge is None:
        knowledge = derive_n1ds_knowledge(pattern, delta)
    node_patterns = tuple(PatternMatrix((pattern.entry(k, k),)) for k in range(q))
    couplings = []
    for i in range(q):
        for j in range(q):
            if i != j and pattern.entry(i, j) != ZERO:
                couplings.append(((i + 1, j + 1), PatternMatrix((pattern.entry(i, j),))))
    return NetworkSpec(
        blocks=BlockStructure(tuple(1 for _ in range(q))),
        node_patterns=node_patterns,
        couplings=tuple(couplings),
        delta=delta,
        knowledge=knowledge,
        control=tuple(control),
    )
