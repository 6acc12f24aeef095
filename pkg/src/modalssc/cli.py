"""Command line interface and the network file format.

A network file is JSON:

    {
      "subsystems": [
        {"id": 1, "dim": 2, "pattern": ["0*", "**"],
         "spectral_knowledge": "disjoint_from_delta"}
      ],
      "couplings": [
        {"from": 1, "to": 2, "pattern": ["0*", "0*"]}
      ],
      "delta": {"kind": "crhp"},
      "control": [1]
    }

Subsystem ids must be 1..n with no gaps. "pattern" rows are strings over
{0, *, ?}; a subsystem may omit it (all-arbitrary) when "dim" is given,
and may omit "dim" when "pattern" is given. spectral_knowledge is
"unknown" (default), "disjoint_from_delta", or {"mu_identity": mu}. A
coupling's pattern has shape dim(to) x dim(from); omitted couplings are
zero blocks. "delta" is {"kind": "all" | "nonzero" | "crhp"},
{"kind": "singleton", "value": mu}, {"kind": "finite", "values": [...]},
or {"kind": "interval", "a": a, "b": b}.

Exit codes: 0 affirmative verdict, 1 negative verdict, 2 malformed
input, 3 a search or sampling limit was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, graph, oracle, zeroforcing
from .errors import (
    ModalSscError,
    NetworkFileError,
    SamplingError,
    SearchLimitError,
    SpecValidationError,
    WitnessError,
)
from .pattern import (
    DEFAULT_TOL,
    BlockStructure,
    DeltaSet,
    NetworkSpec,
    PatternMatrix,
    SpectralKnowledge,
)


def spec_from_json(doc, where="<network>"):
    """Build a NetworkSpec from a parsed JSON document, with located errors."""

    def fail(ctx, msg):
        raise NetworkFileError(f"{where}: {ctx}: {msg}")

    if not isinstance(doc, dict):
        fail("top level", "expected a JSON object")
    unknown = set(doc) - {"subsystems", "couplings", "delta", "control"}
    if unknown:
        fail("top level", f"unknown keys {sorted(unknown)}")
    subs = doc.get("subsystems")
    if not isinstance(subs, list) or not subs:
        fail("subsystems", "expected a nonempty list")
    by_id = {}
    for idx, entry in enumerate(subs):
        ctx = f"subsystems[{idx}]"
        if not isinstance(entry, dict):
            fail(ctx, "expected an object")
        bad = set(entry) - {"id", "dim", "pattern", "spectral_knowledge"}
        if bad:
            fail(ctx, f"unknown keys {sorted(bad)}")
        sid = entry.get("id")
        if not isinstance(sid, int) or isinstance(sid, bool) or sid < 1:
            fail(ctx, "'id' must be a positive integer")
        if sid in by_id:
            fail(ctx, f"duplicate id {sid}")
        dim = entry.get("dim")
        rows = entry.get("pattern")
        if dim is None and rows is None:
            fail(ctx, "need 'dim' or 'pattern'")
        if rows is not None:
            if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
                fail(ctx, "'pattern' must be a list of row strings")
            try:
                pat = PatternMatrix(tuple(rows))
            except SpecValidationError as exc:
                fail(ctx, str(exc))
            if pat.shape[0] != pat.shape[1]:
                fail(ctx, f"subsystem pattern must be square, got {pat.shape}")
            if dim is not None and dim != pat.shape[0]:
                fail(ctx, f"'dim' is {dim} but the pattern is {pat.shape[0]} wide")
            dim = pat.shape[0]
        else:
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
                fail(ctx, "'dim' must be a positive integer")
            pat = PatternMatrix.arbitrary(dim, dim)
        try:
            know = SpectralKnowledge.from_json(entry.get("spectral_knowledge", "unknown"))
        except SpecValidationError as exc:
            fail(ctx, str(exc))
        by_id[sid] = (dim, pat, know)
    n = len(by_id)
    if sorted(by_id) != list(range(1, n + 1)):
        fail("subsystems", f"ids must be exactly 1..{n}, got {sorted(by_id)}")
    dims = tuple(by_id[i][0] for i in range(1, n + 1))

    couplings = []
    seen = set()
    for idx, entry in enumerate(doc.get("couplings", [])):
        ctx = f"couplings[{idx}]"
        if not isinstance(entry, dict):
            fail(ctx, "expected an object")
        bad = set(entry) - {"from", "to", "pattern"}
        if bad:
            fail(ctx, f"unknown keys {sorted(bad)}")
        src, dst = entry.get("from"), entry.get("to")
        for name, v in (("from", src), ("to", dst)):
            if not isinstance(v, int) or isinstance(v, bool) or not (1 <= v <= n):
                fail(ctx, f"'{name}' must be a subsystem id in 1..{n}")
        if src == dst:
            fail(ctx, "'from' and 'to' must differ; diagonal blocks belong to the subsystem")
        if (dst, src) in seen:
            fail(ctx, f"coupling {src} -> {dst} given twice")
        seen.add((dst, src))
        rows = entry.get("pattern")
        if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
            fail(ctx, "'pattern' must be a list of row strings")
        try:
            pat = PatternMatrix(tuple(rows))
        except SpecValidationError as exc:
            fail(ctx, str(exc))
        want = (dims[dst - 1], dims[src - 1])
        if pat.shape != want:
            fail(ctx, f"pattern shape {pat.shape} != {want} (dim(to) x dim(from))")
        couplings.append(((dst, src), pat))

    if "delta" not in doc:
        fail("delta", "missing")
    try:
        delta = DeltaSet.from_json(doc["delta"])
    except SpecValidationError as exc:
        fail("delta", str(exc))

    control = doc.get("control", [])
    if not isinstance(control, list) or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in control
    ):
        fail("control", "expected a list of subsystem ids")
    for c in control:
        if not (1 <= c <= n):
            fail("control", f"unknown subsystem id {c}")

    try:
        return NetworkSpec(
            blocks=BlockStructure(dims),
            node_patterns=tuple(by_id[i][1] for i in range(1, n + 1)),
            couplings=tuple(couplings),
            delta=delta,
            knowledge=tuple(by_id[i][2] for i in range(1, n + 1)),
            control=tuple(control),
        )
    except SpecValidationError as exc:
        raise NetworkFileError(f"{where}: {exc}")


def spec_to_json(spec):
    """The inverse of spec_from_json; parse(serialize(spec)) rebuilds spec."""
    return {
        "subsystems": [
            {
                "id": i,
                "dim": spec.dim(i),
                "pattern": list(spec.node_patterns[i - 1].rows),
                "spectral_knowledge": spec.knowledge[i - 1].to_json(),
            }
            for i in range(1, spec.n + 1)
        ],
        "couplings": [
            {"from": j, "to": i, "pattern": list(pat.rows)} for (i, j), pat in spec.couplings
        ],
        "delta": spec.delta.to_json(),
        "control": list(spec.control),
    }


def load_network_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise NetworkFileError(f"{path}: {exc.strerror or exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return spec_from_json(doc, where=path)


def render_dot(spec, level="network"):
    """Deterministic DOT text; strong edges solid, weak dashed, black vertices filled."""
    if level == "network":
        g = graph.build_delta_network_graph(spec).graph
        black = set(spec.control)
        labels = {v: str(v) for v in range(1, g.n + 1)}
        name = "network"
    elif level == "global":
        g = graph.build_global_graph(spec)
        black = set(spec.control_vertices())
        labels = {}
        for i in range(1, spec.n + 1):
            for a, v in enumerate(spec.blocks.vertices(i), start=1):
                labels[v] = f"{i}^{a}"
        name = "global"
    else:
        raise SpecValidationError(f"unknown level {level!r}, expected 'network' or 'global'")
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(1, g.n + 1):
        attrs = []
        if labels[v] != str(v):
            attrs.append(f'label="{labels[v]}"')
        if v in black:
            attrs += ["style=filled", "fillcolor=black", "fontcolor=white"]
        lines.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
    for (u, v) in g.edges():
        dashed = " [style=dashed]" if (u, v) in g.weak else ""
        lines.append(f"  {u} -> {v}{dashed};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _zfs_json(report, initial):
    return {
        "set": list(initial),
        "is_zfs": report.is_zfs,
        "derived_set": list(report.derived),
        "vertex_weight": report.vertex_weight,
        "chronicle": [list(pair) for pair in report.chronicle],
    }


def _witness_json(witness):
    if witness is None:
        return None
    return {
        "mu": witness.mu,
        "nu": witness.nu.tolist(),
        "A": witness.A.tolist(),
    }


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _parse_set(text):
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise SpecValidationError(f"--set expects comma-separated integers, got {text!r}")


def cmd_build(args):
    spec = load_network_file(args.file)
    dot = render_dot(spec, args.level)
    sys.stdout.write(dot)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    return 0


def cmd_check_zfs(args):
    spec = load_network_file(args.file)
    subset = _parse_set(args.set) if args.set is not None else spec.control
    g = graph.build_delta_network_graph(spec).graph
    report = zeroforcing.derived_set(g, subset)
    _emit(_zfs_json(report, sorted(set(subset))))
    return 0 if report.is_zfs else 1


def cmd_min_zfs(args):
    spec = load_network_file(args.file)
    g = graph.build_delta_network_graph(spec).graph
    subset, weight = zeroforcing.min_zfs(g)
    _emit({"set": list(subset), "weight": weight})
    return 0


def cmd_ssc(args):
    spec = load_network_file(args.file)
    verdict = analysis.is_delta_ssc(spec, tol=args.tol)
    _emit(
        {
            "verdict": verdict.verdict,
            "zfs": _zfs_json(verdict.zfs_report, spec.control),
            "witness": _witness_json(verdict.witness),
            "note": verdict.note,
        }
    )
    return 0 if verdict.affirmative else 1


def cmd_verify(args):
    spec = load_network_file(args.file)
    report = oracle.monte_carlo_verify(spec, trials=args.trials, base_seed=args.seed, tol=args.tol)
    _emit(
        {
            "trials": report.trials,
            "pass": report.passed,
            "violations": [
                {"trial": t, "eigenvalue": [lam.real, lam.imag], "sigma_min": smin}
                for (t, lam, smin) in report.violations
            ],
        }
    )
    return 0 if report.passed else 1


def cmd_rank(args):
    spec = load_network_file(args.file)
    i, j = args.to, args.src
    for name, v in (("--to", i), ("--from", j)):
        if not (1 <= v <= spec.n):
            raise SpecValidationError(f"{name} must be a subsystem id in 1..{spec.n}")
    if i == j:
        pat = spec.node_patterns[i - 1]
    else:
        pat = spec.coupling(i, j) or PatternMatrix.zeros(spec.dim(i), spec.dim(j))
    full, chronicle = graph.pattern_full_row_rank(pat)
    _emit(
        {
            "from": j,
            "to": i,
            "full_row_rank": full,
            "chronicle": [list(pair) for pair in chronicle],
        }
    )
    return 0 if full else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="modal-ssc",
        description="Strong structural controllability of pattern-constrained networks, mode by mode.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="render the network or global graph as DOT")
    p.add_argument("file")
    p.add_argument("--level", choices=["network", "global"], default="network")
    p.add_argument("--dot", metavar="PATH", help="also write the DOT text to PATH")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check-zfs", help="color the network graph from a subsystem set")
    p.add_argument("file")
    p.add_argument("--set", metavar="LIST", help="comma-separated subsystem ids (default: the control set)")
    p.set_defaults(func=cmd_check_zfs)

    p = sub.add_parser("min-zfs", help="minimum-weight forcing set of the network graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_min_zfs)

    p = sub.add_parser("ssc", help="decide strong structural controllability w.r.t. delta")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_ssc)

    p = sub.add_parser("verify", help="cross-check the verdict on sampled realizations")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank", help="full-row-rank test for one pattern block")
    p.add_argument("file")
    p.add_argument("--from", dest="src", type=int, required=True, metavar="J")
    p.add_argument("--to", dest="to", type=int, required=True, metavar="I")
    p.set_defaults(func=cmd_rank)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NetworkFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SearchLimitError, SamplingError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SpecValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModalSscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
