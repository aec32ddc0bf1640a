"""Command-line front end.

Subcommands ``overlaps``, ``concurrence``, ``gte``, ``distill``, ``scan`` and
``table``. Output is an aligned text report by default, or JSON with
``--format json``. Exit codes: 0 success, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import distill, gte, scan
from .entanglement import concurrence_report
from .families import FamilySpec
from .pairs import Bipartition, bipartitions, pair_table
from .qmat import InvalidStateError
from .statefile import StateFileError, load_state

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


class Report:
    """Ordered result fields plus named tables, renderable as text or JSON."""

    def __init__(self, command, argv, digest=None):
        self.command = command
        self.argv = list(argv)
        self.digest = digest
        self.fields: dict[str, object] = {}
        self.tables: dict[str, tuple[list[str], list[list]]] = {}
        self.wall_time: float | None = None

    def add(self, key, value):
        self.fields[key] = value

    def table(self, name, columns, rows):
        self.tables[name] = (list(columns), [list(r) for r in rows])

    def to_json(self, timing=False) -> str:
        doc = {"command": self.command, "argv": self.argv}
        if self.digest:
            doc["input_sha256"] = self.digest
        doc["results"] = self.fields
        doc["tables"] = {k: {"columns": c, "rows": r} for k, (c, r) in self.tables.items()}
        if timing and self.wall_time is not None:
            doc["wall_time_s"] = self.wall_time
        return json.dumps(doc, indent=2, allow_nan=False)

    def to_text(self) -> str:
        lines = [f"command: {' '.join(['chshpair', *self.argv])}"]
        if self.digest:
            lines.append(f"input sha256: {self.digest}")
        width = max((len(k) for k in self.fields), default=0)
        for k, v in self.fields.items():
            lines.append(f"{k:<{width}}  {_fmt(v)}")
        for name, (cols, rows) in self.tables.items():
            cells = [cols] + [[_fmt(v) for v in r] for r in rows]
            widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
            lines.append("")
            lines.append(f"[{name}]")
            for row in cells:
                lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
        if self.wall_time is not None:
            lines.append("")
            lines.append(f"wall time: {self.wall_time:.3f} s")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return {True: "yes", False: "no", None: "n/a"}[v]
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    return str(v)


def _partition_arg(args, s):
    if args.partition:
        return Bipartition.parse(args.partition, s.nparties)
    return Bipartition((0,), tuple(range(1, s.nparties)))


def cmd_overlaps(args, rep):
    s, rep.digest = load_state(args.state)
    parts = [_partition_arg(args, s)] if args.partition or s.nparties == 2 else bipartitions(s.nparties)
    rows = []
    for p in parts:
        t = pair_table(s, p)
        for r in t.records():
            rows.append([p.label, r.alpha.label, r.beta.label, r.y, r.gamma, r.q])
        rep.add(f"max_q[{p.label}]", t.max_q)
        rep.add(f"sum_y2q[{p.label}]", t.weighted_sum)
    rep.table("pairs", ["partition", "alpha", "beta", "y", "gamma", "q"], rows)


def cmd_concurrence(args, rep):
    s, rep.digest = load_state(args.state)
    if s.nparties < 2:
        raise ValueError("concurrence needs at least two parties")
    r = concurrence_report(s)
    rep.add("kind", "pure" if s.is_pure else "mixed")
    rep.add("concurrence", r.value)
    rep.add("lower_bound", r.lower_bound)
    rows = [[p.label, v, 0.5 * float(np.sqrt(v))] for p, v in r.per_partition.items()]
    rep.table("partitions", ["partition", "sum_y2q", "bound"], rows)


def cmd_gte(args, rep):
    s, rep.digest = load_state(args.state)
    r = gte.gte_report(s, tol=args.tol if args.tol is not None else gte.GTE_TOL)
    rep.add("X", r.x)
    rep.add("Y", r.y)
    rep.add("Z", r.z)
    rep.add("sum", r.sum)
    rep.add("gte_detected", r.mixed_gte_detected)
    rep.add("bound", r.bound)
    rep.add("bound_clamped", None if r.bound is None else max(r.bound, 0.0))
    if s.is_pure:
        rep.add("pure_gte", r.pure_gte)
        rep.add("gte_concurrence", r.pure_gte_concurrence)


def cmd_distill(args, rep):
    s, rep.digest = load_state(args.state)
    p = _partition_arg(args, s)
    kw = {"cap": args.cap}
    if args.tol is not None:
        kw["q_tol"] = args.tol
    r = distill.distill_report(s, p, n=args.copies, lu_iterations=args.lu_iters, seed=args.seed, **kw)
    rep.add("partition", p.label)
    rep.add("copies", r.copies)
    rep.add("max_q", r.max_q)
    if r.lu_max_q is not None:
        rep.add("lu_max_q", r.lu_max_q)
        rep.add("seed", r.seed)
    rep.add("chsh_distillable", r.distillable_chsh)
    rep.add("rc_min_eig", r.rc_min_eig)
    rep.add("rc_distillable", r.distillable_rc)
    if r.lu_trace is not None:
        rep.table("lu_trace", ["iteration", "best_q"], [[k + 1, q] for k, q in enumerate(r.lu_trace)])


def cmd_scan(args, rep):
    fam = FamilySpec(args.family, args.d, 3 if args.family == "ghz_noise" else 2)
    part = Bipartition.parse(args.partition, fam.parties) if args.partition else None
    sc = scan.ThresholdScan(fam, args.criterion, (args.lo, args.hi), args.tol if args.tol is not None else 1e-7, part)
    rep.add("family", fam.name)
    rep.add("d", fam.d)
    rep.add("criterion", sc.criterion)
    rep.add("threshold", scan.bisect_threshold(sc))


def cmd_table(args, rep):
    cells = scan.reproduce_table(args.name)
    rep.add("table", args.name.upper())
    rep.add("max_deviation", max(c.deviation for c in cells))
    rep.table("thresholds", ["range", "d", "computed", "published", "deviation"],
              [[c.range, c.d, c.value, c.published, c.deviation] for c in cells])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS, help="output format (default: text)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="override the positivity tolerance of the command")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized searches (default: 0)")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="include wall time in JSON output")

    parser = argparse.ArgumentParser(prog="chshpair", parents=[common],
                                     description="Entanglement characterization from CHSH overlaps of qubit pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def state_cmd(name, helptext, partition=False):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("state", help="path to a JSON state file")
        if partition:
            p.add_argument("--partition", help="bipartition with 1-based labels, e.g. '1|23'")
        return p

    state_cmd("overlaps", "list every qubit-pair projection and its CHSH overlap", partition=True)
    state_cmd("concurrence", "concurrence (pure) and overlap lower bound (any state)")
    state_cmd("gte", "genuine tripartite entanglement criteria")
    d = state_cmd("distill", "bipartite distillability tests", partition=True)
    d.add_argument("--copies", type=int, default=1, help="number of copies n of the state (default: 1)")
    d.add_argument("--lu-iters", type=int, default=0, help="local-unitary search iterations (default: 0, off)")
    d.add_argument("--cap", type=int, default=distill.DIM_CAP, help="largest allowed dimension of the n-copy state")

    s = sub.add_parser("scan", parents=[common], help="bisect a criterion over a state family")
    s.add_argument("--family", choices=["isotropic", "ghz_noise"], required=True)
    s.add_argument("--d", type=int, required=True, help="local dimension")
    s.add_argument("--criterion", choices=scan.CRITERIA, required=True)
    s.add_argument("--lo", type=float, default=0.0)
    s.add_argument("--hi", type=float, default=1.0)
    s.add_argument("--partition", help="bipartition for overlap_pos / rc (default: 1|rest)")

    t = sub.add_parser("table", parents=[common], help="recompute a published threshold table")
    t.add_argument("--name", choices=["I", "II", "III", "i", "ii", "iii"], required=True)
    return parser


COMMANDS = {
    "overlaps": cmd_overlaps,
    "concurrence": cmd_concurrence,
    "gte": cmd_gte,
    "distill": cmd_distill,
    "scan": cmd_scan,
    "table": cmd_table,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    for name, default in (("format", "text"), ("tol", None), ("seed", 0), ("timing", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    rep = Report(args.command, argv)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep)
    except distill.DimensionCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for v in exc.report:
            print(f"  {v.check}: deviation {v.deviation:.3e} {v.detail}".rstrip(), file=sys.stderr)
        return EXIT_INPUT
    except (StateFileError, scan.ScanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.wall_time = time.perf_counter() - start
    out = rep.to_json(timing=args.timing) if args.format == "json" else rep.to_text()
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
