"""Command line interface: ``homaloidal <subcommand> ...``.

Exit codes: 0 success, 1/2 for Improper/NotNoether verdicts of ``test``,
64 parse errors, 65 precondition violations, 70 internal invariant
failures, 74 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import constructions, enumeration, growth, lemmas, reference
from .core import TypeSyntaxError, format_type, parse_type
from .tree import (
    InadmissibleSeedError,
    InvariantError,
    NotProperError,
    Outcome,
    children,
    delta,
    hudson_test,
    lineage_to_root,
    parent,
)

EX_PARSE, EX_PRECONDITION, EX_INTERNAL, EX_IO = 64, 65, 70, 74
VERDICT_CODES = {Outcome.PROPER: 0, Outcome.IMPROPER: 1, Outcome.NOT_NOETHER: 2}
WORKERS_ENV = "HOMALOIDAL_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _seed_text(values) -> str:
    return "(" + ",".join(map(str, values)) + ")"


def _emit(args, text: str = "", payload=None):
    if args.json and payload is not None:
        print(json.dumps(payload, indent=2))
    elif not args.quiet and text:
        print(text)


def _write(path: str, text: str):
    Path(path).write_text(text)


# --- subcommands -----------------------------------------------------------

def cmd_test(args) -> int:
    t = parse_type(args.type)
    verdict = hudson_test(t, want_trace=args.trace)
    lines = []
    if args.trace and verdict.trace:
        lines += [format_type(x) for x in verdict.trace]
        if verdict.negative_values is not None:
            last = verdict.trace[-1]
            lines.append(f"({last.degree - delta(last)};" + ",".join(map(str, verdict.negative_values))
                         + ")  <- negative entry")
    lines.append(verdict.outcome.value)
    _emit(args, "\n".join(lines), {
        "type": format_type(t), "verdict": verdict.outcome.value, "steps": verdict.steps,
        "trace": [format_type(x) for x in verdict.trace] if verdict.trace else None,
    })
    return VERDICT_CODES[verdict.outcome]


def _proper(text: str):
    t = parse_type(text)
    if not hudson_test(t).proper:
        raise NotProperError(f"{format_type(t)} is not a proper homaloidal type")
    return t


def cmd_parent(args) -> int:
    t = _proper(args.type)
    p, seed = parent(t)
    _emit(args, f"{format_type(p)} seed={_seed_text(seed.values)} nabla={seed.nabla}"
                f"{' star' if seed.star else ''}",
          {"parent": format_type(p), "seed": list(seed.values), "nabla": seed.nabla,
           "star": seed.star})
    return 0


def cmd_children(args) -> int:
    t = _proper(args.type)
    kids = children(t, args.max_degree)
    lines = [f"{format_type(c)} seed={_seed_text(s.values)} nabla={s.nabla}{' star' if s.star else ''}"
             for s, c in kids]
    _emit(args, "\n".join(lines),
          [{"child": format_type(c), "seed": list(s.values), "nabla": s.nabla, "star": s.star}
           for s, c in kids])
    return 0


def cmd_lineage(args) -> int:
    lin = lineage_to_root(parse_type(args.type))
    lines = [format_type(lin.types[0])]
    for s, t in zip(lin.seeds, lin.types[1:]):
        lines.append(f"{format_type(t)} seed={_seed_text(s.values)} nabla={s.nabla}"
                     f"{' star' if s.star else ''}")
    _emit(args, "\n".join(lines),
          {"types": [format_type(t) for t in lin.types], "seeds": [list(s.values) for s in lin.seeds]})
    return 0


def cmd_count(args) -> int:
    d = args.max_degree
    if d < 1:
        raise ValueError("--max-degree must be positive")
    tree = filt = None
    if args.method in ("tree", "both"):
        tree = enumeration.count_by_tree(d, workers=args.workers, checkpoint_path=args.checkpoint,
                                         sample_every=args.sample_every)
    if args.method in ("filter", "both"):
        filt = enumeration.filter_report(d)
    report = tree or filt
    status = 0
    notes = []
    if tree is not None and filt is not None:
        report.solutions = filt.solutions
        report.method = "both"
        bad = [k for k in range(1, d + 1) if tree.counts[k] != filt.counts[k]]
        if bad:
            notes.append(f"MISMATCH between tree and filter at degrees {bad}")
            status = EX_INTERNAL
    for line in reference.mismatches(report.counts, report.solutions):
        notes.append(f"inconsistent reference entry: {line}")
    if args.out:
        if args.out.endswith(".csv"):
            report.write_csv(args.out)
        else:
            report.write_json(args.out)
    rows = [f"d={k} N_d={report.counts[k]}"
            + (f" S_d={report.solutions[k]}" if report.solutions else "")
            + (f" s_d={report.seedbed_max[k]}" if report.seedbed_max else "")
            for k in range(1, d + 1)]
    _emit(args, "\n".join(rows + notes), {**report.to_json(), "notes": notes})
    if notes and args.quiet:
        print("\n".join(notes), file=sys.stderr)
    return status


def cmd_stats(args) -> int:
    report = enumeration.CountReport.from_json(json.loads(Path(args.report).read_text()))
    if args.curve == "c":
        curve = growth.c_curve(report)
        text = curve.to_csv()
        off = curve.out_of_band()
        summary = (f"{len(curve.points)} points; c(d) outside [{growth.SQRT_LN2:.4f}, "
                   f"{growth.TWO_SQRT_LN2:.4f}] for d>=16 at: {off or 'none'}")
    else:
        rows = growth.max_seedbed(report, beta=args.beta, alpha=args.alpha)
        text = growth.seedbed_csv(rows)
        mono = growth.is_non_decreasing(r.s_d for r in rows)
        summary = f"{len(rows)} degrees; s(d) non-decreasing over the range: {mono}"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    _emit(args, summary, None)
    return 0


def cmd_histogram(args) -> int:
    h = enumeration.histogram(args.degree, args.kind, workers=args.workers)
    text = h.to_csv()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    _emit(args, f"total mass {h.total}", None)
    return 0


def cmd_kalmar(args) -> int:
    table = growth.kalmar_table(args.max)
    if args.out:
        table.write_csv(args.out)
    lines = []
    if args.max <= 100:
        lines += [f"K_{n} = {table[n]}" for n in range(1, args.max + 1)]
    lines += [f"rho = {table.rho:.15f}", f"a = {table.a:.15f}",
              f"sum K_d / (a n^rho) at n={args.max}: {table.ratio():.6f}"]
    _emit(args, "\n".join(lines), {"rho": table.rho, "a": table.a, "ratio": table.ratio(),
                                   "K": {str(n): int(table[n]) for n in range(1, min(args.max, 100) + 1)}})
    return 0


def cmd_construct(args) -> int:
    if args.family == "yN":
        results = [constructions.build_yN(args.N)]
    elif args.family == "descendants":
        results = constructions.power_set_descendants(_proper(args.type), args.s)
    else:
        values = [int(v) for v in args.values.split(",") if v.strip()]
        results = [constructions.split_blocks(_proper(args.type), values, args.k)]
    payload = [r.to_json() for r in results]
    text = json.dumps(payload if len(payload) > 1 else payload[0], indent=2)
    if args.out:
        _write(args.out, text + "\n")
    if not args.quiet:
        print(text)
    return 0 if all(r.ok for r in results) else EX_INTERNAL


def cmd_audit(args) -> int:
    result = lemmas.property_suite(args.max_degree)
    lines = [f"{result.types_checked} types of degree <= {args.max_degree} "
             f"checked in {result.runtime_s:.1f} s"] + result.summary()
    for name, msgs in result.violations.items():
        lines += [f"  {name}: {m}" for m in msgs[:5]]
    _emit(args, "\n".join(lines), {"types": result.types_checked,
                                   "violations": {k: len(v) for k, v in result.violations.items()}})
    return 0 if result.ok else 1


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress standard output summaries")
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")

    p = _Parser(prog="homaloidal", description="Hudson-tree tools for homaloidal types.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("test", parents=[common], help="run Hudson's test")
    s.add_argument("type")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_test)

    for name, func, helptext in (("parent", cmd_parent, "parent and canonical seed"),
                                 ("children", cmd_children, "all children"),
                                 ("lineage", cmd_lineage, "lineage up to (1;0)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("type")
        if name == "children":
            s.add_argument("--max-degree", type=int, default=None)
        s.set_defaults(func=func)

    s = sub.add_parser("count", parents=[common], help="count types by degree")
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--method", choices=("tree", "filter", "both"), default="tree")
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--checkpoint")
    s.add_argument("--sample-every", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("stats", parents=[common], help="growth curves from a count report")
    s.add_argument("--report", required=True)
    s.add_argument("--curve", choices=("c", "s"), default="c")
    s.add_argument("--beta", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("histogram", parents=[common], help="exact histograms in one degree")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--kind", choices=enumeration.HISTOGRAM_KINDS, default="m1m2")
    s.add_argument("--workers", type=int, default=_default_workers())
    s.add_argument("--out")
    s.set_defaults(func=cmd_histogram)

    s = sub.add_parser("kalmar", parents=[common], help="Kalmár's function and zeta constants")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_kalmar)

    s = sub.add_parser("construct", parents=[common], help="explicit constructions")
    s.add_argument("family", choices=("yN", "descendants", "split"))
    s.add_argument("--N", type=int)
    s.add_argument("--type")
    s.add_argument("--s", type=int)
    s.add_argument("--values")
    s.add_argument("--k", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("audit", parents=[common], help="run the lemma property suite")
    s.add_argument("--max-degree", type=int, required=True)
    s.set_defaults(func=cmd_audit)
    return p


def _validate(args):
    if args.command == "construct":
        need = {"yN": ("N",), "descendants": ("type", "s"), "split": ("type", "values", "k")}
        missing = [f"--{n}" for n in need[args.family] if getattr(args, n) is None]
        if missing:
            raise UsageError(f"construct {args.family} requires {', '.join(missing)}")
    if getattr(args, "workers", 1) < 1:
        raise ValueError("--workers must be at least 1")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        return args.func(args)
    except (UsageError, TypeSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_PARSE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EX_INTERNAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EX_IO
    except (ValueError, NotProperError, InadmissibleSeedError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
