"""Command-line front end: generate, verify, sample, and benchmark designs.

Exit codes: 0 success, 1 I/O or parse failure, 2 plan/construction error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from .bush import bush_construct
from .designs import (
    Design,
    check_strength,
    collapse,
    load_design,
    save_design,
)
from .errors import DesignError, FormatError, StrengthError
from .gf import field_of_order
from .nested import construct_lhs, construct_noa, construct_tang, plan_noa
from .sampling import save_points, to_points

EXIT_OK = 0
EXIT_IO = 1
EXIT_PLAN = 2
EXIT_VERIFY = 3


def _ladder_summary(design: Design, ladder) -> str:
    """Verify every claimed rung and render `levels,strength,lambda` triples."""
    parts = []
    for levels, t in ladder:
        report = check_strength(collapse(design, levels), t)
        if not report.ok:
            raise DesignError(
                f"self-verification failed at {levels} levels, strength {t}: "
                f"{report.violation}"
            )
        parts.append(f"{levels},{t},{report.lam}")
    return "  ".join(parts)


def _cmd_gen(args) -> int:
    seed = args.seed
    extra = {"seed": str(seed)}
    if args.kind == "bush":
        if args.s is None or args.t is None:
            print("gen --kind bush requires --s and --t", file=sys.stderr)
            return EXIT_PLAN
        design = bush_construct(field_of_order(args.s), args.t)
        if args.d is not None:
            design = Design(design.matrix[:, : args.d], s=design.s)
        ladder = ((design.s, args.t),)
    elif args.kind == "lhs":
        design = construct_lhs(args.n, args.d, seed)
        ladder = ((args.n, 1),)
    elif args.kind == "tang":
        nd = construct_tang(args.n, args.d, seed)
        design, ladder = nd.design, nd.ladder
    elif args.kind == "noa3":
        nd = construct_noa(plan_noa(args.n, args.d), seed)
        design, ladder = nd.design, nd.ladder
    else:
        raise AssertionError(args.kind)
    extra["ladder"] = ";".join(f"({lv},{t})" for lv, t in ladder)
    summary = _ladder_summary(design, ladder)
    if args.out:
        save_design(design, args.out, extra)
    print(summary)
    return EXIT_OK


def _cmd_verify(args) -> int:
    design, _meta = load_design(args.infile)
    if args.collapse is not None:
        design = collapse(design, args.collapse)
    report = check_strength(design, args.t)
    if report.ok:
        print(f"ok lambda={report.lam}")
        return EXIT_OK
    v = report.violation
    print(
        f"violation columns={v.columns} levels={v.levels} "
        f"observed={v.observed} expected={v.expected:g}"
    )
    return EXIT_VERIFY


def _cmd_sample(args) -> int:
    design, _meta = load_design(args.infile)
    ps = to_points(design, args.mode, args.seed)
    if args.out:
        save_points(ps, args.out)
    else:
        from .sampling import format_points

        sys.stdout.write(format_points(ps))
    return EXIT_OK


def _cmd_bench(args) -> int:
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    if args.rate:
        ns = [int(v) for v in args.rate.split(",")]
        out = {}
        for kind in kinds:
            fit = bench_mod.fit_rate(ns, args.d, kind, args.integrand, args.reps, args.seed)
            out[kind] = {
                "ns": list(fit.ns),
                "variances": list(fit.variances),
                "slope": fit.slope,
                "degenerate": fit.degenerate,
            }
        import json

        print(json.dumps(out, indent=2))
        return EXIT_OK
    report = bench_mod.run_bench(
        args.n, args.d, kinds, args.integrand, args.reps, args.seed
    )
    print(report.to_json())
    if args.estimates_out:
        with open(args.estimates_out, "w") as fh:
            fh.write(bench_mod.format_estimates_csv(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="noa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="construct a design and print its verified ladder")
    gen.add_argument("--kind", required=True, choices=["bush", "lhs", "tang", "noa3"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--s", type=int, help="field order (bush only)")
    gen.add_argument("--t", type=int, help="strength (bush only)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="design CSV output path")
    gen.set_defaults(func=_cmd_gen)

    verify = sub.add_parser("verify", help="check the strength of a design file")
    verify.add_argument("--in", dest="infile", required=True)
    verify.add_argument("--t", type=int, required=True)
    verify.add_argument("--collapse", type=int, help="collapse to this many levels first")
    verify.set_defaults(func=_cmd_verify)

    sample = sub.add_parser("sample", help="turn a design file into points in [0,1)^d")
    sample.add_argument("--in", dest="infile", required=True)
    sample.add_argument("--mode", choices=["uniform", "midpoint"], default="uniform")
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--out", help="points CSV output path")
    sample.set_defaults(func=_cmd_sample)

    bench = sub.add_parser("bench", help="compare estimator variance across kinds")
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--d", type=int, required=True)
    bench.add_argument("--kinds", required=True, help="comma-separated design kinds")
    bench.add_argument("--integrand", required=True, choices=list(bench_mod.INTEGRANDS))
    bench.add_argument("--reps", type=int, default=100)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--rate", help="comma-separated n values for a rate fit")
    bench.add_argument("--estimates-out", help="per-replication estimates CSV path")
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except StrengthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PLAN
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PLAN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PLAN


if __name__ == "__main__":
    sys.exit(main())
