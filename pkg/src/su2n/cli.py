"""Command-line entry points.

    su2n classify SPEC.json [--seed N]
    su2n mu-scan SPEC.json [--tmax T] [--samples K] [--seed N] [--out FILE]
    su2n verify --suite {formulas,cartan,classifier,shapes,dimensions,
                         log-corrections,conjugation,all} [--quick]
    su2n gallery (--list | --emit ID [--out FILE])

Exit codes: 0 success, 1 input/parse error, 2 internal inconsistency.
SU2N_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .anclassify import AnError, classify_an
from .lab import SamplingPlan, sample_subgroup
from .metrics import InsufficientRange, fit_exponents
from .nilclassify import ClassificationError, InconsistentClassification, classify
from .serialize import (
    classification_report,
    cloud_to_csv,
    dump_spec,
    load_spec,
    spec_to_json,
)
from .subalgebra import Subalgebra, SubalgebraError


def _default_seed():
    env = os.environ.get("SU2N_SEED")
    return int(env) if env else 0


def _cmd_classify(args):
    try:
        spec = load_spec(args.spec)
    except (OSError, ValueError, KeyError, SubalgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        if isinstance(spec, Subalgebra):
            result = classify(spec, seed=args.seed)
        else:
            result = classify_an(spec, seed=args.seed)
    except InconsistentClassification as e:
        print(f"inconsistent classification: {e}", file=sys.stderr)
        return 2
    except (AnError, ClassificationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(json.dumps(classification_report(result), indent=1))
    return 0


def _cmd_mu_scan(args):
    try:
        spec = load_spec(args.spec)
    except (OSError, ValueError, KeyError, SubalgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    plan = SamplingPlan(seed=args.seed, per_curve=args.samples)
    if args.tmax is not None:
        plan.t_cap = args.tmax
    try:
        cloud = sample_subgroup(spec, plan)
        s_lo, s_hi, conf = fit_exponents(cloud)
    except (InsufficientRange, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.out:
        cloud_to_csv(cloud, args.out)
    else:
        print("t,log10_norm,log10_rho,curve_id")
        for t, ln, lr, tag in cloud.to_rows():
            print(f"{'' if t is None else t!r},{ln!r},{lr!r},{tag}")
    print(json.dumps({"s_lo": s_lo, "s_hi": s_hi, "confidence": conf,
                      "samples": len(cloud),
                      "discard_fraction": cloud.meta.get("discard_fraction")}),
          file=sys.stderr)
    return 0


def _cmd_verify(args):
    kw = {}
    if args.quick:
        kw = {"classifier": {"count": 120},
              "formulas": {"trials_per_n": 60},
              "cartan": {"cases": 200},
              "conjugation": {"pairs": 25}}
    names = ([args.suite] if args.suite != "all"
             else ["formulas", "cartan", "classifier", "shapes", "dimensions",
                   "log-corrections", "conjugation"])
    failed = 0
    for name in names:
        from .verify import SUITES
        rows = SUITES[name](**kw.get(name, {}))
        for r in rows:
            mark = "PASS" if r["ok"] else "FAIL"
            detail = f"  [{r['detail']}]" if r["detail"] else ""
            print(f"{mark}  {name}: {r['name']}{detail}")
            failed += 0 if r["ok"] else 1
    return 0 if failed == 0 else 2


def _cmd_gallery(args):
    from .gallery import entries, get

    if args.list:
        for e in entries():
            extra = f" — {e.note}" if e.note else ""
            expect = e.expected_case or (f"type {e.expected_type}"
                                         if e.expected_type else e.expected_verdict)
            print(f"{e.id:26s} n={e.n} [{e.kind}] {e.expected_verdict}"
                  f" ({expect}){extra}")
        return 0
    try:
        e = get(args.emit)
    except KeyError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    spec = e.spec()
    if args.out:
        dump_spec(spec, args.out)
    else:
        print(json.dumps(spec_to_json(spec), indent=1))
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="su2n", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", help="classify a subgroup spec file")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("mu-scan", help="sample a spec and fit envelope exponents")
    p.add_argument("spec")
    p.add_argument("--tmax", type=float, default=None,
                   help="cap on the curve parameter")
    p.add_argument("--samples", type=int, default=48, help="samples per curve")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.set_defaults(fn=_cmd_mu_scan)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", default="all",
                   choices=["formulas", "cartan", "classifier", "shapes",
                            "dimensions", "log-corrections", "conjugation",
                            "all"])
    p.add_argument("--quick", action="store_true",
                   help="reduced sample counts for a fast pass")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("gallery", help="list or emit curated examples")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="ID")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_gallery)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
