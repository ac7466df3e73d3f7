"""Command line entry point: ``dnumbers run | verify | scales | inspect``.

Exit status: 0 on success, 1 when ``verify`` finds a failed check, 2 for
usage or problem-file errors, 3 when a pipeline stage fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .core import exclusive_coefficient, relative_matrix
from .fuzzy import area
from .pipeline import DEFUZZIFIERS, PipelineError, all_complete, run
from .problem import ProblemFileError, case_study, load_problem, render_problem
from .report import TABLES, _fmt, render_report, trace_to_dict
from .scales import RATING_SCALE, WEIGHT_SCALE
from .verify import run_checks

EXIT_FAILED_CHECK = 1
EXIT_INPUT = 2
EXIT_PIPELINE = 3


def _load(path):
    return case_study() if path is None else load_problem(path)


def _cmd_run(args) -> int:
    problem = _load(args.file)
    if args.msd_threshold is not None and args.msd_threshold not in problem.rating_scale:
        raise ProblemFileError(f"--msd-threshold {args.msd_threshold!r} is not a term of the rating "
                               f"scale ({', '.join(problem.rating_scale.labels)})")
    trace = run(problem, epsilon=args.epsilon_override, msd_threshold=args.msd_threshold,
                defuzzifier=args.defuzzifier)
    if not all_complete(trace):
        raise PipelineError("fusion", "a stage produced an incomplete D number")
    if args.json:
        data = trace_to_dict(problem, trace)
        if args.stage is not None:
            key = {"d-numbers": "d_numbers"}.get(args.stage, args.stage)
            data = {"stage": args.stage, args.stage: data[key] if key in data else {
                k: data[k] for k in ("epsilon", "msd_threshold", "defuzzifier", "weight_factors")}}
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        sys.stdout.write(render_report(problem, trace, stage=args.stage, precision=args.precision))
    return 0


def _cmd_verify(args) -> int:
    checks = run_checks(args.golden)
    if args.json:
        print(json.dumps({"passed": all(c.passed for c in checks),
                          "checks": [c.as_dict() for c in checks]}, indent=2))
    else:
        for check in checks:
            print(check.line())
            for line in check.details[:args.max_details]:
                print(f"    {line}")
            hidden = len(check.details) - args.max_details
            if hidden > 0:
                print(f"    ... {hidden} more")
        failed = sum(not c.passed for c in checks)
        print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if all(c.passed for c in checks) else EXIT_FAILED_CHECK


def _cmd_scales(args) -> int:
    if args.file is None:
        scales = (("weight_scale", WEIGHT_SCALE), ("rating_scale", RATING_SCALE))
    else:
        problem = load_problem(args.file)
        scales = (("weight_scale", problem.weight_scale), ("rating_scale", problem.rating_scale))
    p = args.precision
    data = {}
    for name, scale in scales:
        r = relative_matrix(scale)
        data[name] = {
            "universe": list(scale.universe),
            "terms": {label: list(shape) for label, shape in scale.terms},
            "areas": {label: area(shape) for label, shape in scale.terms},
            "relative_matrix": [list(row) for row in r.entries],
            "epsilon": exclusive_coefficient(r),
        }
    if args.json:
        print(json.dumps(data, indent=2))
        return 0
    for name, info in data.items():
        labels = list(info["terms"])
        print(f"# table: {name}")
        print("term\ta\tb\tc\tarea")
        for label in labels:
            a, b, c = info["terms"][label]
            print("\t".join([label, *(_fmt(v, p) for v in (a, b, c, info["areas"][label]))]))
        print(f"# table: {name}.relative_matrix")
        print("\t".join(["term", *labels]))
        for label, row in zip(labels, info["relative_matrix"]):
            print("\t".join([label, *(_fmt(v, p) for v in row)]))
        print(f"epsilon: {_fmt(info['epsilon'], p)}")
    return 0


def _cmd_inspect(args) -> int:
    problem = load_problem(args.file)
    if args.json:
        print(json.dumps({
            "candidates": list(problem.candidates),
            "criteria": list(problem.criteria),
            "experts": list(problem.experts),
            "weight_scale": problem.weight_scale.labels,
            "rating_scale": problem.rating_scale.labels,
            "msd_threshold": problem.threshold,
            "epsilon": problem.options.epsilon,
            "precision": problem.options.precision,
            "defuzzifier": problem.options.defuzzifier,
        }, indent=2))
    else:
        sys.stdout.write(render_problem(problem))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnumbers",
        description="Group decision making with D numbers over linguistic ratings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("run", help="run the pipeline and print the report")
    p.add_argument("file", nargs="?", help="problem file (default: bundled case study)")
    p.add_argument("--stage", choices=TABLES, help="print only this table")
    p.add_argument("--precision", type=int, help="decimals in the report (default: file option or 4)")
    p.add_argument("--epsilon-override", type=float, metavar="X",
                   help="use X instead of the scale's exclusive coefficient")
    p.add_argument("--msd-threshold", metavar="LABEL", help="rating term where MSD starts")
    p.add_argument("--defuzzifier", choices=sorted(DEFUZZIFIERS),
                   help="how a mean weight becomes a crisp factor")
    p.add_argument("--json", action="store_true", help="full-precision JSON instead of tables")
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("verify", help="reproduce the reference case-study tables")
    p.add_argument("--golden", metavar="PATH", help="golden data file (default: bundled)")
    p.add_argument("--max-details", type=int, default=5, metavar="N",
                   help="deviations listed per failed check (default 5)")
    p.add_argument("--json", action="store_true", help="machine-readable results")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("scales", help="print scales, relative matrices and epsilon")
    p.add_argument("file", nargs="?", help="problem file (default: built-in scales)")
    p.add_argument("--precision", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_scales)

    p = sub.add_parser("inspect", help="validate a problem file and print it canonically")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_inspect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ProblemFileError as exc:
        print(f"dnumbers: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"dnumbers: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PipelineError as exc:
        print(f"dnumbers: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
