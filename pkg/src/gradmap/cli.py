"""Command-line entry points.

Subcommands:
  list                          show scenarios and their suites
  run --scenario S --suite T    execute a suite, emit the report JSON
  flow --scenario S --point F   integrate one flow, emit a trajectory CSV
  polytope --scenario S         emit the scenario's fixed-point polytope
  report --dir DIR              aggregate report JSONs into a summary table

Exit codes: 0 success (warnings for inconclusive-only), 1 check failure,
2 usage errors (unknown scenario/suite, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import io as gio
from .convex import fixed_point_polytope
from .errors import GradmapError, UnknownScenario, UnknownSuite
from .flow import FlowOptions, integrate_flow
from .projective import ProjectivePoint
from .scenarios import get_scenario, load_scenario_config, scenario_registry
from .suites import available_suites, run_suite


def _resolve_scenario(name: str):
    if name.endswith(".json") or os.path.sep in name:
        return load_scenario_config(name)
    return get_scenario(name)


def _cmd_list(args) -> int:
    reg = scenario_registry()
    print("scenarios:")
    for name, sc in reg.items():
        tag = " (extra)" if sc.extra else ""
        print(f"  {name}{tag}: {sc.description}")
        print(f"    suites: {', '.join(available_suites(sc))}")
    return 0


def _cmd_run(args) -> int:
    scenario = _resolve_scenario(args.scenario)
    report = run_suite(scenario, args.suite, args.seed)
    for check in report.checks:
        print(f"[{check.verdict.upper():>12}] {check.name}  "
              + " ".join(f"{k}={v:.3e}" if isinstance(v, float) else f"{k}={v}"
                         for k, v in check.residuals.items()))
    print(f"suite verdict: {report.verdict}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(
            args.out, f"report-{scenario.name}-{args.suite}-seed{args.seed}.json"
        )
        with open(path, "w") as fh:
            fh.write(gio.report_to_json(report))
        print(f"wrote {path}")
    if report.verdict == "inconclusive":
        print("warning: some checks were inconclusive (optimizer certificates)", file=sys.stderr)
    return report.exit_code


def _cmd_flow(args) -> int:
    scenario = _resolve_scenario(args.scenario)
    if args.point:
        with open(args.point) as fh:
            doc = json.load(fh)
        values = doc["point"] if isinstance(doc, dict) else doc
        x0 = ProjectivePoint(gio.interleaved_to_point(values))
    else:
        rng = np.random.default_rng(args.seed)
        x0 = scenario.sample_point(rng)
    opts = FlowOptions(t_max=args.t_max)
    traj = integrate_flow(scenario.group, x0, opts)
    print(f"converged: {traj.converged}  steps: {traj.n_steps}  "
          f"t_end: {traj.times[-1]:.6g}  f_end: {traj.f_values[-1]:.6e}")
    if traj.converged:
        print(f"|mu_p(limit)|: {traj.limit_beta.norm:.3e}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"trajectory-{scenario.name}-seed{args.seed}.csv")
        gio.write_trajectory_csv(path, traj)
        print(f"wrote {path}")
    return 0


def _cmd_polytope(args) -> int:
    scenario = _resolve_scenario(args.scenario)
    body = fixed_point_polytope(scenario.abelian)
    doc = gio.polytope_to_json_dict(body, name=f"{scenario.name}-fixed-point-polytope")
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"polytope-{scenario.name}.json")
        gio.write_json(path, doc)
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_report(args) -> int:
    rows = []
    for name in sorted(os.listdir(args.dir)):
        if not name.endswith(".json"):
            continue
        with open(os.path.join(args.dir, name)) as fh:
            doc = json.load(fh)
        if doc.get("schema") != "gradmap-report/1":
            continue
        n_pass = sum(1 for c in doc["checks"] if c["verdict"] == "pass")
        rows.append((doc["scenario"], doc["suite"], doc["seed"], doc["verdict"],
                     f"{n_pass}/{len(doc['checks'])}"))
    if not rows:
        print("no reports found")
        return 0
    widths = [max(len(str(r[i])) for r in rows + [("scenario", "suite", "seed", "verdict", "checks")])
              for i in range(5)]
    header = ("scenario", "suite", "seed", "verdict", "checks")
    print("  ".join(str(h).ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))
    return 1 if any(r[3] == "fail" for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradmap",
        description="gradient-map flows, Kempf-Ness functions and convexity suites on P(C^n)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list scenarios and suites")

    p_run = sub.add_parser("run", help="run a verification suite")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--suite", required=True)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--out", default=None, help="directory for the report JSON")

    p_flow = sub.add_parser("flow", help="integrate one norm-square flow")
    p_flow.add_argument("--scenario", required=True)
    p_flow.add_argument("--point", default=None, help="JSON file with interleaved [re,im] point")
    p_flow.add_argument("--seed", type=int, default=0)
    p_flow.add_argument("--t-max", type=float, default=1e4)
    p_flow.add_argument("--out", default=None, help="directory for the trajectory CSV")

    p_poly = sub.add_parser("polytope", help="emit the scenario's fixed-point polytope")
    p_poly.add_argument("--scenario", required=True)
    p_poly.add_argument("--out", default=None)

    p_rep = sub.add_parser("report", help="aggregate report JSONs into a summary")
    p_rep.add_argument("--dir", required=True)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    handlers = {
        "list": _cmd_list,
        "run": _cmd_run,
        "flow": _cmd_flow,
        "polytope": _cmd_polytope,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except (UnknownScenario, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except GradmapError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
