"""Command line front end.

Subcommands: ``gen`` (random scenario), ``schedule`` (partition plus load
report), ``simulate`` (trace plus revisit statistics), ``compare`` (policies
side by side, optionally against the exact solver), ``report`` (batch of
seeds aggregated).  Exit codes: 0 success, 1 validation or usage error,
2 infeasible scenario.  All randomness flows through ``--seed``; a command's
outputs are a function of its flags and input files alone.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import io
from .equalize import equalize
from .errors import (
    InfeasibleScenarioError,
    InsufficientDataError,
    InvalidInputError,
    LimitsExceededError,
    ScenarioFormatError,
    ScenarioValidationError,
)
from .exact import SearchLimits, exact_min_passes
from .generate import GenParams, generate
from .loads import (
    PROVENANCE_FOV,
    PROVENANCE_OWN,
    SchedulePartition,
    broadside_baseline,
    build_partition,
    load_report,
)
from .model import Scenario
from .simulate import (
    POLICY_BROADSIDE,
    POLICY_EDF,
    POLICY_PARTITION,
    SimulationTrace,
    revisit_stats,
    simulate,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, 2 is reserved
        self.exit(1, f"{self.prog}: error: {message}\n")


def _derived_path(out: str, tag: str) -> Path:
    return Path(out).with_suffix("").with_name(Path(out).with_suffix("").name + f".{tag}.csv")


def _gen_params(args) -> GenParams:
    hotspots = tuple(
        (int(sector), float(rmult), float(tmult))
        for sector, rmult, tmult in (args.hotspot or [])
    )
    return GenParams(
        n_sectors=args.sectors,
        fov_half_width=args.fov,
        dt=args.dt,
        tasks_per_sector=tuple(args.tasks),
        duration=tuple(args.duration),
        resources=tuple(args.resources),
        hotspots=hotspots,
        seed=args.seed,
    )


def _partition_for(scenario: Scenario, policy: str) -> SchedulePartition:
    if policy == "greedy":
        return equalize(scenario)
    if policy == "broadside":
        return broadside_baseline(scenario)
    raise InvalidInputError(f"policy {policy!r} has no partition")


def _first_cycle_partition(scenario: Scenario, trace: SimulationTrace) -> SchedulePartition:
    """Effective partition of a policy trace: each task's first executing sector."""
    sector_of_task: dict[int, int] = {}
    for rec in trace.records:
        sector_of_task.setdefault(rec.task_id, rec.sector)
    by_id = scenario.task_by_id()
    provenance = {
        tid: PROVENANCE_OWN if sector == by_id[tid].home_sector else PROVENANCE_FOV
        for tid, sector in sector_of_task.items()
    }
    return build_partition(scenario.n_sectors, sector_of_task, provenance)


def _policy_metrics(scenario: Scenario, policy: str, cycles: int) -> dict:
    if policy == "edf":
        trace = simulate(scenario, POLICY_EDF, None, cycles=cycles)
        partition = _first_cycle_partition(scenario, trace)
    else:
        partition = _partition_for(scenario, policy)
        variant = POLICY_BROADSIDE if policy == "broadside" else POLICY_PARTITION
        trace = simulate(scenario, variant, partition, cycles=cycles)
    report = load_report(scenario, partition)
    stats = revisit_stats(trace, scenario)
    return {
        "policy": policy,
        "max_relative_load": report.max_relative_load,
        "worst_revisit_rotations": stats.max_interval_rot,
        "completion_pass": trace.completion_pass,
    }


def _cmd_gen(args) -> int:
    scenario = generate(_gen_params(args))
    io.write_scenario(scenario, args.out)
    print(f"wrote scenario with {len(scenario.tasks)} tasks to {args.out}")
    return 0


def _cmd_schedule(args) -> int:
    scenario = io.read_scenario(args.scenario)
    partition = _partition_for(scenario, args.policy)
    io.write_partition(partition, args.out)
    report = load_report(scenario, partition)
    loads_path = _derived_path(args.out, "loads")
    io.write_load_report(report, loads_path)
    print(f"wrote partition to {args.out} and load report to {loads_path}")
    print(f"max relative load {report.max_relative_load:.6g}, "
          f"rotations bound {report.rotations_to_complete_bound:.6g}")
    return 0


def _cmd_simulate(args) -> int:
    scenario = io.read_scenario(args.scenario)
    if args.policy == "edf":
        trace = simulate(scenario, POLICY_EDF, None, cycles=args.cycles)
    else:
        partition = _partition_for(scenario, args.policy)
        variant = POLICY_BROADSIDE if args.policy == "broadside" else POLICY_PARTITION
        trace = simulate(scenario, variant, partition, cycles=args.cycles)
    io.write_trace(trace, scenario, args.out)
    print(f"wrote trace ({len(trace.records)} executions, "
          f"completion pass {trace.completion_pass}) to {args.out}")
    for note in trace.warnings:
        print(f"warning: {note}", file=sys.stderr)
    if args.cycles >= 2:
        stats = revisit_stats(trace, scenario)
        revisit_path = _derived_path(args.out, "revisit")
        io.write_revisit_stats(stats, revisit_path)
        print(f"wrote revisit stats (worst {stats.max_interval_rot:.6g} rotations) "
              f"to {revisit_path}")
    else:
        print("note: revisit stats need --cycles >= 2, skipped", file=sys.stderr)
    return 0


def _cmd_compare(args) -> int:
    scenario = io.read_scenario(args.scenario)
    rows = [_policy_metrics(scenario, policy, args.cycles)
            for policy in ("greedy", "broadside", "edf")]
    if args.exact:
        limits = SearchLimits()
        if (len(scenario.tasks) > limits.max_tasks
                or scenario.n_sectors > limits.max_sectors):
            print("note: scenario exceeds exact-search limits, skipping exact row",
                  file=sys.stderr)
        else:
            solution = exact_min_passes(scenario, limits)
            sector_of_task = {tid: sector
                              for tid, (sector, _) in solution.assignments.items()}
            by_id = scenario.task_by_id()
            provenance = {
                tid: PROVENANCE_OWN if sec == by_id[tid].home_sector else PROVENANCE_FOV
                for tid, sec in sector_of_task.items()
            }
            partition = build_partition(scenario.n_sectors, sector_of_task, provenance)
            report = load_report(scenario, partition)
            trace = simulate(scenario, POLICY_PARTITION, partition, cycles=args.cycles)
            stats = revisit_stats(trace, scenario)
            rows.append({
                "policy": "exact" if solution.optimal else "exact(limit)",
                "max_relative_load": report.max_relative_load,
                "worst_revisit_rotations": stats.max_interval_rot,
                "completion_pass": solution.objective,
            })
    io.write_comparison(rows, args.out, fmt=args.format)
    for row in rows:
        print(f"{row['policy']}: max relative load {row['max_relative_load']:.6g}, "
              f"worst revisit {row['worst_revisit_rotations']:.6g} rotations, "
              f"completion pass {row['completion_pass']}")
    print(f"wrote comparison to {args.out}")
    return 0


def _cmd_report(args) -> int:
    detail: list[dict] = []
    for offset in range(args.runs):
        seed = args.seed + offset
        for fov in args.fov:
            params = GenParams(
                n_sectors=args.sectors, fov_half_width=fov, dt=args.dt,
                tasks_per_sector=tuple(args.tasks), duration=tuple(args.duration),
                resources=tuple(args.resources), seed=seed)
            scenario = generate(params)
            for policy in ("greedy", "broadside", "edf"):
                row = {"seed": seed, "fov": fov}
                row.update(_policy_metrics(scenario, policy, args.cycles))
                detail.append(row)
    io.write_comparison(detail, args.out, fmt=args.format)

    groups: dict[tuple[int, str], list[dict]] = {}
    for row in detail:
        groups.setdefault((row["fov"], row["policy"]), []).append(row)
    summary = []
    for (fov, policy), rows in sorted(groups.items()):
        count = len(rows)
        summary.append({
            "fov": fov,
            "policy": policy,
            "runs": count,
            "mean_max_relative_load": sum(r["max_relative_load"] for r in rows) / count,
            "mean_worst_revisit_rotations":
                sum(r["worst_revisit_rotations"] for r in rows) / count,
            "mean_completion_pass": sum(r["completion_pass"] for r in rows) / count,
        })
    summary_path = _derived_path(args.out, "summary")
    with open(summary_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(summary[0].keys() if summary else
                        ["fov", "policy", "runs", "mean_max_relative_load",
                         "mean_worst_revisit_rotations", "mean_completion_pass"])
        for row in summary:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in row.values()])
    print(f"wrote {len(detail)} rows to {args.out}, summary to {summary_path}")
    return 0


def _add_gen_knobs(parser, with_hotspots: bool) -> None:
    parser.add_argument("--sectors", type=int, default=30, help="sector count")
    parser.add_argument("--dt", type=float, default=25.0,
                        help="seconds per sector pass")
    parser.add_argument("--tasks", type=int, nargs=2, default=[5, 15],
                        metavar=("LO", "HI"), help="tasks per sector, inclusive range")
    parser.add_argument("--duration", type=float, nargs=2, default=[0.5, 3.0],
                        metavar=("LO", "HI"), help="task duration range, seconds")
    parser.add_argument("--resources", type=float, nargs=2, default=[5.0, 20.0],
                        metavar=("LO", "HI"), help="per-sector resources range, seconds")
    if with_hotspots:
        parser.add_argument("--hotspot", type=float, nargs=3, action="append",
                            metavar=("SECTOR", "RMULT", "TMULT"),
                            help="scale one sector's resources and task count")


def build_parser() -> _Parser:
    parser = _Parser(prog="sectorsched",
                     description="Surveillance scheduling for rotating radars")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random scenario")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--out", required=True, help="scenario JSON path")
    p.add_argument("--fov", type=int, default=5, help="field-of-view half width")
    _add_gen_knobs(p, with_hotspots=True)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("schedule", help="partition a scenario and report loads")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True, help="partition JSON path "
                   "(load report lands next to it as <out>.loads.csv)")
    p.add_argument("--policy", choices=["greedy", "broadside"], default="greedy")
    p.set_defaults(handler=_cmd_schedule)

    p = sub.add_parser("simulate", help="run rotations and record revisits")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True, help="trace CSV path "
                   "(revisit stats land next to it as <out>.revisit.csv)")
    p.add_argument("--policy", choices=["greedy", "broadside", "edf"],
                   default="greedy")
    p.add_argument("--cycles", type=int, default=3,
                   help="complete update cycles to simulate")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("compare", help="greedy vs broadside vs edf (vs exact)")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--exact", action="store_true",
                   help="add the exact solver when within its limits")
    p.add_argument("--cycles", type=int, default=4)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("report", help="aggregate a batch of seeds")
    p.add_argument("--seed", type=int, default=0, help="first seed of the batch")
    p.add_argument("--runs", type=int, default=20, help="number of seeds")
    p.add_argument("--fov", type=int, nargs="+", default=[5],
                   help="field-of-view half widths to benchmark")
    p.add_argument("--out", required=True, help="detail CSV path "
                   "(summary lands next to it as <out>.summary.csv)")
    p.add_argument("--cycles", type=int, default=4)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_gen_knobs(p, with_hotspots=False)
    p.set_defaults(handler=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.handler(args)
    except InfeasibleScenarioError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (ScenarioFormatError, ScenarioValidationError, InvalidInputError,
            InsufficientDataError, LimitsExceededError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
