"""Experiment harness: seeded method/problem/size grids, front files, summaries.

Every run writes `front_<method>_<seed>.txt` under a per-problem
directory; the grid produces one `summary.csv` of per-configuration
medians plus plot-ready per-method series files. The FFE budget is the
only stop condition; wall time is recorded but never steers anything.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .baselines import MoeadConfig, Nsga2Config, run_moead, run_nsga2
from .core import EvaluationGateway
from .engine import ElitistArchive, MoP3
from .metrics import Front, igd, merge_pseudo_optimal, read_front, write_front
from .problems import BRUTE_FORCE_MAX_LENGTH, brute_force_front, make_problem

__all__ = ["ExperimentConfig", "RunRecord", "emit_plot_data", "main",
           "resolve_reference", "run_experiment", "write_summary"]

METHODS = ("mo-p3-random", "mo-p3-smart", "nsga2", "moead")


@dataclass(frozen=True)
class ExperimentConfig:
    method: str
    problem: str
    out_dir: str
    size: int | None = None
    instance: str | None = None
    budget: int = 1_000_000
    repeats: int = 1
    seed: int = 0
    epsilon: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


@dataclass
class RunRecord:
    method: str
    problem: str
    length: int
    seed: int
    front: Front
    front_path: str
    ffe_final: int  # FFE count when the last globally non-dominated point appeared
    wall_ms: float
    igd_value: float = float("nan")


def _problem_of(config: ExperimentConfig):
    return make_problem(config.problem, size=config.size, instance=config.instance)


def _execute_run(args: tuple) -> tuple[int, list[list[float]], int, float]:
    config, seed = args
    problem = _problem_of(config)
    start = time.perf_counter()
    if config.method in ("mo-p3-random", "mo-p3-smart"):
        strategy = config.method.rsplit("-", 1)[1]
        state = MoP3(problem, config.budget, seed, weight_strategy=strategy,
                     epsilon=config.epsilon)
        archive = state.run()
        points = archive.objectives
        ffe_final = state.ffe_at_last_archive_change
    else:
        gateway = EvaluationGateway(problem, config.budget)
        shadow = ElitistArchive(problem.num_objectives, epsilon=config.epsilon)
        tracker = {"ffe": 0}

        def observe(bits, values):
            if shadow.try_add(bits, values):
                tracker["ffe"] = gateway.ffe

        gateway.add_observer(observe)
        if config.method == "nsga2":
            result = run_nsga2(problem, Nsga2Config(), config.budget, seed, gateway=gateway)
        else:
            result = run_moead(problem, MoeadConfig(), config.budget, seed, gateway=gateway)
        points = np.array([values for _bits, values in result])
        ffe_final = tracker["ffe"]
    wall_ms = (time.perf_counter() - start) * 1000.0
    return seed, points.tolist(), ffe_final, wall_ms


def run_experiment(config: ExperimentConfig, reference: Front | None = None) -> list[RunRecord]:
    """Execute `repeats` seeded runs and persist one front file per run.

    Seeds are `seed .. seed+repeats-1`; results do not depend on worker
    scheduling. IGD values are filled in when a reference front is given
    (otherwise see `attach_igd` once a pseudo-optimal reference exists).
    """
    problem = _problem_of(config)
    problem_dir = Path(config.out_dir) / problem.name
    problem_dir.mkdir(parents=True, exist_ok=True)

    tasks = [(config, config.seed + i) for i in range(config.repeats)]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_execute_run, tasks))
    else:
        outcomes = [_execute_run(t) for t in tasks]

    records = []
    for seed, points, ffe_final, wall_ms in outcomes:
        front = Front.nondominated(np.array(points))
        path = problem_dir / f"front_{config.method}_{seed}.txt"
        write_front(front, path)
        records.append(
            RunRecord(
                method=config.method,
                problem=problem.name,
                length=problem.length,
                seed=seed,
                front=front,
                front_path=str(path),
                ffe_final=ffe_final,
                wall_ms=wall_ms,
            )
        )
    if reference is not None:
        attach_igd(records, {records[0].problem: reference})
    return records


def resolve_reference(problem, records: list[RunRecord] | None = None) -> Front:
    """Reference front: analytic if known, enumerated if short, else the
    non-dominated merge of every produced front."""
    front_fn = getattr(problem, "optimal_front", None)
    if front_fn is not None:
        return Front(front_fn())
    if problem.length <= BRUTE_FORCE_MAX_LENGTH:
        return Front(brute_force_front(problem))
    if not records:
        raise ValueError(
            f"problem {problem.name!r} has no analytic or enumerable front and no runs "
            "to merge a pseudo-optimal reference from"
        )
    return merge_pseudo_optimal([r.front for r in records])


def attach_igd(records: list[RunRecord], references: dict[str, Front]) -> None:
    for record in records:
        ref = references.get(record.problem)
        if ref is not None:
            record.igd_value = igd(record.front, ref)


SUMMARY_COLUMNS = ("method", "problem", "l", "repeats", "median_igd", "iqr_igd",
                   "median_ffe_final", "median_wall_ms")


def write_summary(records: list[RunRecord], path: str | Path) -> None:
    """Per-(method, problem) medians, one CSV row each."""
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for record in records:
        groups.setdefault((record.method, record.problem), []).append(record)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(SUMMARY_COLUMNS)
        for (method, problem_name) in sorted(groups):
            runs = groups[(method, problem_name)]
            igds = np.array([r.igd_value for r in runs])
            writer.writerow(
                [
                    method,
                    problem_name,
                    runs[0].length,
                    len(runs),
                    repr(float(np.median(igds))),
                    repr(float(np.percentile(igds, 75) - np.percentile(igds, 25))),
                    repr(float(np.median([r.ffe_final for r in runs]))),
                    repr(float(np.median([r.wall_ms for r in runs]))),
                ]
            )


def emit_plot_data(records: list[RunRecord], out_dir: str | Path) -> list[Path]:
    """Plot-ready series: per method one CSV of (problem, size) medians.

    When both pyramid strategies are present, also emits their FFE ratio
    by genotype length.
    """
    if not records:
        raise ValueError("no run records to plot")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    by_method: dict[str, dict[tuple[int, str], list[RunRecord]]] = {}
    for record in records:
        by_method.setdefault(record.method, {}).setdefault(
            (record.length, record.problem), []
        ).append(record)

    medians: dict[str, dict[tuple[int, str], tuple[float, float]]] = {}
    for method, groups in sorted(by_method.items()):
        path = out / f"series_{method}.csv"
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["problem", "l", "median_ffe_final", "median_igd"])
            for (length, problem_name) in sorted(groups):
                runs = groups[(length, problem_name)]
                med_ffe = float(np.median([r.ffe_final for r in runs]))
                med_igd = float(np.median([r.igd_value for r in runs]))
                medians.setdefault(method, {})[(length, problem_name)] = (med_ffe, med_igd)
                writer.writerow([problem_name, length, repr(med_ffe), repr(med_igd)])
        written.append(path)

    a, b = "mo-p3-random", "mo-p3-smart"
    if a in medians and b in medians:
        shared = sorted(set(medians[a]) & set(medians[b]))
        if shared:
            path = out / f"ffe_ratio_{a}_vs_{b}.csv"
            with open(path, "w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(["problem", "l", "ffe_ratio"])
                for key in shared:
                    num, den = medians[a][key][0], medians[b][key][0]
                    ratio = num / den if den > 0 else float("nan")
                    writer.writerow([key[1], key[0], repr(ratio)])
            written.append(path)
    return written


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="mopyramid",
        description="run seeded multi-objective optimizer experiments under an FFE budget",
    )
    parser.add_argument("--method", required=True,
                        help=f"comma list from {', '.join(METHODS)}")
    parser.add_argument("--problem", required=True,
                        help="zeromax-onemax | trap5-invtrap5 | lotz | maxcut | knapsack | mobcpp")
    parser.add_argument("--size", default=None,
                        help="comma list of genotype lengths (sized problems)")
    parser.add_argument("--instance", default=None, help="instance file path")
    parser.add_argument("--budget", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--reference", default="auto",
                        help="'auto', 'none', or a front file path")
    parser.add_argument("--epsilon", type=float, default=None,
                        help="archive objective-space grid resolution")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel worker processes for repeats")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = _parse_args(argv)
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    sizes = [int(s) for s in args.size.split(",")] if args.size else [None]

    all_records: list[RunRecord] = []
    references: dict[str, Front] = {}
    for size in sizes:
        size_records: list[RunRecord] = []
        problem = make_problem(args.problem, size=size, instance=args.instance)
        for method in methods:
            config = ExperimentConfig(
                method=method,
                problem=args.problem,
                size=size,
                instance=args.instance,
                budget=args.budget,
                repeats=args.repeats,
                seed=args.seed,
                epsilon=args.epsilon,
                out_dir=args.out,
                workers=args.workers,
            )
            size_records.extend(run_experiment(config))
        if args.reference == "auto":
            references[problem.name] = resolve_reference(problem, size_records)
        elif args.reference != "none":
            references[problem.name] = read_front(args.reference)
        all_records.extend(size_records)

    attach_igd(all_records, references)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_summary(all_records, out / "summary.csv")
    emit_plot_data(all_records, out)
    for record in all_records:
        print(
            f"{record.method} {record.problem} seed={record.seed} "
            f"igd={record.igd_value:.6g} ffe_final={record.ffe_final} "
            f"wall_ms={record.wall_ms:.1f}"
        )
    print(f"summary: {out / 'summary.csv'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
