#!/usr/bin/env python3
"""
Command-line entry point for the ES-GA TSP solver.

    solve   run the GA on one instance, write the tour and a JSON report
    bench   seeded batch runs over a manifest, summarised per instance
    render  SVG of a tour, of the M-rings of two tours, or of a convergence trace
"""
import argparse
import json
import os
import random
import re
import sys
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from loguru import logger

from charts import plot_convergence, render_rings_svg, render_tour_svg
from config import (APP_NAME, APP_VERSION, BENCH_COLUMNS, DEFAULT_JOBS, DEFAULT_MANIFEST,
                    DEFAULT_OUTPUT_DIR, DEFAULT_RUNS, GLOBAL_STRATEGIES, LOCAL_STRATEGIES, PRESETS,
                    REPORT_EXTENSION, SVG_EXTENSION, TOUR_EXTENSION, TRACE_EXTENSION)
from es_crossover import merge_graphs, partition_m_rings, rings_to_dict
from ga_engine import run
from models import BenchRow, ConfigError, GAConfig, RunReport
from performance import measure_system_resources, parallel_process
from tour import Tour, TourFormatError, read_tour, write_tour
from tsp_instance import TSPLIBParseError, load_instance
from utils import (configure_logging, err_percent, instance_name, known_optimum, output_path, parse_int_list,
                   read_manifest, resolve_instance_path)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _add_ga_arguments(parser: argparse.ArgumentParser, sweep: bool = False) -> None:
    parser.add_argument("--seed", type=int, help="Random seed (batch run r uses seed + r)")
    parser.add_argument("--npop", type=int, help="Population size")
    if sweep:
        parser.add_argument("--nch", type=parse_int_list,
                            help="Offspring per crossover; a comma list such as 10,20,30 sweeps values")
    else:
        parser.add_argument("--nch", type=int, help="Offspring per crossover")
    parser.add_argument("--g", type=int, dest="g", help="Stagnant generations before a stage ends")
    parser.add_argument("--k", type=int, help="Rings per R-set for the K-multiple strategy")
    parser.add_argument("--strategy-local", choices=LOCAL_STRATEGIES, help="Local-stage R-set strategy")
    parser.add_argument("--strategy-global", choices=GLOBAL_STRATEGIES, help="Global-stage R-set strategy")
    parser.add_argument("--neighbor-k", type=int, help="Candidate list length")
    parser.add_argument("--time-limit", type=float, help="Wall-clock limit per run in seconds")
    parser.add_argument("--config", help="JSON file with GAConfig fields")
    parser.add_argument("--preset", choices=sorted(PRESETS), default="default", help="Named configuration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench_cli", description=f"{APP_NAME} {APP_VERSION}")
    parser.add_argument("--verbose", action="store_true", help="Log debug messages")
    parser.add_argument("--quiet", action="store_true", help="Log warnings only, no progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Solve one TSPLIB instance")
    solve.add_argument("instance", help="TSPLIB .tsp file (looked up in TSPLIB_DIR when not found)")
    solve.add_argument("--optimum", type=int, help="Known optimum, to report Err%%")
    solve.add_argument("--out", default=DEFAULT_OUTPUT_DIR, help="Output directory")
    _add_ga_arguments(solve)

    bench = sub.add_parser("bench", help="Seeded batch runs over a manifest")
    bench.add_argument("manifest", nargs="?", default=DEFAULT_MANIFEST,
                       help="CSV (path,optimum) or whitespace 'path optimum' lines")
    bench.add_argument("--runs", type=int, default=DEFAULT_RUNS, help="Runs per instance")
    bench.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Parallel worker processes")
    bench.add_argument("--out", default=DEFAULT_OUTPUT_DIR, help="Output directory")
    bench.add_argument("--compare-global", type=lambda v: [s.strip() for s in v.split(",") if s.strip()],
                       help="Comma list of global strategies run on the same seeds")
    _add_ga_arguments(bench, sweep=True)

    render = sub.add_parser("render", help="Render a tour, M-rings or a convergence trace")
    render.add_argument("instance", nargs="?", help="TSPLIB .tsp file")
    render.add_argument("tours", nargs="*", help="One .tour file, or two with --show-rings")
    render.add_argument("--show-rings", action="store_true", help="Overlay the M-rings of two tours")
    render.add_argument("--dump-rings", help="Also write the ring partition as JSON")
    render.add_argument("--trace", help="JSON run report to plot convergence from")
    render.add_argument("--seed", type=int, default=1, help="Seed for ring tracing")
    render.add_argument("--out", help="Output file (default: next to the input, .svg)")
    return parser


def build_config(args: argparse.Namespace, n_ch: Optional[int] = None) -> GAConfig:
    """
    Combine defaults, preset, JSON file and CLI flags, later ones winning.

    Args:
        args: Parsed arguments of solve or bench
        n_ch: Offspring count overriding args.nch (bench sweeps)

    Returns:
        GAConfig: Validated configuration
    """
    cfg = GAConfig.from_preset(args.preset)
    if args.config:
        cfg = cfg.replace(**GAConfig.read_json(args.config))
    cfg = cfg.replace(
        seed=args.seed,
        n_pop=args.npop,
        n_ch=n_ch if n_ch is not None else (args.nch if isinstance(args.nch, int) else None),
        g_stagnation=args.g,
        k_multiple=args.k,
        local_strategy=args.strategy_local,
        global_strategy=args.strategy_global,
        neighbor_k=args.neighbor_k,
        time_limit=args.time_limit,
    )
    return cfg.validate()


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    inst = load_instance(resolve_instance_path(args.instance))
    report = run(inst, cfg)

    tour = Tour(tuple(report.best_tour))
    name = inst.name
    tour_file = output_path(args.out, name, TOUR_EXTENSION)
    with open(tour_file, 'w') as f:
        f.write(write_tour(tour, name, report.best_length))
    report_file = output_path(args.out, name, REPORT_EXTENSION)
    with open(report_file, 'w') as f:
        f.write(report.to_json())
    if report.trace:
        report.trace_frame().to_csv(output_path(args.out, name, TRACE_EXTENSION, "_trace"), index=False)
    logger.info(f"wrote {tour_file} and {report_file}")

    print(f"🗺️  {name} (n={inst.n})")
    print(f"Best length: {report.best_length}")
    optimum = args.optimum if args.optimum is not None else known_optimum(args.instance)
    if optimum is not None:
        print(f"Err: {report.err_percent(optimum):.2f}% (optimum {optimum})")
    print(f"Generations: {report.generations} (switch at {report.switch_generation}, stop: {report.stop_reason})")
    print(f"Time: {report.seconds:.2f}s")
    return EXIT_OK


def run_bench_job(job: Dict[str, Any]) -> Dict[str, Any]:
    """
    One (instance, config, seed) run of a batch. Module level so worker processes can pickle it.

    The full RunReport is written as JSON to job["report"] when that path is set.

    Returns:
        Dict: Row with the run's length and time, or an error message
    """
    row = {"instance": job["name"], "optimum": job["optimum"], "config": job["label"],
           "seed": job["config"]["seed"], "best_length": None, "seconds": None,
           "generations": None, "memory_mb": None, "report": None, "error": None}
    try:
        inst = load_instance(job["path"])
        report = run(inst, GAConfig.from_dict(job["config"]))
        row.update(best_length=report.best_length, seconds=report.seconds,
                   generations=report.generations,
                   memory_mb=measure_system_resources()["memory_mb"])
        if job.get("report"):
            with open(job["report"], 'w') as f:
                f.write(report.to_json())
            row["report"] = job["report"]
    except (FileNotFoundError, TSPLIBParseError, ValueError) as e:
        row["error"] = str(e)
    return row


def summarize(runs: pd.DataFrame) -> List[BenchRow]:
    """Aggregate per-run rows into one BenchRow per (instance, config), in first-seen order."""
    rows = []
    for (name, label), group in runs.groupby(["instance", "config"], sort=False):
        optimum = int(group["optimum"].iloc[0])
        failed = group[group["error"].notna()]
        done = group[group["error"].isna()]
        if done.empty:
            rows.append(BenchRow(instance=name, optimum=optimum, runs=len(group), config_label=label,
                                 error=str(failed["error"].iloc[0])))
            continue
        lengths = done["best_length"].astype(int)
        rows.append(BenchRow(
            instance=name,
            optimum=optimum,
            runs=len(group),
            success=int((lengths == optimum).sum()),
            err=float(err_percent(lengths.mean(), optimum)),
            time=float(done["seconds"].mean()),
            config_label=label,
            error=None if failed.empty else str(failed["error"].iloc[0]),
        ))
    return rows


def bench_variants(args: argparse.Namespace) -> List[tuple]:
    """(label, config) pairs for every --nch value and --compare-global strategy."""
    nch_values: Sequence[Optional[int]] = args.nch or [None]
    strategies: Sequence[Optional[str]] = args.compare_global or [None]
    for name in strategies:
        if name is not None and name not in GLOBAL_STRATEGIES:
            raise ConfigError(f"--compare-global: unknown strategy '{name}', choose from {GLOBAL_STRATEGIES}")

    variants = []
    for n_ch, strategy in product(nch_values, strategies):
        cfg = build_config(args, n_ch=n_ch)
        if strategy is not None:
            cfg = cfg.replace(global_strategy=strategy)
        parts = []
        if args.nch and len(args.nch) > 1:
            parts.append(f"nch={cfg.n_ch}")
        if args.compare_global:
            parts.append(f"global={cfg.global_strategy}")
        variants.append((",".join(parts) or "default", cfg))
    return variants


def cmd_bench(args: argparse.Namespace) -> int:
    if args.runs < 1:
        raise ConfigError(f"--runs must be positive, got {args.runs}")
    if args.jobs < 1:
        raise ConfigError(f"--jobs must be positive, got {args.jobs}")
    entries = read_manifest(args.manifest)
    variants = bench_variants(args)

    reports_dir = os.path.join(args.out, "runs")
    jobs = []
    for path, optimum in entries:
        name = instance_name(path)
        for label, cfg in variants:
            tag = f"_{re.sub(r'[^A-Za-z0-9]+', '-', label)}" if len(variants) > 1 else ""
            for r in range(args.runs):
                run_cfg = cfg.replace(seed=cfg.seed + r, record_trace=False)
                jobs.append({
                    "path": resolve_instance_path(path),
                    "name": name,
                    "optimum": optimum,
                    "label": label,
                    "config": run_cfg.to_dict(),
                    "report": output_path(reports_dir, name, REPORT_EXTENSION, f"{tag}_{run_cfg.seed}"),
                })
    logger.info(f"{len(entries)} instances x {len(variants)} configs x {args.runs} runs = {len(jobs)} jobs")

    results = parallel_process(run_bench_job, jobs, max_workers=args.jobs, desc="bench",
                               show_progress=not args.quiet)
    runs = pd.DataFrame(results)
    for failure in runs[runs["error"].notna()].itertuples():
        logger.warning(f"{failure.instance} seed {failure.seed}: {failure.error}")

    summary = pd.DataFrame([row.to_dict() for row in summarize(runs)])
    columns = BENCH_COLUMNS + (["Config"] if len(variants) > 1 else []) + ["Error"]
    summary = summary[columns]

    os.makedirs(args.out, exist_ok=True)
    summary_file = os.path.join(args.out, "bench_summary.csv")
    runs_file = os.path.join(args.out, "bench_runs.csv")
    summary.to_csv(summary_file, index=False)
    runs.to_csv(runs_file, index=False)
    logger.info(f"wrote {summary_file}, {runs_file} and {len(jobs)} run reports under {reports_dir}")

    print(f"📊 {APP_NAME} benchmark ({args.runs} runs per instance)")
    print(summary.drop(columns=["Error"]).to_string(index=False))
    return EXIT_OK


def _default_render_path(args: argparse.Namespace, source: str, suffix: str) -> str:
    if args.out:
        return args.out
    root, _ = os.path.splitext(source)
    return f"{root}{suffix}{SVG_EXTENSION}"


def _read_tour_file(path: str, n: int) -> Tour:
    with open(path, 'r') as f:
        return read_tour(f.read(), n)


def cmd_render(args: argparse.Namespace) -> int:
    if args.trace:
        report = RunReport.from_json_file(args.trace)
        written = plot_convergence(report, _default_render_path(args, args.trace, "_convergence"))
        print(f"✅ Convergence plot: {written}")
        return EXIT_OK

    if not args.instance:
        raise ConfigError("render needs an instance (or --trace)")
    inst = load_instance(resolve_instance_path(args.instance))

    if args.show_rings:
        if len(args.tours) != 2:
            raise ConfigError("--show-rings needs exactly two tour files")
        pa, pb = (_read_tour_file(p, inst.n) for p in args.tours)
        rings = partition_m_rings(merge_graphs(pa, pb), random.Random(args.seed))
        written = render_rings_svg(inst, rings, _default_render_path(args, args.tours[0], "_rings"))
        if args.dump_rings:
            with open(args.dump_rings, 'w') as f:
                json.dump(rings_to_dict(rings), f, indent=2)
            logger.info(f"wrote {args.dump_rings}")
        print(f"✅ {len(rings)} M-rings: {written}")
        return EXIT_OK

    if len(args.tours) != 1:
        raise ConfigError("render needs exactly one tour file")
    tour = _read_tour_file(args.tours[0], inst.n)
    written = render_tour_svg(inst, tour, _default_render_path(args, args.tours[0], ""))
    print(f"✅ Tour: {written}")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "bench": cmd_bench, "render": cmd_render}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(verbose=args.verbose, quiet=args.quiet)

    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        logger.error(str(e))
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        logger.error(str(e))
        print(f"❌ File not found: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except (TSPLIBParseError, TourFormatError, ValueError) as e:
        logger.error(str(e))
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user.", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
