""" Command line surface: bound queries, S_d listings, exactness
verification, grid sweeps, LP degree queries and g_n^k complexities.

Exit codes: 0 success, 1 failed verification or inconsistency,
2 argument error, 3 size cap exceeded, 4 I/O error.

Try 'python run.py -h' for more details.
"""

import argparse
from dataclasses import replace
import logging
import math
import sys
from typing import Callable, Dict, List, Optional

import jsonlines  # type: ignore

from weightdec import lp_oracle, quantum_sim, regions, sweep
from weightdec.cheb_core import boundary_pairs
from weightdec.config import Config, load_config
from weightdec.const import WeightInstance
from weightdec.errors import ArgumentError, ConsistencyError, WeightDecError
from weightdec.utils import output_running_time


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ARGUMENT = 2
EXIT_RESOURCE = 3
EXIT_IO = 4

logger = logging.getLogger(__name__)


def _print_bounds(result: regions.BoundsResult) -> None:
    status = "matched" if result.matched else f"gap={result.gap}"
    print(f"upper={result.upper} lower={result.lower} {status}")
    print(f"upper_anchor: {result.upper_anchor}")
    print(f"lower_anchor: {result.lower_anchor or 'none'}")
    if result.asymptotic:
        print("note: the lower bound holds for sufficiently large n")


def _instance(values: List[int]) -> WeightInstance:
    if len(values) != 3:
        raise ArgumentError(f"expected n k l, got {values}")
    return WeightInstance(*values)


def _lp_kwargs(config: Config) -> dict:
    return {"max_n": config.lp_max_n,
            "method": config.lp_method,
            "tolerance": config.lp_feasibility_tolerance,
            "recheck_tolerance": config.lp_recheck_tolerance}


# ================================================================ Commands

def cmd_bounds(args: argparse.Namespace, config: Config) -> int:
    """ Prints upper and lower bounds with their anchors """
    del config
    if args.ratio is not None:
        if args.instance:
            raise ArgumentError("give either n k l or --ratio, not both")
        result = regions.bounds(regions.RatioPoint(*args.ratio),
                                args.one_query_floor)
    else:
        inst = _instance(args.instance)
        result = replace(regions.bounds(regions.RatioPoint(*inst.ratio),
                                        args.one_query_floor),
                         asymptotic=True)
    _print_bounds(result)
    return EXIT_OK


def cmd_sd(args: argparse.Namespace, config: Config) -> int:
    """ Lists S_d, one pair per line: s t D gamma delta """
    del config
    for pair in boundary_pairs(args.d):
        print(f"{pair.s:.9f} {pair.t:.9f} {pair.degree}"
              f" {pair.gamma} {pair.delta}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: Config) -> int:
    """ Certifies the padded algorithm on the promised inputs """
    inst = _instance(args.instance)
    summary = quantum_sim.verify_exactness(
        inst, mode=args.mode, max_n=config.max_full_n, device=config.device,
        progress=config.progress_bar)

    print(f"d={summary.d} min_success={summary.min_success:.9f}")
    print(f"anchor: {summary.anchor}")
    print(f"a^2={summary.params.a_sq:.9f} b^2={summary.params.b_sq:.9f}"
          f" queries={summary.queries_used} inputs={len(summary.reports)}")

    if args.all_weights:
        for report in quantum_sim.explore_weights(inst, summary.params):
            probs = " ".join(f"{cls.value}={prob:.9f}"
                             for cls, prob in report.class_probs.items())
            print(f"w={report.weight} output={report.output}"
                  f" p={report.success_prob:.9f} {probs}")

    if args.report:
        with jsonlines.open(args.report, mode="w") as report_f:
            report_f.write_all(report.to_dict() for report in summary.reports)
        logger.info("wrote %d reports to %s", len(summary.reports),
                    args.report)

    return EXIT_OK if summary.exact else EXIT_FAILED


def cmd_sweep(args: argparse.Namespace, config: Config) -> int:
    """ Evaluates bounds over the grid and writes the CSV """
    resolution = args.resolution or config.sweep_resolution
    workers = args.workers or config.sweep_workers
    if resolution < sweep.MIN_RESOLUTION:
        raise ArgumentError(f"resolution must be at least"
                            f" {sweep.MIN_RESOLUTION}, got {resolution}")
    with output_running_time():
        with sweep.open_(args.out) as out_f:
            cells, checker = sweep.sweep(resolution, workers,
                                         config.progress_bar)
            sweep.write_csv(cells, out_f, config.csv_decimals)
    print(f"cells={checker.cells}"
          f" matched={checker.matched_fraction:.6f}"
          f" gap_le_1={checker.gap_le_one_fraction:.6f}"
          f" violations={checker.violations}")
    return EXIT_OK if not checker.violations else EXIT_FAILED


def cmd_degree(args: argparse.Namespace, config: Config) -> int:
    """ Prints the LP minimum degree next to the region bounds """
    inst = _instance(args.instance)
    result = regions.bounds_instance(inst)
    degree = lp_oracle.min_degree(inst, args.max_d, **_lp_kwargs(config))
    if degree is None:
        print(f"deg>{args.max_d} qe_lower>={math.ceil((args.max_d + 1) / 2)}")
    else:
        qe_lower = math.ceil(degree / 2)
        print(f"deg={degree} qe_lower={qe_lower}")
        if qe_lower > result.upper:
            raise ConsistencyError(f"degree bound {qe_lower} exceeds the"
                                   f" region upper bound {result.upper}")
    print(f"upper={result.upper} lower={result.lower}")
    return EXIT_OK


def cmd_g(args: argparse.Namespace, config: Config) -> int:
    """ Prints Q_E(g_n^k) next to the bounds of (kappa, 1/2) """
    g_value = regions.g_query_complexity(args.kappa)
    result = regions.bounds(regions.RatioPoint(args.kappa, 0.5))
    status = "matched" if result.matched else f"gap={result.gap}"
    print(f"g={g_value} upper={result.upper} lower={result.lower} {status}")
    if args.n is not None:
        k = args.kappa * args.n
        if not float(k).is_integer():
            raise ArgumentError(f"kappa * n = {k} is not an integer")
        inst = regions.g_instance(args.n, int(k))
        summary = quantum_sim.verify_exactness(inst, mode="symmetric")
        print(f"{inst}: d={summary.d}"
              f" min_success={summary.min_success:.9f}")
        if not summary.exact:
            return EXIT_FAILED
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Config], int]] = {
    "bounds": cmd_bounds,
    "sd": cmd_sd,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "degree": cmd_degree,
    "g": cmd_g,
}


def build_parser() -> argparse.ArgumentParser:
    argparser = argparse.ArgumentParser(
        description="Bounds and exact algorithms for weight decision"
                    " functions f_n^{k,l}")
    argparser.add_argument("--config-file", default="config.toml")
    argparser.add_argument("--config-section", default="DEFAULT",
                           help="Section of the config file overlaid on"
                                " DEFAULT.")
    subparsers = argparser.add_subparsers(dest="command", required=True)

    bounds_p = subparsers.add_parser("bounds", help="upper and lower bounds")
    bounds_p.add_argument("instance", nargs="*", type=int,
                          metavar="n k l")
    bounds_p.add_argument("--ratio", nargs=2, type=float,
                          metavar=("KAPPA", "LAMBDA"),
                          help="Query a ratio point instead of an instance.")
    bounds_p.add_argument("--one-query-floor", action="store_true",
                          help="Report a lower bound of at least 2 for every"
                               " point that needs more than one query.")

    sd_p = subparsers.add_parser("sd", help="list the boundary set S_d")
    sd_p.add_argument("d", type=int)

    verify_p = subparsers.add_parser("verify",
                                     help="certify the exact algorithm")
    verify_p.add_argument("instance", nargs=3, type=int, metavar="n k l")
    verify_p.add_argument("--mode", choices=("full", "symmetric"),
                          default="symmetric",
                          help="'full' simulates every promised input with"
                               " dense operators (n is capped), 'symmetric'"
                               " uses the closed-form angles. Defaults to"
                               " 'symmetric'.")
    verify_p.add_argument("--report",
                          help="Write one json line per simulated input.")
    verify_p.add_argument("--all-weights", action="store_true",
                          help="Also print the outcome distribution for"
                               " every weight 0..n.")

    sweep_p = subparsers.add_parser("sweep", help="grid sweep to CSV")
    sweep_p.add_argument("--resolution", type=int,
                         help="Cells per side. Defaults to the config"
                              " value.")
    sweep_p.add_argument("--out", required=True, help="CSV output path")
    sweep_p.add_argument("--workers", type=int,
                         help="Worker processes. Defaults to the config"
                              " value.")

    degree_p = subparsers.add_parser("degree",
                                     help="LP minimum polynomial degree")
    degree_p.add_argument("instance", nargs=3, type=int, metavar="n k l")
    degree_p.add_argument("--max-d", type=int,
                          help="Stop scanning degrees after this one.")

    g_p = subparsers.add_parser("g", help="complexity of g_n^k")
    g_p.add_argument("kappa", type=float)
    g_p.add_argument("--n", type=int,
                     help="Also certify the algorithm for this even n.")
    return argparser


def main(argv: Optional[List[str]] = None) -> int:
    """ Runs one subcommand and returns its exit code """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)

    try:
        config = load_config(args.config_file, args.config_section)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ARGUMENT
    logging.basicConfig(level=config.log_level)

    try:
        return COMMANDS[args.command](args, config)
    except WeightDecError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
