"""swagbench: command-line benchmark runner.

Exit status: 0 on success, 2 on usage errors, 3 on input errors, 4 when
--verify detects a divergence from the recalculation oracle.
"""

import argparse
import csv
import sys

from . import bench
from .monoids import MONOID_NAMES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="swagbench",
        description="Benchmark sliding-window aggregation engines.",
    )
    p.add_argument("--algo", required=True, choices=bench.ENGINE_NAMES)
    p.add_argument("--monoid", required=True, choices=MONOID_NAMES)
    p.add_argument("--mode", default="static", choices=bench.MODES)
    p.add_argument("--window-exp", type=int, default=10, metavar="K",
                   help="window size 2**K for static/dynamic modes (default 10)")
    p.add_argument("--tau-ms", type=int, metavar="T",
                   help="event-time horizon in milliseconds (event mode)")
    p.add_argument("--rounds", type=int, default=None,
                   help="rounds (static), total items (dynamic), or synthetic "
                        "records (event); defaults to 1e6 latency / 1e7 throughput")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", metavar="PATH",
                   help="write per-round samples (latency) or the summary "
                        "row (throughput) as CSV")
    p.add_argument("--input", metavar="CSV",
                   help="timestamp_ms,value records for event mode")
    p.add_argument("--skip-header", action="store_true",
                   help="skip the first line of --input")
    p.add_argument("--verify", action="store_true",
                   help="spot-check query outputs against the oracle")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--latency", action="store_true",
                   help="record per-round latency samples (default)")
    g.add_argument("--throughput", action="store_true",
                   help="skip per-round timing; report aggregate throughput")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.input and args.mode != "event":
        parser.error("--input only applies to event mode")
    cfg = bench.ExperimentConfig(
        algo=args.algo,
        monoid=args.monoid,
        mode=args.mode,
        window_exp=args.window_exp,
        tau_ms=args.tau_ms,
        rounds=args.rounds,
        seed=args.seed,
        out_path=args.out,
        verify=args.verify,
        measure="throughput" if args.throughput else "latency",
        input_path=args.input,
        skip_header=args.skip_header,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        parser.error(str(exc))

    try:
        report = bench.run_experiment(cfg)
    except bench.InputError as exc:
        print(f"swagbench: input error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"swagbench: input error: {exc}", file=sys.stderr)
        return 3
    except bench.VerificationError as exc:
        print(f"swagbench: verification failed: {exc}", file=sys.stderr)
        return 4

    writer = csv.DictWriter(sys.stdout, fieldnames=bench.SUMMARY_FIELDS)
    writer.writeheader()
    writer.writerow(report.summary_row())

    summary = report.latency_summary()
    if summary is not None:
        pretty = ", ".join(f"{k}={v}" for k, v in summary.items())
        print(f"latency ns: {pretty}", file=sys.stderr)

    if args.out:
        if report.latency_ns is not None:
            bench.write_samples_csv(report, args.out)
        else:
            bench.write_summary_csv(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
