"""
ReluCert - ReLU network robustness verifier
Main entry point for the command line
"""
import argparse
import logging
import sys

from relucert import __version__
from relucert.cli import RunConfig, run
from relucert.config.settings import PropertyParams, ReportFormat, RunMode, Settings
from relucert.core.errors import InputError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relucert",
        description="Prove or refute robustness properties of feedforward ReLU classifiers.",
    )
    parser.add_argument("--net", required=True, help="network file (relunet v1)")
    parser.add_argument("--spec", required=True, help="property file, one query per line")
    parser.add_argument("--workers", type=int, default=Settings.DEFAULT_WORKERS,
                        help="worker threads (default: %(default)s)")
    parser.add_argument("--timeout", type=float, default=Settings.DEFAULT_TIMEOUT,
                        help="seconds per property (default: %(default)s)")
    parser.add_argument("--norm", choices=["linf", "l1"], default=PropertyParams.DEFAULT_NORM,
                        help="norm for lines without norm= (default: %(default)s)")
    parser.add_argument("--margin", type=float, default=PropertyParams.MARGIN,
                        help="strict-inequality margin (default: %(default)s)")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TEXT.value,
                        help="text, csv (report-table mode only) or json lines")
    parser.add_argument("--mode", choices=[m.value for m in RunMode], default=RunMode.VERIFY.value)
    parser.add_argument("--seq-baseline", action="store_true",
                        help="rerun each report-table property with one worker for the Seq. column")
    parser.add_argument("--prioritize", action="store_true",
                        help="order points and sub-domains by sampled fluctuation")
    parser.add_argument("--report", help="write the report to this file instead of stdout")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=Settings.LOG_LEVEL, format=Settings.LOG_FORMAT, stream=sys.stderr)

    try:
        config = RunConfig(
            network_path=args.net,
            spec_path=args.spec,
            workers=args.workers,
            timeout=args.timeout,
            norm=args.norm,
            margin=args.margin,
            report_format=args.format,
            mode=args.mode,
            seq_baseline=args.seq_baseline,
            report_path=args.report,
            prioritize=args.prioritize,
        )
    except InputError as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 3

    code, text = run(config)
    if config.report_path is None or code == 3:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
