"""
relucert/cli/runner.py - Command-line orchestration

run() executes a property file against a network and renders the outcome.
Exit codes: 0 all Robust, 1 any Violated, 2 any Timeout (none Violated),
3 input error.
"""
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple
import json
import logging
import time

import numpy as np

from relucert.config.options import VerifyOptions
from relucert.config.settings import PropertyParams, ReportFormat, RunMode, Settings
from relucert.core.errors import InputError
from relucert.core.network import Network
from relucert.core.spec import Norm, PropertyKind, RobustnessSpec
from relucert.core.verdict import Budget, PropertyStatus, PropertyVerdict
from relucert.cli.parser import SpecLine, parse_network, parse_spec_file
from relucert.cli.report import ReportCell, ReportRow, emit_table, robust_value
from relucert.domain.parallel import PhaseCache
from relucert.domain.properties import (
    MaxDeltaResult, max_delta_search, verify_global_partitioned, verify_points, verify_property,
)

logger = logging.getLogger(__name__)

EXIT_ROBUST = 0
EXIT_VIOLATED = 1
EXIT_TIMEOUT = 2
EXIT_INPUT_ERROR = 3

CELL_STATUS = {'yes': PropertyStatus.ROBUST, 'no': PropertyStatus.VIOLATED, 'timeout': PropertyStatus.TIMEOUT}


@dataclass(frozen=True)
class RunConfig:
    network_path: str
    spec_path: str
    workers: int = Settings.DEFAULT_WORKERS
    timeout: Optional[float] = Settings.DEFAULT_TIMEOUT
    norm: Norm = Norm(PropertyParams.DEFAULT_NORM)
    margin: float = PropertyParams.MARGIN
    report_format: ReportFormat = ReportFormat.TEXT
    mode: RunMode = RunMode.VERIFY
    seq_baseline: bool = False
    report_path: Optional[str] = None
    prioritize: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'norm', Norm(self.norm))
        object.__setattr__(self, 'report_format', ReportFormat(self.report_format))
        object.__setattr__(self, 'mode', RunMode(self.mode))
        if self.workers < 1:
            raise InputError(f"workers must be at least 1, got {self.workers}")
        if self.timeout is not None and not self.timeout > 0:
            raise InputError(f"timeout must be positive, got {self.timeout}")
        if not self.margin > 0:
            raise InputError(f"margin must be positive, got {self.margin}")

    @property
    def budget(self) -> Budget:
        return Budget(timeout=self.timeout)

    @property
    def options(self) -> VerifyOptions:
        return replace(VerifyOptions(), margin=self.margin, prioritize=self.prioritize)


# ─────────────────────────────────────────────────────────────────────
# Formatting
# ─────────────────────────────────────────────────────────────────────

def _vector(values) -> str:
    return "[" + ", ".join(str(round(float(v), 6)) for v in values) + "]"


def _outputs(per_copy) -> str:
    return ";".join(_vector(values) for values in per_copy)


def _stats(verdict: PropertyVerdict) -> str:
    s = verdict.stats
    return f"splits={s.splits} lp_calls={s.lp_calls} time={s.wall_time:.3f}"


def format_verdict(spec: RobustnessSpec, verdict: PropertyVerdict) -> str:
    head = f"delta={spec.delta:g}"
    if spec.epsilon is not None:
        head += f" eps={spec.epsilon:g}"
    if verdict.status == PropertyStatus.ROBUST:
        return f"ROBUST {head} {_stats(verdict)}"
    if verdict.status == PropertyStatus.VIOLATED:
        cex = verdict.counterexample
        points = f"x={_vector(cex.inputs[0])}"
        if len(cex.inputs) > 1:
            points += f" x2={_vector(cex.inputs[1])}"
        return (f"VIOLATED {points} label={cex.label} gap={round(cex.gap, 6)} "
                f"threshold={cex.threshold:g} {_stats(verdict)}")
    line = f"TIMEOUT {head} {_stats(verdict)} reason={verdict.diagnostic or 'timeout'}"
    if verdict.rejected:
        _, failure = verdict.rejected[0]
        line += (f" lp_outputs={_outputs(failure.lp_outputs)}"
                 f" true_outputs={_outputs(failure.true_outputs)}")
    return line


def format_max_delta(result: MaxDeltaResult) -> str:
    return (f"MAXDELTA delta={result.delta:.9g} robust_found={'yes' if result.robust_found else 'no'} "
            f"timeout_trials={result.timeout_trials} trials={len(result.trials)}")


def _spec_record(spec: RobustnessSpec) -> dict:
    record = {'kind': spec.kind.value, 'delta': spec.delta, 'norm': spec.norm.value,
              'region': spec.region.to_dict()}
    if spec.x0 is not None:
        record['x0'] = spec.x0.tolist()
    if spec.epsilon is not None:
        record['epsilon'] = spec.epsilon
    return record


def json_record(ln: SpecLine, verdict: Optional[PropertyVerdict] = None,
                result: Optional[MaxDeltaResult] = None) -> str:
    """One JSON object per property line, built from the verdict records."""
    record = {'line': ln.line}
    if ln.spec is not None:
        record['property'] = _spec_record(ln.spec)
    if verdict is not None:
        record.update(verdict.to_dict())
    if result is not None:
        record['max_delta'] = result.to_dict()
    return json.dumps(record)


def _exit_code(statuses: List[PropertyStatus]) -> int:
    if PropertyStatus.VIOLATED in statuses:
        return EXIT_VIOLATED
    if PropertyStatus.TIMEOUT in statuses:
        return EXIT_TIMEOUT
    return EXIT_ROBUST


# ─────────────────────────────────────────────────────────────────────
# Modes
# ─────────────────────────────────────────────────────────────────────

def _run_verify(net: Network, lines: List[SpecLine], config: RunConfig) -> Tuple[List[str], List[PropertyStatus]]:
    cache = PhaseCache(net)
    budget, options = config.budget, config.options
    output: Dict[int, str] = {}
    statuses: List[PropertyStatus] = []
    as_json = config.report_format == ReportFormat.JSON

    def render(ln: SpecLine, verdict: PropertyVerdict) -> str:
        return json_record(ln, verdict) if as_json else format_verdict(ln.spec, verdict)

    plain = [ln for ln in lines if ln.spec is not None and ln.parts == 1]
    verdicts = verify_points(net, [ln.spec for ln in plain], config.workers, budget, options, cache) if plain else []
    for ln, verdict in zip(plain, verdicts):
        output[ln.line] = render(ln, verdict)
        statuses.append(verdict.status)

    for ln in lines:
        if ln.spec is not None and ln.parts > 1:
            verdict = verify_global_partitioned(net, ln.spec, ln.parts, config.workers,
                                                budget, options, cache)
            output[ln.line] = render(ln, verdict)
            statuses.append(verdict.status)
        elif ln.max_delta is not None:
            req = ln.max_delta
            result = max_delta_search(net, req.x0, req.kind, req.epsilon, req.norm,
                                      req.precision, req.delta_hi, config.workers, budget, options)
            output[ln.line] = json_record(ln, result=result) if as_json else format_max_delta(result)
            if result.timeout_trials:
                statuses.append(PropertyStatus.TIMEOUT)

    return [output[n] for n in sorted(output)], statuses


def _timed(net: Network, spec: RobustnessSpec, workers: int, config: RunConfig) -> Tuple[PropertyVerdict, float]:
    start = time.monotonic()
    verdict = verify_property(net, spec, workers, config.budget, config.options)
    return verdict, time.monotonic() - start


def build_report_rows(net: Network, lines: List[SpecLine], config: RunConfig) -> Tuple[List[ReportRow], List[float]]:
    """
    Group local-conf lines by x0 into rows and time each property.

    Par. uses config.workers; Seq. reruns with one worker when seq_baseline is set.
    """
    rows: List[ReportRow] = []
    centers: List[np.ndarray] = []
    epsilons: List[float] = []
    for ln in lines:
        spec = ln.spec
        if spec is None or spec.kind != PropertyKind.LOCAL_CONFIDENCE:
            raise InputError("report tables take local-conf lines only", config.spec_path, ln.line)
        index = next((i for i, c in enumerate(centers) if np.array_equal(c, spec.x0)), None)
        if index is None:
            centers.append(spec.x0)
            rows.append(ReportRow(str(len(rows) + 1)))
            index = len(rows) - 1
        if spec.epsilon not in epsilons:
            epsilons.append(spec.epsilon)

        verdict, par_time = _timed(net, spec, config.workers, config)
        seq_time = None
        if config.seq_baseline:
            seq_verdict, seq_time = _timed(net, spec, 1, config)
            if seq_verdict.status != verdict.status:
                logger.warning("point %s eps=%g: %s with %d workers, %s sequentially",
                               rows[index].point, spec.epsilon, verdict.status.value,
                               config.workers, seq_verdict.status.value)
        rows[index].cells[spec.epsilon] = ReportCell(robust_value(verdict.status), par_time, seq_time)
    return rows, sorted(epsilons)


def run(config: RunConfig) -> Tuple[int, str]:
    """
    Execute the property file.

    Returns:
        (exit code, report text); the report is also written to
        config.report_path when set
    """
    try:
        net = parse_network(config.network_path)
        lines = parse_spec_file(config.spec_path, config.norm.value)
        if config.mode == RunMode.REPORT_TABLE:
            rows, epsilons = build_report_rows(net, lines, config)
            text = emit_table(rows, epsilons, config.report_format)
            statuses = [CELL_STATUS[c.robust] for row in rows for c in row.cells.values()]
        else:
            if config.mode == RunMode.MAX_DELTA and any(ln.max_delta is None for ln in lines):
                raise InputError("max-delta mode takes max-delta lines only", config.spec_path)
            if config.report_format == ReportFormat.CSV:
                raise InputError("csv output applies to report-table mode only")
            output, statuses = _run_verify(net, lines, config)
            text = "".join(line + "\n" for line in output)
        code = _exit_code(statuses)
        if config.report_path is not None:
            with open(config.report_path, "w", encoding="utf-8") as handle:
                handle.write(text)
    except InputError as exc:
        logger.error("input error: %s", exc)
        return EXIT_INPUT_ERROR, f"ERROR {exc}\n"
    except OSError as exc:
        logger.error("cannot write report: %s", exc)
        return EXIT_INPUT_ERROR, f"ERROR {exc}\n"

    logger.info("run finished with exit code %d", code)
    return code, text
