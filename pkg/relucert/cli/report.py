"""
relucert/cli/report.py - Robustness table rendering

One row per point, one column group per ε holding the verdict and the
parallel and sequential wall times. CSV output is long-form: one record per
point and ε.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union
import io
import logging

import pandas as pd

from relucert.config.settings import ReportFormat, ReportParams
from relucert.core.errors import InputError
from relucert.core.verdict import PropertyStatus

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['point', 'eps', 'robust', 'par_s', 'seq_s']
ROBUST_VALUES = ('yes', 'no', 'timeout')
ROBUST_TEXT = {'yes': 'Yes', 'no': 'No', 'timeout': 'Timeout'}


def robust_value(status: PropertyStatus) -> str:
    return {PropertyStatus.ROBUST: 'yes', PropertyStatus.VIOLATED: 'no'}.get(status, 'timeout')


@dataclass
class ReportCell:
    """Verdict and timings (seconds) of one point at one ε."""

    robust: str
    par_time: float
    seq_time: Optional[float] = None

    def __post_init__(self):
        if self.robust not in ROBUST_VALUES:
            raise InputError(f"robust must be one of {ROBUST_VALUES}, got {self.robust!r}")


@dataclass
class ReportRow:
    point: str
    cells: Dict[float, ReportCell] = field(default_factory=dict)

    def monotonicity_warnings(self) -> List[str]:
        """A point robust at ε must stay robust at every larger ε."""
        warnings = []
        epsilons = sorted(self.cells)
        for i, low in enumerate(epsilons):
            if self.cells[low].robust != 'yes':
                continue
            for high in epsilons[i + 1:]:
                if self.cells[high].robust == 'no':
                    warnings.append(f"point {self.point}: robust at eps={low:g} but not at eps={high:g}")
        return warnings


def _seconds(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.{ReportParams.TIME_DECIMALS}f}"


def _render_text(rows: Sequence[ReportRow], epsilons: Sequence[float]) -> str:
    pw, rw, tw = ReportParams.POINT_WIDTH, ReportParams.ROBUST_WIDTH, ReportParams.TIME_WIDTH
    group = rw + 2 * tw
    title = "Point".ljust(pw) + "".join(" | " + f"eps={eps:g}".ljust(group) for eps in epsilons)
    columns = " " * pw + "".join(
        " | " + "Robust?".ljust(rw) + "Par.".rjust(tw) + "Seq.".rjust(tw) for _ in epsilons)
    lines = [title, columns]
    for row in rows:
        line = str(row.point).ljust(pw)
        for eps in epsilons:
            cell = row.cells.get(eps)
            if cell is None:
                line += " | " + "-".ljust(rw) + "-".rjust(tw) + "-".rjust(tw)
            else:
                line += (" | " + ROBUST_TEXT[cell.robust].ljust(rw)
                         + _seconds(cell.par_time).rjust(tw) + _seconds(cell.seq_time).rjust(tw))
        lines.append(line)
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _frame(rows: Sequence[ReportRow], epsilons: Sequence[float]) -> pd.DataFrame:
    records = [
        {
            'point': str(row.point),
            'eps': repr(float(eps)),
            'robust': row.cells[eps].robust,
            'par_s': _seconds(row.cells[eps].par_time),
            'seq_s': "" if row.cells[eps].seq_time is None else _seconds(row.cells[eps].seq_time),
        }
        for row in rows for eps in epsilons if eps in row.cells
    ]
    return pd.DataFrame(records, columns=CSV_COLUMNS)


def _render_csv(rows: Sequence[ReportRow], epsilons: Sequence[float]) -> str:
    return _frame(rows, epsilons).to_csv(index=False, lineterminator="\n")


def _render_json(rows: Sequence[ReportRow], epsilons: Sequence[float]) -> str:
    frame = _frame(rows, epsilons)
    if frame.empty:
        return ""
    return frame.to_json(orient="records", lines=True).rstrip("\n") + "\n"


def emit_table(rows: Sequence[ReportRow], epsilons: Sequence[float],
               fmt: Union[ReportFormat, str] = ReportFormat.TEXT) -> str:
    """
    Render rows as the robustness table.

    Args:
        rows: Report rows
        epsilons: Column order; every cell's ε must be listed
        fmt: text, csv or json (one record per cell)

    Returns:
        Rendered report; header only when rows is empty
    """
    fmt = ReportFormat(fmt)
    listed = set(epsilons)
    for row in rows:
        unknown = set(row.cells) - listed
        if unknown:
            raise InputError(f"point {row.point} has cells for unlisted eps {sorted(unknown)}")
        for warning in row.monotonicity_warnings():
            logger.warning(warning)
    if fmt == ReportFormat.CSV:
        return _render_csv(rows, epsilons)
    if fmt == ReportFormat.JSON:
        return _render_json(rows, epsilons)
    return _render_text(rows, epsilons)


def parse_report_csv(text: str) -> List[ReportRow]:
    """Read long-form CSV back into rows, in order of first appearance."""
    frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)
    if list(frame.columns) != CSV_COLUMNS:
        raise InputError(f"expected columns {CSV_COLUMNS}, got {list(frame.columns)}")
    rows: Dict[str, ReportRow] = {}
    for record in frame.itertuples(index=False):
        row = rows.setdefault(record.point, ReportRow(record.point))
        row.cells[float(record.eps)] = ReportCell(
            record.robust,
            float(record.par_s),
            float(record.seq_s) if record.seq_s != "" else None,
        )
    return list(rows.values())
