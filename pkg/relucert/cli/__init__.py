"""
relucert/cli - Command-line front end

Functions:
    - parse_network(path) → Network
    - parse_spec_file(path) → list of SpecLine
    - emit_table(rows, epsilons, fmt) → text or CSV
    - run(config) → (exit code, report)
"""
from relucert.cli.parser import (
    MaxDeltaRequest, SpecLine, parse_network, parse_network_text, parse_spec_file,
    parse_spec_text, serialize_network,
)
from relucert.cli.report import ReportCell, ReportRow, emit_table, parse_report_csv, robust_value
from relucert.cli.runner import RunConfig, format_verdict, run

__all__ = [
    'MaxDeltaRequest', 'SpecLine', 'parse_network', 'parse_network_text', 'parse_spec_file',
    'parse_spec_text', 'serialize_network',
    'ReportCell', 'ReportRow', 'emit_table', 'parse_report_csv', 'robust_value',
    'RunConfig', 'format_verdict', 'run',
]
