import json
import logging

import numpy as np
import pytest

from main import main
from relucert.cli import (
    RunConfig, ReportCell, ReportRow, emit_table, parse_network, parse_network_text,
    parse_report_csv, parse_spec_text, run, serialize_network,
)
from relucert.core.errors import InputError
from relucert.core.spec import Norm, PropertyKind
from relucert.domain.network import evaluate
from tests.conftest import make_random_net

MIRROR = """relunet v1
# y1 = x, y2 = -x
1 2
1 0
-1 0
"""


@pytest.fixture
def mirror_file(tmp_path):
    path = tmp_path / "mirror.net"
    path.write_text(MIRROR)
    return str(path)


def spec_file(tmp_path, text, name="props.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


PUBLISHED = {
    "1": [("no", 5, 5), ("no", 785, 7548), ("yes", 9145, 38161)],
    "2": [("yes", 277, 1272), ("yes", 248, 989), ("yes", 191, 747)],
    "3": [("yes", 103, 460), ("yes", 134, 480), ("yes", 93, 400)],
    "4": [("no", 17, 17), ("yes", 249, 774), ("yes", 132, 512)],
    "5": [("yes", 333, 1479), ("yes", 259, 1115), ("yes", 230, 934)],
}
PUBLISHED_EPS = [0.01, 0.02, 0.03]

PUBLISHED_TEXT = (
    "Point  | eps=0.01                     | eps=0.02                     | eps=0.03\n"
    "       | Robust?       Par.      Seq. | Robust?       Par.      Seq. | Robust?       Par.      Seq.\n"
    "1      | No           5.000     5.000 | No         785.000  7548.000 | Yes       9145.000 38161.000\n"
    "2      | Yes        277.000  1272.000 | Yes        248.000   989.000 | Yes        191.000   747.000\n"
    "3      | Yes        103.000   460.000 | Yes        134.000   480.000 | Yes         93.000   400.000\n"
    "4      | No          17.000    17.000 | Yes        249.000   774.000 | Yes        132.000   512.000\n"
    "5      | Yes        333.000  1479.000 | Yes        259.000  1115.000 | Yes        230.000   934.000\n"
)


def published_rows():
    return [
        ReportRow(point, {eps: ReportCell(robust, float(par), float(seq))
                          for eps, (robust, par, seq) in zip(PUBLISHED_EPS, cells)})
        for point, cells in PUBLISHED.items()
    ]


class TestNetworkFile:
    def test_parse(self, mirror_file):
        net = parse_network(mirror_file)
        assert net.input_dim == 1
        assert net.output_dim == 2
        assert evaluate(net, [0.25]).tolist() == [0.25, -0.25]

    def test_wrong_row_length_names_line(self, tmp_path):
        path = spec_file(tmp_path, "relunet v1\n1 2\n1 0\n-1\n", "bad.net")
        with pytest.raises(InputError) as info:
            parse_network(path)
        assert info.value.line == 4
        assert f"{path}:4:" in str(info.value)

    @pytest.mark.parametrize("text", [
        "",
        "relunet v2\n1 2\n1 0\n-1 0\n",
        "relunet v1\n1\n",
        "relunet v1\n1 0\n",
        "relunet v1\n1 2\n1 0\n",
        "relunet v1\n1 2\n1 0\n-1 0\n3 3\n",
        "relunet v1\n1 2\n1 x\n-1 0\n",
        "relunet v1\n1 2\n1 nan\n-1 0\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(InputError):
            parse_network_text(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError) as info:
            parse_network(str(tmp_path / "absent.net"))
        assert info.value.path.endswith("absent.net")

    def test_serialize_preserves_outputs(self, rng):
        net = make_random_net(rng, (3, 5, 4, 2))
        parsed = parse_network_text(serialize_network(net))
        for x in rng.uniform(-2, 2, (100, 3)):
            assert np.array_equal(evaluate(parsed, x), evaluate(net, x))


class TestSpecFile:
    def test_kinds(self):
        lines = parse_spec_text(
            "local-label x0=0.5 delta=0.1\n"
            "# comment\n"
            "local-conf x0=1,2 delta=0.2 eps=0.3 norm=l1\n"
            "global lo=0 hi=1 delta=0.1 eps=0.5 parts=4\n"
            "max-delta x0=0.5 kind=conf eps=0.2 prec=0.01 hi=1\n")
        assert [ln.line for ln in lines] == [1, 3, 4, 5]
        assert lines[0].spec.kind == PropertyKind.LOCAL_LABEL
        assert lines[0].spec.norm == Norm.LINF
        assert lines[1].spec.norm == Norm.L1
        assert lines[1].spec.x0.tolist() == [1.0, 2.0]
        assert lines[2].spec.kind == PropertyKind.GLOBAL_CONFIDENCE
        assert lines[2].parts == 4
        request = lines[3].max_delta
        assert request.kind == PropertyKind.LOCAL_CONFIDENCE
        assert (request.precision, request.delta_hi, request.epsilon) == (0.01, 1.0, 0.2)

    def test_default_norm(self):
        lines = parse_spec_text("local-label x0=0 delta=0.1\n", default_norm="l1")
        assert lines[0].spec.norm == Norm.L1

    @pytest.mark.parametrize("line", [
        "robust x0=0 delta=1",
        "local-label x0=0",
        "local-label x0=0 delta=1 eps=2",
        "local-label x0=0 delta=-1",
        "local-label x0=0 delta",
        "local-conf x0=0 delta=1",
        "local-label x0=0 delta=1 norm=l2",
        "global lo=1 hi=0 delta=1 eps=1",
        "global lo=0 hi=1 delta=1 eps=1 parts=0",
        "max-delta x0=0 kind=global prec=0.1 hi=1",
        "max-delta x0=0 kind=conf prec=0.1 hi=1",
    ])
    def test_errors_name_the_line(self, line):
        with pytest.raises(InputError) as info:
            parse_spec_text("# header\n" + line + "\n", path="props.txt")
        assert info.value.line == 2


class TestReportTable:
    def test_text_layout(self):
        rows = [ReportRow("1", {0.02: ReportCell("no", 785.0, 7548.0)})]
        text = emit_table(rows, [0.02])
        lines = text.splitlines()
        assert lines[0] == "Point  | eps=0.02"
        assert lines[1] == "       | Robust?       Par.      Seq."
        assert lines[2] == "1      | No         785.000  7548.000"

    def test_published_table(self):
        assert emit_table(published_rows(), PUBLISHED_EPS) == PUBLISHED_TEXT

    def test_published_table_json(self):
        records = [json.loads(line) for line in emit_table(published_rows(), PUBLISHED_EPS, "json").splitlines()]
        assert len(records) == 15
        assert records[1] == {'point': "1", 'eps': "0.02", 'robust': "no", 'par_s': "785.000", 'seq_s': "7548.000"}
        assert emit_table([], [0.01], "json") == ""

    def test_several_epsilons(self):
        rows = [ReportRow("3", {0.03: ReportCell("yes", 93.0, 400.0), 0.01: ReportCell("no", 1.5)})]
        line = emit_table(rows, [0.01, 0.03]).splitlines()[2]
        assert line == "3      | No           1.500         - | Yes         93.000   400.000"

    def test_missing_cell(self):
        rows = [ReportRow("1", {0.01: ReportCell("timeout", 2.0)})]
        line = emit_table(rows, [0.01, 0.05]).splitlines()[2]
        assert line.endswith("| -                -         -")

    def test_empty_rows_give_header(self):
        assert emit_table([], [0.01], "text").count("\n") == 2
        assert emit_table([], [0.01], "csv") == "point,eps,robust,par_s,seq_s\n"

    def test_unlisted_epsilon(self):
        with pytest.raises(InputError):
            emit_table([ReportRow("1", {0.5: ReportCell("yes", 1.0)})], [0.1])

    def test_bad_robust_value(self):
        with pytest.raises(InputError):
            ReportCell("maybe", 1.0)

    def test_csv_reads_back(self):
        rows = [
            ReportRow("1", {0.01: ReportCell("no", 785.0, 7548.0), 0.05: ReportCell("yes", 12.25)}),
            ReportRow("2", {0.01: ReportCell("timeout", 3.0, 3.5)}),
        ]
        text = emit_table(rows, [0.01, 0.05], "csv")
        assert text.splitlines()[0] == "point,eps,robust,par_s,seq_s"
        assert text.splitlines()[1] == "1,0.01,no,785.000,7548.000"
        parsed = parse_report_csv(text)
        assert [r.point for r in parsed] == ["1", "2"]
        assert parsed[0].cells[0.05].seq_time is None
        assert parsed[0].cells[0.01].robust == "no"
        assert parsed[1].cells[0.01].par_time == 3.0

    def test_monotonicity_warning(self, caplog):
        rows = [ReportRow("4", {0.01: ReportCell("yes", 1.0), 0.05: ReportCell("no", 1.0)})]
        with caplog.at_level(logging.WARNING, logger="relucert.cli.report"):
            emit_table(rows, [0.01, 0.05])
        assert "point 4: robust at eps=0.01 but not at eps=0.05" in caplog.text


class TestRun:
    def test_robust(self, tmp_path, mirror_file):
        config = RunConfig(mirror_file, spec_file(tmp_path, "local-label x0=1 delta=0.5\n"))
        code, text = run(config)
        assert code == 0
        assert text.startswith("ROBUST delta=0.5 splits=0")

    def test_violated(self, tmp_path, mirror_file):
        config = RunConfig(mirror_file, spec_file(tmp_path, "local-label x0=1 delta=1.5\n"))
        code, text = run(config)
        assert code == 1
        fields = dict(f.split("=", 1) for f in text.split()[1:] if "=" in f)
        assert text.startswith("VIOLATED x=[")
        assert float(fields["x"].strip("[]")) <= 0
        assert fields["label"] == "1"
        assert float(fields["gap"]) >= 1e-6

    def test_violation_outranks_timeout(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "local-label x0=1 delta=0.5\nlocal-label x0=1 delta=1.5\n")
        code, text = run(RunConfig(mirror_file, props, workers=2))
        assert code == 1
        assert [ln.split()[0] for ln in text.splitlines()] == ["ROBUST", "VIOLATED"]

    def test_timeout(self, tmp_path, mirror_file):
        config = RunConfig(mirror_file, spec_file(tmp_path, "local-label x0=1 delta=0.5\n"), timeout=1e-9)
        code, text = run(config)
        assert code == 2
        assert text.startswith("TIMEOUT delta=0.5")

    def test_missing_network(self, tmp_path):
        code, text = run(RunConfig(str(tmp_path / "none.net"), spec_file(tmp_path, "")))
        assert code == 3
        assert text.startswith("ERROR")

    def test_dimension_mismatch(self, tmp_path, mirror_file):
        code, _ = run(RunConfig(mirror_file, spec_file(tmp_path, "local-label x0=1,2 delta=0.5\n")))
        assert code == 3

    def test_tied_label_in_a_batch_is_input_error(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "local-label x0=0 delta=0.5\nlocal-label x0=1 delta=0.5\n")
        code, text = run(RunConfig(mirror_file, props, workers=2))
        assert code == 3
        assert "x0 has no unique label" in text

    def test_json_lines(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "local-label x0=1 delta=0.5\nlocal-label x0=1 delta=1.5\n")
        code, text = run(RunConfig(mirror_file, props, report_format="json"))
        assert code == 1
        robust, violated = [json.loads(line) for line in text.splitlines()]
        assert robust['line'] == 1
        assert robust['status'] == "robust"
        assert robust['property']['region'] == {'lower': [0.5], 'upper': [1.5]}
        assert robust['property']['x0'] == [1.0]
        assert violated['status'] == "violated"
        assert violated['counterexample']['label'] == 1
        assert violated['counterexample']['inputs'][0][0] <= 0
        assert len(violated['counterexample']['lp_outputs'][0]) == 2

    def test_json_max_delta(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "max-delta x0=1 kind=label prec=0.001 hi=2\n")
        code, text = run(RunConfig(mirror_file, props, mode="max-delta", report_format="json"))
        assert code == 0
        record = json.loads(text)
        assert record['max_delta']['delta'] == pytest.approx(1.0, abs=1e-6)
        assert record['max_delta']['robust_found'] is True

    def test_csv_outside_report_table(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "local-label x0=1 delta=0.5\n")
        code, _ = run(RunConfig(mirror_file, props, report_format="csv"))
        assert code == 3

    @pytest.mark.parametrize("kwargs", [{'workers': 0}, {'timeout': 0.0}, {'margin': 0.0}])
    def test_config_rejects(self, kwargs):
        with pytest.raises(InputError):
            RunConfig("a.net", "b.txt", **kwargs)

    def test_global_with_parts(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "global lo=-1 hi=1 delta=0.1 eps=0.5 parts=4\n")
        code, text = run(RunConfig(mirror_file, props, workers=2))
        assert code == 0
        assert text.startswith("ROBUST delta=0.1 eps=0.5")

    def test_max_delta_mode(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "max-delta x0=1 kind=label prec=0.001 hi=2\n")
        code, text = run(RunConfig(mirror_file, props, mode="max-delta"))
        assert code == 0
        assert text.startswith("MAXDELTA delta=1 robust_found=yes timeout_trials=0")

    def test_max_delta_mode_rejects_plain_lines(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "local-label x0=1 delta=0.5\n")
        code, _ = run(RunConfig(mirror_file, props, mode="max-delta"))
        assert code == 3

    def test_report_table(self, tmp_path, mirror_file):
        props = spec_file(tmp_path,
                          "local-conf x0=1 delta=0.1 eps=0.5\n"
                          "local-conf x0=1 delta=0.1 eps=0.05\n"
                          "local-conf x0=-1 delta=0.1 eps=0.5\n")
        report = tmp_path / "table.csv"
        config = RunConfig(mirror_file, props, mode="report-table", report_format="csv",
                           seq_baseline=True, report_path=str(report))
        code, text = run(config)
        assert code == 1
        assert report.read_text() == text
        rows = parse_report_csv(text)
        assert [r.point for r in rows] == ["1", "2"]
        assert rows[0].cells[0.5].robust == "yes"
        assert rows[0].cells[0.05].robust == "no"
        assert rows[0].cells[0.5].seq_time is not None

    def test_report_table_takes_conf_lines_only(self, tmp_path, mirror_file):
        props = spec_file(tmp_path, "local-label x0=1 delta=0.5\n")
        code, _ = run(RunConfig(mirror_file, props, mode="report-table"))
        assert code == 3


class TestMain:
    def test_exit_code_and_stdout(self, tmp_path, mirror_file, capsys):
        props = spec_file(tmp_path, "local-conf x0=1 delta=0.1 eps=0.5\n")
        code = main(["--net", mirror_file, "--spec", props, "--workers", "2"])
        assert code == 0
        assert capsys.readouterr().out.startswith("ROBUST delta=0.1 eps=0.5")

    def test_report_file(self, tmp_path, mirror_file, capsys):
        props = spec_file(tmp_path, "local-label x0=1 delta=1.5\n")
        out = tmp_path / "out.txt"
        assert main(["--net", mirror_file, "--spec", props, "--report", str(out)]) == 1
        assert capsys.readouterr().out == ""
        assert out.read_text().startswith("VIOLATED")

    def test_bad_workers(self, tmp_path, mirror_file):
        assert main(["--net", mirror_file, "--spec", "x.txt", "--workers", "0"]) == 3
