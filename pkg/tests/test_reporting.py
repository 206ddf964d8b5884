import io
import json
from fractions import Fraction

import pytest

from py_jmfree.characters import YoungDiagram
from py_jmfree.free_prob import MomentSequence
from py_jmfree.jm_model import Model
from py_jmfree.nc_partitions import SetPartition
from py_jmfree.options import OutputOptions, RunConfig
from py_jmfree.reporting import SCHEMA, Report, jsonable, write_report
from py_jmfree.symmetric_core import Permutation


def sample_report():
    config = RunConfig(command="moments", parameters={"lambda": [2, 1], "L": 2}, seed=7)
    report = Report("moments", config)
    report.add_record(j=1, exact_value=Fraction(0), normalized_value=0.0, **{"lambda": YoungDiagram((2, 1))})
    report.add_record(j=2, exact_value=Fraction(3), normalized_value=1.0, **{"lambda": YoungDiagram((2, 1))})
    report.add_check("distribution-identity", True, "state(X^j) against the transition measure")
    return report


def test_jsonable_values():
    assert jsonable(Fraction(1, 2)) == "1/2"
    assert jsonable(Fraction(4, 2)) == "2"
    assert jsonable(1 / 3) == 0.333333333333
    assert jsonable(True) is True
    assert jsonable(Model.LEFT) == "left"
    assert jsonable(YoungDiagram((3, 1))) == [3, 1]
    assert jsonable(SetPartition.from_blocks([[2, 4], [1], [3]])) == [[1], [2, 4], [3]]
    assert jsonable(Permutation((2, 1, 3))) == "(1 2)"
    assert jsonable(MomentSequence((0, Fraction(8, 5)))) == ["0", "8/5"]
    assert jsonable({1: (Fraction(1, 3), None)}) == {"1": ["1/3", None]}
    with pytest.raises(TypeError):
        jsonable(object())


def test_report_json_document():
    report = sample_report()
    text = report.to_json()
    assert text.endswith("\n")
    document = json.loads(text)
    assert document["schema"] == SCHEMA
    assert document["command"] == "moments"
    assert document["config"]["seed"] == 7
    assert document["config"]["output"] == {"format": "json", "path": None}
    assert document["records"][1]["exact_value"] == "3"
    assert document["records"][1]["lambda"] == [2, 1]
    assert document["passed"] is True
    assert list(document) == sorted(document)


def test_report_passes_only_when_every_check_passes():
    report = sample_report()
    report.add_check("gap-shrinks", False, "gap grew")
    assert not report.passed
    assert [check.name for check in report.failed_checks()] == ["gap-shrinks"]
    assert json.loads(report.to_json())["passed"] is False


def test_report_csv():
    lines = sample_report().to_csv().splitlines()
    assert lines[0] == f"# schema={SCHEMA}"
    assert lines[1].startswith("# config=")
    assert lines[2] == "exact_value,j,lambda,normalized_value"
    assert lines[3] == '0,1,"[2,1]",0.0'
    assert lines[-2] == "# check distribution-identity=pass"
    assert lines[-1] == "# passed=true"


def test_render_rejects_unknown_formats():
    with pytest.raises(ValueError):
        sample_report().render("xml")


def test_write_report_to_stream_and_file(tmp_path):
    report = sample_report()
    stream = io.StringIO()
    write_report(report, OutputOptions(format="csv"), stream)
    assert stream.getvalue() == report.to_csv()
    target = tmp_path / "report.json"
    write_report(report, OutputOptions(format="json", path=str(target)))
    assert json.loads(target.read_text(encoding="utf-8"))["schema"] == SCHEMA
