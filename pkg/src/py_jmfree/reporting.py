"""Versioned report documents written by the command line front end."""

from __future__ import annotations

import csv
import enum
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from .characters import YoungDiagram
from .free_prob import RationalSequence
from .nc_partitions import SetPartition
from .options import OutputOptions, RunConfig
from .symmetric_core import Permutation
from .utils import format_float, format_rational

SCHEMA = "py_jmfree.report/1"
FORMATS = ("json", "csv")


def jsonable(value: Any) -> Any:
    """Exact rationals become 'p/q' strings and floats are rounded to the report precision."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, YoungDiagram):
        return list(value.rows)
    if isinstance(value, SetPartition):
        return value.to_lists()
    if isinstance(value, Permutation):
        return str(value)
    if isinstance(value, RationalSequence):
        return [format_rational(v) for v in value]
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    raise TypeError(f"Cannot serialize {type(value).__name__} in a report")


@dataclass(slots=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    config: RunConfig
    records: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add_record(self, **fields: Any) -> None:
        self.records.append(fields)

    def add_check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failed_checks(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_document(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "config": jsonable(self.config.as_dict()),
            "records": [jsonable(record) for record in self.records],
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        document = self.to_document()
        buffer = io.StringIO()
        buffer.write(f"# schema={SCHEMA}\n")
        buffer.write(f"# config={json.dumps(document['config'], sort_keys=True, ensure_ascii=False)}\n")
        columns = sorted({key for record in document["records"] for key in record})
        writer = csv.writer(buffer, lineterminator="\n")
        if columns:
            writer.writerow(columns)
            for record in document["records"]:
                writer.writerow([_csv_cell(record.get(column)) for column in columns])
        for check in document["checks"]:
            buffer.write(f"# check {check['name']}={'pass' if check['passed'] else 'fail'}\n")
        buffer.write(f"# passed={'true' if document['passed'] else 'false'}\n")
        return buffer.getvalue()

    def render(self, format: str = "json") -> str:
        if format == "json":
            return self.to_json()
        if format == "csv":
            return self.to_csv()
        raise ValueError(f"Unknown report format '{format}'")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_report(report: Report, output: OutputOptions, stream: Optional[TextIO] = None) -> None:
    text = report.render(output.format)
    if output.path:
        Path(output.path).write_text(text, encoding="utf-8")
    else:
        (stream if stream is not None else sys.stdout).write(text)


__all__ = ["Check", "FORMATS", "Report", "SCHEMA", "jsonable", "write_report"]
