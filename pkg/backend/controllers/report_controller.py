# backend/controllers/report_controller.py - Input Documents and Report Emission
import io
import csv
import json
import math
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, TextIO, Union

from marshmallow import ValidationError as SchemaError

from utils.data_structures import FailureRecord, NormTable, RunReport
from utils.extended_real import to_jsonable
from utils.measure_core import SimpleFunction, StepProfile
from utils.schemas import input_document_schema, run_report_schema, suite_config_schema
from utils.sequence_lorentz import NormSequence
from utils.validators import ParseError, ValidationError, require_choice

logger = logging.getLogger(__name__)

REPORT_FORMATS = ('text', 'json', 'csv')
PROFILE_FORMATS = ('text', 'json')

Reportable = Union[RunReport, Sequence[RunReport], NormTable, FailureRecord]


def _read_source(source: Union[str, Path, TextIO]) -> str:
    if hasattr(source, 'read'):
        return source.read()
    try:
        with open(source, 'r', encoding='utf-8') as handle:
            return handle.read()
    except OSError as e:
        raise ParseError(f"Cannot read input file: {e.strerror}", 'input')


def _first_error(messages: Any, path: List[str] = None):
    """Walk marshmallow's nested error dict down to the first leaf"""
    path = path or []
    if isinstance(messages, dict):
        key = sorted(messages, key=str)[0]
        if key == '_schema':
            return _first_error(messages[key], path)
        return _first_error(messages[key], path + [str(key)])
    if isinstance(messages, list) and messages:
        return '.'.join(path) or None, str(messages[0])
    return '.'.join(path) or None, str(messages)


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed JSON: {e.msg}", line=e.lineno, column=e.colno)


def parse_input(source: Union[str, Path, TextIO]) -> Union[SimpleFunction, NormSequence]:
    """Read a step or sequence document from a path or an open stream"""
    data = _load_json(_read_source(source))

    try:
        document = input_document_schema.load(data)
    except SchemaError as e:
        field, message = _first_error(e.messages)
        logger.debug(f"Rejected input document: {e.messages}")
        raise ParseError(message, field)
    except ParseError:
        raise
    except ValidationError as e:
        raise ParseError(e.message, e.field)

    logger.debug(f"Parsed {type(document).__name__} document")
    return document


def load_suite_config(source: Union[str, Path, TextIO]) -> Dict[str, Any]:
    """Suite settings from a JSON file, as keyword overrides for SuiteConfig"""
    data = _load_json(_read_source(source))
    try:
        return suite_config_schema.load(data)
    except SchemaError as e:
        field, message = _first_error(e.messages)
        raise ParseError(message, field)


def load_run_report(text: str) -> Union[RunReport, List[RunReport]]:
    """Parse JSON written by emit_report(..., 'json') back into RunReports"""
    data = _load_json(text)
    try:
        if isinstance(data, list):
            return [run_report_schema.load(item) for item in data]
        return run_report_schema.load(data)
    except SchemaError as e:
        field, message = _first_error(e.messages)
        raise ParseError(message, field)


def _number(value: float) -> str:
    return 'inf' if math.isinf(value) else repr(float(value))


def _dump_json(data: Any) -> bytes:
    return (json.dumps(data, indent=2, ensure_ascii=False) + '\n').encode('utf-8')


def _run_report_text(report: RunReport) -> List[str]:
    if report.passed:
        return [
            f"OK {report.suite_name}: {report.trials_run} trials passed "
            f"(seed {report.seed}, max tightness {_number(report.max_tightness)})"
        ]

    lines = [
        f"FAIL {report.suite_name}: {len(report.failures)} of {report.trials_run} trials failed "
        f"(seed {report.seed}, max tightness {_number(report.max_tightness)})"
    ]
    for record in report.failures:
        lines.append(_failure_line(record))
    return lines


def _failure_line(record: FailureRecord) -> str:
    check = record.report
    return (
        f"  offset {record.offset}: {check.witness.get('bound', 'check')} "
        f"lhs={check.lhs} rhs={check.rhs} constant={_number(check.constant)}"
    )


def _csv_bytes(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().encode('utf-8')


def _emit_run_reports(reports: Sequence[RunReport], fmt: str, single: bool, include_timing: bool) -> bytes:
    if fmt == 'json':
        payload = [report.to_dict(include_timing) for report in reports]
        return _dump_json(payload[0] if single else payload)

    if fmt == 'csv':
        return _csv_bytes(
            ('suite_name', 'seed', 'trials_run', 'failures', 'max_tightness', 'passed'),
            [(r.suite_name, r.seed, r.trials_run, len(r.failures), _number(r.max_tightness),
              'true' if r.passed else 'false') for r in reports]
        )

    lines = []
    for report in reports:
        lines.extend(_run_report_text(report))
    return ('\n'.join(lines) + '\n').encode('utf-8')


def _emit_norm_table(table: NormTable, fmt: str) -> bytes:
    if fmt == 'json':
        return _dump_json(table.to_dict())

    if fmt == 'csv':
        return _csv_bytes(('p', 'q', 'norm'), [(_number(r.p), _number(r.q), _number(r.norm)) for r in table.rows])

    lines = [f"p={_number(r.p)} q={_number(r.q)} norm={_number(r.norm)}" for r in table.rows]
    return ('\n'.join(lines) + '\n').encode('utf-8')


def _emit_failure(record: FailureRecord, fmt: str) -> bytes:
    if fmt == 'json':
        return _dump_json(record.to_dict())
    if fmt == 'csv':
        check = record.report
        return _csv_bytes(
            ('offset', 'passed', 'lhs', 'rhs', 'constant'),
            [(record.offset, 'true' if check.passed else 'false', str(check.lhs), str(check.rhs),
              _number(check.constant))]
        )
    status = 'passed' if record.report.passed else 'failed'
    return (f"Trial {status}\n{_failure_line(record)}\n"
            f"  input {json.dumps(to_jsonable(record.input), sort_keys=True)}\n").encode('utf-8')


def emit_report(report: Reportable, fmt: str = 'text', include_timing: bool = True) -> bytes:
    """Serialize a run report, a list of them, a norm table or a replayed trial"""
    require_choice(fmt, REPORT_FORMATS, 'format')

    if isinstance(report, RunReport):
        return _emit_run_reports([report], fmt, True, include_timing)
    if isinstance(report, NormTable):
        return _emit_norm_table(report, fmt)
    if isinstance(report, FailureRecord):
        return _emit_failure(report, fmt)
    if isinstance(report, (list, tuple)) and all(isinstance(r, RunReport) for r in report):
        return _emit_run_reports(list(report), fmt, False, include_timing)

    raise TypeError(f"Cannot emit {type(report).__name__}")


def emit_profile(shape: Union[StepProfile, NormSequence], fmt: str = 'text') -> bytes:
    """f* segments, or the non-increasing rearrangement of a sequence"""
    require_choice(fmt, PROFILE_FORMATS, 'format')

    if isinstance(shape, NormSequence):
        if fmt == 'json':
            return _dump_json({'kind': 'sequence', 'terms': list(shape.terms)})
        return (' '.join(_number(t) for t in shape.terms) + '\n').encode('utf-8')

    data: Dict[str, Any] = shape.to_dict()
    if fmt == 'json':
        return _dump_json(data)

    lines = [
        f"[{_number(row['left'])}, {_number(row['right'])}) {_number(row['value'])}"
        for row in data['segments']
    ]
    lines.append(f"[{_number(shape.support_end)}, inf) 0.0")
    return ('\n'.join(lines) + '\n').encode('utf-8')
