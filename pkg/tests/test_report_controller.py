"""
Tests for input parsing and report emission.
"""

import io
import json
import math

import pytest

from controllers.report_controller import (
    emit_profile, emit_report, load_run_report, load_suite_config, parse_input
)
from controllers.suite_controller import run_suite
from utils.data_structures import NormRow, NormTable, RunReport, SuiteConfig
from utils.lorentz_norms import norm_table
from utils.measure_core import SimpleFunction, rearrangement
from utils.sequence_lorentz import NormSequence
from utils.validators import ParseError, UsageError


def _failing_report() -> RunReport:
    config = SuiteConfig(suite_name='prop3.2', trials=2, seed=5, rel_tolerance=-1.0, abs_tolerance=-1.0)
    return run_suite(config)


def test_parse_step_document() -> None:
    """Atoms become a SimpleFunction."""
    f = parse_input(io.StringIO('{"kind": "step", "atoms": [{"mass": 1, "value": 2}, {"mass": 1, "value": 1}]}'))
    assert isinstance(f, SimpleFunction)
    assert len(f.atoms) == 2
    assert f.total_mass == 2.0


def test_parse_sequence_document() -> None:
    """Terms become a NormSequence."""
    s = parse_input(io.StringIO('{"kind": "sequence", "terms": [1, 3, 2]}'))
    assert s == NormSequence((1.0, 3.0, 2.0))


def test_parse_from_path(tmp_path) -> None:
    """Paths are read as UTF-8 files."""
    path = tmp_path / 'f.json'
    path.write_text('{"kind": "sequence", "terms": [0.5]}', encoding='utf-8')
    assert parse_input(str(path)).terms == (0.5,)


def test_missing_file() -> None:
    """Unreadable input is a parse error."""
    with pytest.raises(ParseError):
        parse_input('/nonexistent/input.json')


@pytest.mark.parametrize("text, field", [
    ('{"kind": "step", "atoms": [{"mass": -1, "value": 2}]}', 'atoms.0.mass'),
    ('{"kind": "cube", "atoms": []}', 'kind'),
    ('{"kind": "step"}', 'atoms'),
    ('{"kind": "sequence", "terms": [1, -2]}', 'terms.1'),
    ('{"kind": "step", "atoms": [{"mass": 1, "value": 1, "color": "red"}]}', 'atoms.0.color'),
])
def test_schema_errors_name_the_field(text, field) -> None:
    """Schema violations point at the offending field."""
    with pytest.raises(ParseError) as excinfo:
        parse_input(io.StringIO(text))
    assert excinfo.value.field == field


def test_malformed_json_has_position() -> None:
    """Syntax errors carry line and column."""
    with pytest.raises(ParseError) as excinfo:
        parse_input(io.StringIO('{\n  "kind": '))
    assert excinfo.value.line == 2
    assert excinfo.value.column is not None
    assert 'line 2' in str(excinfo.value)


def test_load_suite_config() -> None:
    """Lists become tuples; unknown keys are rejected."""
    overrides = load_suite_config(io.StringIO('{"trials": 5, "value_range": [1, 2]}'))
    assert overrides == {'trials': 5, 'value_range': (1.0, 2.0)}
    with pytest.raises(ParseError):
        load_suite_config(io.StringIO('{"trails": 5}'))


def test_emit_passing_report_text() -> None:
    """A passing run is one OK line."""
    report = RunReport('eq2-identity', 42, 1000, [], 0.25, 1.5)
    text = emit_report(report, 'text').decode('utf-8')
    assert text == "OK eq2-identity: 1000 trials passed (seed 42, max tightness 0.25)\n"


def test_emit_failing_report_text() -> None:
    """A failing run lists every failing offset."""
    text = emit_report(_failing_report(), 'text').decode('utf-8')
    lines = text.splitlines()
    assert lines[0].startswith('FAIL prop3.2: 2 of 2 trials failed')
    assert lines[1].startswith('  offset 0: two_point')
    assert lines[2].startswith('  offset 1: two_point')


def test_emit_report_json_round_trip() -> None:
    """JSON written by emit_report loads back into an equal report."""
    report = _failing_report()
    payload = emit_report(report, 'json')
    data = json.loads(payload)
    assert data['passed'] is False
    assert 'wall_time' in data

    loaded = load_run_report(payload.decode('utf-8'))
    assert loaded.to_dict() == report.to_dict()


def test_emit_report_list_round_trip() -> None:
    """--all output is a JSON list."""
    reports = [RunReport('weak-type', 1, 10, [], 0.5, 0.1), _failing_report()]
    loaded = load_run_report(emit_report(reports, 'json').decode('utf-8'))
    assert [r.suite_name for r in loaded] == ['weak-type', 'prop3.2']


def test_emit_report_without_timing() -> None:
    """Timing can be left out for byte-stable output."""
    data = json.loads(emit_report(RunReport('degeneracy', 0, 3), 'json', include_timing=False))
    assert 'wall_time' not in data
    assert data == {'suite_name': 'degeneracy', 'seed': 0, 'trials_run': 3, 'passed': True,
                    'max_tightness': 0.0, 'failures': []}


def test_load_run_report_rejects_inconsistent_outcome() -> None:
    """passed must agree with the failure list."""
    text = json.dumps({'suite_name': 'x', 'seed': 0, 'trials_run': 1, 'passed': False,
                       'max_tightness': 0.0, 'failures': []})
    with pytest.raises(ParseError):
        load_run_report(text)


def test_emit_run_reports_csv() -> None:
    """One CSV row per suite."""
    reports = [RunReport('weak-type', 1, 10, [], 0.5, 0.1), RunReport('degeneracy', 1, 10, [], math.inf, 0.1)]
    lines = emit_report(reports, 'csv').decode('utf-8').splitlines()
    assert lines == [
        'suite_name,seed,trials_run,failures,max_tightness,passed',
        'weak-type,1,10,0,0.5,true',
        'degeneracy,1,10,0,inf,true',
    ]


def test_emit_norm_table_csv(indicator) -> None:
    """The 2 x 2 grid of the indicator has four rows under a header."""
    table = NormTable.from_rows(norm_table(indicator, [1.0, 2.0], [1.0, 2.0]))
    lines = emit_report(table, 'csv').decode('utf-8').splitlines()
    assert lines[0] == 'p,q,norm'
    assert len(lines) == 5
    assert lines[1] == '1.0,1.0,1.0'
    assert lines[3] == '2.0,1.0,2.0'


def test_emit_norm_table_text_and_json() -> None:
    """Infinity is spelled inf in both formats."""
    table = NormTable([NormRow(math.inf, 2.0, math.inf)])
    assert emit_report(table, 'text') == b"p=inf q=2.0 norm=inf\n"
    assert json.loads(emit_report(table, 'json')) == {'kind': 'step', 'rows': [{'p': 'inf', 'q': 2.0, 'norm': 'inf'}]}


def test_emit_report_rejects_unknown_format() -> None:
    """Only text, json and csv."""
    with pytest.raises(UsageError):
        emit_report(RunReport('x', 0, 1), 'xml')


def test_emit_profile_text(two_atom) -> None:
    """Segments as half-open intervals, closed by the zero tail."""
    text = emit_profile(rearrangement(two_atom), 'text').decode('utf-8')
    assert text.splitlines() == ['[0.0, 1.0) 2.0', '[1.0, 2.0) 1.0', '[2.0, inf) 0.0']


def test_emit_profile_json(two_atom) -> None:
    """JSON carries value, left and right per segment."""
    data = json.loads(emit_profile(rearrangement(two_atom), 'json'))
    assert data['segments'][1] == {'value': 1.0, 'left': 1.0, 'right': 2.0}


def test_emit_profile_sequence() -> None:
    """A sequence prints its terms."""
    assert emit_profile(NormSequence((3.0, 2.0)), 'text') == b"3.0 2.0\n"
    with pytest.raises(UsageError):
        emit_profile(NormSequence((3.0,)), 'csv')
