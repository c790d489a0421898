"""
Tests for configuration, suite settings and structured logging.
"""

import json
import logging

import pytest

from utils import check_dependencies
from utils.config import CONFIGS, Config, TestingConfig, get_config
from utils.data_structures import RunReport, SuiteConfig
from utils.embeddings import Bound, build_report
from utils.logger import LorentzFormatter, log_check_failure, log_suite_run, log_with_context, setup_logging
from utils.validators import ValidationError


def test_get_config() -> None:
    """Names resolve to classes; LORENTZ_ENV is the default."""
    assert get_config('testing') is TestingConfig
    assert get_config() is TestingConfig
    assert set(CONFIGS) == {'default', 'development', 'testing'}
    with pytest.raises(ValueError):
        get_config('staging')


def test_validate_config() -> None:
    """The shipped defaults are valid."""
    assert Config.validate_config()
    assert TestingConfig.validate_config()


def test_suite_config_from_config() -> None:
    """Defaults come from the config class, overrides win."""
    config = SuiteConfig.from_config(TestingConfig, 'eq2-identity')
    assert config.trials == 50
    assert config.oracle_subdivisions == 20000
    assert config.tolerance.relative == 1e-9

    config = SuiteConfig.from_config(TestingConfig, 'eq2-identity', trials=7, seed=3, max_atoms=2)
    assert (config.trials, config.seed, config.max_atoms) == (7, 3, 2)


@pytest.mark.parametrize("overrides", [
    {'trials': 0},
    {'seed': -1},
    {'value_range': (0.0, 1.0)},
    {'mass_range': (2.0, 1.0)},
    {'grid_size_range': (1, 3)},
    {'sequence_index_range': (0.5, 2.0)},
    {'infinite_index_probability': 1.5},
    {'identity_tolerance': 0.0},
])
def test_suite_config_validation(overrides) -> None:
    """Out-of-range settings are refused at construction."""
    with pytest.raises(ValidationError):
        SuiteConfig(suite_name='eq2-identity', trials=overrides.pop('trials', 1), seed=overrides.pop('seed', 0),
                    **overrides)


def test_suite_config_helpers() -> None:
    """for_suite swaps the name; to_dict lists the ranges."""
    config = SuiteConfig(suite_name='eq2-identity', trials=4, seed=1)
    other = config.for_suite('thm-K', 9)
    assert (other.suite_name, other.trials, other.seed) == ('thm-K', 9, 1)
    assert config.for_suite('thm-K').trials == 4
    assert config.to_dict()['value_range'] == [1e-3, 1e3]


def test_formatter_writes_json() -> None:
    """One JSON object per record, extra data included."""
    record = logging.LogRecord('lorentz.test', logging.INFO, __file__, 10, 'hello %s', ('world',), None)
    record.extra_data = {'suite': 'thm-K'}
    entry = json.loads(LorentzFormatter().format(record))
    assert entry['message'] == 'hello world'
    assert entry['level'] == 'INFO'
    assert entry['extra'] == {'suite': 'thm-K'}
    assert entry['timestamp'].endswith('Z')


def test_setup_logging_is_idempotent() -> None:
    """Repeated setup replaces its own handlers."""
    setup_logging(TestingConfig)
    root = setup_logging(TestingConfig)
    ours = [h for h in root.handlers if getattr(h, '_lorentz_handler', False)]
    assert len(ours) == 1
    assert root.level == logging.WARNING


def test_log_with_context() -> None:
    """Results pass through, errors are re-raised."""
    @log_with_context({'component': 'test'})
    def double(x):
        return 2 * x

    @log_with_context()
    def broken():
        raise RuntimeError('boom')

    assert double(4) == 8
    with pytest.raises(RuntimeError):
        broken()


def test_suite_logging(caplog) -> None:
    """Passing runs log at INFO, failures at WARNING."""
    caplog.set_level(logging.INFO, logger='lorentz.suite')
    log_suite_run(RunReport('weak-type', 1, 10, [], 0.5, 0.01))
    report = build_report([Bound('broken', 2.0, 1.0, 1.0)], {})
    log_check_failure('weak-type', 3, report)

    records = [r for r in caplog.records if r.name == 'lorentz.suite']
    assert records[0].levelno == logging.INFO
    assert records[0].extra_data['trials_run'] == 10
    assert records[1].levelno == logging.WARNING
    assert records[1].extra_data['offset'] == 3


def test_check_dependencies() -> None:
    """Every runtime package imports."""
    assert check_dependencies() == {'status': 'all_dependencies_available'}
