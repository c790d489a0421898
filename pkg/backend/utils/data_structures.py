# backend/utils/data_structures.py
"""
Suite configuration and run report records for the verification harness
"""

from dataclasses import dataclass, asdict, field, replace
from typing import Any, Dict, List, Optional, Tuple

from utils.embeddings import CheckReport, Tolerance
from utils.extended_real import format_extended, to_jsonable
from utils.validators import (
    ValidationError, validate_int_range, validate_positive_int, validate_range_pair, validate_seed
)


@dataclass(frozen=True)
class SuiteConfig:
    """Everything a suite run depends on besides the code itself"""
    suite_name: str
    trials: int
    seed: int

    # Instance generation
    max_atoms: int = 12
    value_range: Tuple[float, float] = (1e-3, 1e3)
    mass_range: Tuple[float, float] = (1e-3, 1e3)
    grid_size_range: Tuple[int, int] = (2, 6)
    index_range: Tuple[float, float] = (0.1, 10.0)  # function suites
    sequence_index_range: Tuple[float, float] = (1.0, 10.0)  # sequence suites
    infinite_index_probability: float = 0.2

    # Pass criteria
    rel_tolerance: float = 1e-9
    abs_tolerance: float = 1e-12
    identity_tolerance: float = 1e-12
    oracle_tolerance: float = 1e-4
    oracle_subdivisions: int = 100000

    def __post_init__(self):
        if not isinstance(self.suite_name, str) or not self.suite_name:
            raise ValidationError("Suite name is required", 'suite_name')

        object.__setattr__(self, 'trials', validate_positive_int(self.trials, 'trials'))
        object.__setattr__(self, 'seed', validate_seed(self.seed))
        object.__setattr__(self, 'max_atoms', validate_positive_int(self.max_atoms, 'max_atoms'))
        object.__setattr__(self, 'oracle_subdivisions',
                           validate_positive_int(self.oracle_subdivisions, 'oracle_subdivisions'))

        object.__setattr__(self, 'value_range', validate_range_pair(self.value_range, 'value_range'))
        object.__setattr__(self, 'mass_range', validate_range_pair(self.mass_range, 'mass_range'))
        object.__setattr__(self, 'index_range', validate_range_pair(self.index_range, 'index_range'))
        object.__setattr__(self, 'sequence_index_range',
                           validate_range_pair(self.sequence_index_range, 'sequence_index_range', minimum=0.0))
        if self.sequence_index_range[0] < 1:
            raise ValidationError("Sequence indices start at 1", 'sequence_index_range')
        object.__setattr__(self, 'grid_size_range',
                           validate_int_range(self.grid_size_range, 'grid_size_range', minimum=2))

        if not 0.0 <= self.infinite_index_probability <= 1.0:
            raise ValidationError("infinite_index_probability must lie in [0, 1]", 'infinite_index_probability')
        for name in ('identity_tolerance', 'oracle_tolerance'):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive", name)

    @classmethod
    def from_config(cls, config, suite_name: str, trials: Optional[int] = None,
                    seed: Optional[int] = None, **overrides) -> 'SuiteConfig':
        """Suite defaults taken from a Config class"""
        return cls(
            suite_name=suite_name,
            trials=config.DEFAULT_TRIALS if trials is None else trials,
            seed=config.DEFAULT_SEED if seed is None else seed,
            max_atoms=overrides.pop('max_atoms', config.MAX_ATOMS),
            rel_tolerance=overrides.pop('rel_tolerance', config.REL_TOLERANCE),
            abs_tolerance=overrides.pop('abs_tolerance', config.ABS_TOLERANCE),
            identity_tolerance=overrides.pop('identity_tolerance', config.IDENTITY_TOLERANCE),
            oracle_tolerance=overrides.pop('oracle_tolerance', config.ORACLE_TOLERANCE),
            oracle_subdivisions=overrides.pop('oracle_subdivisions', config.ORACLE_SUBDIVISIONS),
            **overrides
        )

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(relative=self.rel_tolerance, absolute=self.abs_tolerance)

    def for_suite(self, suite_name: str, trials: Optional[int] = None) -> 'SuiteConfig':
        return replace(self, suite_name=suite_name, trials=self.trials if trials is None else trials)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ('value_range', 'mass_range', 'grid_size_range', 'index_range', 'sequence_index_range'):
            data[key] = list(data[key])
        return data


@dataclass
class FailureRecord:
    """A failing trial: its seed offset, the generated input and the check outcome"""
    offset: int
    input: Dict[str, Any]
    report: CheckReport

    def to_dict(self) -> Dict[str, Any]:
        return {'offset': self.offset, 'input': to_jsonable(self.input), 'report': self.report.to_dict()}


@dataclass
class RunReport:
    """Aggregate outcome of one suite run"""
    suite_name: str
    seed: int
    trials_run: int
    failures: List[FailureRecord] = field(default_factory=list)
    max_tightness: float = 0.0
    wall_time: float = 0.0

    def __post_init__(self):
        self.failures = sorted(self.failures, key=lambda record: record.offset)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            'suite_name': self.suite_name,
            'seed': self.seed,
            'trials_run': self.trials_run,
            'passed': self.passed,
            'max_tightness': format_extended(self.max_tightness),
            'failures': [record.to_dict() for record in self.failures]
        }
        if include_timing:
            data['wall_time'] = self.wall_time
        return data


@dataclass(frozen=True)
class NormRow:
    p: float
    q: float
    norm: float

    def to_dict(self) -> Dict[str, Any]:
        return {'p': format_extended(self.p), 'q': format_extended(self.q), 'norm': format_extended(self.norm)}


@dataclass
class NormTable:
    """Norms over a grid of (p, q) pairs, in the order they were requested"""
    rows: List[NormRow] = field(default_factory=list)
    kind: str = 'step'

    @classmethod
    def from_rows(cls, rows: List[Dict[str, float]], kind: str = 'step') -> 'NormTable':
        return cls([NormRow(row['p'], row['q'], row['norm']) for row in rows], kind)

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'rows': [row.to_dict() for row in self.rows]}
