# backend/utils/schemas.py - Document Schemas
"""
marshmallow schemas for everything that crosses the file boundary: input
documents, suite configuration files and JSON run reports.
"""

import logging
from typing import Any

from marshmallow import (
    EXCLUDE, RAISE, Schema, ValidationError as SchemaError, fields, post_load, validate, validates_schema
)

from utils.data_structures import FailureRecord, RunReport
from utils.embeddings import CheckReport
from utils.extended_real import format_extended, parse_extended
from utils.lorentz_norms import NormValue
from utils.measure_core import make_simple_function
from utils.sequence_lorentz import NormSequence
from utils.validators import ValidationError

logger = logging.getLogger(__name__)

DOCUMENT_KINDS = ('step', 'sequence')


class ExtRealField(fields.Field):
    """A number in [0, inf], with infinity spelled 'inf'"""

    def _serialize(self, value: Any, attr: str, obj: Any, **kwargs):
        if value is None:
            return None
        return format_extended(float(value))

    def _deserialize(self, value: Any, attr: str, data: Any, **kwargs) -> float:
        try:
            return parse_extended(value, attr or 'value')
        except ValidationError as e:
            raise SchemaError(e.message) from e


class SignedFloatField(fields.Field):
    """Any float, including 'inf', '-inf' and 'nan' spellings"""

    def _serialize(self, value: Any, attr: str, obj: Any, **kwargs):
        return value

    def _deserialize(self, value: Any, attr: str, data: Any, **kwargs) -> float:
        if isinstance(value, bool):
            raise SchemaError("Not a valid number.")
        try:
            return float(value)
        except (TypeError, ValueError) as e:
            raise SchemaError("Not a valid number.") from e


class AtomSchema(Schema):
    class Meta:
        unknown = RAISE

    mass = fields.Float(required=True, validate=validate.Range(min=0))
    value = fields.Float(required=True, validate=validate.Range(min=0))


class InputDocumentSchema(Schema):
    """{"kind": "step", "atoms": [...]} or {"kind": "sequence", "terms": [...]}"""

    class Meta:
        unknown = RAISE

    kind = fields.String(required=True, validate=validate.OneOf(DOCUMENT_KINDS))
    atoms = fields.List(fields.Nested(AtomSchema))
    terms = fields.List(fields.Float(validate=validate.Range(min=0)))

    @validates_schema
    def validate_body(self, data, **kwargs):
        kind = data.get('kind')
        if kind == 'step' and 'atoms' not in data:
            raise SchemaError("Step documents need an atoms list", 'atoms')
        if kind == 'sequence' and 'terms' not in data:
            raise SchemaError("Sequence documents need a terms list", 'terms')
        if 'atoms' in data and 'terms' in data:
            raise SchemaError("A document holds either atoms or terms, not both", 'kind')

    @post_load
    def make_object(self, data, **kwargs):
        if data['kind'] == 'step':
            return make_simple_function((atom['mass'], atom['value']) for atom in data['atoms'])
        return NormSequence(tuple(data['terms']))


class SuiteConfigSchema(Schema):
    """Suite configuration file; every key is optional and mirrors SuiteConfig"""

    class Meta:
        unknown = RAISE

    suite_name = fields.String()
    trials = fields.Integer(strict=True, validate=validate.Range(min=1))
    seed = fields.Integer(strict=True, validate=validate.Range(min=0, max=2 ** 64 - 1))
    max_atoms = fields.Integer(strict=True, validate=validate.Range(min=1))
    value_range = fields.List(fields.Float(), validate=validate.Length(equal=2))
    mass_range = fields.List(fields.Float(), validate=validate.Length(equal=2))
    grid_size_range = fields.List(fields.Integer(strict=True), validate=validate.Length(equal=2))
    index_range = fields.List(fields.Float(), validate=validate.Length(equal=2))
    sequence_index_range = fields.List(fields.Float(), validate=validate.Length(equal=2))
    infinite_index_probability = fields.Float(validate=validate.Range(min=0, max=1))
    rel_tolerance = fields.Float()
    abs_tolerance = fields.Float()
    identity_tolerance = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    oracle_tolerance = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    oracle_subdivisions = fields.Integer(strict=True, validate=validate.Range(min=1))

    @post_load
    def make_overrides(self, data, **kwargs):
        for key in ('value_range', 'mass_range', 'grid_size_range', 'index_range', 'sequence_index_range'):
            if key in data:
                data[key] = tuple(data[key])
        return data


class CheckReportSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    lhs = ExtRealField(required=True)
    rhs = ExtRealField(required=True)
    constant = ExtRealField(required=True)
    slack = SignedFloatField(required=True)
    passed = fields.Boolean(required=True)
    witness = fields.Dict(keys=fields.String(), load_default=dict)
    bounds = fields.List(fields.Dict(), load_default=list)

    @post_load
    def make_report(self, data, **kwargs):
        data['lhs'] = NormValue(data['lhs'])
        data['rhs'] = NormValue(data['rhs'])
        return CheckReport(**data)


class FailureRecordSchema(Schema):
    class Meta:
        unknown = RAISE

    offset = fields.Integer(required=True, validate=validate.Range(min=0))
    input = fields.Dict(required=True)
    report = fields.Nested(CheckReportSchema, required=True)

    @post_load
    def make_record(self, data, **kwargs):
        return FailureRecord(**data)


class RunReportSchema(Schema):
    """Reads the JSON written by emit_report back into a RunReport"""

    class Meta:
        unknown = RAISE

    suite_name = fields.String(required=True)
    seed = fields.Integer(required=True)
    trials_run = fields.Integer(required=True, validate=validate.Range(min=0))
    passed = fields.Boolean(load_only=True)
    max_tightness = ExtRealField(required=True)
    failures = fields.List(fields.Nested(FailureRecordSchema), load_default=list)
    wall_time = fields.Float(load_default=0.0)

    @validates_schema
    def validate_outcome(self, data, **kwargs):
        if 'passed' in data and data['passed'] != (not data.get('failures')):
            raise SchemaError("passed must be true exactly when there are no failures", 'passed')

    @post_load
    def make_report(self, data, **kwargs):
        data.pop('passed', None)
        return RunReport(**data)


input_document_schema = InputDocumentSchema()
suite_config_schema = SuiteConfigSchema()
run_report_schema = RunReportSchema()
