# backend/utils/sequence_lorentz.py - Lorentz Sequence Spaces
"""
Lorentz sequence norms of finitely supported sequences.

A vector-valued sequence enters only through the norms of its terms, so a
NormSequence holds those nonnegative numbers. With r_1 >= r_2 >= ... the
non-increasing rearrangement:

    ||s||_{p,q} = (sum_i i^{q/p - 1} r_i^q)^{1/q}     1 <= p <= inf, 1 <= q < inf
    ||s||_{p,inf} = max_i i^{1/p} r_i                 1 <= p < inf
"""

import math
import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

from utils.embeddings import (
    Bound, CheckReport, DEFAULT_TOLERANCE, IndexGrid, Tolerance, build_report, sandwich_constant
)
from utils.extended_real import safe_pow
from utils.lorentz_norms import NormValue
from utils.measure_core import SimpleFunction, make_simple_function
from utils.validators import (
    OutOfDefinitionError, parse_index_value, validate_nonnegative,
    validate_strictly_increasing
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormSequence:
    """Norms ||x_i|| of a finitely supported sequence; later terms are zero"""
    terms: Tuple[float, ...] = ()

    def __post_init__(self):
        terms = tuple(validate_nonnegative(t, f"terms.{i}") for i, t in enumerate(self.terms))
        object.__setattr__(self, 'terms', terms)

    @property
    def is_zero(self) -> bool:
        return all(t == 0 for t in self.terms)

    def scaled(self, factor: float) -> 'NormSequence':
        factor = validate_nonnegative(factor, 'factor')
        return NormSequence(tuple(t * factor for t in self.terms))

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': 'sequence', 'terms': list(self.terms)}


def seq_rearrange(s: NormSequence) -> NormSequence:
    """Non-increasing rearrangement with the zero tail dropped"""
    return NormSequence(tuple(t for t in sorted(s.terms, reverse=True) if t > 0))


def _sequence_index(value: Any, field: str) -> float:
    value = parse_index_value(value, field)
    if value < 1:
        raise OutOfDefinitionError(f"Sequence indices start at 1, got {field}={value}", field)
    return value


def seq_lorentz_norm(s: NormSequence, p: float, q: float) -> NormValue:
    """||s||_{p,q}; (inf, inf) lies outside the definition"""
    p, q = _sequence_index(p, 'p'), _sequence_index(q, 'q')
    if math.isinf(p) and math.isinf(q):
        raise OutOfDefinitionError("The sequence norm is not defined for p = q = inf", 'q')

    terms = seq_rearrange(s).terms
    if not terms:
        return NormValue(0.0)

    if math.isinf(q):
        return NormValue(max(safe_pow(i, 1.0 / p) * r for i, r in enumerate(terms, start=1)))

    exponent = q / p - 1.0
    lead = terms[0]
    inner = math.fsum(
        safe_pow(i, exponent) * safe_pow(r / lead, q) for i, r in enumerate(terms, start=1)
    )
    return NormValue(lead * safe_pow(inner, 1.0 / q))


def classical_lp_norm(s: NormSequence, p: float) -> float:
    """(sum r_i^p)^{1/p}"""
    p = _sequence_index(p, 'p')
    if math.isinf(p):
        return max(s.terms, default=0.0)
    return safe_pow(math.fsum(safe_pow(t, p) for t in s.terms), 1.0 / p)


def sequence_as_simple_function(s: NormSequence) -> SimpleFunction:
    """Each term becomes a unit-mass atom"""
    return make_simple_function((1.0, t) for t in s.terms)


def check_sequence_q_inclusion(s: NormSequence, p: float, q: float, q1: float,
                               tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """
    ||s||_{p,q1} against ||s||_{p,q} for 1 <= p < inf, 1 <= q < q1 <= inf, with both
    constants: (q/p)^{1/q - 1/q1} when p < q (1 when p >= q), and max{1, q/p}.
    """
    p, q, q1 = _sequence_index(p, 'p'), _sequence_index(q, 'q'), _sequence_index(q1, 'q1')
    if math.isinf(p):
        raise OutOfDefinitionError("p must be finite here", 'p')
    validate_strictly_increasing((q, q1), ('q', 'q1'))

    lhs = seq_lorentz_norm(s, p, q1).value
    base = seq_lorentz_norm(s, p, q).value
    sharp = safe_pow(q / p, 1.0 / q - 1.0 / q1) if p < q else 1.0
    blanket = max(1.0, q / p)

    bounds = [
        Bound('sharp', lhs, sharp * base, sharp),
        Bound('blanket', lhs, blanket * base, blanket),
    ]
    report = build_report(bounds, {'p': p, 'q': q, 'q1': q1}, tolerance)
    report.witness['constant_gap'] = blanket / sharp
    return report


def check_sequence_p_inclusion(s: NormSequence, p: float, p1: float, q: float,
                               tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """||s||_{p1,q} <= ||s||_{p,q} for p < p1"""
    p, p1, q = _sequence_index(p, 'p'), _sequence_index(p1, 'p1'), _sequence_index(q, 'q')
    validate_strictly_increasing((p, p1), ('p', 'p1'))
    if math.isinf(q) and math.isinf(p1):
        raise OutOfDefinitionError("p1 must be finite when q = inf", 'p1')

    lhs = seq_lorentz_norm(s, p1, q).value
    rhs = seq_lorentz_norm(s, p, q).value
    return build_report([Bound('p_inclusion', lhs, rhs, 1.0)], {'p': p, 'p1': p1, 'q': q}, tolerance)


def _check_sequence_grid(J: IndexGrid, Q: IndexGrid) -> None:
    for name, grid in (('J', J), ('Q', Q)):
        if grid.m < 1 or not grid.is_bounded:
            raise OutOfDefinitionError(f"{name} must lie in [1, inf)", name)


def check_sequence_intersection(s: NormSequence, J: IndexGrid, Q: IndexGrid,
                                tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """
    sup_{J x Q} ||s||_{p,q} <= max{1, m_Q/m_J} ||s||_{m_J,m_Q}, with the
    intermediate steps of the argument checked as well:
    ||s||_{p,q} <= max{1, m_Q/p} ||s||_{p,m_Q} for each p in J, and
    ||s||_{m_J,q} <= max{1, m_Q/m_J} ||s||_{m_J,m_Q} for each q in Q.
    """
    _check_sequence_grid(J, Q)
    m_j, m_q = J.m, Q.m

    norms = {(p, q): seq_lorentz_norm(s, p, q).value for p in J.points for q in Q.points}
    corner = seq_lorentz_norm(s, m_j, m_q).value
    constant = max(1.0, m_q / m_j)
    top = max(norms, key=norms.get)

    bounds = [Bound('intersection', norms[top], constant * corner, constant, {'p': top[0], 'q': top[1]})]
    for p in J.points:
        row_base = norms[(p, m_q)]
        for label, row_constant in (('row', max(1.0, m_q / p)), ('row_sharp', sandwich_constant(p, m_q))):
            for q in Q.points:
                bounds.append(Bound(label, norms[(p, q)], row_constant * row_base, row_constant, {'p': p, 'q': q}))
    for q in Q.points:
        bounds.append(Bound('corner_column', seq_lorentz_norm(s, m_j, q).value, constant * corner, constant, {'q': q}))

    return build_report(bounds, {'J': J.to_list(), 'Q': Q.to_list()}, tolerance)
