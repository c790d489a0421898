# backend/utils/lorentz_norms.py - Lorentz Quasi-Norms of Simple Functions
"""
Closed-form Lorentz quasi-norms over step profiles.

With f* = v_k on [T_{k-1}, T_k):

    ||f||_{p,q}^q = sum_k v_k^q (p/q) (T_k^{q/p} - T_{k-1}^{q/p})      p, q < inf
    ||f||_{p,inf} = max_k v_k T_k^{1/p}                                 p < inf
    ||f||_{inf,q} = inf unless f = 0                                    q < inf
    ||f||_{inf,inf} = f*(0)

Values are divided by f*(0) and times by the support length before the sums
are taken. When a factor still falls outside the normal double range the sum
is redone in logarithms, so a nonzero f never rounds to a zero norm while the
result itself is representable.
"""

import sys
import math
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from utils.extended_real import ExtReal, format_extended, log_sum_exp, safe_exp, safe_pow
from utils.measure_core import SimpleFunction, distribution_profile, rearrangement
from utils.validators import ValidationError, validate_lorentz_exponent, validate_positive_int

logger = logging.getLogger(__name__)

# Neglected share of the first segment in the quadrature oracle is exp(-ORACLE_TAIL)
ORACLE_TAIL = 40.0


@dataclass(frozen=True)
class LorentzIndex:
    """Index pair (p, q), each in (0, inf]"""
    p: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, 'p', validate_lorentz_exponent(self.p, 'p'))
        object.__setattr__(self, 'q', validate_lorentz_exponent(self.q, 'q'))

    def to_dict(self) -> Dict[str, Any]:
        return {'p': format_extended(self.p), 'q': format_extended(self.q)}


class NormValue(ExtReal):
    """A quasi-norm value in [0, inf]"""


def norms_close(a: float, b: float, rel_tol: float) -> bool:
    """|a - b| <= rel_tol * max(1, |a|, |b|); two infinities are close"""
    a, b = float(a), float(b)
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel_tol * max(1.0, abs(a), abs(b))


def lorentz_norm(f: SimpleFunction, idx: LorentzIndex) -> NormValue:
    """||f||_{L_{p,q}} for any (p, q) in (0, inf]^2"""
    profile = rearrangement(f)
    if profile.is_empty:
        return NormValue(0.0)

    p, q = idx.p, idx.q
    if math.isinf(p):
        # L_{inf,q} = {0} for q < inf: the integrand v_1^q / t is not integrable at 0
        return NormValue(math.inf if math.isfinite(q) else profile.peak)

    if math.isinf(q):
        candidates = [s.value * safe_pow(s.right_endpoint, 1.0 / p) for s in profile.segments]
        if all(_in_range(c) for c in candidates):
            return NormValue(max(candidates))
        return NormValue(safe_exp(max(
            math.log(s.value) + math.log(s.right_endpoint) / p for s in profile.segments
        )))

    peak, length = profile.peak, profile.support_end
    inner = _step_sum(profile.segments, peak, length, q, q / p)
    if inner is not None:
        result = peak * safe_pow(length, 1.0 / p) * safe_pow((p / q) * inner, 1.0 / q)
        if _in_range(result):
            return NormValue(result)

    log_inner = math.log(p / q) + _log_step_sum(profile.segments, peak, length, q, q / p)
    return NormValue(safe_exp(math.log(peak) + math.log(length) / p + log_inner / q))


def weak_norm(f: SimpleFunction, p: float) -> float:
    """||f||_{L_{p,inf}} as a float"""
    return lorentz_norm(f, LorentzIndex(p, math.inf)).value


def lorentz_norm_via_distribution(f: SimpleFunction, p: float, s: float) -> NormValue:
    """
    (p * int_0^inf d_f(a)^{s/p} a^{s-1} da)^{1/s}, evaluated over the step
    profile of d_f: with d_f = D_j on [a_{j-1}, a_j) the integral is
    sum_j D_j^{s/p} (a_j^s - a_{j-1}^s) / s.
    """
    p = validate_lorentz_exponent(p, 'p', allow_infinite=False)
    s = validate_lorentz_exponent(s, 's', allow_infinite=False)

    profile = distribution_profile(f)
    if profile.is_empty:
        return NormValue(0.0)

    top_mass, top_value = profile.peak, profile.support_end
    inner = _step_sum(profile.segments, top_mass, top_value, s / p, s)
    if inner is not None:
        result = safe_pow(top_mass, 1.0 / p) * top_value * safe_pow(p * inner / s, 1.0 / s)
        if _in_range(result):
            return NormValue(result)

    log_inner = math.log(p / s) + _log_step_sum(profile.segments, top_mass, top_value, s / p, s)
    return NormValue(safe_exp(math.log(top_mass) / p + math.log(top_value) + log_inner / s))


def _in_range(value: float) -> bool:
    """Normal, finite double: nothing was lost to underflow or overflow"""
    return sys.float_info.min <= value < math.inf


def _step_sum(segments, value_scale: float, time_scale: float,
              value_power: float, time_power: float) -> Optional[float]:
    """
    sum_k (v_k/V)^a ((t_k/T)^b - (t_{k-1}/T)^b) over segments (v_k, t_k) with
    t_0 = 0, or None as soon as a factor leaves the normal double range.
    """
    terms = []
    previous = 0.0
    for segment in segments:
        current = safe_pow(segment.right_endpoint / time_scale, time_power)
        weight = safe_pow(segment.value / value_scale, value_power)
        if not (_in_range(weight) and _in_range(current - previous)):
            return None
        terms.append(weight * (current - previous))
        previous = current
    return math.fsum(terms)


def _log_step_sum(segments, value_scale: float, time_scale: float,
                  value_power: float, time_power: float) -> float:
    """
    Logarithm of the _step_sum total. Each difference is taken as
    (t_k/T)^b (1 - (t_{k-1}/t_k)^b) through expm1 and the terms are combined
    with log_sum_exp, so terms far below double range still count.
    """
    logs = []
    previous = None
    for segment in segments:
        current = math.log(segment.right_endpoint) - math.log(time_scale)
        log_term = value_power * (math.log(segment.value) - math.log(value_scale)) + time_power * current
        if previous is not None:
            shrink = -math.expm1(time_power * (previous - current))
            if shrink <= 0:
                previous = current
                continue
            log_term += math.log(shrink)
        logs.append(log_term)
        previous = current
    return log_sum_exp(logs)


def lebesgue_integral(f: SimpleFunction, p: float) -> float:
    """int_X |f|^p dmu = sum mass * value^p"""
    p = validate_lorentz_exponent(p, 'p', allow_infinite=False)
    return math.fsum(atom.mass * safe_pow(atom.value, p) for atom in f.atoms)


def rearrangement_integral(f: SimpleFunction, p: float) -> float:
    """int_0^inf f*(t)^p dt = sum_k v_k^p (T_k - T_{k-1})"""
    p = validate_lorentz_exponent(p, 'p', allow_infinite=False)
    terms = []
    previous = 0.0
    for segment in rearrangement(f).segments:
        terms.append(safe_pow(segment.value, p) * (segment.right_endpoint - previous))
        previous = segment.right_endpoint
    return math.fsum(terms)


def lebesgue_norm(f: SimpleFunction, p: float) -> NormValue:
    """
    ||f||_p. For p >= 1 the usual root of the integral; for 0 < p < 1 the
    quasi-norm is the integral itself, without a root; for p = inf the
    largest value carried by a positive-mass atom.
    """
    p = validate_lorentz_exponent(p, 'p')
    if math.isinf(p):
        return NormValue(max((atom.value for atom in f.atoms), default=0.0))

    integral = lebesgue_integral(f, p)
    if p >= 1:
        return NormValue(safe_pow(integral, 1.0 / p))
    return NormValue(integral)


def quadrature_norm_oracle(f: SimpleFunction, idx: LorentzIndex, subdivisions: int) -> NormValue:
    """
    Midpoint-rule approximation of ||f||_{p,q}, independent of the closed form.

    The integrand (t^{1/p} f*(t))^q is integrated against dt/t, so each segment
    of f* is cut into `subdivisions` equal pieces of ln t and f* is read off the
    profile at every midpoint. The first segment reaches down to t = 0; it is
    truncated where the remaining tail is exp(-ORACLE_TAIL) of its mass.
    """
    if math.isinf(idx.p) or math.isinf(idx.q):
        raise ValidationError("The quadrature oracle needs finite p and q", 'idx')
    subdivisions = validate_positive_int(subdivisions, 'subdivisions')

    profile = rearrangement(f)
    if profile.is_empty:
        return NormValue(0.0)

    p, q = idx.p, idx.q
    ratio = q / p
    peak, length = profile.peak, profile.support_end
    offsets = (np.arange(subdivisions, dtype=float) + 0.5) / subdivisions

    total = 0.0
    lower = None
    for segment in profile.segments:
        upper = math.log(segment.right_endpoint / length)
        if lower is None:
            lower = upper - ORACLE_TAIL / ratio
        width = upper - lower
        logs = lower + width * offsets
        # tau underflows to 0 deep in the first segment; the weight tau^(q/p) may not
        fstar = profile.evaluate_many(np.exp(logs) * length) / peak
        total += width / subdivisions * float(np.sum(np.exp(ratio * logs) * fstar ** q))
        lower = upper

    return NormValue(peak * safe_pow(length, 1.0 / p) * safe_pow(total, 1.0 / q))


def norm_table(f: SimpleFunction, p_values: Iterable[float], q_values: Iterable[float]) -> List[Dict[str, float]]:
    """Rows {p, q, norm} over the grid p_values x q_values"""
    rows = []
    q_values = list(q_values)
    for p in p_values:
        for q in q_values:
            rows.append({'p': p, 'q': q, 'norm': lorentz_norm(f, LorentzIndex(p, q)).value})
    logger.debug(f"Computed norm table with {len(rows)} rows")
    return rows
