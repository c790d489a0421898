# backend/utils/embeddings.py - Embedding Constants and Inequality Checks
"""
Evaluates the embedding constants between Lorentz spaces and checks the
matching inequalities on concrete simple functions and finite index grids.

Every check_* function returns a CheckReport. Checks made of several
inequalities keep one Bound per inequality; the report's lhs/rhs/constant
come from the failing bound if any, otherwise from the tightest one.
Index sets are finite grids, so the suprema over them become maxima.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from utils.extended_real import ExtReal, format_extended, safe_pow, to_jsonable
from utils.lorentz_norms import (
    LorentzIndex, NormValue, lebesgue_integral, lebesgue_norm, lorentz_norm, weak_norm
)
from utils.measure_core import SimpleFunction, distribution, pointwise_product, rearrangement
from utils.validators import (
    ValidationError, validate_lorentz_exponent, validate_nonnegative, validate_strictly_increasing
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerance:
    """lhs passes against rhs when lhs <= rhs * (1 + relative) + absolute"""
    relative: float = 1e-9
    absolute: float = 1e-12

    def admits(self, lhs: float, rhs: float) -> bool:
        factor = 1.0 + self.relative
        if math.isinf(rhs):
            return factor > 0
        return lhs <= rhs * factor + self.absolute


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class IndexGrid:
    """Finite stand-in for an index set J or Q: sorted points, m = first, M = last"""
    points: Tuple[float, ...]

    def __post_init__(self):
        points = tuple(validate_lorentz_exponent(x, 'points') for x in self.points)
        if not points:
            raise ValidationError("Index grids need at least one point", 'points')
        validate_strictly_increasing(points, [f"points[{i}]" for i in range(len(points))])
        object.__setattr__(self, 'points', points)

    @classmethod
    def from_values(cls, values: Iterable[float]) -> 'IndexGrid':
        """Sort and deduplicate before building"""
        return cls(tuple(sorted(set(validate_lorentz_exponent(v, 'points') for v in values))))

    @property
    def m(self) -> float:
        return self.points[0]

    @property
    def M(self) -> float:
        return self.points[-1]

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.M)

    def __contains__(self, value: float) -> bool:
        return value in self.points

    def to_list(self) -> List[Any]:
        return [format_extended(x) for x in self.points]


@dataclass(frozen=True)
class Bound:
    """One inequality lhs <= rhs, where rhs already includes `constant`"""
    label: str
    lhs: float
    rhs: float
    constant: float
    where: Dict[str, Any] = field(default_factory=dict)

    @property
    def tightness(self) -> float:
        return _ratio(self.lhs, self.rhs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'lhs': format_extended(self.lhs),
            'rhs': format_extended(self.rhs),
            'constant': format_extended(self.constant),
            'where': {k: to_jsonable(v) for k, v in self.where.items()}
        }


@dataclass
class CheckReport:
    """Outcome of one inequality check"""
    lhs: NormValue
    rhs: NormValue
    constant: float
    slack: float
    passed: bool
    witness: Dict[str, Any]
    bounds: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def tightness(self) -> float:
        """lhs / rhs of the reported bound; 1 means equality"""
        return _ratio(self.lhs.value, self.rhs.value)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lhs': self.lhs.to_json(),
            'rhs': self.rhs.to_json(),
            'constant': format_extended(self.constant),
            'slack': to_jsonable(self.slack),
            'passed': self.passed,
            'witness': {k: to_jsonable(v) for k, v in self.witness.items()},
            'bounds': self.bounds
        }


def _ratio(lhs: float, rhs: float) -> float:
    if rhs == 0:
        return 0.0 if lhs == 0 else math.inf
    if math.isinf(rhs):
        return 1.0 if math.isinf(lhs) else 0.0
    return lhs / rhs


def _slack(lhs: float, rhs: float) -> float:
    if math.isinf(lhs) and math.isinf(rhs):
        return 0.0
    return rhs - lhs


def build_report(bounds: Sequence[Bound], witness: Dict[str, Any],
                 tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """Fold bounds into a report; all bounds must pass"""
    if not bounds:
        raise ValueError("A check needs at least one bound")

    outcomes = [(bound, tolerance.admits(bound.lhs, bound.rhs)) for bound in bounds]
    failing = [bound for bound, ok in outcomes if not ok]
    candidates = failing or [bound for bound, _ in outcomes]
    primary = max(candidates, key=lambda b: b.tightness)

    return CheckReport(
        lhs=NormValue(primary.lhs),
        rhs=NormValue(primary.rhs),
        constant=primary.constant,
        slack=_slack(primary.lhs, primary.rhs),
        passed=not failing,
        witness={**witness, **primary.where, 'bound': primary.label},
        bounds=[dict(bound.to_dict(), passed=ok) for bound, ok in outcomes]
    )


def _norm(f: SimpleFunction, p: float, q: float) -> float:
    return lorentz_norm(f, LorentzIndex(p, q)).value


def _finite(value: float, field_name: str) -> float:
    return validate_lorentz_exponent(value, field_name, allow_infinite=False)


# Constants

def interpolation_constant(p1: float, p2: float, p: float, s: float) -> float:
    """(p / (s - s p1/p))^{1/s} + (p / (s p2/p - s))^{1/s} for 0 < p1 < p < p2 < inf"""
    p1, p2, p, s = (_finite(v, n) for v, n in ((p1, 'p1'), (p2, 'p2'), (p, 'p'), (s, 's')))
    validate_strictly_increasing((p1, p, p2), ('p1', 'p', 'p2'))

    lower, upper = _split_terms(p1, p2, p, s)
    return safe_pow(lower, 1.0 / s) + safe_pow(upper, 1.0 / s)


def split_interpolation_constant(p1: float, p2: float, p: float, s: float) -> float:
    """
    (p / (s - s p1/p) + p / (s p2/p - s))^{1/s}, the constant obtained by
    splitting the distribution integral at the crossover point. Never larger
    than interpolation_constant when s >= 1; strictly larger when s < 1.
    """
    p1, p2, p, s = (_finite(v, n) for v, n in ((p1, 'p1'), (p2, 'p2'), (p, 'p'), (s, 's')))
    validate_strictly_increasing((p1, p, p2), ('p1', 'p', 'p2'))

    lower, upper = _split_terms(p1, p2, p, s)
    return safe_pow(lower + upper, 1.0 / s)


def _split_terms(p1: float, p2: float, p: float, s: float) -> Tuple[float, float]:
    return p / (s - s * p1 / p), p / (s * p2 / p - s)


def sandwich_constant(p: float, m_q: float) -> float:
    """max{1, (m_Q/p)^{1/m_Q}}"""
    return max(1.0, safe_pow(m_q / p, 1.0 / m_q))


def two_sided_constant(J: IndexGrid, Q: IndexGrid) -> float:
    """K = 2^{1/m_Q} max{1, (m_Q/m_J)^{1/m_Q}}"""
    return safe_pow(2.0, 1.0 / Q.m) * sandwich_constant(J.m, Q.m)


def two_point_constant(q: float) -> float:
    """2^{1/q}, which is 1 for q = inf"""
    return safe_pow(2.0, 1.0 / q)


def crossover_point(f: SimpleFunction, p1: float, p2: float) -> ExtReal:
    """B = (||f||_{p2,inf}^{p2} / ||f||_{p1,inf}^{p1})^{1/(p2 - p1)}"""
    p1, p2 = _finite(p1, 'p1'), _finite(p2, 'p2')
    validate_strictly_increasing((p1, p2), ('p1', 'p2'))

    w1, w2 = weak_norm(f, p1), weak_norm(f, p2)
    if w1 == 0:
        raise ValidationError("Crossover point is undefined when the weak p1 norm vanishes", 'f')

    # (w2^p2 / w1^p1)^(1/(p2-p1)) in logarithms; w1, w2 > 0 here
    exponent = (p2 * math.log(w2) - p1 * math.log(w1)) / (p2 - p1)
    try:
        return ExtReal(math.exp(exponent))
    except OverflowError:
        return ExtReal.infinity()


# Checks on functions

def check_interpolation(f: SimpleFunction, p1: float, p2: float, p: float, s: float,
                        tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """
    ||f||_{p,s} <= C ||f||_{p1,inf}^{theta1} ||f||_{p2,inf}^{theta2} for p1 < p < p2 < inf.

    Two constants are evaluated. The split constant (A + B)^{1/s} always
    holds and is always asserted. The sum A^{1/s} + B^{1/s} is asserted only
    for s >= 1; below that it is smaller than the split constant and can fail,
    so its tightness is reported in the witness instead.
    """
    stated = interpolation_constant(p1, p2, p, s)
    split = split_interpolation_constant(p1, p2, p, s)
    w1, w2 = weak_norm(f, p1), weak_norm(f, p2)
    theta1 = (p1 / p) * (p2 - p) / (p2 - p1)
    theta2 = (p2 / p) * (p - p1) / (p2 - p1)

    lhs = _norm(f, p, s)
    product = safe_pow(w1, theta1) * safe_pow(w2, theta2)

    where = {'weak_p1': w1, 'weak_p2': w2}
    if w1 > 0:
        where['crossover'] = crossover_point(f, p1, p2).value

    bounds = [Bound('interpolation_split', lhs, split * product, split, where)]
    if s >= 1:
        bounds.append(Bound('interpolation', lhs, stated * product, stated, where))

    report = build_report(bounds, {'p1': p1, 'p2': p2, 'p': p, 's': s}, tolerance)
    report.witness['stated_constant'] = stated
    report.witness['stated_tightness'] = _ratio(lhs, stated * product)
    report.witness['constant_gap'] = split / stated
    return report


def check_interpolation_infinite_top(f: SimpleFunction, p1: float, p: float, s: float,
                                     tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """||f||_{p,s}^s <= p/(s - s p1/p) ||f||_{p1,inf}^{s p1/p} ||f||_inf^{s - s p1/p}, compared after the 1/s root"""
    p1, p, s = _finite(p1, 'p1'), _finite(p, 'p'), _finite(s, 's')
    validate_strictly_increasing((p1, p), ('p1', 'p'))

    constant = safe_pow(p / (s - s * p1 / p), 1.0 / s)
    w1 = weak_norm(f, p1)
    sup_norm = lebesgue_norm(f, math.inf).value

    lhs = _norm(f, p, s)
    rhs = constant * safe_pow(w1, p1 / p) * safe_pow(sup_norm, 1.0 - p1 / p)

    return build_report(
        [Bound('interpolation_infinite_top', lhs, rhs, constant, {'weak_p1': w1, 'sup_norm': sup_norm})],
        {'p1': p1, 'p2': 'inf', 'p': p, 's': s},
        tolerance
    )


def check_weak_type(f: SimpleFunction, r: float,
                    tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """||f||_{r,inf} <= (int |f|^r)^{1/r}"""
    r = _finite(r, 'r')
    lhs = weak_norm(f, r)
    rhs = safe_pow(lebesgue_integral(f, r), 1.0 / r)
    return build_report([Bound('weak_type', lhs, rhs, 1.0)], {'r': r}, tolerance)


def check_chebyshev_bound(f: SimpleFunction, alpha: float, exponents: Sequence[float],
                          tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """d_f(alpha) <= ||f||_{p,inf}^p / alpha^p for every p in `exponents`"""
    alpha = validate_nonnegative(alpha, 'alpha')
    if alpha == 0:
        raise ValidationError("Chebyshev bounds need alpha > 0", 'alpha')

    level = distribution(f, alpha).value
    bounds = []
    for p in exponents:
        p = _finite(p, 'p')
        bounds.append(Bound(
            f"chebyshev_p={p!r}", level, safe_pow(weak_norm(f, p) / alpha, p), 1.0, {'p': p}
        ))

    return build_report(bounds, {'alpha': alpha, 'exponents': list(exponents)}, tolerance)


def check_q_monotonicity(f: SimpleFunction, p: float, q: float, q1: float,
                         tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """||f||_{p,q1} <= (q/p)^{1/q - 1/q1} ||f||_{p,q} for q < q1 <= inf"""
    p, q = _finite(p, 'p'), _finite(q, 'q')
    q1 = validate_lorentz_exponent(q1, 'q1')
    validate_strictly_increasing((q, q1), ('q', 'q1'))

    constant = safe_pow(q / p, 1.0 / q - 1.0 / q1)
    lhs = _norm(f, p, q1)
    rhs = constant * _norm(f, p, q)
    return build_report([Bound('q_monotonicity', lhs, rhs, constant)], {'p': p, 'q': q, 'q1': q1}, tolerance)


def _two_point_bound(f: SimpleFunction, p1: float, r: float, p2: float, q: float) -> Bound:
    constant = two_point_constant(q)
    lhs = _norm(f, r, q)
    rhs = constant * max(_norm(f, p1, q), _norm(f, p2, q))
    return Bound('two_point', lhs, rhs, constant, {'r': r})


def check_two_point(f: SimpleFunction, p1: float, r: float, p2: float, q: float,
                    tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """||f||_{r,q} <= 2^{1/q} max(||f||_{p1,q}, ||f||_{p2,q}) for p1 < r < p2"""
    p1 = _finite(p1, 'p1')
    r = _finite(r, 'r')
    p2 = validate_lorentz_exponent(p2, 'p2')
    q = validate_lorentz_exponent(q, 'q')
    validate_strictly_increasing((p1, r, p2), ('p1', 'r', 'p2'))

    return build_report([_two_point_bound(f, p1, r, p2, q)], {'p1': p1, 'r': r, 'p2': p2, 'q': q}, tolerance)


def _interval_reduction_bounds(f: SimpleFunction, J: IndexGrid, q: float) -> List[Bound]:
    points = J.points
    return [
        _two_point_bound(f, points[i - 1], points[i], points[i + 1], q)
        for i in range(1, len(points) - 1)
    ]


def check_interval_reduction(f: SimpleFunction, J: IndexGrid, q: float,
                             tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """Every interior grid point t is controlled by its neighbours t1 < t < t2"""
    q = validate_lorentz_exponent(q, 'q')
    bounds = _interval_reduction_bounds(f, J, q)
    if not bounds:
        # fewer than three points: nothing lies strictly inside
        value = max(_norm(f, p, q) for p in J.points)
        bounds = [Bound('two_point', value, value, 1.0, {'r': J.m})]
    return build_report(bounds, {'J': J.to_list(), 'q': q}, tolerance)


def check_ilpq_sandwich(f: SimpleFunction, p: float, Q: IndexGrid,
                        tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """||f||_{p,m_Q} <= max_q ||f||_{p,q} <= max{1, (m_Q/p)^{1/m_Q}} ||f||_{p,m_Q}"""
    p = _finite(p, 'p')
    if math.isinf(Q.m):
        raise ValidationError("Q needs a finite infimum", 'Q')

    norms = {q: _norm(f, p, q) for q in Q.points}
    base = norms[Q.m]
    top_q = max(norms, key=norms.get)
    supremum = norms[top_q]
    constant = sandwich_constant(p, Q.m)

    bounds = [
        Bound('lower', base, supremum, 1.0, {'q': top_q}),
        Bound('upper', supremum, constant * base, constant, {'q': top_q}),
    ]
    report = build_report(bounds, {'p': p, 'Q': Q.to_list()}, tolerance)
    report.witness['upper_tightness'] = _ratio(supremum, constant * base)
    return report


def check_iljq_endpoints(f: SimpleFunction, J: IndexGrid, q: float,
                         tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """
    For p in J: ||f||_{p,q} <= 2^{1/q} max(||f||_{m_J,q}, ||f||_{M_J,q}); and the
    endpoint norms stay below the grid supremum.
    """
    q = validate_lorentz_exponent(q, 'q')
    if not J.is_bounded:
        raise ValidationError("J needs a finite supremum", 'J')

    constant = two_point_constant(q)
    norms = {p: _norm(f, p, q) for p in J.points}
    endpoints = max(norms[J.m], norms[J.M])
    supremum = max(norms.values())

    bounds = [
        Bound('endpoint', norms[p], constant * endpoints, constant, {'p': p})
        for p in J.points
    ]
    bounds.append(Bound('fatou', endpoints, supremum, 1.0))
    bounds.extend(_interval_reduction_bounds(f, J, q))

    return build_report(bounds, {'J': J.to_list(), 'q': q}, tolerance)


def check_iljq_two_sided(f: SimpleFunction, J: IndexGrid, Q: IndexGrid,
                         tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """E <= sup_{J x Q} ||f||_{p,q} <= K E with E = max(||f||_{m_J,m_Q}, ||f||_{M_J,m_Q})"""
    if not J.is_bounded:
        raise ValidationError("J needs a finite supremum", 'J')
    if math.isinf(Q.m):
        raise ValidationError("Q needs a finite infimum", 'Q')

    norms = {(p, q): _norm(f, p, q) for p in J.points for q in Q.points}
    top = max(norms, key=norms.get)
    supremum = norms[top]
    endpoints = max(norms[(J.m, Q.m)], norms[(J.M, Q.m)])
    constant = two_sided_constant(J, Q)

    bounds = [
        Bound('lower', endpoints, supremum, 1.0, {'p': top[0], 'q': top[1]}),
        Bound('upper', supremum, constant * endpoints, constant, {'p': top[0], 'q': top[1]}),
    ]
    return build_report(bounds, {'J': J.to_list(), 'Q': Q.to_list(), 'K': constant}, tolerance)


def _product_grid(profiles: Sequence, halved: Sequence) -> List[float]:
    """
    Breakpoints where either side can jump, every midpoint between them and a
    point past the last one; both sides are constant in between.
    """
    points = {0.0}
    for profile in profiles:
        points.update(profile.breakpoints())
    for profile in halved:
        points.update(2.0 * b for b in profile.breakpoints())

    ordered = sorted(points)
    grid = list(ordered)
    grid.extend((a + b) / 2.0 for a, b in zip(ordered, ordered[1:]))
    grid.append(ordered[-1] + 1.0)
    return sorted(grid)


def check_product_bound(f: SimpleFunction, g: SimpleFunction, p: float,
                        tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """(fg)*(t) <= f*(t/2) g*(t/2) on an exhaustive grid and ||fg||_{p,inf} <= 2^{1/p} ||g||_{p,inf} ||f||_inf"""
    p = validate_lorentz_exponent(p, 'p')
    product = pointwise_product(f, g)

    f_star, g_star, fg_star = rearrangement(f), rearrangement(g), rearrangement(product)
    worst = None
    for t in _product_grid([fg_star], [f_star, g_star]):
        bound = Bound('rearranged_product', fg_star.evaluate(t), f_star.evaluate(t / 2) * g_star.evaluate(t / 2), 1.0, {'t': t})
        if worst is None:
            worst = bound
            continue
        worst_ok, bound_ok = tolerance.admits(worst.lhs, worst.rhs), tolerance.admits(bound.lhs, bound.rhs)
        if (not bound_ok and worst_ok) or (bound_ok == worst_ok and bound.tightness > worst.tightness):
            worst = bound

    constant = two_point_constant(p)
    lhs = _norm(product, p, math.inf)
    rhs = constant * _norm(g, p, math.inf) * _norm(f, math.inf, math.inf)

    return build_report(
        [worst, Bound('weak_product', lhs, rhs, constant)],
        {'p': p},
        tolerance
    )


def check_ab_decomposition(f: SimpleFunction, J: IndexGrid, Q: IndexGrid,
                           tolerance: Tolerance = DEFAULT_TOLERANCE) -> CheckReport:
    """sup_{J x Q} ||f||_{p,q} <= max{1, (m_Q/m_J)^{1/m_Q}} max_{p in J} ||f||_{p,m_Q}"""
    if Q.m not in Q:
        raise ValidationError("m_Q must belong to Q", 'Q')
    if math.isinf(Q.m):
        raise ValidationError("Q needs a finite infimum", 'Q')

    norms = {(p, q): _norm(f, p, q) for p in J.points for q in Q.points}
    top = max(norms, key=norms.get)
    column = max(norms[(p, Q.m)] for p in J.points)
    constant = sandwich_constant(J.m, Q.m)

    return build_report(
        [Bound('ab_decomposition', norms[top], constant * column, constant,
               {'p': top[0], 'q': top[1], 'M_mQ': column})],
        {'J': J.to_list(), 'Q': Q.to_list()},
        tolerance
    )
