# backend/controllers/suite_controller.py - Randomized Verification Suites
"""
Random instance generation and the suite registry.

Trial `offset` of a run seeded with `seed` draws everything it needs from
PCG64 seeded by SeedSequence([seed, offset]), so any single trial can be
replayed without running the ones before it.
"""

import sys
import math
import time
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from utils.data_structures import FailureRecord, RunReport, SuiteConfig
from utils.embeddings import (
    Bound, CheckReport, IndexGrid, build_report, check_ab_decomposition, check_chebyshev_bound,
    check_iljq_endpoints, check_iljq_two_sided, check_ilpq_sandwich, check_interpolation,
    check_interpolation_infinite_top, check_product_bound, check_q_monotonicity, check_two_point,
    check_weak_type
)
from utils.logger import log_check_failure, log_suite_run, log_with_context
from utils.lorentz_norms import (
    LorentzIndex, lebesgue_integral, lebesgue_norm, lorentz_norm, lorentz_norm_via_distribution,
    quadrature_norm_oracle, rearrangement_integral
)
from utils.measure_core import (
    SimpleFunction, distribution, distribution_profile, make_simple_function, rearrangement
)
from utils.sequence_lorentz import (
    NormSequence, check_sequence_intersection, check_sequence_p_inclusion, check_sequence_q_inclusion,
    classical_lp_norm, seq_lorentz_norm, sequence_as_simple_function
)
from utils.validators import UsageError, ValidationError, validate_int_range

logger = logging.getLogger(__name__)

Trial = Tuple[Dict[str, Any], CheckReport]


# Generators

def trial_rng(seed: int, offset: int) -> np.random.Generator:
    """PCG64 stream for one trial"""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(offset)])))


def _log_uniform(rng: np.random.Generator, low: float, high: float, size: Optional[int] = None):
    if low == high:
        return low if size is None else np.full(size, low)
    draws = np.exp(rng.uniform(math.log(low), math.log(high), size))
    return float(draws) if size is None else draws


def generate_step_function(rng: np.random.Generator, config: SuiteConfig,
                           atom_count: Optional[int] = None) -> SimpleFunction:
    """Uniform atom count in [1, max_atoms]; masses and values log-uniform"""
    count = atom_count or int(rng.integers(1, config.max_atoms, endpoint=True))
    masses = _log_uniform(rng, *config.mass_range, size=count)
    values = _log_uniform(rng, *config.value_range, size=count)
    return make_simple_function(zip(masses.tolist(), values.tolist()))


def generate_index_grid(rng: np.random.Generator, low: float, high: float,
                        size_range: Tuple[int, int]) -> IndexGrid:
    """Sorted distinct points log-uniform in [low, high]"""
    if not 0 < low < high:
        raise ValidationError(f"Index grids need 0 < low < high, got ({low}, {high})", 'index_range')
    smallest, largest = validate_int_range(size_range, 'size_range')
    size = int(rng.integers(smallest, largest, endpoint=True))

    points = set()
    while len(points) < size:
        points.add(_log_uniform(rng, low, high))
    return IndexGrid(tuple(sorted(points)))


def generate_norm_sequence(rng: np.random.Generator, config: SuiteConfig) -> NormSequence:
    """Terms log-uniform in value_range; roughly one in ten set to zero"""
    length = int(rng.integers(1, config.max_atoms, endpoint=True))
    terms = _log_uniform(rng, *config.value_range, size=length)
    zeros = rng.random(length) < 0.1
    return NormSequence(tuple(0.0 if zero else float(t) for t, zero in zip(terms.tolist(), zeros.tolist())))


def _increasing(rng: np.random.Generator, index_range: Tuple[float, float], count: int) -> Tuple[float, ...]:
    return generate_index_grid(rng, index_range[0], index_range[1], (count, count)).points


def _maybe_infinite(rng: np.random.Generator, config: SuiteConfig, value: float) -> float:
    return math.inf if rng.random() < config.infinite_index_probability else value


def _with_infinity(rng: np.random.Generator, config: SuiteConfig, grid: IndexGrid) -> IndexGrid:
    """Append inf to the grid now and then"""
    if rng.random() < config.infinite_index_probability:
        return IndexGrid(grid.points + (math.inf,))
    return grid


def _identity_bound(label: str, a: float, b: float, tolerance: float) -> Bound:
    """|a - b| against tolerance * max(1, |a|, |b|)"""
    scale = max(1.0, abs(a), abs(b))
    return Bound(label, abs(a - b), tolerance * scale, tolerance, {'a': a, 'b': b})


def _exact_bound(label: str, holds: bool, where: Dict[str, Any] = None) -> Bound:
    """Pass/fail facts reported as 0 <= 0 or 1 <= 0"""
    return Bound(label, 0.0 if holds else 1.0, 0.0, 1.0, where or {})


# Function suites

def _eq2_identity(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p = _log_uniform(rng, *config.index_range)

    integral = lebesgue_integral(f, p)
    bounds = [
        _identity_bound('lebesgue_vs_rearranged', integral, rearrangement_integral(f, p), config.identity_tolerance),
        _identity_bound('lebesgue_vs_norm_power', integral,
                        lorentz_norm(f, LorentzIndex(p, p)).value ** p, config.identity_tolerance),
    ]
    return {'function': f.to_dict(), 'p': p}, build_report(bounds, {'p': p}, config.tolerance)


def _route_agreement(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p = _log_uniform(rng, *config.index_range)
    s = _log_uniform(rng, *config.index_range)

    closed = lorentz_norm(f, LorentzIndex(p, s)).value
    routed = lorentz_norm_via_distribution(f, p, s).value
    bound = _identity_bound('route_agreement', closed, routed, config.identity_tolerance)
    return {'function': f.to_dict(), 'p': p, 's': s}, build_report([bound], {'p': p, 's': s}, config.tolerance)


def _oracle_agreement(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    idx = LorentzIndex(_log_uniform(rng, *config.index_range), _log_uniform(rng, *config.index_range))

    closed = lorentz_norm(f, idx).value
    oracle = quadrature_norm_oracle(f, idx, config.oracle_subdivisions).value
    bound = _identity_bound('oracle_agreement', closed, oracle, config.oracle_tolerance)
    witness = {'p': idx.p, 'q': idx.q, 'subdivisions': config.oracle_subdivisions}
    return {'function': f.to_dict(), 'p': idx.p, 'q': idx.q}, build_report([bound], witness, config.tolerance)


def _chebyshev(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    alpha = _log_uniform(rng, *config.value_range)
    exponents = _increasing(rng, config.index_range, 2)

    report = check_chebyshev_bound(f, alpha, exponents, config.tolerance)
    return {'function': f.to_dict(), 'alpha': alpha, 'exponents': list(exponents)}, report


def _interpolation(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p1, p, p2 = _increasing(rng, config.index_range, 3)
    s = _log_uniform(rng, *config.index_range)

    report = check_interpolation(f, p1, p2, p, s, config.tolerance)
    return {'function': f.to_dict(), 'p1': p1, 'p2': p2, 'p': p, 's': s}, report


def _interpolation_infinite_top(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p1, p = _increasing(rng, config.index_range, 2)
    s = _log_uniform(rng, *config.index_range)

    report = check_interpolation_infinite_top(f, p1, p, s, config.tolerance)
    return {'function': f.to_dict(), 'p1': p1, 'p': p, 's': s}, report


def _two_point(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p1, r, p2 = _increasing(rng, config.index_range, 3)
    p2 = _maybe_infinite(rng, config, p2)
    q = _maybe_infinite(rng, config, _log_uniform(rng, *config.index_range))

    report = check_two_point(f, p1, r, p2, q, config.tolerance)
    return {'function': f.to_dict(), 'p1': p1, 'r': r, 'p2': p2, 'q': q}, report


def _sandwich(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p = _log_uniform(rng, *config.index_range)
    Q = _with_infinity(rng, config, generate_index_grid(rng, *config.index_range, config.grid_size_range))

    report = check_ilpq_sandwich(f, p, Q, config.tolerance)
    return {'function': f.to_dict(), 'p': p, 'Q': Q.to_list()}, report


def _endpoints(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    J = generate_index_grid(rng, *config.index_range, config.grid_size_range)
    q = _maybe_infinite(rng, config, _log_uniform(rng, *config.index_range))

    report = check_iljq_endpoints(f, J, q, config.tolerance)
    return {'function': f.to_dict(), 'J': J.to_list(), 'q': q}, report


def _two_sided(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    J = generate_index_grid(rng, *config.index_range, config.grid_size_range)
    Q = _with_infinity(rng, config, generate_index_grid(rng, *config.index_range, config.grid_size_range))

    report = check_iljq_two_sided(f, J, Q, config.tolerance)
    return {'function': f.to_dict(), 'J': J.to_list(), 'Q': Q.to_list()}, report


def _product(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    values = _log_uniform(rng, *config.value_range, size=len(f.atoms))
    zeros = rng.random(len(f.atoms)) < 0.1
    g = f.with_values([0.0 if zero else v for v, zero in zip(values.tolist(), zeros.tolist())])
    p = _maybe_infinite(rng, config, _log_uniform(rng, *config.index_range))

    report = check_product_bound(f, g, p, config.tolerance)
    return {'f': f.to_dict(), 'g': g.to_dict(), 'p': p}, report


def _ab_decomposition(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    J = generate_index_grid(rng, *config.index_range, config.grid_size_range)
    Q = _with_infinity(rng, config, generate_index_grid(rng, *config.index_range, config.grid_size_range))

    report = check_ab_decomposition(f, J, Q, config.tolerance)
    return {'function': f.to_dict(), 'J': J.to_list(), 'Q': Q.to_list()}, report


def _equimeasurability(rng, config) -> Trial:
    """f* and d_f as exact generalized inverses, level sets of equal measure"""
    f = generate_step_function(rng, config)
    f_star, d_f = rearrangement(f), distribution_profile(f)

    levels = sorted({0.0, *f_star.values})
    sample_levels = levels + [(a + b) / 2.0 for a, b in zip(levels, levels[1:])] + [levels[-1] * 2.0 + 1.0]
    bounds = [
        _exact_bound('level_measure', f_star.level_measure(alpha) == distribution(f, alpha).value, {'alpha': alpha})
        for alpha in sample_levels
    ]
    bounds.extend([
        _exact_bound('rearrangement_is_inverse', d_f.generalized_inverse() == f_star),
        _exact_bound('distribution_is_inverse', f_star.generalized_inverse() == d_f),
        _exact_bound('support_mass', f_star.support_end == f.support_mass),
    ])
    return {'function': f.to_dict()}, build_report(bounds, {}, config.tolerance)


def _degeneracy(rng, config) -> Trial:
    """L_{inf,q} only holds 0, L_{inf,inf} is the sup norm and 0 has norm 0"""
    f = generate_step_function(rng, config)
    zero = f.scaled(0.0)
    q = _log_uniform(rng, *config.index_range)
    p = _log_uniform(rng, *config.index_range)

    bounds = [
        _exact_bound('infinite_p', lorentz_norm(f, LorentzIndex(math.inf, q)).is_infinite, {'q': q}),
        _exact_bound('infinite_p_zero', lorentz_norm(zero, LorentzIndex(math.inf, q)).is_zero, {'q': q}),
        _exact_bound('sup_norm', lorentz_norm(f, LorentzIndex(math.inf, math.inf)).value
                     == lebesgue_norm(f, math.inf).value),
        _exact_bound('zero_norm', lorentz_norm(zero, LorentzIndex(p, q)).is_zero, {'p': p, 'q': q}),
    ]
    return {'function': f.to_dict(), 'p': p, 'q': q}, build_report(bounds, {}, config.tolerance)


def _weak_type(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    r = _log_uniform(rng, *config.index_range)
    return {'function': f.to_dict(), 'r': r}, check_weak_type(f, r, config.tolerance)


def _q_monotonicity(rng, config) -> Trial:
    f = generate_step_function(rng, config)
    p = _log_uniform(rng, *config.index_range)
    q, q1 = _increasing(rng, config.index_range, 2)
    q1 = _maybe_infinite(rng, config, q1)

    report = check_q_monotonicity(f, p, q, q1, config.tolerance)
    return {'function': f.to_dict(), 'p': p, 'q': q, 'q1': q1}, report


# Sequence suites

def _sequence_lp(rng, config) -> Trial:
    s = generate_norm_sequence(rng, config)
    p = _log_uniform(rng, *config.sequence_index_range)

    bounds = [
        _identity_bound('diagonal_is_lp', seq_lorentz_norm(s, p, p).value, classical_lp_norm(s, p),
                        config.identity_tolerance),
        _identity_bound('unit_mass_weak', seq_lorentz_norm(s, p, math.inf).value,
                        lorentz_norm(sequence_as_simple_function(s), LorentzIndex(p, math.inf)).value,
                        config.identity_tolerance),
    ]
    return {'sequence': s.to_dict(), 'p': p}, build_report(bounds, {'p': p}, config.tolerance)


def _sequence_q_inclusion(rng, config) -> Trial:
    s = generate_norm_sequence(rng, config)
    p = _log_uniform(rng, *config.sequence_index_range)
    q, q1 = _increasing(rng, config.sequence_index_range, 2)
    q1 = _maybe_infinite(rng, config, q1)

    report = check_sequence_q_inclusion(s, p, q, q1, config.tolerance)
    return {'sequence': s.to_dict(), 'p': p, 'q': q, 'q1': q1}, report


def _sequence_p_inclusion(rng, config) -> Trial:
    s = generate_norm_sequence(rng, config)
    p, p1 = _increasing(rng, config.sequence_index_range, 2)
    q = _maybe_infinite(rng, config, _log_uniform(rng, *config.sequence_index_range))
    if math.isfinite(q):
        p1 = _maybe_infinite(rng, config, p1)

    report = check_sequence_p_inclusion(s, p, p1, q, config.tolerance)
    return {'sequence': s.to_dict(), 'p': p, 'p1': p1, 'q': q}, report


def _sequence_intersection(rng, config) -> Trial:
    s = generate_norm_sequence(rng, config)
    J = generate_index_grid(rng, *config.sequence_index_range, config.grid_size_range)
    Q = generate_index_grid(rng, *config.sequence_index_range, config.grid_size_range)

    report = check_sequence_intersection(s, J, Q, config.tolerance)
    return {'sequence': s.to_dict(), 'J': J.to_list(), 'Q': Q.to_list()}, report


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    trial: Callable[[np.random.Generator, SuiteConfig], Trial]


SUITES: Dict[str, Suite] = {suite.name: suite for suite in (
    Suite('eq2-identity', 'integral of |f|^p equals integral of f*^p', _eq2_identity),
    Suite('route-agreement', 'closed form equals the distribution-function formula', _route_agreement),
    Suite('oracle-agreement', 'closed form equals the quadrature oracle', _oracle_agreement),
    Suite('chebyshev-e6', 'd_f(alpha) <= ||f||_{p,inf}^p / alpha^p', _chebyshev),
    Suite('prop3.1', 'interpolation between two weak norms', _interpolation),
    Suite('prop3.1-inf', 'interpolation between a weak norm and the sup norm', _interpolation_infinite_top),
    Suite('prop3.2', 'two-point bound with constant 2^{1/q}', _two_point),
    Suite('eq8-sandwich', 'sup over Q of ||f||_{p,q} against ||f||_{p,m_Q}', _sandwich),
    Suite('prop3.5-endpoints', 'grid norms controlled by the endpoint norms', _endpoints),
    Suite('thm-K', 'two-sided bound with constant K', _two_sided),
    Suite('prop3.6-product', 'rearranged products and the weak product bound', _product),
    Suite('prop3.7-ab', 'grid supremum against the m_Q column', _ab_decomposition),
    Suite('seq-def-lp', 'diagonal sequence norms are l_p norms', _sequence_lp),
    Suite('prop22-i', 'sequence inclusion in the second index', _sequence_q_inclusion),
    Suite('prop22-ii', 'sequence inclusion in the first index', _sequence_p_inclusion),
    Suite('prop-p15', 'sequence grid supremum against the corner norm', _sequence_intersection),
    Suite('equimeasurability', 'f* and d_f are equimeasurable inverses', _equimeasurability),
    Suite('degeneracy', 'infinite first index and zero-function corners', _degeneracy),
    Suite('weak-type', '||f||_{r,inf} <= ||f||_r', _weak_type),
    Suite('q-monotonicity', 'inclusion in the second index with (q/p)^{1/q-1/q1}', _q_monotonicity),
)}


def get_suite(name: str) -> Suite:
    if name not in SUITES:
        raise UsageError(f"Unknown suite {name!r}. Must be one of: {', '.join(SUITES)}", 'suite')
    return SUITES[name]


class SuiteController:
    """Runs suites and replays single trials"""

    def __init__(self, show_progress: bool = False):
        self.logger = logging.getLogger(__name__)
        self.show_progress = show_progress

    def run_trial(self, config: SuiteConfig, offset: int) -> Trial:
        suite = get_suite(config.suite_name)
        return suite.trial(trial_rng(config.seed, offset), config)

    @log_with_context({'component': 'suite_controller'})
    def run_suite(self, config: SuiteConfig) -> RunReport:
        """Execute `config.trials` trials and aggregate failures and tightness"""
        suite = get_suite(config.suite_name)
        start_time = time.time()
        failures: List[FailureRecord] = []
        max_tightness = 0.0

        self.logger.info(f"Running suite {suite.name} with {config.trials} trials from seed {config.seed}")
        trials = tqdm(
            range(config.trials),
            desc=suite.name,
            unit='trial',
            file=sys.stderr,
            disable=not self.show_progress,
            leave=False
        )
        for offset in trials:
            trial_input, report = suite.trial(trial_rng(config.seed, offset), config)
            max_tightness = max(max_tightness, report.tightness)
            if not report.passed:
                log_check_failure(suite.name, offset, report)
                failures.append(FailureRecord(offset, trial_input, report))

        run_report = RunReport(
            suite_name=suite.name,
            seed=config.seed,
            trials_run=config.trials,
            failures=failures,
            max_tightness=max_tightness,
            wall_time=time.time() - start_time
        )
        log_suite_run(run_report)
        return run_report

    def run_all(self, config: SuiteConfig) -> List[RunReport]:
        """Every registered suite with the same seed and trial count"""
        return [self.run_suite(config.for_suite(name)) for name in SUITES]

    def replay_trial(self, config: SuiteConfig, offset: int) -> FailureRecord:
        """Re-run the single trial at `offset`"""
        if offset < 0 or offset >= config.trials:
            self.logger.warning(f"Replaying offset {offset} outside the {config.trials} trials of the run")
        trial_input, report = self.run_trial(config, offset)
        return FailureRecord(offset, trial_input, report)


def run_suite(config: SuiteConfig, progress: bool = False) -> RunReport:
    return SuiteController(show_progress=progress).run_suite(config)


def replay_trial(config: SuiteConfig, offset: int) -> FailureRecord:
    return SuiteController().replay_trial(config, offset)
