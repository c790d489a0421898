"""
Unit tests for Lorentz quasi-norms of simple functions.
"""

import math

import pytest

from controllers.suite_controller import generate_step_function, trial_rng
from utils.data_structures import SuiteConfig
from utils.lorentz_norms import (
    LorentzIndex, lebesgue_integral, lebesgue_norm, lorentz_norm, lorentz_norm_via_distribution,
    norm_table, norms_close, quadrature_norm_oracle, rearrangement_integral, weak_norm
)
from utils.measure_core import distribution, make_simple_function
from utils.validators import ValidationError

RANDOM_CONFIG = SuiteConfig(suite_name='route-agreement', trials=1, seed=0)


def _random_functions(count: int):
    return [generate_step_function(trial_rng(5, offset), RANDOM_CONFIG) for offset in range(count)]


@pytest.mark.parametrize("p, q, m", [(1, 1, 1.0), (2, 1, 3.0), (0.5, 4, 0.2), (3, 0.7, 10.0), (10, 0.1, 1e3)])
def test_indicator_norm(p, q, m) -> None:
    """||1_m||_{p,q} = (p/q)^{1/q} m^{1/p}."""
    f = make_simple_function([(m, 1.0)])
    expected = (p / q) ** (1 / q) * m ** (1 / p)
    assert lorentz_norm(f, LorentzIndex(p, q)).value == pytest.approx(expected, rel=1e-12)


def test_two_atom_norms(two_atom) -> None:
    """L_{1,1} is the integral, L_{1,inf} the largest t f*(t)."""
    assert lorentz_norm(two_atom, LorentzIndex(1, 1)).value == pytest.approx(3.0, rel=1e-12)
    assert lorentz_norm(two_atom, LorentzIndex(1, math.inf)).value == 2.0


def test_tiny_atoms_keep_the_norm_positive() -> None:
    """Powers below double range go through logarithms instead of rounding to 0."""
    f = make_simple_function([(1e-5, 1.0), (1.0, 1e-40)])
    single = make_simple_function([(1e-5, 1.0)])
    idx = LorentzIndex(0.1, 10)

    norm = lorentz_norm(f, idx).value
    alone = lorentz_norm(single, idx).value
    assert alone == pytest.approx(1e-50 * 0.01 ** 0.1, rel=1e-9)
    assert norm == pytest.approx(6.31e-41, rel=1e-3)
    assert norm >= alone
    assert lorentz_norm_via_distribution(f, 0.1, 10).value == pytest.approx(norm, rel=1e-9)


def test_weak_norm_with_underflowing_power() -> None:
    """T^{1/p} underflows but v T^{1/p} does not."""
    f = make_simple_function([(1e-5, 1e300)])
    assert weak_norm(f, 0.01) == pytest.approx(1e-200, rel=1e-9)


@pytest.mark.parametrize("p, q", [(1, 1), (0.3, 5), (2, math.inf), (math.inf, 2), (math.inf, math.inf)])
def test_zero_function_has_zero_norm(zero_function, p, q) -> None:
    """Every quasi-norm of 0 is 0."""
    assert lorentz_norm(zero_function, LorentzIndex(p, q)).is_zero


def test_infinite_first_index(two_atom) -> None:
    """L_{inf,q} only holds 0; L_{inf,inf} is the sup norm."""
    assert lorentz_norm(two_atom, LorentzIndex(math.inf, 2)).is_infinite
    assert lorentz_norm(two_atom, LorentzIndex(math.inf, math.inf)).value == 2.0


def test_index_validation() -> None:
    """Indices live in (0, inf]."""
    with pytest.raises(ValidationError):
        LorentzIndex(0, 1)
    with pytest.raises(ValidationError):
        LorentzIndex(1, -2)
    assert LorentzIndex('inf', 2).p == math.inf


def test_distribution_route_examples(indicator, zero_function, two_atom) -> None:
    """The distribution-function formula on the worked examples."""
    assert lorentz_norm_via_distribution(indicator, 3, 2).value == pytest.approx((3 / 2) ** 0.5, rel=1e-12)
    assert lorentz_norm_via_distribution(zero_function, 2, 1).is_zero

    routed = lorentz_norm_via_distribution(two_atom, 2, 1).value
    assert routed == pytest.approx(2 + 2 * math.sqrt(2), rel=1e-12)
    assert routed == pytest.approx(lorentz_norm(two_atom, LorentzIndex(2, 1)).value, rel=1e-12)


def test_route_agreement_on_random_functions() -> None:
    """Closed form and distribution route agree to 1e-12."""
    for index, f in enumerate(_random_functions(30)):
        p, s = 0.1 + index * 0.3, 9.0 - index * 0.25
        a = lorentz_norm(f, LorentzIndex(p, s)).value
        b = lorentz_norm_via_distribution(f, p, s).value
        assert norms_close(a, b, 1e-12)


def test_lebesgue_norm_examples(two_atom) -> None:
    """Root only from p = 1 on; sup norm for p = inf."""
    assert lebesgue_norm(two_atom, 1).value == pytest.approx(3.0)
    assert lebesgue_norm(two_atom, 0.5).value == pytest.approx(math.sqrt(2) + 1, rel=1e-12)
    assert lebesgue_norm(two_atom, math.inf).value == 2.0


def test_integral_identity(two_atom) -> None:
    """Integral of |f|^p equals integral of f*^p and ||f||_{p,p}^p."""
    assert rearrangement_integral(two_atom, 1) == 3.0
    for f in _random_functions(30):
        for p in (0.2, 1.0, 2.5, 7.0):
            integral = lebesgue_integral(f, p)
            assert norms_close(integral, rearrangement_integral(f, p), 1e-12)
            assert norms_close(integral, lorentz_norm(f, LorentzIndex(p, p)).value ** p, 1e-12)


def test_diagonal_matches_lebesgue_norm() -> None:
    """||f||_{p,p} is ||f||_p for p >= 1, and its p-th power for p < 1."""
    for f in _random_functions(10):
        assert norms_close(lorentz_norm(f, LorentzIndex(2, 2)).value, lebesgue_norm(f, 2).value, 1e-12)
        assert norms_close(lorentz_norm(f, LorentzIndex(0.5, 0.5)).value ** 0.5, lebesgue_norm(f, 0.5).value, 1e-12)


def test_positive_homogeneity() -> None:
    """||c f|| = c ||f||."""
    for f in _random_functions(10):
        for idx in (LorentzIndex(1.5, 0.4), LorentzIndex(0.2, math.inf), LorentzIndex(math.inf, math.inf)):
            assert lorentz_norm(f.scaled(3.0), idx).value == pytest.approx(3.0 * lorentz_norm(f, idx).value, rel=1e-12)


def test_chebyshev_bound_random() -> None:
    """d_f(alpha) <= ||f||_{p,inf}^p / alpha^p."""
    for f in _random_functions(20):
        for alpha in (1e-3, 0.5, 10.0, 500.0):
            for p in (0.1, 1.0, 4.0):
                assert distribution(f, alpha).value <= (weak_norm(f, p) / alpha) ** p * (1 + 1e-9)


def test_quadrature_oracle_examples(indicator, two_atom, zero_function) -> None:
    """The midpoint oracle lands within 1e-4 of the closed forms."""
    assert quadrature_norm_oracle(indicator, LorentzIndex(2, 2), 100000).value == pytest.approx(1.0, rel=1e-4)
    assert quadrature_norm_oracle(two_atom, LorentzIndex(1, 1), 100000).value == pytest.approx(3.0, rel=1e-4)
    assert quadrature_norm_oracle(zero_function, LorentzIndex(1, 1), 10).is_zero


def test_quadrature_oracle_small_ratio() -> None:
    """q/p = 0.01 spreads the first segment over a very long log range."""
    f = make_simple_function([(2.0, 3.0), (5.0, 1.0)])
    idx = LorentzIndex(10, 0.1)
    assert norms_close(quadrature_norm_oracle(f, idx, 20000).value, lorentz_norm(f, idx).value, 1e-4)


def test_quadrature_oracle_needs_finite_indices(indicator) -> None:
    """No oracle for infinite p or q."""
    with pytest.raises(ValidationError):
        quadrature_norm_oracle(indicator, LorentzIndex(math.inf, 1), 10)
    with pytest.raises(ValidationError):
        quadrature_norm_oracle(indicator, LorentzIndex(1, 1), 0)


def test_norm_table(indicator) -> None:
    """Rows over the grid in request order."""
    rows = norm_table(indicator, [1, 2], [1, 2])
    assert [(row['p'], row['q']) for row in rows] == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert rows[2]['norm'] == pytest.approx(2.0)


def test_norms_close() -> None:
    """Relative closeness scaled by max(1, |a|, |b|)."""
    assert norms_close(math.inf, math.inf, 1e-12)
    assert not norms_close(math.inf, 1e300, 1e-12)
    assert norms_close(1.0, 1.0 + 1e-13, 1e-12)
    assert not norms_close(1.0, 1.1, 1e-12)
    assert norms_close(0.0, 1e-13, 1e-12)
