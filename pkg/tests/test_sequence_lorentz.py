"""
Unit tests for Lorentz sequence norms and their inclusions.
"""

import math

import pytest

from controllers.suite_controller import generate_norm_sequence, trial_rng
from utils.data_structures import SuiteConfig
from utils.embeddings import IndexGrid
from utils.lorentz_norms import LorentzIndex, lorentz_norm
from utils.sequence_lorentz import (
    NormSequence, check_sequence_intersection, check_sequence_p_inclusion, check_sequence_q_inclusion,
    classical_lp_norm, seq_lorentz_norm, seq_rearrange, sequence_as_simple_function
)
from utils.validators import OutOfDefinitionError, ValidationError

RANDOM_CONFIG = SuiteConfig(suite_name='prop22-i', trials=1, seed=0)


def test_seq_rearrange() -> None:
    """Sorted descending with zeros dropped."""
    assert seq_rearrange(NormSequence((1.0, 3.0, 2.0))).terms == (3.0, 2.0, 1.0)
    assert seq_rearrange(NormSequence((0.0, 0.0))).terms == ()
    assert seq_rearrange(NormSequence((2.0, 0.0, 2.0, 1.0))).terms == (2.0, 2.0, 1.0)


def test_negative_terms_rejected() -> None:
    """Terms are norms."""
    with pytest.raises(ValidationError):
        NormSequence((1.0, -1.0))


@pytest.mark.parametrize("p, q", [(1, 1), (2, math.inf), (math.inf, 3), (1.5, 2)])
def test_single_unit_term(p, q) -> None:
    """The first unit vector has norm 1 everywhere."""
    assert seq_lorentz_norm(NormSequence((1.0,)), p, q).value == pytest.approx(1.0)


def test_two_unit_terms() -> None:
    """||(1, 1)||_{1,1} = 2 and ||(1, 1)||_{2,inf} = sqrt(2)."""
    s = NormSequence((1.0, 1.0))
    assert seq_lorentz_norm(s, 1, 1).value == pytest.approx(2.0)
    assert seq_lorentz_norm(s, 2, math.inf).value == pytest.approx(math.sqrt(2))


def test_out_of_definition() -> None:
    """(inf, inf) and indices below 1 are refused."""
    s = NormSequence((1.0,))
    with pytest.raises(OutOfDefinitionError):
        seq_lorentz_norm(s, math.inf, math.inf)
    with pytest.raises(OutOfDefinitionError):
        seq_lorentz_norm(s, 0.5, 1)


def test_zero_sequence() -> None:
    """All zeros has norm 0."""
    assert seq_lorentz_norm(NormSequence((0.0, 0.0)), 2, 3).is_zero
    assert seq_lorentz_norm(NormSequence(), 2, math.inf).is_zero


@pytest.mark.parametrize("p", [1.0, 2.0, 3.5, math.inf])
def test_diagonal_is_classical_lp(p) -> None:
    """||s||_{p,p} = ||s||_p."""
    s = NormSequence((3.0, 1.0, 2.0))
    if math.isinf(p):
        assert classical_lp_norm(s, p) == 3.0
        return
    assert seq_lorentz_norm(s, p, p).value == pytest.approx(classical_lp_norm(s, p), rel=1e-12)


def test_permutation_invariance() -> None:
    """Only the multiset of terms matters."""
    a, b = NormSequence((0.5, 4.0, 2.0, 0.0)), NormSequence((2.0, 0.0, 0.5, 4.0))
    for p, q in ((1.0, 1.0), (2.0, 5.0), (3.0, math.inf)):
        assert seq_lorentz_norm(a, p, q).value == seq_lorentz_norm(b, p, q).value


def test_termwise_larger_sequences_have_larger_norms() -> None:
    """s_i <= s'_i for every i gives ||s||_{p,q} <= ||s'||_{p,q}."""
    for offset in range(40):
        rng = trial_rng(13, offset)
        s = generate_norm_sequence(rng, RANDOM_CONFIG)
        bumps = rng.uniform(1.0, 3.0, len(s.terms)).tolist()
        larger = NormSequence(tuple(t * b for t, b in zip(s.terms, bumps)))
        for p, q in ((1.0, 1.0), (1.5, 3.0), (4.0, 2.0), (2.0, math.inf), (math.inf, 2.0)):
            assert seq_lorentz_norm(s, p, q).value <= seq_lorentz_norm(larger, p, q).value * (1 + 1e-12)


def test_unit_mass_embedding_matches_weak_norm() -> None:
    """Unit-mass atoms turn the weak sequence norm into the weak function norm."""
    s = NormSequence((3.0, 1.0, 2.0))
    f = sequence_as_simple_function(s)
    assert lorentz_norm(f, LorentzIndex(2, math.inf)).value == pytest.approx(seq_lorentz_norm(s, 2, math.inf).value)
    assert seq_lorentz_norm(s, 2, math.inf).value == pytest.approx(2 * math.sqrt(2))


def test_q_inclusion_example() -> None:
    """(1, 1) with p = q = 1, q1 = inf: 2 <= 1 * 2."""
    report = check_sequence_q_inclusion(NormSequence((1.0, 1.0)), 1, 1, math.inf)
    assert report.passed
    assert report.lhs.value == pytest.approx(2.0)
    assert report.witness['constant_gap'] == 1.0


def test_q_inclusion_sharp_constant() -> None:
    """p < q: the sharp constant (q/p)^{1/q - 1/q1} sits below max{1, q/p}."""
    report = check_sequence_q_inclusion(NormSequence((5.0, 3.0, 2.0, 1.0)), 1, 2, 4)
    assert report.passed
    assert report.witness['constant_gap'] == pytest.approx(2.0 / 2.0 ** 0.25)
    with pytest.raises(OutOfDefinitionError):
        check_sequence_q_inclusion(NormSequence((1.0,)), math.inf, 1, 2)


def test_p_inclusion_example() -> None:
    """||(1, 1)||_{2,inf} = sqrt(2) <= ||(1, 1)||_{1,inf} = 2."""
    report = check_sequence_p_inclusion(NormSequence((1.0, 1.0)), 1, 2, math.inf)
    assert report.passed
    assert report.lhs.value == pytest.approx(math.sqrt(2))
    assert report.rhs.value == pytest.approx(2.0)
    with pytest.raises(OutOfDefinitionError):
        check_sequence_p_inclusion(NormSequence((1.0,)), 1, math.inf, math.inf)


def test_intersection_example() -> None:
    """(1, 1) over J = Q = {1, 2}: the supremum is the corner norm 2."""
    report = check_sequence_intersection(NormSequence((1.0, 1.0)), IndexGrid((1.0, 2.0)), IndexGrid((1.0, 2.0)))
    assert report.passed
    labels = {bound['label'] for bound in report.bounds}
    assert labels == {'intersection', 'row', 'row_sharp', 'corner_column'}


def test_intersection_grid_bounds() -> None:
    """Grids must lie in [1, inf)."""
    s = NormSequence((1.0,))
    with pytest.raises(OutOfDefinitionError):
        check_sequence_intersection(s, IndexGrid((0.5, 2.0)), IndexGrid((1.0, 2.0)))
    with pytest.raises(OutOfDefinitionError):
        check_sequence_intersection(s, IndexGrid((1.0, 2.0)), IndexGrid((1.0, math.inf)))
