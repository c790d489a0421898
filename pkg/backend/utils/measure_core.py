# backend/utils/measure_core.py - Simple Functions, Distribution Functions, Rearrangements
"""
Nonnegative simple functions on an abstract measure space.

A function is stored as |f|: a finite list of atoms, each carrying a positive
mass and a nonnegative value. The distribution function and the decreasing
rearrangement are both StepProfiles, two right-continuous non-increasing
step functions on [0, inf) that are generalized inverses of each other.
"""

import bisect
import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from utils.extended_real import ExtReal
from utils.validators import DomainMismatchError, ValidationError, validate_nonnegative

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Atom:
    """One piece of the support: a set of measure `mass` where |f| equals `value`"""
    atom_id: str
    mass: float
    value: float

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.atom_id, 'mass': self.mass, 'value': self.value}


@dataclass(frozen=True)
class SimpleFunction:
    """Nonnegative simple function as finitely many positive-mass atoms"""
    atoms: Tuple[Atom, ...] = ()

    def __post_init__(self):
        atoms = tuple(self.atoms)
        seen = set()
        for atom in atoms:
            if atom.atom_id in seen:
                raise ValidationError(f"Duplicate atom id {atom.atom_id!r}", 'atom_id')
            seen.add(atom.atom_id)
            validate_nonnegative(atom.value, 'value')
            validate_nonnegative(atom.mass, 'mass')
            if atom.mass == 0:
                raise ValidationError("Atoms must carry positive mass", 'mass')

        if not math.isfinite(math.fsum(atom.mass for atom in atoms)):
            raise ValidationError("Total mass must be finite", 'mass')

        object.__setattr__(self, 'atoms', atoms)

    @property
    def total_mass(self) -> float:
        return math.fsum(atom.mass for atom in self.atoms)

    @property
    def support_mass(self) -> float:
        """Measure of {|f| > 0}"""
        return math.fsum(atom.mass for atom in self.atoms if atom.value > 0)

    @property
    def is_zero(self) -> bool:
        return all(atom.value == 0 for atom in self.atoms)

    @property
    def domain(self) -> Tuple[Tuple[str, float], ...]:
        return tuple((atom.atom_id, atom.mass) for atom in self.atoms)

    def scaled(self, factor: float) -> 'SimpleFunction':
        """c * f for c >= 0"""
        factor = validate_nonnegative(factor, 'factor')
        return SimpleFunction(tuple(Atom(a.atom_id, a.mass, a.value * factor) for a in self.atoms))

    def with_values(self, values: Sequence[float]) -> 'SimpleFunction':
        """Same atoms, new values"""
        if len(values) != len(self.atoms):
            raise DomainMismatchError("Value count does not match atom count", 'values')
        return SimpleFunction(tuple(Atom(a.atom_id, a.mass, float(v)) for a, v in zip(self.atoms, values)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': 'step',
            'atoms': [{'mass': atom.mass, 'value': atom.value} for atom in self.atoms]
        }


@dataclass(frozen=True)
class Segment:
    value: float
    right_endpoint: float


@dataclass(frozen=True)
class StepProfile:
    """
    Right-continuous, non-increasing step function on [0, inf).

    Segment k covers [right_{k-1}, right_k) with right_0 = 0; the function is
    0 from the last endpoint on. Values are strictly decreasing and positive,
    endpoints strictly increasing, so equal functions have equal profiles.
    """
    segments: Tuple[Segment, ...] = ()
    _endpoints: Tuple[float, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        segments = tuple(self.segments)
        previous_value, previous_end = math.inf, 0.0
        for segment in segments:
            if not (0 < segment.value < previous_value):
                raise ValidationError("Profile values must be positive and strictly decreasing", 'value')
            if not (previous_end < segment.right_endpoint < math.inf):
                raise ValidationError("Profile endpoints must be finite and strictly increasing", 'right_endpoint')
            previous_value, previous_end = segment.value, segment.right_endpoint

        object.__setattr__(self, 'segments', segments)
        object.__setattr__(self, '_endpoints', tuple(s.right_endpoint for s in segments))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> 'StepProfile':
        return cls(tuple(Segment(float(v), float(r)) for v, r in pairs))

    @property
    def values(self) -> Tuple[float, ...]:
        return tuple(s.value for s in self.segments)

    @property
    def endpoints(self) -> Tuple[float, ...]:
        return self._endpoints

    @property
    def is_empty(self) -> bool:
        return not self.segments

    @property
    def support_end(self) -> float:
        return self._endpoints[-1] if self._endpoints else 0.0

    @property
    def peak(self) -> float:
        """Value on the first segment (the supremum of the profile)"""
        return self.segments[0].value if self.segments else 0.0

    def evaluate(self, t: float) -> float:
        return evaluate(self, t)

    def evaluate_many(self, ts) -> np.ndarray:
        """Vectorized evaluate over an array of t >= 0"""
        ts = np.asarray(ts, dtype=float)
        if np.any(ts < 0):
            raise ValidationError("Profiles are defined on [0, inf)", 't')
        table = np.append(np.asarray(self.values, dtype=float), 0.0)
        index = np.searchsorted(np.asarray(self._endpoints, dtype=float), ts, side='right')
        return table[index]

    def level_measure(self, alpha: float) -> float:
        """Lebesgue measure of {t : P(t) > alpha}"""
        alpha = validate_nonnegative(alpha, 'alpha')
        measure = 0.0
        for segment in self.segments:
            if segment.value > alpha:
                measure = segment.right_endpoint
            else:
                break
        return measure

    def generalized_inverse(self) -> 'StepProfile':
        """
        The profile Q(a) = |{t : P(t) > a}|.

        Segments (v_k, T_k) turn into (T_k, v_k) read from the last segment back,
        so the inverse of the rearrangement is the distribution function and the
        inverse of the distribution function is the rearrangement.
        """
        return StepProfile(tuple(Segment(s.right_endpoint, s.value) for s in reversed(self.segments)))

    def breakpoints(self) -> Tuple[float, ...]:
        return self._endpoints

    def to_dict(self) -> Dict[str, Any]:
        left = 0.0
        rows = []
        for segment in self.segments:
            rows.append({'value': segment.value, 'left': left, 'right': segment.right_endpoint})
            left = segment.right_endpoint
        return {'kind': 'profile', 'segments': rows}


def make_simple_function(raw_atoms: Iterable[Tuple[float, float]]) -> SimpleFunction:
    """Build a SimpleFunction from (mass, value) pairs, dropping zero-mass atoms"""
    atoms = []
    for index, pair in enumerate(raw_atoms):
        try:
            mass, value = pair
        except (TypeError, ValueError):
            raise ValidationError(f"Atom {index} must be a (mass, value) pair", f"atoms.{index}")

        mass = validate_nonnegative(mass, f"atoms.{index}.mass")
        value = validate_nonnegative(value, f"atoms.{index}.value")
        if mass == 0:
            continue
        atoms.append(Atom(f"a{index}", mass, value))

    return SimpleFunction(tuple(atoms))


def distribution(f: SimpleFunction, alpha: float) -> ExtReal:
    """d_f(alpha) = mu({|f| > alpha})"""
    alpha = validate_nonnegative(alpha, 'alpha')
    return ExtReal(math.fsum(atom.mass for atom in f.atoms if atom.value > alpha))


def _upper_level_sets(f: SimpleFunction) -> List[Tuple[float, float]]:
    """
    Distinct positive values v_1 > v_2 > ... with T_k = mu({|f| >= v_k}).

    Each T_k is a correctly rounded sum over the atoms it contains, so the
    rearrangement, the distribution profile and `distribution` agree exactly.
    """
    positive = sorted((a for a in f.atoms if a.value > 0), key=lambda a: a.value, reverse=True)
    levels = []
    for index, atom in enumerate(positive):
        if index + 1 < len(positive) and positive[index + 1].value == atom.value:
            continue
        levels.append((atom.value, math.fsum(a.mass for a in positive[:index + 1])))
    return levels


def distribution_profile(f: SimpleFunction) -> StepProfile:
    """d_f as a StepProfile over alpha, with breakpoints at the positive atom values"""
    levels = _upper_level_sets(f)
    return StepProfile(tuple(Segment(total, value) for value, total in reversed(levels)))


def rearrangement(f: SimpleFunction) -> StepProfile:
    """f*(t) = inf{s > 0 : d_f(s) <= t}; equals v_k on [T_{k-1}, T_k)"""
    return StepProfile(tuple(Segment(value, total) for value, total in _upper_level_sets(f)))


def evaluate(profile: StepProfile, t: float) -> float:
    """
    Value at t >= 0; right-continuous, 0 from the last endpoint on.

    Rearrangements of finite-mass simple functions are never infinite, so the
    inf-of-empty-set branch of f* does not reach this function.
    """
    t = validate_nonnegative(t, 't')
    index = bisect.bisect_right(profile.endpoints, t)
    if index >= len(profile.segments):
        return 0.0
    return profile.segments[index].value


def pointwise_product(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    """Atomwise product over a shared atom list"""
    if f.domain != g.domain:
        logger.debug(f"Domain mismatch: {len(f.atoms)} atoms vs {len(g.atoms)} atoms")
        raise DomainMismatchError("Pointwise products need the same atom ids and masses", 'atoms')

    return SimpleFunction(tuple(
        Atom(a.atom_id, a.mass, a.value * b.value) for a, b in zip(f.atoms, g.atoms)
    ))
