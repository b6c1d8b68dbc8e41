"""Greedy construction of h-Sidon perturbations.

Given a finite set A and a target point a*, ``forbidden_set`` lists the
finitely many shifts x for which some pair of shifted sumsets
``rA + (h - r)(a* + x)`` and ``sA + (h - s)(a* + x)`` (r != s) meet.
``perturb_point`` steps away from a* by a nonzero shift smaller in absolute
value than every nonzero forbidden shift, and ``perturb_sequence`` repeats
this one point at a time so every prefix stays h-Sidon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import lcm
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import DomainError, DuplicateElementError, InvalidBoundError, InvalidPlanError
from .field_abs import (
    INFINITE,
    AbsoluteValue,
    abs_value,
    format_magnitude,
    format_rational,
    magnitude_min,
    min_nonzero_abs_scaled,
    small_nonzero_element,
)
from .setops import FiniteSet, common_denominator, finite_set, int_h_fold

EpsilonSource = Union[Sequence, Callable[[int], Fraction]]


def _scaled_forbidden(A: FiniteSet, a_star: Fraction, h: int) -> Tuple[set, int]:
    """Forbidden shifts as integers over one common denominator.

    Returns ``(N, scale)`` with the forbidden set equal to ``{n / scale}``.
    With D clearing the denominators of A and a*, and L = lcm(1..h), the
    shift from the pair (r, s), d = r - s, is (t - d * D * a*) / (d * D) for
    t in D * (rA - sA); multiplying through by D * L gives integers.
    """
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    if not A:
        return set(), 1
    D = common_denominator((*A, a_star))
    L = lcm(*range(1, h + 1))
    ints = tuple(int(a * D) for a in A)
    star = int(a_star * D)
    folds = [int_h_fold(ints, j) for j in range(h + 1)]
    out: set = set()
    for r in range(1, h + 1):
        plus = folds[r]
        for s in range(r):
            d = r - s
            m = L // d
            offset = d * star
            diffs = {x - y for x in plus for y in folds[s]}
            out.update((t - offset) * m for t in diffs)
    return out, D * L


def forbidden_set(A: Iterable, a_star, h: int) -> FiniteSet:
    """Union over 0 <= s < r <= h of ``(1/(r - s)) * (rA - sA) - a*``."""
    A = finite_set(A)
    a_star = Fraction(a_star)
    nums, scale = _scaled_forbidden(A, a_star, h)
    return finite_set(Fraction(n, scale) for n in nums)


@dataclass(frozen=True)
class PointStep:
    """One application of ``perturb_point``, kept for the audit trace."""

    a: Fraction
    b: Fraction
    forbidden_size: int
    delta1: object
    x: Fraction
    displacement: Fraction


def _perturb_point(A: FiniteSet, a_star: Fraction, delta, h: int, av: AbsoluteValue) -> PointStep:
    if delta is INFINITE:
        raise InvalidBoundError("delta must be finite")
    delta = Fraction(delta)
    if delta <= 0:
        raise InvalidBoundError(f"delta must be positive, got {delta}")
    nums, scale = _scaled_forbidden(A, a_star, h)
    delta1 = min_nonzero_abs_scaled(nums, scale, av)
    x = small_nonzero_element(magnitude_min(delta1, delta), av)
    b = a_star + x
    return PointStep(a_star, b, len(nums), delta1, x, abs_value(x, av))


def perturb_point(A: Iterable, a_star, delta, h: int, av: Optional[AbsoluteValue] = None) -> Fraction:
    """A point b with |b - a*| < delta whose shifted sumsets over A are disjoint.

    a* may itself belong to A; the construction never needs a* outside A.
    """
    av = av or AbsoluteValue.archimedean()
    return _perturb_point(finite_set(A), Fraction(a_star), delta, h, av).b


@dataclass(frozen=True)
class PerturbationPlan:
    """Per-index bounds eps_i > 0 (1-based), the order h, and the absolute value.

    ``epsilons`` is either a sequence or a callable mapping i to eps_i.
    """

    epsilons: EpsilonSource
    h: int
    av: AbsoluteValue = AbsoluteValue.archimedean()

    def __post_init__(self):
        if self.h < 1:
            raise InvalidPlanError(f"h must be >= 1, got {self.h}")
        if not callable(self.epsilons):
            eps = tuple(Fraction(e) for e in self.epsilons)
            for i, e in enumerate(eps, 1):
                if e <= 0:
                    raise InvalidPlanError(f"epsilon_{i} = {e} is not positive")
            object.__setattr__(self, "epsilons", eps)

    def epsilon(self, i: int) -> Fraction:
        if callable(self.epsilons):
            e = Fraction(self.epsilons(i))
        else:
            if i > len(self.epsilons):
                raise InvalidPlanError(f"no epsilon for index {i}; plan covers {len(self.epsilons)}")
            e = self.epsilons[i - 1]
        if e <= 0:
            raise InvalidPlanError(f"epsilon_{i} = {e} is not positive")
        return e

    @classmethod
    def constant(cls, eps, h: int, av: Optional[AbsoluteValue] = None) -> "PerturbationPlan":
        eps = Fraction(eps)
        return cls(lambda i: eps, h, av or AbsoluteValue.archimedean())

    @classmethod
    def harmonic(cls, h: int, av: Optional[AbsoluteValue] = None) -> "PerturbationPlan":
        """eps_i = 1/i, so the displacements tend to zero."""
        return cls(lambda i: Fraction(1, i), h, av or AbsoluteValue.archimedean())


@dataclass(frozen=True)
class TraceStep:
    i: int
    a: Fraction
    b: Fraction
    forbidden_size: int
    delta1: object
    x: Fraction
    displacement: Fraction

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "delta1": format_magnitude(self.delta1),
            "x": format_rational(self.x),
            "C_size": self.forbidden_size,
            "displacement": format_rational(self.displacement),
        }


def perturb_stream(alpha: Iterable, plan: PerturbationPlan, allow_duplicates: bool = False) -> Iterator[TraceStep]:
    """Lazily perturb ``alpha`` one element at a time.

    Yields one ``TraceStep`` per input element, in index order. The first
    element is kept as is. ``allow_duplicates`` lifts the requirement that
    ``alpha`` be one-to-one; the output is distinct either way.
    """
    placed: List[Fraction] = []
    first_seen: dict = {}
    for i, a in zip(count(1), alpha):
        a = Fraction(a)
        if not allow_duplicates:
            if a in first_seen:
                raise DuplicateElementError(first_seen[a], i, format_rational(a))
            first_seen[a] = i
        eps = plan.epsilon(i)
        if i == 1:
            step = TraceStep(1, a, a, 0, INFINITE, Fraction(0), Fraction(0))
        else:
            ps = _perturb_point(tuple(placed), a, eps, plan.h, plan.av)
            step = TraceStep(i, a, ps.b, ps.forbidden_size, ps.delta1, ps.x, ps.displacement)
        placed.append(step.b)
        yield step


def perturb_sequence(
    alpha: Sequence, plan: PerturbationPlan, allow_duplicates: bool = False
) -> Tuple[List[Fraction], List[TraceStep]]:
    """Perturb a finite sequence; returns ``(beta, trace)``.

    The trace holds one record per moved element (index 2 onward).
    """
    alpha = list(alpha)
    if not callable(plan.epsilons) and len(plan.epsilons) < len(alpha):
        raise InvalidPlanError(f"plan covers {len(plan.epsilons)} indices, alpha has {len(alpha)}")
    steps = list(perturb_stream(alpha, plan, allow_duplicates))
    return [s.b for s in steps], [s for s in steps if s.i > 1]
