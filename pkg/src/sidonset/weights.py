"""Weight vectors and the hyperplanes they cut out.

A weight vector of order h over indices 1..k is an integer vector w with
nonempty support, zero coordinate sum, and positive part summing to at most
h. The configuration (a_1, ..., a_k) lies on the hyperplane of w when
sum(w_i * a_i) == 0; a configuration fails to be h-Sidon exactly when it lies
on one of these hyperplanes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .errors import DomainError, InputError


@dataclass(frozen=True)
class WeightVector:
    """Dense integer coefficients; ``coeffs[i - 1]`` is the weight of index i."""

    coeffs: Tuple[int, ...]
    h: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("weight vector needs k >= 1")
        if not any(self.coeffs):
            raise DomainError("weight vector has empty support")
        if sum(self.coeffs) != 0:
            raise DomainError(f"weights must sum to 0: {self.coeffs}")
        pos = self.positive_mass
        if not 1 <= pos <= self.h:
            raise DomainError(f"positive part {pos} outside [1, {self.h}]")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def positive_mass(self) -> int:
        return sum(c for c in self.coeffs if c > 0)

    @property
    def negative_mass(self) -> int:
        return -sum(c for c in self.coeffs if c < 0)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs, 1) if c)

    def as_dict(self) -> Dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs, 1) if c}

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-c for c in self.coeffs), self.h)

    def is_canonical(self) -> bool:
        return next(c for c in self.coeffs if c) > 0

    def canonical(self) -> "WeightVector":
        return self if self.is_canonical() else -self

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int], k: int, h: int) -> "WeightVector":
        dense = [0] * k
        for i, c in coeffs.items():
            i = int(i)
            if not 1 <= i <= k:
                raise DomainError(f"index {i} outside 1..{k}")
            dense[i - 1] = int(c)
        return cls(tuple(dense), h)

    def to_json(self) -> dict:
        return {"k": self.k, "h": self.h, "coeffs": {str(i): c for i, c in self.as_dict().items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "WeightVector":
        try:
            return cls.from_dict({int(i): c for i, c in obj["coeffs"].items()}, int(obj["k"]), int(obj["h"]))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise InputError(f"malformed weight vector: {obj!r}") from exc

    def __str__(self):
        return "(" + ", ".join(f"{c:+d}" if c else "0" for c in self.coeffs) + ")"


def _parts(indices: Sequence[int], mass: int) -> Iterator[Dict[int, int]]:
    """All ways to spread ``mass`` units over ``indices`` (multisets)."""
    for combo in combinations_with_replacement(indices, mass):
        part: Dict[int, int] = {}
        for i in combo:
            part[i] = part.get(i, 0) + 1
        yield part


@lru_cache(maxsize=64)
def _enumerate(k: int, h: int, canonical: bool) -> Tuple[WeightVector, ...]:
    out = []
    everything = tuple(range(k))
    for mass in range(1, h + 1):
        for pos in _parts(everything, mass):
            rest = tuple(i for i in everything if i not in pos)
            if not rest:
                continue
            lead = min(pos)
            for neg in _parts(rest, mass):
                if canonical and min(neg) < lead:
                    # first nonzero coordinate would be negative
                    continue
                coeffs = [0] * k
                for i, c in pos.items():
                    coeffs[i] = c
                for i, c in neg.items():
                    coeffs[i] = -c
                out.append(tuple(coeffs))
    out.sort()
    return tuple(WeightVector(c, h) for c in out)


def enumerate_weight_vectors(k: int, h: int, canonical: bool = False) -> List[WeightVector]:
    """Every weight vector of order ``h`` over indices 1..k, sorted by coefficients.

    Positive parts are multisets of size 1..h placed on index subsets, and the
    negative part is a multiset of the same size on the remaining indices.
    With ``canonical`` only the member of each pair {w, -w} whose first
    nonzero coefficient is positive is kept.
    """
    if k < 1 or h < 1:
        raise DomainError(f"need k >= 1 and h >= 1, got k={k}, h={h}")
    return list(_enumerate(k, h, canonical))


def evaluate_form(w: WeightVector, alpha: Sequence) -> Fraction:
    """Exact value of ``sum(w_i * a_i)``."""
    if w.k > len(alpha) and any(w.coeffs[len(alpha):]):
        raise DomainError(f"weight support exceeds configuration length {len(alpha)}")
    total = Fraction(0)
    for c, a in zip(w.coeffs, alpha):
        if c:
            total += c * Fraction(a)
    return total


def hyperplane_member(w: WeightVector, alpha: Sequence) -> bool:
    return evaluate_form(w, alpha) == 0
