"""h-Sidon verification.

Two independent deciders: ``verify_bruteforce`` compares all h-fold sums
directly, ``verify_hyperplane`` checks the configuration against every
canonical weight vector. They must always agree. ``witness_to_weight`` and
``weight_to_witness`` convert between the two kinds of certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import (
    DomainError,
    DuplicateElementError,
    EmptyInputError,
    NotACollisionError,
    OrderMismatchError,
)
from .field_abs import format_rational, parse_rational
from .setops import common_denominator
from .weights import WeightVector, enumerate_weight_vectors


@dataclass(frozen=True)
class PointConfiguration:
    """Pairwise distinct rationals a_1..a_k (1-based in every public API)."""

    points: Tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(Fraction(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise EmptyInputError("configuration must be nonempty")
        seen: Dict[Fraction, int] = {}
        for i, p in enumerate(pts, 1):
            if p in seen:
                raise DuplicateElementError(seen[p], i, format_rational(p))
            seen[p] = i

    @property
    def k(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def at(self, index: int) -> Fraction:
        """1-based access."""
        if not 1 <= index <= self.k:
            raise DomainError(f"index {index} outside 1..{self.k}")
        return self.points[index - 1]

    def scaled_integers(self) -> Tuple[Tuple[int, ...], int]:
        """(D * a_i as ints, D) for the least common denominator D."""
        d = common_denominator(self.points)
        return tuple(int(p * d) for p in self.points), d

    def to_json(self) -> list:
        return [format_rational(p) for p in self.points]


def validate_configuration(points: Iterable) -> PointConfiguration:
    return PointConfiguration(tuple(parse_rational(p) for p in points))


def _as_config(A) -> PointConfiguration:
    return A if isinstance(A, PointConfiguration) else validate_configuration(A)


def _clean(counts: Mapping) -> Dict[int, int]:
    return {int(i): int(c) for i, c in sorted(counts.items(), key=lambda kv: int(kv[0])) if c}


@dataclass(frozen=True)
class CollisionWitness:
    """Two distinct coefficient maps u, v with sum(u) == sum(v) == h."""

    u: Dict[int, int]
    v: Dict[int, int]
    h: int

    def __post_init__(self):
        object.__setattr__(self, "u", _clean(self.u))
        object.__setattr__(self, "v", _clean(self.v))
        for name, m in (("u", self.u), ("v", self.v)):
            if any(c < 0 or i < 1 for i, c in m.items()):
                raise DomainError(f"{name} must map positive indices to nonnegative counts")
            if sum(m.values()) != self.h:
                raise DomainError(f"{name} sums to {sum(m.values())}, expected h={self.h}")

    @property
    def max_index(self) -> int:
        return max([*self.u, *self.v], default=0)

    def sums(self, A: Sequence) -> Tuple[Fraction, Fraction]:
        A = tuple(A)
        if self.max_index > len(A):
            raise DomainError(f"witness index {self.max_index} outside configuration")
        su = sum((c * Fraction(A[i - 1]) for i, c in self.u.items()), Fraction(0))
        sv = sum((c * Fraction(A[i - 1]) for i, c in self.v.items()), Fraction(0))
        return su, sv

    def validates(self, A: Sequence) -> bool:
        if self.u == self.v:
            return False
        su, sv = self.sums(A)
        return su == sv

    def to_json(self) -> dict:
        return {
            "u": {str(i): c for i, c in self.u.items()},
            "v": {str(i): c for i, c in self.v.items()},
        }

    @classmethod
    def from_json(cls, obj: dict, h: int) -> "CollisionWitness":
        return cls(dict(obj["u"]), dict(obj["v"]), h)


@dataclass(frozen=True)
class Verdict:
    is_sidon: bool
    h: int
    witness: Optional[CollisionWitness] = None
    weight: Optional[WeightVector] = None
    collision_sum: Optional[Fraction] = None
    method: str = field(default="bruteforce", compare=False)

    def to_json(self) -> dict:
        out: dict = {"is_sidon": self.is_sidon, "h": self.h}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.weight is not None:
            out["weight"] = {"coeffs": {str(i): c for i, c in self.weight.as_dict().items()}}
        if self.collision_sum is not None:
            out["collision_sum"] = format_rational(self.collision_sum)
        return out


def _counts(multiset: Tuple[int, ...]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i in multiset:
        out[i + 1] = out.get(i + 1, 0) + 1
    return out


def verify_bruteforce(A, h: int) -> Verdict:
    """Enumerate every h-multiset of indices and look for two equal sums.

    The reported witness pairs the earliest multiset (u) with the first later
    multiset (v) reaching the same sum, in lexicographic enumeration order.
    """
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    A = _as_config(A)
    ints, d = A.scaled_integers()
    seen: Dict[int, Tuple[int, ...]] = {}
    for ms in combinations_with_replacement(range(A.k), h):
        s = 0
        for i in ms:
            s += ints[i]
        prev = seen.get(s)
        if prev is not None:
            witness = CollisionWitness(_counts(prev), _counts(ms), h)
            return Verdict(
                False, h, witness, witness_to_weight(witness, A.k), Fraction(s, d), "bruteforce"
            )
        seen[s] = ms
    return Verdict(True, h, method="bruteforce")


def verify_hyperplane(A, h: int) -> Verdict:
    """Decide h-Sidon by testing the configuration against every hyperplane."""
    if h < 1:
        raise DomainError(f"h must be >= 1, got {h}")
    A = _as_config(A)
    if A.k == 1:
        return Verdict(True, h, method="hyperplane")
    ints, d = A.scaled_integers()
    for w in enumerate_weight_vectors(A.k, h, canonical=True):
        form = 0
        for c, a in zip(w.coeffs, ints):
            if c:
                form += c * a
        if form == 0:
            witness = weight_to_witness(w, h)
            su, _ = witness.sums(A.points)
            return Verdict(False, h, witness, w, su, "hyperplane")
    return Verdict(True, h, method="hyperplane")


def is_sidon(A, h: int) -> bool:
    return verify_bruteforce(A, h).is_sidon


def witness_to_weight(c: CollisionWitness, k: Optional[int] = None) -> WeightVector:
    """w = u - v. ``k`` defaults to the largest index the witness touches."""
    if c.u == c.v:
        raise NotACollisionError("u and v coincide; not a collision")
    k = c.max_index if k is None else k
    if k < c.max_index:
        raise DomainError(f"k={k} smaller than witness index {c.max_index}")
    coeffs = [0] * k
    for i, n in c.u.items():
        coeffs[i - 1] += n
    for i, n in c.v.items():
        coeffs[i - 1] -= n
    return WeightVector(tuple(coeffs), c.h)


def default_anchor(w: WeightVector) -> int:
    """Smallest index outside the support of w, or 1 when the support is full."""
    support = set(w.support)
    return next((i for i in range(1, w.k + 1) if i not in support), 1)


def weight_to_witness(w: WeightVector, h: Optional[int] = None, i0: Optional[int] = None) -> CollisionWitness:
    """Split w into its positive and negative parts and pad both to h.

    The ``h - h1`` missing summands (h1 the positive mass) are placed on index
    ``i0`` on both sides.
    """
    h = w.h if h is None else h
    h1 = w.positive_mass
    if h1 > h:
        raise OrderMismatchError(f"positive mass {h1} exceeds order h={h}")
    if i0 is None:
        i0 = default_anchor(w)
    if not 1 <= i0 <= w.k:
        raise DomainError(f"anchor index {i0} outside 1..{w.k}")
    u = {i: c for i, c in w.as_dict().items() if c > 0}
    v = {i: -c for i, c in w.as_dict().items() if c < 0}
    pad = h - h1
    if pad:
        u[i0] = u.get(i0, 0) + pad
        v[i0] = v.get(i0, 0) + pad
    return CollisionWitness(u, v, h)


def affine_image(A, scale, shift) -> PointConfiguration:
    """(scale * a + shift) for each a; preserves h-Sidon-ness when scale != 0."""
    A = _as_config(A)
    scale, shift = Fraction(scale), Fraction(shift)
    if scale == 0:
        raise DomainError("scale must be nonzero")
    return PointConfiguration(tuple(scale * a + shift for a in A.points))
