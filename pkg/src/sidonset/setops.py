"""Additive operations on finite sets of rationals.

A finite set is a sorted tuple of distinct Fractions. Every function here
accepts any iterable of rationals and returns that canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Tuple

from .errors import DomainError

FiniteSet = Tuple[Fraction, ...]


def finite_set(values: Iterable) -> FiniteSet:
    return tuple(sorted({Fraction(v) for v in values}))


def translate(A: Iterable, c) -> FiniteSet:
    c = Fraction(c)
    return finite_set(a + c for a in A)


def dilate(c, A: Iterable) -> FiniteSet:
    c = Fraction(c)
    return finite_set(c * a for a in A)


def difference_set(A: Iterable, B: Iterable) -> FiniteSet:
    B = finite_set(B)
    return finite_set(a - b for a in finite_set(A) for b in B)


def _sum_sets(X: set, Y: Iterable) -> set:
    Y = tuple(Y)
    return {x + y for x in X for y in Y}


def _h_fold(A: tuple, h: int) -> set:
    # (j+1)A = jA + A; the empty set stays empty for j >= 1
    acc = {0}
    for _ in range(h):
        acc = _sum_sets(acc, A)
    return acc


def h_fold_sumset(A: Iterable, h: int) -> FiniteSet:
    """All sums of ``h`` elements of A with repetition; ``0A = {0}``."""
    if h < 0:
        raise DomainError(f"h must be nonnegative, got {h}")
    return finite_set(_h_fold(finite_set(A), h))


def r_s_sum_difference(A: Iterable, r: int, s: int) -> FiniteSet:
    """``rA - sA``: sums of r elements minus sums of s elements."""
    if r < 0 or s < 0:
        raise DomainError(f"r and s must be nonnegative, got r={r}, s={s}")
    A = finite_set(A)
    plus = _h_fold(A, r)
    minus = _h_fold(A, s)
    return finite_set(x - y for x in plus for y in minus)


def shifted_sumset(A: Iterable, b, r: int, h: int) -> FiniteSet:
    """``A_{r,h}(b) = rA + (h - r) b``."""
    if not 0 <= r <= h:
        raise DomainError(f"need 0 <= r <= h, got r={r}, h={h}")
    return translate(h_fold_sumset(A, r), (h - r) * Fraction(b))


# Integer kernels. Callers scale a set by a common denominator so that the
# hot loops run on Python ints instead of Fractions.

def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def int_h_fold(A: Iterable[int], h: int) -> set:
    return _h_fold(tuple(A), h)


def int_sum_difference(A: Iterable[int], r: int, s: int) -> set:
    A = tuple(A)
    plus = _h_fold(A, r)
    minus = _h_fold(A, s)
    return {x - y for x in plus for y in minus}
