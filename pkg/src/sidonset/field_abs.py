"""Exact rationals and absolute values on Q.

Field elements are :class:`fractions.Fraction` values. Magnitudes are
nonnegative ``Fraction`` values too, so every threshold comparison in the
package is an exact integer comparison. ``INFINITE`` stands in for the
minimum of an empty set of magnitudes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import InputError, InvalidBoundError

Rational = Fraction
Magnitude = Fraction

INFINITE = math.inf

ARCHIMEDEAN = "archimedean"
PADIC = "p-adic"

_RATIONAL_RE = re.compile(r"^\s*([+-]?)(\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(token: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading sign) into a Fraction.

    Integers and Fractions pass through. Floats are rejected because they
    are not exact.
    """
    if isinstance(token, bool):
        raise InputError(f"not a rational: {token!r}")
    if isinstance(token, (int, Fraction)):
        return Fraction(token)
    if not isinstance(token, str):
        raise InputError(f"not a rational: {token!r}")
    # accept the unicode minus sign as well
    m = _RATIONAL_RE.match(token.replace("−", "-"))
    if m is None:
        raise InputError(f"not a rational: {token!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise InputError(f"zero denominator: {token!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign == "-" else value


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24 with these bases
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class AbsoluteValue:
    """An archimedean or p-adic absolute value on Q.

    The trivial absolute value cannot be represented.
    """

    kind: str = ARCHIMEDEAN
    p: int | None = None

    def __post_init__(self):
        if self.kind == ARCHIMEDEAN:
            if self.p is not None:
                raise InputError("archimedean absolute value takes no prime")
        elif self.kind == PADIC:
            if not isinstance(self.p, int) or isinstance(self.p, bool) or not is_prime(self.p):
                raise InputError(f"p-adic absolute value needs a prime p, got {self.p!r}")
        else:
            raise InputError(f"unknown absolute value kind {self.kind!r}")

    @classmethod
    def archimedean(cls) -> "AbsoluteValue":
        return cls(ARCHIMEDEAN)

    @classmethod
    def padic(cls, p: int) -> "AbsoluteValue":
        return cls(PADIC, p)

    @property
    def is_padic(self) -> bool:
        return self.kind == PADIC

    def __call__(self, x) -> Fraction:
        return abs_value(x, self)

    def to_json(self) -> dict:
        if self.is_padic:
            return {"kind": PADIC, "p": self.p}
        return {"kind": ARCHIMEDEAN}

    @classmethod
    def from_json(cls, obj: dict) -> "AbsoluteValue":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise InputError(f"malformed absolute value: {obj!r}")
        if obj["kind"] == PADIC:
            return cls(PADIC, obj.get("p"))
        return cls(obj["kind"])

    def __str__(self):
        return f"p-adic(p={self.p})" if self.is_padic else ARCHIMEDEAN


def int_valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    # strip large powers first so huge integers stay cheap
    pk, k = p, 1
    while n % pk == 0:
        n //= pk
        v += k
        pk, k = pk * pk, k * 2
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x: Fraction, p: int) -> int:
    x = Fraction(x)
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def _padic_power(p: int, v: int) -> Fraction:
    """p^(-v) as an exact Fraction."""
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def abs_value(x, av: AbsoluteValue) -> Fraction:
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    if av.is_padic:
        return _padic_power(av.p, valuation(x, av.p))
    return abs(x)


def small_nonzero_element(m, av: AbsoluteValue) -> Fraction:
    """Deterministic nonzero x with |x| < m.

    Archimedean: m / 2. p-adic: p**e for the least integer e with
    p**(-e) < m.
    """
    if m == INFINITE:
        raise InvalidBoundError("bound must be finite")
    m = Fraction(m)
    if m <= 0:
        raise InvalidBoundError(f"bound must be positive, got {m}")
    if not av.is_padic:
        return m / 2
    p = av.p
    # |p^e| = p^(-e) < m  <=>  p^e > 1/m
    target = 1 / m
    e = 0
    if target >= 1:
        pe = 1
        while pe <= target:
            pe *= p
            e += 1
        return Fraction(pe)
    # 1/m < 1: look for the most negative e with p^e > 1/m
    while Fraction(1, p ** (-(e - 1))) > target:
        e -= 1
    return _padic_power(p, -e)


def min_nonzero_abs(values: Iterable, av: AbsoluteValue):
    """Smallest |c| over the nonzero c in ``values``, or ``INFINITE``."""
    best = INFINITE
    for c in values:
        if c != 0:
            a = abs_value(c, av)
            if best is INFINITE or a < best:
                best = a
    return best


def min_nonzero_abs_scaled(numerators: Iterable[int], scale: int, av: AbsoluteValue):
    """``min_nonzero_abs`` over ``{n / scale}`` without building Fractions.

    Used on large forbidden sets kept as integers over a common denominator.
    """
    if av.is_padic:
        best_v = None
        for n in numerators:
            if n:
                v = int_valuation(n, av.p)
                if best_v is None or v > best_v:
                    best_v = v
        if best_v is None:
            return INFINITE
        return _padic_power(av.p, best_v - int_valuation(scale, av.p))
    nonzero = [abs(n) for n in numerators if n]
    if not nonzero:
        return INFINITE
    return Fraction(min(nonzero), abs(scale))


def magnitude_min(a, b):
    """min of two magnitudes either of which may be ``INFINITE``."""
    if a is INFINITE:
        return b
    if b is INFINITE:
        return a
    return a if a <= b else b


def format_magnitude(m) -> str:
    return "infinite" if m is INFINITE else format_rational(m)
