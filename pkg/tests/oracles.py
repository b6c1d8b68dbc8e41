"""Independent reference computations used as test oracles.

These deliberately avoid the package's algorithms: they work from the
definitions with plain itertools.product scans over Fractions.
"""

from fractions import Fraction
from itertools import product


def sumset_oracle(A, h):
    """Every sum of an ordered h-tuple from A."""
    if h == 0:
        return {Fraction(0)}
    return {sum(t, Fraction(0)) for t in product([Fraction(a) for a in A], repeat=h)}


def sum_difference_oracle(A, r, s):
    A = [Fraction(a) for a in A]
    out = set()
    for t in product(A, repeat=r + s):
        out.add(sum(t[:r], Fraction(0)) - sum(t[r:], Fraction(0)))
    if not A and r == s == 0:
        out.add(Fraction(0))
    return out


def is_sidon_oracle(A, h):
    """Group ordered h-tuples of indices by their sum; h-Sidon iff every
    group holds a single multiset."""
    A = [Fraction(a) for a in A]
    groups = {}
    for t in product(range(len(A)), repeat=h):
        s = sum((A[i] for i in t), Fraction(0))
        groups.setdefault(s, set()).add(tuple(sorted(t)))
    return all(len(g) == 1 for g in groups.values())


def weight_vectors_oracle(k, h):
    """Scan the whole grid [-h, h]^k for vectors meeting the conditions."""
    out = []
    for w in product(range(-h, h + 1), repeat=k):
        pos = sum(c for c in w if c > 0)
        if any(w) and sum(w) == 0 and 1 <= pos <= h:
            out.append(w)
    return out


def padic_valuation_oracle(n, p):
    """Trial division on |numerator| and denominator."""
    x = Fraction(n)
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def shifted_sets_disjoint(A, b, h):
    """Build every rA + (h - r) b directly from h-tuples and test pairwise
    disjointness."""
    b = Fraction(b)
    sets = [{x + (h - r) * b for x in sumset_oracle(A, r)} for r in range(h + 1)]
    for r in range(h + 1):
        for s in range(r):
            if sets[r] & sets[s]:
                return False
    return True
