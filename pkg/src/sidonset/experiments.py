"""Density experiments: how often is a random k-set h-Sidon?

Each trial draws its configuration from a generator keyed only by
``(seed, trial_index)``, so reports are reproducible and trials can be run
in any order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetError, InputError, SamplerError
from .field_abs import format_rational
from .sidon_core import PointConfiguration, verify_bruteforce

GRID = "grid"
RATIONAL = "rational"

MAX_DRAW_RETRIES = 10_000
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class SamplerSpec:
    """``grid``: distinct integers from 1..bound. ``rational``: numerator in
    [-bound, bound] over a denominator in [1, bound]."""

    kind: str
    bound: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (GRID, RATIONAL):
            raise InputError(f"unknown sampler kind {self.kind!r}")
        if self.bound < 1:
            raise InputError(f"sampler bound must be >= 1, got {self.bound}")
        if not 0 <= self.seed < 2**64:
            raise InputError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "SamplerSpec":
        """``grid:N`` or ``rational:M``; M may be written as ``2^32``."""
        kind, _, bound = text.partition(":")
        if kind not in (GRID, RATIONAL) or not bound:
            raise InputError(f"sampler must look like grid:<N> or rational:<M>, got {text!r}")
        try:
            if "^" in bound:
                base, exp = bound.split("^")
                n = int(base) ** int(exp)
            else:
                n = int(bound)
        except ValueError:
            raise InputError(f"bad sampler bound {bound!r}") from None
        return cls(kind, n, seed)

    def __str__(self):
        return f"{self.kind}:{self.bound}"

    def rng(self, trial: int) -> random.Random:
        state = np.random.SeedSequence([self.seed, trial]).generate_state(4, dtype=np.uint64)
        return random.Random(int.from_bytes(state.tobytes(), "little"))


def sample_configuration(k: int, spec: SamplerSpec, trial: int = 0) -> PointConfiguration:
    if k < 1:
        raise SamplerError(f"k must be >= 1, got {k}")
    rng = spec.rng(trial)
    if spec.kind == GRID:
        if spec.bound < k:
            raise SamplerError(f"grid 1..{spec.bound} has fewer than k={k} points")
        return PointConfiguration(tuple(sorted(rng.sample(range(1, spec.bound + 1), k))))
    M = spec.bound
    points: list = []
    seen: set = set()
    retries = 0
    while len(points) < k:
        x = Fraction(rng.randint(-M, M), rng.randint(1, M))
        if x in seen:
            retries += 1
            if retries > MAX_DRAW_RETRIES:
                raise SamplerError(f"could not draw {k} distinct rationals with M={M}")
            continue
        seen.add(x)
        points.append(x)
    return PointConfiguration(tuple(points))


@dataclass(frozen=True)
class DensityReport:
    k: int
    h: int
    trials: int
    sidon_count: int
    seed: Optional[int]
    sampler: str

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.sidon_count, self.trials)

    CSV_HEADER = "k,h,trials,sidon_count,fraction,seed,sampler"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "h": self.h,
            "trials": self.trials,
            "sidon_count": self.sidon_count,
            "fraction": format_rational(self.fraction),
            "seed": self.seed,
            "sampler": self.sampler,
        }

    def to_csv_row(self) -> str:
        seed = "" if self.seed is None else str(self.seed)
        return f"{self.k},{self.h},{self.trials},{self.sidon_count},{format_rational(self.fraction)},{seed},{self.sampler}"


def _grid_subsets(N: int, k: int) -> Iterator[PointConfiguration]:
    for combo in combinations(range(1, N + 1), k):
        yield PointConfiguration(combo)


def sidon_density(k: int, h: int, trials: int, spec: SamplerSpec, exhaustive: bool = False) -> DensityReport:
    """Fraction of sampled k-sets that are h-Sidon.

    With ``exhaustive`` (grid samplers only) every k-subset of the grid is
    visited once and ``trials`` is ignored.
    """
    if exhaustive:
        if spec.kind != GRID:
            raise SamplerError("exhaustive mode needs a grid sampler")
        if spec.bound < k:
            raise SamplerError(f"grid 1..{spec.bound} has fewer than k={k} points")
        total = hits = 0
        for A in _grid_subsets(spec.bound, k):
            total += 1
            hits += verify_bruteforce(A, h).is_sidon
        return DensityReport(k, h, total, hits, None, f"{spec} exhaustive")
    if trials < 1:
        raise SamplerError(f"trials must be >= 1, got {trials}")
    hits = sum(verify_bruteforce(sample_configuration(k, spec, t), h).is_sidon for t in range(trials))
    return DensityReport(k, h, trials, hits, spec.seed, str(spec))


def exact_grid_density(N: int, k: int, h: int, budget: int = DEFAULT_BUDGET) -> DensityReport:
    """Exact share of the k-subsets of {1..N} that are h-Sidon."""
    if N < k:
        raise SamplerError(f"grid 1..{N} has fewer than k={k} points")
    total = comb(N, k)
    if total > budget:
        raise BudgetError(f"C({N}, {k}) = {total} subsets exceeds budget {budget}")
    hits = sum(verify_bruteforce(A, h).is_sidon for A in _grid_subsets(N, k))
    return DensityReport(k, h, total, hits, None, f"grid:{N} exhaustive")
