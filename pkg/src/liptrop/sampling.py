"""
Seeded Rational Sampler

Generates exact random rationals, vectors and cone members for the property
suites. The same seed always yields the same sequence of samples.

Usage:
    from src.liptrop.sampling import RationalSampler

    sampler = RationalSampler(seed=7)
    f = sampler.lip1plus(context)
    g = sampler.function(context)        # arbitrary, may leave every cone
"""

import math
import zlib
from fractions import Fraction
from typing import Any

import numpy as np

from .lip_monoid import ConeTag, LipContext, LipFn, lip_regularize


def derive_seed(seed: int, name: str) -> int:
    """Per-check seed from the run seed and the check name."""
    sequence = np.random.SeedSequence([seed, zlib.crc32(name.encode('utf-8'))])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


class RationalSampler:
    """Random exact rationals with bounded denominators."""

    def __init__(self, seed: int = 0, max_denominator: int = 16, value_bound: int = 4):
        self.seed = seed
        self.max_denominator = max_denominator
        self.value_bound = value_bound
        self.rng = np.random.default_rng(seed)

    @classmethod
    def for_check(cls, seed: int, name: str, **kwargs: Any) -> 'RationalSampler':
        return cls(derive_seed(seed, name), **kwargs)

    def rational(self, low: Any = None, high: Any = None) -> Fraction:
        """Uniform p/q in [low, high] with q <= max_denominator."""
        low = Fraction(-self.value_bound if low is None else low)
        high = Fraction(self.value_bound if high is None else high)
        q = int(self.rng.integers(1, self.max_denominator + 1))
        p_low = math.ceil(low * q)
        p_high = math.floor(high * q)
        if p_high < p_low:
            return low
        return Fraction(int(self.rng.integers(p_low, p_high + 1)), q)

    def nonnegative(self, high: Any = None) -> Fraction:
        return self.rational(0, self.value_bound if high is None else high)

    def element(self, context: LipContext) -> int:
        return int(self.rng.integers(0, context.order))

    def vector(self, n: int) -> list[Fraction]:
        return [self.rational() for _ in range(n)]

    def function(self, context: LipContext) -> LipFn:
        """Arbitrary function (cone LIP)."""
        return context.function(self.vector(context.order))

    def lip1(self, context: LipContext) -> LipFn:
        """1-Lipschitz function: the regularization of a random vector, randomly shifted."""
        base = lip_regularize(self.function(context))
        return base.shifted(-base.min() + self.rational())

    def lip10(self, context: LipContext) -> LipFn:
        base = lip_regularize(self.function(context))
        return base.shifted(-base.min())

    def lip1plus(self, context: LipContext) -> LipFn:
        return self.lip10(context).shifted(self.nonnegative())

    def in_cone(self, context: LipContext, cone: ConeTag) -> LipFn:
        if cone is ConeTag.LIP10:
            return self.lip10(context)
        if cone is ConeTag.LIP1PLUS:
            return self.lip1plus(context)
        if cone is ConeTag.LIP1:
            return self.lip1(context)
        return self.function(context)

    def unit(self, context: LipContext) -> tuple[int, Fraction, LipFn]:
        """(x, r, r + delta_x)."""
        x = self.element(context)
        r = self.rational()
        return x, r, context.delta(x).shifted(r)

    def non_unit(self, context: LipContext) -> LipFn:
        """
        1-Lipschitz function outside {r + delta_x}.

        min(r + delta_x, r + d(x, y)/2 + delta_y) for y != x; its minimum r is
        attained only at x while its value at y is r + d(x, y)/2. Needs order >= 2.
        """
        if context.order < 2:
            raise ValueError("non-unit samples need a group of order at least 2")
        x = self.element(context)
        y = int(self.rng.integers(0, context.order - 1))
        if y >= x:
            y += 1
        r = self.rational()
        gap = context.metric.dist[x][y] / 2
        first = context.delta(x).shifted(r)
        second = context.delta(y).shifted(r + gap)
        return context.function(min(a, b) for a, b in zip(first.values, second.values))
