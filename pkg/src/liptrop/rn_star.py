"""
Vector Semigroup (R^n, star)

Plain-vector view of the inf-convolution over a finite group with the
discrete metric: z_k = min { x_i + y_j : g_i g_j = g_k }. Vectors are
identified with functions on the group; star delegates to the shared
inf_conv kernel.

Usage:
    from src.liptrop.rn_star import StarContext, RnVector, star

    ctx = StarContext(builtin_group('cyclic', 2))
    star(ctx, RnVector.of(-1, 5), RnVector.of(2, -3)).values   # (1, -4)
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from .errors import ConeMismatch, ContextMismatch, IdentityNotAtZero
from .groups import FiniteGroup
from .lip_monoid import (
    DEFAULT_LAW_OFFSETS,
    ConeTag,
    LipContext,
    LipFn,
    UnitLawWitness,
    inf_conv,
    is_unit,
    tau,
)


@dataclass(frozen=True)
class RnVector:
    values: tuple[Fraction, ...]

    @classmethod
    def of(cls, *values: Any) -> 'RnVector':
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_sequence(cls, values: Sequence[Any]) -> 'RnVector':
        return cls(tuple(Fraction(v) for v in values))

    def __len__(self) -> int:
        return len(self.values)


class Membership(str, Enum):
    IN_MNPLUS = 'IN_MNPLUS'
    IN_MN = 'IN_MN'
    NEITHER = 'NEITHER'


class StarContext:
    """A group with identity at index 0, so the identity vector is (0, 1, ..., 1)."""

    def __init__(self, group: FiniteGroup):
        if group.identity != 0:
            raise IdentityNotAtZero(group.identity)
        self.group = group
        self.lip_context = LipContext.discrete(group)

    @property
    def dimension(self) -> int:
        return self.group.order

    @property
    def identity_vector(self) -> RnVector:
        return RnVector(self.lip_context.identity.values)

    def to_lip(self, x: RnVector) -> LipFn:
        if len(x) != self.dimension:
            raise ContextMismatch(f"vector has {len(x)} entries, dimension is {self.dimension}")
        return LipFn(self.lip_context, x.values)

    def from_lip(self, f: LipFn) -> RnVector:
        if f.context != self.lip_context:
            raise ContextMismatch("function is not over this context's discrete metric")
        return RnVector(f.values)


def star(context: StarContext, x: RnVector, y: RnVector) -> RnVector:
    """
    x star y over the context group; negative entries allowed.

    Raises:
        ContextMismatch
    """
    return context.from_lip(inf_conv(context.to_lip(x), context.to_lip(y)))


def membership(x: RnVector) -> Membership:
    """M^n_+ needs pairwise |x_i - x_j| <= 1 and x >= 0; M^n only the first."""
    if not x.values:
        return Membership.NEITHER
    low, high = min(x.values), max(x.values)
    if high - low > 1:
        return Membership.NEITHER
    if low >= 0:
        return Membership.IN_MNPLUS
    return Membership.IN_MN


class MaximalSubgroup:
    """
    Maximal subgroup of (R^n, star) at the identity vector e: the vectors
    r + delta_x, a group isomorphic to G x R.
    """

    def __init__(self, context: StarContext, law_witness: tuple[UnitLawWitness, ...]):
        self.context = context
        self.law_witness = law_witness

    @property
    def law_holds(self) -> bool:
        return all(w.holds for w in self.law_witness)

    def element(self, x: int, r: Any) -> RnVector:
        """The vector r + delta_x."""
        return RnVector(self.context.lip_context.delta(x).shifted(r).values)

    def belongs(self, v: RnVector) -> bool:
        """v is in M^n, fixed by e, and invertible."""
        if membership(v) is Membership.NEITHER:
            return False
        if star(self.context, v, self.context.identity_vector) != v:
            return False
        return bool(is_unit(self.context.to_lip(v), ConeTag.LIP1))

    def decompose(self, v: RnVector) -> tuple[int, Fraction]:
        """
        (x, r) with v = r + delta_x.

        Raises:
            ConeMismatch: v is not in the subgroup
        """
        if not self.belongs(v):
            raise ConeMismatch('maximal subgroup at e')
        pair = tau(self.context.to_lip(v))
        ctx = self.context.lip_context
        x = next(x for x in self.context.group.elements if ctx.delta(x) == pair.base)
        return x, pair.offset


def maximal_subgroup_at_e(
    context: StarContext,
    offsets: Sequence[Fraction] = DEFAULT_LAW_OFFSETS
) -> MaximalSubgroup:
    """
    Build the subgroup description and verify the law
    (r + delta_x) star (s + delta_y) = (r + s) + delta_xy for the given
    offsets, cross-checking every product with the residuation oracle.

    Pairs cover all of G x G up to order 16, and G x (generators + e) above.
    """
    group = context.group
    sub = MaximalSubgroup(context, ())
    if group.order <= 16:
        partners = tuple(group.elements)
    else:
        partners = (group.identity,) + group.generating_set()
    witnesses = []
    for x in group.elements:
        for y in partners:
            for index, r in enumerate(offsets):
                s = Fraction(offsets[(index + 1) % len(offsets)])
                product = star(context, sub.element(x, r), sub.element(y, s))
                expected = sub.element(group.mul(x, y), Fraction(r) + s)
                holds = product == expected and bool(is_unit(context.to_lip(product), ConeTag.LIP1))
                witnesses.append(UnitLawWitness(x, Fraction(r), y, s, holds))

    result = MaximalSubgroup(context, tuple(witnesses))
    logging.info(
        f"Maximal subgroup at e over {group.name}: "
        f"{sum(w.holds for w in witnesses)}/{len(witnesses)} law checks hold"
    )
    return result
