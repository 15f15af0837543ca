"""
Lipschitz Function Monoids

Functions on a finite invariant metric group, the cones
LIP10 < LIP1PLUS < LIP1 < LIP, the inf-convolution law with identity delta_e,
the metrics d_inf / rho / theta_inf, units via min-plus residuation and the
tau decomposition f -> (f - min f, min f).

All values are Fractions; every comparison is exact.

Usage:
    from src.liptrop.lip_monoid import LipContext, inf_conv, classify

    ctx = LipContext.discrete(builtin_group('cyclic', 2))
    f = ctx.function(['1/2', '3/10'])
    g = ctx.function(['1/5', '2/5'])
    inf_conv(f, g).values   # (7/10, 1/2)
"""

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from .errors import ConeMismatch, ContextMismatch, NegativeCap, NotLip1, UnsupportedCone
from .groups import FiniteGroup
from .metrics import InvariantMetric, discrete_metric


class ConeTag(str, Enum):
    """Function cones, smallest last: LIP10 < LIP1PLUS < LIP1 < LIP."""

    LIP = 'LIP'
    LIP1 = 'LIP1'
    LIP1PLUS = 'LIP1PLUS'
    LIP10 = 'LIP10'

    @classmethod
    def parse(cls, text: str) -> 'ConeTag':
        key = text.strip().upper().replace('_', '')
        for tag in cls:
            if tag.value == key:
                return tag
        raise UnsupportedCone(text)


@dataclass(frozen=True)
class LipContext:
    """The carrier (group, metric) every function lives over."""

    group: FiniteGroup
    metric: InvariantMetric

    def __post_init__(self):
        if self.metric.group != self.group:
            raise ContextMismatch("metric is defined on a different group")

    @classmethod
    def discrete(cls, group: FiniteGroup) -> 'LipContext':
        return cls(group, discrete_metric(group))

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def name(self) -> str:
        return self.metric.name

    def function(self, values: Iterable[Any]) -> 'LipFn':
        return LipFn(self, tuple(Fraction(v) for v in values))

    def constant(self, r: Any) -> 'LipFn':
        return LipFn(self, (Fraction(r),) * self.order)

    @property
    def zero(self) -> 'LipFn':
        return self.constant(0)

    def delta(self, x: int) -> 'LipFn':
        """delta_x(z) = d(z, x)."""
        return LipFn(self, tuple(self.metric.dist[z][x] for z in self.group.elements))

    @property
    def identity(self) -> 'LipFn':
        return self.delta(self.group.identity)


@dataclass(frozen=True)
class LipFn:
    """Rational function on the group; cone membership is queried, not stored."""

    context: LipContext
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.context.order:
            raise ContextMismatch(
                f"function has {len(self.values)} values but the group has order {self.context.order}"
            )

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def min(self) -> Fraction:
        return min(self.values)

    def max(self) -> Fraction:
        return max(self.values)

    def shifted(self, r: Any) -> 'LipFn':
        r = Fraction(r)
        return LipFn(self.context, tuple(v + r for v in self.values))

    def is_below(self, other: 'LipFn') -> bool:
        """Pointwise f <= g."""
        _same_context(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))


@dataclass(frozen=True)
class TauPair:
    """(base, offset) with min(base) = 0."""

    base: LipFn
    offset: Fraction


@dataclass(frozen=True)
class UnitCheck:
    """Outcome of is_unit; truthy iff f is a unit."""

    is_unit: bool
    inverse: Optional[LipFn] = None

    def __bool__(self) -> bool:
        return self.is_unit


@dataclass(frozen=True)
class UnitLawWitness:
    """(r + delta_x) + (s + delta_y) checked against (r + s) + delta_xy."""

    x: int
    r: Fraction
    y: int
    s: Fraction
    holds: bool


@dataclass(frozen=True)
class UnitsDescription:
    """
    Unit group of a cone.

    For LIP10 / LIP1PLUS the members are the whole (finite) unit group. For
    LIP1 the unit group is {r + delta_x}; members lists the r = 0 slice and
    law_witness records the verified group law (x, r)(y, s) = (xy, r + s).
    """

    cone: ConeTag
    members: tuple[LipFn, ...]
    parametric: bool
    law_witness: tuple[UnitLawWitness, ...] = ()

    @property
    def cardinality(self) -> Optional[int]:
        return None if self.parametric else len(self.members)

    def contains(self, f: LipFn) -> bool:
        if not self.parametric:
            return f in self.members
        if ConeTag.LIP1 not in classify(f):
            return False
        return tau(f).base in self.members


def _same_context(f: LipFn, g: LipFn) -> None:
    if f.context is not g.context and f.context != g.context:
        raise ContextMismatch()


def lipschitz_violation(f: LipFn) -> Optional[tuple[int, int]]:
    """First pair (x, y) with |f(x) - f(y)| > d(x, y), or None."""
    dist = f.context.metric.dist
    values = f.values
    for x in range(len(values)):
        for y in range(x + 1, len(values)):
            if abs(values[x] - values[y]) > dist[x][y]:
                return (x, y)
    return None


def classify(f: LipFn) -> frozenset[ConeTag]:
    """Every cone f belongs to; LIP always."""
    tags = {ConeTag.LIP}
    if lipschitz_violation(f) is None:
        tags.add(ConeTag.LIP1)
        low = f.min()
        if low >= 0:
            tags.add(ConeTag.LIP1PLUS)
            if low == 0:
                tags.add(ConeTag.LIP10)
    return frozenset(tags)


def delta(context: LipContext, x: int) -> LipFn:
    return context.delta(x)


def _conv_rows(f: LipFn, g: LipFn, rows: range) -> list[Optional[Fraction]]:
    table = f.context.group.table
    out: list[Optional[Fraction]] = [None] * len(f.values)
    g_values = g.values
    for i in rows:
        fi = f.values[i]
        row = table[i]
        for j, gj in enumerate(g_values):
            k = row[j]
            s = fi + gj
            current = out[k]
            if current is None or s < current:
                out[k] = s
    return out


def inf_conv(f: LipFn, g: LipFn) -> LipFn:
    """
    (f + g)(k) = min over g_i g_j = g_k of f(i) + g(j).

    One sweep over the n^2 pairs, each scattered to its product index.

    Raises:
        ContextMismatch
    """
    _same_context(f, g)
    out = _conv_rows(f, g, range(len(f.values)))
    return LipFn(f.context, tuple(out))


def inf_conv_partitioned(f: LipFn, g: LipFn, workers: int = 1) -> LipFn:
    """
    inf_conv with the pair sweep split by row ranges across a thread pool and
    a per-index min-merge. Identical to inf_conv for any worker count.
    """
    _same_context(f, g)
    n = len(f.values)
    workers = max(1, min(workers, n))
    if workers == 1:
        return inf_conv(f, g)

    bounds = [n * w // workers for w in range(workers + 1)]
    chunks = [range(bounds[w], bounds[w + 1]) for w in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        partials = list(executor.map(lambda rows: _conv_rows(f, g, rows), chunks))

    merged: list[Optional[Fraction]] = [None] * n
    for partial in partials:
        for k, v in enumerate(partial):
            if v is not None and (merged[k] is None or v < merged[k]):
                merged[k] = v
    return LipFn(f.context, tuple(merged))


def pointwise_min(functions: Sequence[LipFn]) -> LipFn:
    """min_i f_i over a non-empty finite family."""
    if not functions:
        raise ValueError("pointwise_min needs at least one function")
    first = functions[0]
    for other in functions[1:]:
        _same_context(first, other)
    return LipFn(first.context, tuple(min(column) for column in zip(*(f.values for f in functions))))


def pointwise_max(functions: Sequence[LipFn]) -> LipFn:
    if not functions:
        raise ValueError("pointwise_max needs at least one function")
    first = functions[0]
    for other in functions[1:]:
        _same_context(first, other)
    return LipFn(first.context, tuple(max(column) for column in zip(*(f.values for f in functions))))


def d_inf(f: LipFn, g: LipFn) -> Fraction:
    _same_context(f, g)
    return max(abs(a - b) for a, b in zip(f.values, g.values))


def rho(f: LipFn, g: LipFn) -> Fraction:
    """max over x of |f(x) - g(x)| / (1 + |f(x) - g(x)|); equals d_inf / (1 + d_inf)."""
    _same_context(f, g)
    return max(abs(a - b) / (1 + abs(a - b)) for a, b in zip(f.values, g.values))


def theta_inf(f: LipFn, g: LipFn) -> Fraction:
    """d_inf(f - min f, g - min g) + |min f - min g|."""
    _same_context(f, g)
    mf, mg = f.min(), g.min()
    return d_inf(f.shifted(-mf), g.shifted(-mg)) + abs(mf - mg)


def osc(f: LipFn) -> Fraction:
    return f.max() - f.min()


def residual_inverse(f: LipFn) -> LipFn:
    """
    Smallest g with f + g >= delta_e pointwise (min-plus residuation).

    g(z) = max over x of (delta_e(x) - f(x z^-1)).
    """
    ctx = f.context
    group = ctx.group
    e = group.identity
    dist = ctx.metric.dist
    out = []
    for z in group.elements:
        z_inv = group.inv(z)
        out.append(max(dist[x][e] - f.values[group.mul(x, z_inv)] for x in group.elements))
    return LipFn(ctx, tuple(out))


def is_unit(f: LipFn, cone: ConeTag) -> UnitCheck:
    """
    Decide whether f is invertible in the given cone.

    The residual g is the smallest candidate inverse; f is a unit iff
    f + g = g + f = delta_e and g lies in the cone. For cone LIP the question
    is membership in the maximal subgroup of Lip(X) at delta_e: f must be
    fixed by delta_e and invertible in LIP1.

    Raises:
        ConeMismatch: f is not in the cone
    """
    tags = classify(f)
    if cone not in tags:
        raise ConeMismatch(cone.value, tuple(sorted(t.value for t in tags)))

    identity = f.context.identity
    if cone is ConeTag.LIP:
        if inf_conv(identity, f) != f:
            return UnitCheck(False)
        cone = ConeTag.LIP1

    inverse = residual_inverse(f)
    if inf_conv(f, inverse) != identity or inf_conv(inverse, f) != identity:
        return UnitCheck(False)
    if cone not in classify(inverse):
        return UnitCheck(False)
    return UnitCheck(True, inverse)


DEFAULT_LAW_OFFSETS = (Fraction(0), Fraction(5), Fraction(-3, 2))


def units_of(
    context: LipContext,
    cone: ConeTag,
    offsets: Sequence[Fraction] = DEFAULT_LAW_OFFSETS
) -> UnitsDescription:
    """
    Unit group of a cone over the context.

    Every delta_x is confirmed through the residuation oracle before it is
    listed. For LIP1 the group law of {r + delta_x} is checked on the pairs
    (x, y) with y in a generating set of the group (plus the identity).

    Raises:
        UnsupportedCone: for LIP
    """
    if cone is ConeTag.LIP:
        raise UnsupportedCone(cone.value)

    group = context.group
    members = tuple(
        d for d in (context.delta(x) for x in group.elements) if is_unit(d, cone)
    )

    if cone is not ConeTag.LIP1:
        logging.info(f"Units of {cone.value} over {context.name}: {len(members)}")
        return UnitsDescription(cone=cone, members=members, parametric=False)

    witnesses = []
    partners = (group.identity,) + group.generating_set()
    for x in group.elements:
        for index, y in enumerate(partners):
            r = Fraction(offsets[x % len(offsets)])
            s = Fraction(offsets[(x + index + 1) % len(offsets)])
            product = inf_conv(context.delta(x).shifted(r), context.delta(y).shifted(s))
            expected = context.delta(group.mul(x, y)).shifted(r + s)
            witnesses.append(UnitLawWitness(x, r, y, s, product == expected))

    logging.info(
        f"Units of LIP1 over {context.name}: family r + delta_x over {len(members)} elements, "
        f"{sum(w.holds for w in witnesses)}/{len(witnesses)} law checks hold"
    )
    return UnitsDescription(cone=cone, members=members, parametric=True, law_witness=tuple(witnesses))


def tau(f: LipFn) -> TauPair:
    """
    f -> (f - min f, min f).

    Raises:
        NotLip1
    """
    violation = lipschitz_violation(f)
    if violation is not None:
        raise NotLip1(violation)
    low = f.min()
    return TauPair(f.shifted(-low), low)


def tau_inv(pair: TauPair) -> LipFn:
    return pair.base.shifted(pair.offset)


def tau_product(p: TauPair, q: TauPair) -> TauPair:
    """(f, c)(f', c') = (f + f', c + c') with + the inf-convolution on bases."""
    return TauPair(inf_conv(p.base, q.base), p.offset + q.offset)


def tau_distance(p: TauPair, q: TauPair) -> Fraction:
    return d_inf(p.base, q.base) + abs(p.offset - q.offset)


def cap_with(context: LipContext, a: Any) -> LipFn:
    """
    min(delta_e, a) pointwise.

    Raises:
        NegativeCap
    """
    level = Fraction(a)
    if level < 0:
        raise NegativeCap(level)
    return LipFn(context, tuple(min(v, level) for v in context.identity.values))


def lip_regularize(f: LipFn) -> LipFn:
    """delta_e + f: the largest 1-Lipschitz minorant of f."""
    return inf_conv(f.context.identity, f)
