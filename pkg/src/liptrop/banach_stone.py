"""
Composition Operators

Monoid isomorphisms f -> f o T^-1 induced by isometric group isomorphisms T,
their enumeration, the isomorphism decision for discrete contexts, the
sampled lemma suite every such operator must pass, and the non-isometric
isomorphism f -> f + min f.

Usage:
    from src.liptrop.banach_stone import decide_monoid_iso, is_m_group

    decision = decide_monoid_iso(z4, klein)
    decision.verdict        # False
    decision.certificate    # 'element_order_multiset_mismatch'
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from .errors import ConeMismatch, ContextMismatch, NotAGroupIso, NotIsometric
from .groups import FiniteGroup, GroupIso, enumerate_isomorphisms
from .lip_monoid import (
    ConeTag,
    LipContext,
    LipFn,
    classify,
    d_inf,
    inf_conv,
    pointwise_max,
    pointwise_min,
    rho,
    theta_inf,
)
from .metrics import find_isometry_violation
from .reporting import CheckRecorder, CheckReport, single_check
from .sampling import RationalSampler


@dataclass(frozen=True)
class CompositionIso:
    """
    Phi_T(f) = f o T^-1 between two contexts.

    checked=False skips the isometry requirement on T; such operators exist
    only as negative controls for the lemma suite.
    """

    iso: GroupIso
    source: LipContext
    target: LipContext
    checked: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.iso.source != self.source.group or self.iso.target != self.target.group:
            raise ContextMismatch("group isomorphism does not run between the context groups")
        if self.checked:
            violation = find_isometry_violation(self.iso, self.source.metric, self.target.metric)
            if violation is not None:
                raise NotIsometric(violation)

    def __call__(self, f: LipFn) -> LipFn:
        return phi_apply(self, f)

    @property
    def is_identity(self) -> bool:
        return self.iso.is_identity

    def inverse(self) -> 'CompositionIso':
        return CompositionIso(self.iso.inverse(), self.target, self.source, self.checked)

    def compose(self, other: 'CompositionIso') -> 'CompositionIso':
        """self after other."""
        if other.target != self.source:
            raise ContextMismatch("composition of operators with mismatched contexts")
        return CompositionIso(self.iso.compose(other.iso), other.source, self.target, self.checked and other.checked)


def phi_apply(phi: CompositionIso, f: LipFn) -> LipFn:
    """
    result[T(x)] = f[x].

    Raises:
        ContextMismatch
    """
    if f.context is not phi.source and f.context != phi.source:
        raise ContextMismatch("function does not live over the operator's source context")
    out: list[Fraction] = [Fraction(0)] * len(f.values)
    for x, y in enumerate(phi.iso.mapping):
        out[y] = f.values[x]
    return LipFn(phi.target, tuple(out))


def enumerate_isometric_monoid_isos(
    source: LipContext,
    target: LipContext,
    order_cap: Optional[int] = None
) -> list[CompositionIso]:
    """Every isometric group isomorphism source -> target, wrapped as a composition operator."""
    started = time.perf_counter()
    isos = enumerate_isomorphisms(source.group, target.group, order_cap)
    operators = [
        CompositionIso(t, source, target)
        for t in isos
        if find_isometry_violation(t, source.metric, target.metric) is None
    ]
    logging.info(
        f"{len(operators)} of {len(isos)} group isomorphisms {source.name} -> {target.name} "
        f"are isometric ({time.perf_counter() - started:.3f}s)"
    )
    return operators


def is_m_group(context: LipContext, order_cap: Optional[int] = None) -> list[CompositionIso]:
    """Isometric monoid automorphisms of the context; identity first."""
    return enumerate_isometric_monoid_isos(context, context, order_cap)


class Certificate(str, Enum):
    ORDER_MISMATCH = 'order_mismatch'
    ELEMENT_ORDER_MULTISET_MISMATCH = 'element_order_multiset_mismatch'
    ABELIAN_MISMATCH = 'abelian_mismatch'
    EXHAUSTED_SEARCH = 'exhausted_search'


@dataclass(frozen=True)
class IsoDecision:
    verdict: bool
    witness: Optional[GroupIso] = None
    operator: Optional[CompositionIso] = None
    certificate: Optional[Certificate] = None
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            'verdict': self.verdict,
            'witness': list(self.witness.mapping) if self.witness else None,
            'certificate': self.certificate.value if self.certificate else None,
            'detail': self.detail,
        }


def decide_monoid_iso(g: FiniteGroup, h: FiniteGroup, order_cap: Optional[int] = None) -> IsoDecision:
    """
    Decide whether the monoids of nonnegative 1-Lipschitz functions over G
    and H (discrete metrics) are isomorphic, which holds iff G and H are
    isomorphic as groups.

    Negative verdicts carry the first discriminating invariant: order,
    element-order multiset, commutativity, or an exhausted search.
    """
    if g.order != h.order:
        return IsoDecision(False, certificate=Certificate.ORDER_MISMATCH,
                           detail={'orders': [g.order, h.order]})
    g_orders, h_orders = g.element_order_multiset(), h.element_order_multiset()
    if g_orders != h_orders:
        return IsoDecision(False, certificate=Certificate.ELEMENT_ORDER_MULTISET_MISMATCH,
                           detail={'element_orders': [list(g_orders), list(h_orders)]})
    if g.is_abelian() != h.is_abelian():
        return IsoDecision(False, certificate=Certificate.ABELIAN_MISMATCH,
                           detail={'abelian': [g.is_abelian(), h.is_abelian()]})

    isos = enumerate_isomorphisms(g, h, order_cap)
    if not isos:
        return IsoDecision(False, certificate=Certificate.EXHAUSTED_SEARCH,
                           detail={'element_orders': list(g_orders)})

    witness = isos[0]
    operator = CompositionIso(witness, LipContext.discrete(g), LipContext.discrete(h))
    return IsoDecision(True, witness=witness, operator=operator, detail={'isomorphisms': len(isos)})


def _require_lip1plus(f: LipFn) -> None:
    tags = classify(f)
    if ConeTag.LIP1PLUS not in tags:
        raise ConeMismatch(ConeTag.LIP1PLUS.value, tuple(sorted(t.value for t in tags)))


def noniso_morphism_apply(f: LipFn) -> LipFn:
    """
    f -> f + min f: a monoid automorphism of LIP1PLUS that is not an isometry.

    Raises:
        ConeMismatch
    """
    _require_lip1plus(f)
    return f.shifted(f.min())


def noniso_preimage(h: LipFn) -> LipFn:
    """h - (min h)/2, the preimage of h under f -> f + min f."""
    _require_lip1plus(h)
    return h.shifted(-h.min() / 2)


def twisted_noniso_apply(phi: CompositionIso, f: LipFn) -> LipFn:
    """f o T^-1 + min f."""
    _require_lip1plus(f)
    return phi_apply(phi, f).shifted(f.min())


def twisted_noniso_preimage(phi: CompositionIso, h: LipFn) -> LipFn:
    return phi_apply(phi.inverse(), noniso_preimage(h))


def verify_noniso_example(
    context: LipContext,
    sampler: RationalSampler,
    samples: int = 1000,
    phi: Optional[CompositionIso] = None
) -> list[CheckReport]:
    """
    Check f -> f + min f (or its twist by phi) on seeded LIP1PLUS samples:
    monoid morphism, bijection, order preservation, and a
    non-isometry witness on the constants 1 and 0.
    """
    prefix = 'noniso' if phi is None else 'noniso.twisted'
    if phi is None:
        def forward(f):
            return noniso_morphism_apply(f)

        def backward(h):
            return noniso_preimage(h)

        target = context
    else:
        if phi.source != context:
            raise ContextMismatch("operator does not start at the given context")

        def forward(f):
            return twisted_noniso_apply(phi, f)

        def backward(h):
            return twisted_noniso_preimage(phi, h)

        target = phi.target

    morphism = CheckRecorder(f'{prefix}.morphism')
    bijective = CheckRecorder(f'{prefix}.bijective')
    order = CheckRecorder(f'{prefix}.order')
    in_cone = CheckRecorder(f'{prefix}.cone')

    for _ in range(samples):
        f = sampler.lip1plus(context)
        g = sampler.lip1plus(context)
        h = sampler.lip1plus(target)

        lhs = forward(inf_conv(f, g))
        rhs = inf_conv(forward(f), forward(g))
        morphism.record(lhs == rhs, {'f': f, 'g': g})

        pre = backward(h)
        ok = (
            ConeTag.LIP1PLUS in classify(pre)
            and forward(pre) == h
            and backward(forward(f)) == f
        )
        bijective.record(ok, {'f': f, 'h': h})

        # order is preserved but not reflected: (0, 1) vs (1/2, 1/2) maps to (0, 1) <= (1, 1)
        upper = pointwise_max([f, g])
        ok = (
            forward(f).is_below(forward(upper))
            and forward(g).is_below(forward(upper))
            and (not f.is_below(g) or forward(f).is_below(forward(g)))
        )
        order.record(ok, {'f': f, 'g': g})

        in_cone.record(ConeTag.LIP1PLUS in classify(forward(f)), {'f': f})

    one, zero = context.constant(1), context.zero
    image_rho = rho(forward(one), forward(zero))
    source_rho = rho(one, zero)
    violation = single_check(
        f'{prefix}.isometry_violation',
        image_rho != source_rho,
        {'rho_images': image_rho, 'rho_sources': source_rho},
        detail=f"rho(Phi(1), Phi(0)) = {image_rho}, rho(1, 0) = {source_rho}",
    )

    return [r.report() for r in (bijective, in_cone, morphism, order)] + [violation]


def _family_min_ok(phi: CompositionIso, family: list[LipFn]) -> bool:
    return phi_apply(phi, pointwise_min(family)) == pointwise_min([phi_apply(phi, f) for f in family])


def verify_lemma_suite(
    phi: CompositionIso,
    sampler: RationalSampler,
    samples: int = 1000,
    family_size: int = 3
) -> list[CheckReport]:
    """
    Sampled necessary conditions for an isometric monoid isomorphism.

    Checks constants, zero and identity, infimum preservation, delta
    translation, shift by constants, order equivalence (for phi and its
    inverse), finite-min commutation, the monoid law, cone preservation,
    the rho / d_inf / theta_inf isometries, and the carrier isometry of T.
    Failures carry the first witness; nothing is raised.
    """
    source, target = phi.source, phi.target
    inverse = phi.inverse()
    t = phi.iso.mapping

    recorders = {name: CheckRecorder(f'lemma.{name}') for name in (
        'constants', 'inf_preserved', 'delta_translation', 'translation', 'order',
        'order_inverse', 'finite_min', 'morphism', 'cones', 'rho_isometry',
        'd_inf_isometry', 'theta_isometry',
    )}

    for _ in range(samples):
        r = sampler.rational()
        x = sampler.element(source)
        f = sampler.lip1(source)
        g = sampler.lip1(source)
        pf, pg = phi_apply(phi, f), phi_apply(phi, g)

        recorders['constants'].record(phi_apply(phi, source.constant(r)) == target.constant(r), {'r': r})
        recorders['inf_preserved'].record(pf.min() == f.min(), {'f': f})
        recorders['delta_translation'].record(
            phi_apply(phi, source.delta(x).shifted(r)) == target.delta(t[x]).shifted(r),
            {'x': x, 'r': r},
        )
        recorders['translation'].record(phi_apply(phi, f.shifted(r)) == pf.shifted(r), {'f': f, 'r': r})

        upper = pointwise_max([f, g])
        recorders['order'].record(
            f.is_below(g) == pf.is_below(pg) and pf.is_below(phi_apply(phi, upper)),
            {'f': f, 'g': g},
        )
        u = sampler.lip1(target)
        v = sampler.lip1(target)
        recorders['order_inverse'].record(
            u.is_below(v) == phi_apply(inverse, u).is_below(phi_apply(inverse, v)),
            {'u': u, 'v': v},
        )

        family = [f, g] + [sampler.lip1(source) for _ in range(max(0, family_size - 2))]
        recorders['finite_min'].record(_family_min_ok(phi, family), {'family': family})

        fp, gp = sampler.lip1plus(source), sampler.lip1plus(source)
        recorders['morphism'].record(
            phi_apply(phi, inf_conv(fp, gp)) == inf_conv(phi_apply(phi, fp), phi_apply(phi, gp)),
            {'f': fp, 'g': gp},
        )
        recorders['cones'].record(classify(pf) == classify(f) and classify(phi_apply(phi, fp)) == classify(fp),
                                  {'f': f, 'f_plus': fp})

        recorders['rho_isometry'].record(rho(pf, pg) == rho(f, g), {'f': f, 'g': g})
        recorders['d_inf_isometry'].record(d_inf(pf, pg) == d_inf(f, g), {'f': f, 'g': g})
        recorders['theta_isometry'].record(theta_inf(pf, pg) == theta_inf(f, g), {'f': f, 'g': g})

    fixed = single_check(
        'lemma.fixed_points',
        phi_apply(phi, source.zero) == target.zero and phi_apply(phi, source.identity) == target.identity,
        detail="Phi(0) = 0 and Phi(delta_e) = delta_e'",
    )
    violation = find_isometry_violation(phi.iso, source.metric, target.metric)
    carrier = single_check('lemma.carrier_isometry', violation is None, violation)

    reports = [rec.report() for rec in recorders.values()] + [fixed, carrier]
    failed = [r.check for r in reports if not r.passed]
    if failed:
        logging.warning(f"Lemma suite for {source.name} -> {target.name} failed: {', '.join(failed)}")
    return sorted(reports, key=lambda r: r.check)


def negative_control_operator(source: LipContext, target: LipContext) -> CompositionIso:
    """
    Identity-carrier operator between two metrics on the same group that is
    not isometric; used to show the lemma suite rejects it.

    Raises:
        NotAGroupIso: the two groups differ
    """
    if source.group != target.group:
        raise NotAGroupIso("negative control needs one group under two metrics")
    identity = GroupIso(source.group, target.group, tuple(source.group.elements))
    return CompositionIso(identity, source, target, checked=False)
