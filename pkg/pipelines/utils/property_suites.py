"""
Property Suites

Seeded property checks behind `liptrop verify`. Each check draws from its
own sampler, seeded from the run seed and the check name, so the report is
the same for any number of workers.

Usage:
    from pipelines.utils.property_suites import PropertySuites

    suites = PropertySuites(run_config)
    document = suites.run('monoid', [context])
"""

import logging
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Any

from src.liptrop.banach_stone import (
    decide_monoid_iso,
    enumerate_isometric_monoid_isos,
    is_m_group,
    negative_control_operator,
    phi_apply,
    verify_lemma_suite,
    verify_noniso_example,
)
from src.liptrop.config import RunConfig
from src.liptrop.groups import (
    FiniteGroup,
    brute_force_isomorphisms,
    enumerate_automorphisms,
    enumerate_isomorphisms,
    relabeled,
    validate_group,
)
from src.liptrop.lip_monoid import (
    ConeTag,
    LipContext,
    LipFn,
    cap_with,
    classify,
    d_inf,
    inf_conv,
    inf_conv_partitioned,
    is_unit,
    osc,
    pointwise_max,
    pointwise_min,
    residual_inverse,
    rho,
    tau,
    tau_distance,
    tau_inv,
    tau_product,
    theta_inf,
    units_of,
)
from src.liptrop.metrics import find_isometry_violation
from src.liptrop.reporting import CheckRecorder, CheckReport, all_passed, merge_reports, single_check
from src.liptrop.rn_star import Membership, RnVector, StarContext, maximal_subgroup_at_e, membership, star
from src.liptrop.sampling import RationalSampler

VALID_SUITES = ['all', 'monoid', 'units', 'banachstone', 'lemmas']

CONES = [ConeTag.LIP10, ConeTag.LIP1PLUS, ConeTag.LIP1, ConeTag.LIP]


@dataclass(frozen=True)
class SuiteCheck:
    """A named check; run(sampler, samples) returns one or more reports."""

    name: str
    run: Callable[[RationalSampler, int], list[CheckReport]]


def _label(context: LipContext) -> str:
    return context.name


def _unit_group(members: Sequence[LipFn], name: str) -> FiniteGroup:
    """Cayley table of a finite set of units under inf-convolution."""
    index = {f.values: i for i, f in enumerate(members)}
    table = [[index.get(inf_conv(f, g).values, -1) for g in members] for f in members]
    return validate_group(table, name=name)


def _renamed(reports: list[CheckReport], name: str) -> list[CheckReport]:
    """Name a lone report after its check; prefix several with it."""
    if len(reports) == 1:
        return [replace(reports[0], check=name)]
    return [replace(r, check=f"{name}.{r.check}") for r in reports]


class PropertySuites:
    """Build and run the verify suites over one or two contexts."""

    def __init__(self, run_config: RunConfig):
        """Initialize with the resolved run configuration."""
        self.config = run_config
        self.stats = {
            'checks': 0,
            'passed': 0,
            'failed': 0,
        }

    def sampler_for(self, name: str) -> RationalSampler:
        return RationalSampler.for_check(
            self.config.seed,
            name,
            max_denominator=self.config.max_denominator,
            value_bound=self.config.value_bound,
        )

    # Monoid laws

    def monoid_checks(self, ctx: LipContext) -> list[SuiteCheck]:
        label = _label(ctx)
        checks = []
        for cone in CONES:
            checks.append(SuiteCheck(
                f"monoid.laws.{cone.value}@{label}",
                lambda s, n, cone=cone: self._monoid_laws(ctx, cone, s, n),
            ))
        checks += [
            SuiteCheck(f"monoid.commutativity@{label}", lambda s, n: [self._commutativity(ctx, s, n)]),
            SuiteCheck(f"monoid.delta_group_law@{label}", lambda s, n: [self._delta_group_law(ctx)]),
            SuiteCheck(f"monoid.inf_additivity@{label}", lambda s, n: [self._inf_additivity(ctx, s, n)]),
            SuiteCheck(f"monoid.rho_identity@{label}", lambda s, n: [self._rho_identity(ctx, s, n)]),
            SuiteCheck(f"monoid.theta_decomposition@{label}", lambda s, n: [self._theta_decomposition(ctx, s, n)]),
            SuiteCheck(f"monoid.monotonicity@{label}", lambda s, n: [self._monotonicity(ctx, s, n)]),
            SuiteCheck(f"monoid.cap_identity@{label}", lambda s, n: [self._cap_identity(ctx, s, n)]),
            SuiteCheck(f"monoid.regularization@{label}", lambda s, n: [self._regularization(ctx, s, n)]),
            SuiteCheck(f"monoid.min_distributivity@{label}", lambda s, n: [self._min_distributivity(ctx, s, n)]),
            SuiteCheck(f"monoid.zero_absorption@{label}", lambda s, n: [self._zero_absorption(ctx, s, n)]),
            SuiteCheck(f"monoid.boundedness@{label}", lambda s, n: [self._boundedness(ctx, s, n)]),
            SuiteCheck(f"monoid.partitioned_conv@{label}", lambda s, n: [self._partitioned(ctx, s, n)]),
        ]
        if ctx.metric.is_discrete:
            checks.append(SuiteCheck(f"monoid.oscillation_rule@{label}", lambda s, n: [self._oscillation(ctx, s, n)]))
        if ctx.group.identity == 0:
            checks.append(SuiteCheck(f"rn_star.kernel_bridge@{label}", lambda s, n: self._kernel_bridge(ctx, s, n)))
        return checks

    def _monoid_laws(self, ctx: LipContext, cone: ConeTag, sampler: RationalSampler, samples: int) -> list[CheckReport]:
        assoc = CheckRecorder('associativity')
        identity = CheckRecorder('identity')
        closure = CheckRecorder('closure')
        e = ctx.identity
        for _ in range(samples):
            f, g, h = (sampler.in_cone(ctx, cone) for _ in range(3))
            fg = inf_conv(f, g)
            assoc.record(inf_conv(fg, h) == inf_conv(f, inf_conv(g, h)), {'f': f, 'g': g, 'h': h})
            if cone is not ConeTag.LIP:
                identity.record(inf_conv(e, f) == f and inf_conv(f, e) == f, {'f': f})
            closure.record(cone in classify(fg), {'f': f, 'g': g})
        reports = [assoc.report(), closure.report()]
        if cone is not ConeTag.LIP:
            reports.append(identity.report())
        return reports

    def _commutativity(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        pair = ctx.group.noncommuting_pair()
        if pair is None:
            recorder = CheckRecorder('commutativity')
            for _ in range(samples):
                f, g = sampler.lip1plus(ctx), sampler.lip1plus(ctx)
                recorder.record(inf_conv(f, g) == inf_conv(g, f), {'f': f, 'g': g})
            return recorder.report()
        a, b = pair
        da, db = ctx.delta(a), ctx.delta(b)
        differs = inf_conv(da, db) != inf_conv(db, da)
        return single_check('commutativity', differs, {'pair': list(pair)},
                            detail="nonabelian group: delta_a + delta_b != delta_b + delta_a")

    def _delta_group_law(self, ctx: LipContext) -> CheckReport:
        group = ctx.group
        deltas = [ctx.delta(x) for x in group.elements]
        for x in group.elements:
            for y in group.elements:
                if inf_conv(deltas[x], deltas[y]) != deltas[group.mul(x, y)]:
                    return single_check('delta_group_law', False, [x, y])
        return single_check('delta_group_law', True, detail=f"{group.order ** 2} pairs")

    def _inf_additivity(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('inf_additivity')
        for _ in range(samples):
            f, g = sampler.function(ctx), sampler.function(ctx)
            recorder.record(inf_conv(f, g).min() == f.min() + g.min(), {'f': f, 'g': g})
        return recorder.report()

    def _rho_identity(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('rho_identity')
        for _ in range(samples):
            f, g = sampler.function(ctx), sampler.function(ctx)
            r, d = rho(f, g), d_inf(f, g)
            recorder.record(r * (1 + d) == d and r < 1, {'f': f, 'g': g})
        return recorder.report()

    def _theta_decomposition(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('theta_decomposition')
        for _ in range(samples):
            f, g = sampler.lip1(ctx), sampler.lip1(ctx)
            expected = d_inf(f.shifted(-f.min()), g.shifted(-g.min())) + abs(f.min() - g.min())
            theta = theta_inf(f, g)
            recorder.record(theta == expected and theta == tau_distance(tau(f), tau(g)), {'f': f, 'g': g})
        return recorder.report()

    def _monotonicity(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('monotonicity')
        for _ in range(samples):
            f, g, h = sampler.lip1plus(ctx), sampler.lip1plus(ctx), sampler.lip1plus(ctx)
            upper = pointwise_max([f, g])
            forward = inf_conv(h, f).is_below(inf_conv(h, upper))
            cap = cap_with(ctx, max(f.max(), g.max()))
            converse = inf_conv(cap, f).is_below(inf_conv(cap, g)) == f.is_below(g)
            recorder.record(forward and converse, {'f': f, 'g': g, 'h': h})
        return recorder.report()

    def _cap_identity(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('cap_identity')
        for _ in range(samples):
            f = sampler.lip1plus(ctx)
            x = sampler.element(ctx)
            a = f[x] + sampler.nonnegative()
            recorder.record(inf_conv(cap_with(ctx, a), f)[x] == f[x], {'f': f, 'x': x, 'a': a})
        return recorder.report()

    def _regularization(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('regularization')
        e = ctx.identity
        for index in range(samples):
            f = sampler.lip1(ctx) if index % 2 == 0 else sampler.function(ctx)
            regular = inf_conv(e, f)
            if ConeTag.LIP1 in classify(f):
                ok = regular == f
            else:
                ok = regular != f and ConeTag.LIP1 in classify(regular) and regular.is_below(f)
            recorder.record(ok, {'f': f})
        return recorder.report()

    def _min_distributivity(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('min_distributivity')
        for _ in range(samples):
            family = [sampler.function(ctx) for _ in range(3)]
            g = sampler.function(ctx)
            low = pointwise_min(family)
            ok = (
                inf_conv(low, g) == pointwise_min([inf_conv(f, g) for f in family])
                and inf_conv(g, low) == pointwise_min([inf_conv(g, f) for f in family])
            )
            recorder.record(ok, {'family': family, 'g': g})
        return recorder.report()

    def _zero_absorption(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('zero_absorption')
        zero = ctx.zero
        for _ in range(samples):
            f = sampler.function(ctx)
            expected = ctx.constant(f.min())
            recorder.record(inf_conv(f, zero) == expected and inf_conv(zero, f) == expected, {'f': f})
        return recorder.report()

    def _boundedness(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('boundedness')
        e = ctx.group.identity
        for _ in range(samples):
            f, h = sampler.lip1plus(ctx), sampler.lip1plus(ctx)
            fh = inf_conv(f, h)
            ok = all(0 <= fh[x] <= f[e] + h[x] for x in ctx.group.elements)
            recorder.record(ok, {'f': f, 'h': h})
        return recorder.report()

    def _partitioned(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('partitioned_conv')
        workers = max(2, self.config.workers)
        for _ in range(samples):
            f, g = sampler.function(ctx), sampler.function(ctx)
            recorder.record(inf_conv_partitioned(f, g, workers) == inf_conv(f, g), {'f': f, 'g': g})
        return recorder.report()

    def _oscillation(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('oscillation_rule')
        for index in range(samples):
            f = sampler.lip1(ctx) if index % 2 == 0 else sampler.function(ctx)
            recorder.record((osc(f) <= 1) == (ConeTag.LIP1 in classify(f)), {'f': f})
        return recorder.report()

    def _kernel_bridge(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> list[CheckReport]:
        star_ctx = StarContext(ctx.group)
        disc = star_ctx.lip_context
        e = star_ctx.identity_vector
        bridge = CheckRecorder('bridge')
        semigroup = CheckRecorder('associativity')
        identity = CheckRecorder('identity')
        tags = CheckRecorder('membership')
        for index in range(samples):
            x = RnVector.from_sequence(sampler.vector(ctx.order))
            y = RnVector.from_sequence(sampler.vector(ctx.order))
            z = RnVector.from_sequence(sampler.vector(ctx.order))
            bridge.record(
                star(star_ctx, x, y).values == inf_conv(ctx.function(x.values), ctx.function(y.values)).values,
                {'x': x, 'y': y},
            )
            semigroup.record(
                star(star_ctx, star(star_ctx, x, y), z) == star(star_ctx, x, star(star_ctx, y, z)),
                {'x': x, 'y': y, 'z': z},
            )
            v = RnVector(sampler.lip1(disc).values) if index % 2 == 0 else x
            fixed = star(star_ctx, e, v) == v and star(star_ctx, v, e) == v
            identity.record(fixed == (membership(v) is not Membership.NEITHER), {'v': v})
            found = classify(disc.function(v.values))
            expected = (
                Membership.IN_MNPLUS if ConeTag.LIP1PLUS in found
                else Membership.IN_MN if ConeTag.LIP1 in found
                else Membership.NEITHER
            )
            tags.record(membership(v) is expected, {'v': v})
        return [r.report() for r in (semigroup, bridge, identity, tags)]

    # Units

    def units_checks(self, ctx: LipContext) -> list[SuiteCheck]:
        label = _label(ctx)
        checks = [
            SuiteCheck(f"units.lip1plus@{label}", lambda s, n: self._finite_units(ctx)),
            SuiteCheck(f"units.lip1_members@{label}", lambda s, n: [self._lip1_members(ctx, s, n)]),
            SuiteCheck(f"units.lip1_non_members@{label}", lambda s, n: [self._lip1_non_members(ctx, s, n)]),
            SuiteCheck(f"units.oracle@{label}", lambda s, n: [self._unit_oracle(ctx, s, n)]),
            SuiteCheck(f"units.residuation@{label}", lambda s, n: [self._residuation(ctx, s, n)]),
            SuiteCheck(f"units.lip1_law@{label}", lambda s, n: [self._lip1_law(ctx)]),
            SuiteCheck(f"units.tau@{label}", lambda s, n: self._tau(ctx, s, n)),
        ]
        if ctx.group.identity == 0:
            checks.append(SuiteCheck(f"rn_star.maximal_subgroup@{label}", lambda s, n: [self._maximal_subgroup(ctx, s, n)]))
        return checks

    def _finite_units(self, ctx: LipContext) -> list[CheckReport]:
        group = ctx.group
        plus = units_of(ctx, ConeTag.LIP1PLUS)
        zero = units_of(ctx, ConeTag.LIP10)
        deltas = tuple(ctx.delta(x) for x in group.elements)
        count = single_check('count', plus.members == deltas, {'units': len(plus.members), 'order': group.order})
        same = single_check('lip10_equals_lip1plus', set(zero.members) == set(plus.members))

        try:
            units_group = _unit_group(plus.members, f"U({group.name})")
            isos = enumerate_isomorphisms(units_group, group, self.config.order_cap)
            witness = list(isos[0].mapping) if isos else None
            ok = bool(isos)
        except ValueError as e:
            witness, ok = str(e), False
        iso = single_check('group_isomorphism', ok, witness, detail="x -> delta_x")
        return [count, iso, same]

    def _lip1_members(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('lip1_members')
        group = ctx.group
        for _ in range(samples):
            x, r, f = sampler.unit(ctx)
            result = is_unit(f, ConeTag.LIP1)
            expected = ctx.delta(group.inv(x)).shifted(-r)
            recorder.record(bool(result) and result.inverse == expected, {'x': x, 'r': r})
        return recorder.report()

    def _lip1_non_members(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('lip1_non_members')
        if ctx.order < 2:
            return recorder.report()
        for _ in range(samples):
            f = sampler.non_unit(ctx)
            recorder.record(ConeTag.LIP1 in classify(f) and not is_unit(f, ConeTag.LIP1), {'f': f})
        return recorder.report()

    def _unit_oracle(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('oracle')
        deltas = {ctx.delta(x) for x in ctx.group.elements}
        for index in range(samples):
            if index % 3 == 0:
                f = ctx.delta(sampler.element(ctx)).shifted(sampler.rational())
            elif index % 3 == 1:
                f = sampler.lip1plus(ctx)
            else:
                f = sampler.function(ctx)
            tags = classify(f)
            ok = True
            if ConeTag.LIP1PLUS in tags:
                ok = ok and bool(is_unit(f, ConeTag.LIP1PLUS)) == (f in deltas)
            if ConeTag.LIP1 in tags:
                ok = ok and bool(is_unit(f, ConeTag.LIP1)) == (tau(f).base in deltas)
            lip_member = ConeTag.LIP1 in tags and tau(f).base in deltas
            ok = ok and bool(is_unit(f, ConeTag.LIP)) == lip_member
            recorder.record(ok, {'f': f})
        return recorder.report()

    def _residuation(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('residuation')
        e = ctx.identity
        for _ in range(samples):
            f = sampler.function(ctx)
            inverse = residual_inverse(f)
            above = e.is_below(inf_conv(f, inverse))
            z = sampler.element(ctx)
            lowered = list(inverse.values)
            lowered[z] -= sampler.rational(low=1, high=2)
            tight = not e.is_below(inf_conv(f, ctx.function(lowered)))
            recorder.record(above and tight, {'f': f, 'z': z})
        return recorder.report()

    def _lip1_law(self, ctx: LipContext) -> CheckReport:
        description = units_of(ctx, ConeTag.LIP1)
        broken = next((w for w in description.law_witness if not w.holds), None)
        witness = None if broken is None else {'x': broken.x, 'r': broken.r, 'y': broken.y, 's': broken.s}
        return single_check('lip1_law', broken is None, witness,
                            detail=f"{len(description.law_witness)} products (x, r)(y, s) = (xy, r + s)")

    def _tau(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> list[CheckReport]:
        round_trip = CheckRecorder('round_trip')
        morphism = CheckRecorder('morphism')
        isometry = CheckRecorder('isometry')
        for _ in range(samples):
            f, g = sampler.lip1(ctx), sampler.lip1(ctx)
            pf, pg = tau(f), tau(g)
            round_trip.record(tau_inv(pf) == f and ConeTag.LIP10 in classify(pf.base), {'f': f})
            morphism.record(tau(inf_conv(f, g)) == tau_product(pf, pg), {'f': f, 'g': g})
            isometry.record(theta_inf(f, g) == tau_distance(pf, pg), {'f': f, 'g': g})
        return [r.report() for r in (isometry, morphism, round_trip)]

    def _maximal_subgroup(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        star_ctx = StarContext(ctx.group)
        sub = maximal_subgroup_at_e(star_ctx)
        recorder = CheckRecorder('maximal_subgroup')
        recorder.record(sub.law_holds, 'group law')
        for _ in range(samples):
            x = sampler.element(ctx)
            r = sampler.rational()
            v = sub.element(x, r)
            recorder.record(sub.belongs(v) and sub.decompose(v) == (x, r), {'x': x, 'r': r})
            w = RnVector.from_sequence(sampler.vector(ctx.order))
            in_family = any(
                RnVector(star_ctx.lip_context.delta(y).shifted(w.values[y]).values) == w
                for y in ctx.group.elements
            )
            recorder.record(sub.belongs(w) == in_family, {'w': w})
        return recorder.report()

    # Banach-Stone

    def banachstone_checks(self, contexts: Sequence[LipContext]) -> list[SuiteCheck]:
        source, target = contexts[0], contexts[-1]
        label = _label(source) if len(contexts) == 1 else f"{_label(source)}->{_label(target)}"
        checks = [
            SuiteCheck(f"banachstone.is_m@{_label(source)}", lambda s, n: self._is_m(source)),
            SuiteCheck(f"banachstone.enumeration@{label}", lambda s, n: [self._enumeration(source, target)]),
            SuiteCheck(f"banachstone.decision@{label}", lambda s, n: self._decision(source, target)),
            SuiteCheck(f"banachstone.relabeled@{_label(source)}", lambda s, n: self._relabeled(source, s, n)),
            SuiteCheck(f"banachstone.metric_equivalence@{label}", lambda s, n: [self._metric_equivalence(source, target, s, n)]),
            SuiteCheck(f"banachstone.noniso@{_label(source)}", lambda s, n: verify_noniso_example(LipContext.discrete(source.group), s, n)),
        ]
        if not source.metric.is_discrete:
            checks.append(SuiteCheck(f"banachstone.negative_control@{_label(source)}",
                                     lambda s, n: [self._negative_control(source, s, n)]))
        decision = decide_monoid_iso(source.group, target.group, self.config.order_cap)
        if len(contexts) > 1 and decision.verdict:
            checks.append(SuiteCheck(
                f"banachstone.noniso_twisted@{label}",
                lambda s, n: verify_noniso_example(decision.operator.source, s, n, phi=decision.operator),
            ))
        return checks

    def _is_m(self, ctx: LipContext) -> list[CheckReport]:
        group = ctx.group
        operators = is_m_group(ctx, self.config.order_cap)
        maps = {op.iso.mapping for op in operators}
        closed = all(
            a.compose(b).iso.mapping in maps and a.inverse().iso.mapping in maps
            for a in operators for b in operators
        )
        has_identity = bool(operators) and operators[0].is_identity
        closure = single_check('closure', closed and has_identity, {'size': len(operators)})

        autos = enumerate_automorphisms(group, self.config.order_cap)
        isometric = [t for t in autos if find_isometry_violation(t, ctx.metric, ctx.metric) is None]
        detail = {'is_m': len(operators), 'aut': len(autos), 'isometric_aut': len(isometric)}
        ok = len(operators) == len(isometric)
        if ctx.metric.is_discrete:
            ok = ok and len(operators) == len(autos)
        if group.order <= self.config.brute_force_max_order:
            oracle = brute_force_isomorphisms(group, group, self.config.brute_force_max_order)
            detail['brute_force_aut'] = len(oracle)
            ok = ok and [t.mapping for t in oracle] == [t.mapping for t in autos]
        cardinality = single_check('cardinality', ok, detail)
        return [cardinality, closure]

    def _enumeration(self, source: LipContext, target: LipContext) -> CheckReport:
        operators = enumerate_isometric_monoid_isos(source, target, self.config.order_cap)
        isos = enumerate_isomorphisms(source.group, target.group, self.config.order_cap)
        isometric = [t for t in isos if find_isometry_violation(t, source.metric, target.metric) is None]
        ok = [op.iso.mapping for op in operators] == [t.mapping for t in isometric]
        if source.group.order <= self.config.brute_force_max_order:
            oracle = brute_force_isomorphisms(source.group, target.group, self.config.brute_force_max_order)
            ok = ok and [t.mapping for t in oracle] == [t.mapping for t in isos]
        return single_check('enumeration', ok, {'monoid_isos': len(operators), 'group_isos': len(isos),
                                                'isometric_group_isos': len(isometric)})

    def _decision(self, source: LipContext, target: LipContext) -> list[CheckReport]:
        g, h = source.group, target.group
        decision = decide_monoid_iso(g, h, self.config.order_cap)
        exists = bool(enumerate_isomorphisms(g, h, self.config.order_cap))
        verdict = single_check('verdict', decision.verdict == exists, decision.to_dict())

        # the unit groups of the two monoids decide the same question
        units_g = units_of(LipContext.discrete(g), ConeTag.LIP1PLUS).members
        units_h = units_of(LipContext.discrete(h), ConeTag.LIP1PLUS).members
        try:
            same_units = bool(enumerate_isomorphisms(
                _unit_group(units_g, f"U({g.name})"), _unit_group(units_h, f"U({h.name})"), self.config.order_cap
            ))
            ok = len(units_g) == g.order and len(units_h) == h.order and same_units == decision.verdict
        except ValueError:
            ok = False
        agree = single_check('unit_groups', ok, {'units': [len(units_g), len(units_h)], 'verdict': decision.verdict})
        return [agree, verdict]

    def _relabeled(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> list[CheckReport]:
        group = ctx.group
        permutation = [int(i) for i in sampler.rng.permutation(group.order)]
        copy = relabeled(group, permutation, name=f"{group.name}'")
        decision = decide_monoid_iso(group, copy, self.config.order_cap)
        verdict = single_check('verdict', decision.verdict and decision.operator is not None,
                               {'permutation': permutation, 'decision': decision.to_dict()})
        if decision.operator is None:
            return [verdict]
        lemma_reports = verify_lemma_suite(decision.operator, sampler, samples)
        return [verdict] + lemma_reports

    def _metric_equivalence(self, source: LipContext, target: LipContext,
                            sampler: RationalSampler, samples: int) -> CheckReport:
        recorder = CheckRecorder('metric_equivalence')
        operators = enumerate_isometric_monoid_isos(source, target, self.config.order_cap)
        if not operators:
            return recorder.report()
        for index in range(samples):
            phi = operators[index % len(operators)]
            f, g = sampler.lip1plus(source), sampler.lip1plus(source)
            pf, pg = phi_apply(phi, f), phi_apply(phi, g)
            rho_kept = rho(pf, pg) == rho(f, g)
            d_kept = d_inf(pf, pg) == d_inf(f, g)
            recorder.record(rho_kept and d_kept, {'operator': list(phi.iso.mapping), 'f': f, 'g': g})
        return recorder.report()

    def _negative_control(self, ctx: LipContext, sampler: RationalSampler, samples: int) -> CheckReport:
        operator = negative_control_operator(ctx, LipContext.discrete(ctx.group))
        reports = verify_lemma_suite(operator, sampler, samples)
        failing = [r for r in reports if not r.passed]
        witness = {r.check: r.to_dict()['witness'] for r in failing}
        return single_check('negative_control', any(r.check == 'lemma.carrier_isometry' for r in failing), witness,
                            detail="identity map onto the discrete metric must fail the lemma suite")

    # Lemma suites

    def lemma_checks(self, contexts: Sequence[LipContext]) -> list[SuiteCheck]:
        source, target = contexts[0], contexts[-1]
        operators = enumerate_isometric_monoid_isos(source, target, self.config.order_cap)
        label = _label(source) if len(contexts) == 1 else f"{_label(source)}->{_label(target)}"
        checks = []
        for index, phi in enumerate(operators):
            name = f"lemmas.phi{index:03d}@{label}"
            checks.append(SuiteCheck(name, lambda s, n, phi=phi: verify_lemma_suite(phi, s, n)))
        return checks

    # Driver

    def collect(self, suite: str, contexts: Sequence[LipContext]) -> list[SuiteCheck]:
        if suite not in VALID_SUITES:
            raise ValueError(f"Unknown suite '{suite}'. Must be one of {VALID_SUITES}")
        if not contexts:
            raise ValueError("verify needs at least one context")
        checks: list[SuiteCheck] = []
        if suite in ('all', 'monoid'):
            for ctx in contexts:
                checks += self.monoid_checks(ctx)
        if suite in ('all', 'units'):
            for ctx in contexts:
                checks += self.units_checks(ctx)
        if suite in ('all', 'banachstone'):
            checks += self.banachstone_checks(contexts)
        if suite in ('all', 'lemmas'):
            checks += self.lemma_checks(contexts)
        return checks

    def _execute(self, check: SuiteCheck) -> list[CheckReport]:
        started = time.perf_counter()
        reports = _renamed(check.run(self.sampler_for(check.name), self.config.samples), check.name)
        logging.debug(f"{check.name}: {len(reports)} reports in {time.perf_counter() - started:.3f}s")
        return reports

    def run(self, suite: str, contexts: Sequence[LipContext]) -> dict[str, Any]:
        """
        Run a suite and assemble its report document.

        Returns:
            {"suite", "seed", "samples", "status", "contexts", "checks": [...]}
        """
        started = time.perf_counter()
        checks = self.collect(suite, contexts)
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
                results = list(executor.map(self._execute, checks))
        else:
            results = [self._execute(check) for check in checks]

        reports = merge_reports(results)
        passed = sum(r.passed for r in reports)
        self.stats['checks'] += len(reports)
        self.stats['passed'] += passed
        self.stats['failed'] += len(reports) - passed

        status = 'pass' if all_passed(reports) else 'fail'
        logging.info(
            f"Suite {suite}: {passed}/{len(reports)} checks passed "
            f"({time.perf_counter() - started:.2f}s, {self.config.workers} workers)"
        )
        return {
            'suite': suite,
            'seed': self.config.seed,
            'samples': self.config.samples,
            'status': status,
            'contexts': [_label(ctx) for ctx in contexts],
            'checks': [r.to_dict() for r in reports],
        }

    def get_statistics(self) -> dict[str, int]:
        return self.stats.copy()
