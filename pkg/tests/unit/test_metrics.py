"""
Tests for bi-invariant metrics on finite groups.
"""

from fractions import Fraction

import pytest

from src.liptrop.errors import (
    CarrierMismatch,
    NotAMetric,
    NotBiInvariant,
    NotGenerating,
    NotSymmetricWeights,
)
from src.liptrop.groups import FiniteGroup, GroupIso
from src.liptrop.lip_monoid import LipContext
from src.liptrop.metrics import (
    LengthWeights,
    cayley_graph,
    discrete_metric,
    find_isometry_violation,
    is_isometric_iso,
    validate_metric,
    word_metric,
)


class TestDiscreteMetric:
    """Test suite for the discrete metric."""

    def test_z2(self, z2: FiniteGroup):
        """Test disc(Z2) is [[0, 1], [1, 0]]."""
        metric = discrete_metric(z2)
        assert metric.dist == ((0, 1), (1, 0))
        assert metric.is_discrete
        assert metric.name == 'disc(Z2)'

    def test_all_off_diagonal_one(self, groups: dict[str, FiniteGroup]):
        """Test every desk group gets a valid discrete metric of diameter 1."""
        for group in groups.values():
            metric = discrete_metric(group)
            if group.order > 1:
                assert metric.diameter == 1
            assert metric.delta_compatibility_violation() is None


class TestValidateMetric:
    """Test suite for metric validation."""

    def test_accepts_half_metric(self, z2: FiniteGroup):
        """Test a scaled discrete metric is valid."""
        metric = validate_metric(z2, [[0, '1/2'], ['1/2', 0]])
        assert metric(0, 1) == Fraction(1, 2)
        assert not metric.is_discrete

    def test_shape(self, z2: FiniteGroup):
        """Test a matrix of the wrong size."""
        with pytest.raises(NotAMetric) as exc_info:
            validate_metric(z2, [[0]])
        assert exc_info.value.axiom == 'shape'

    def test_zero_diagonal(self, z2: FiniteGroup):
        """Test a nonzero diagonal entry."""
        with pytest.raises(NotAMetric) as exc_info:
            validate_metric(z2, [[1, 1], [1, 0]])
        assert exc_info.value.axiom == 'zero diagonal'

    def test_positivity(self, z2: FiniteGroup):
        """Test a zero distance between distinct points."""
        with pytest.raises(NotAMetric) as exc_info:
            validate_metric(z2, [[0, 0], [0, 0]])
        assert exc_info.value.axiom == 'positivity'

    def test_symmetry(self, z2: FiniteGroup):
        """Test an asymmetric matrix."""
        with pytest.raises(NotAMetric) as exc_info:
            validate_metric(z2, [[0, 1], [2, 0]])
        assert exc_info.value.axiom == 'symmetry'

    def test_triangle_inequality(self, groups: dict[str, FiniteGroup]):
        """Test a matrix that breaks the triangle inequality."""
        z3 = groups['Z3']
        with pytest.raises(NotAMetric) as exc_info:
            validate_metric(z3, [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        assert exc_info.value.axiom == 'triangle inequality'

    def test_not_bi_invariant(self, z4: FiniteGroup):
        """Test a metric on Z4 that is not translation invariant."""
        matrix = [
            [0, 1, 1, 1],
            [1, 0, 2, 2],
            [1, 2, 0, 2],
            [1, 2, 2, 0],
        ]
        with pytest.raises(NotBiInvariant) as exc_info:
            validate_metric(z4, matrix)
        assert len(exc_info.value.triple) == 3


class TestWordMetric:
    """Test suite for weighted word metrics."""

    def test_four_cycle(self, z4: FiniteGroup):
        """Test weights {1: 1, 3: 1} on Z4 give the cycle distances."""
        metric = word_metric(z4, LengthWeights.from_mapping({1: 1, 3: 1}))
        assert [metric(0, y) for y in range(4)] == [0, 1, 2, 1]
        assert metric.diameter == 2

    def test_single_edge(self, z2: FiniteGroup):
        """Test a half-weight generator on Z2."""
        metric = word_metric(z2, LengthWeights.from_mapping({1: Fraction(1, 2)}))
        assert metric.dist == ((0, Fraction(1, 2)), (Fraction(1, 2), 0))

    def test_shortcut_through_cheaper_path(self, z4: FiniteGroup):
        """Test the element 2 is reached through 1 + 1 when cheaper than its own weight."""
        metric = word_metric(z4, LengthWeights.from_mapping({1: 1, 3: 1, 2: 3}))
        assert metric(0, 2) == 2

    def test_s3_transpositions(self, s3_word_context: LipContext):
        """Test S3 with transpositions: distance 1 to transpositions, 2 to 3-cycles."""
        s3 = s3_word_context.group
        metric = s3_word_context.metric
        for x in s3.elements:
            expected = {1: 0, 2: 1, 3: 2}[s3.element_order(x)]
            assert metric(s3.identity, x) == expected

    def test_not_generating(self, z4: FiniteGroup):
        """Test {2} does not generate Z4."""
        with pytest.raises(NotGenerating) as exc_info:
            word_metric(z4, LengthWeights.from_mapping({2: 1}))
        assert exc_info.value.unreachable == 1

    def test_asymmetric_weights(self, z4: FiniteGroup):
        """Test the inverse of a generator needs the same weight."""
        with pytest.raises(NotSymmetricWeights) as exc_info:
            word_metric(z4, LengthWeights.from_mapping({1: 1, 3: 2}))
        assert exc_info.value.element == 1

    def test_missing_inverse_weight(self, z4: FiniteGroup):
        """Test a generator whose inverse carries no weight."""
        with pytest.raises(NotSymmetricWeights):
            word_metric(z4, LengthWeights.from_mapping({1: 1}))

    def test_non_positive_weight(self, z2: FiniteGroup):
        """Test a zero weight."""
        with pytest.raises(NotSymmetricWeights):
            word_metric(z2, LengthWeights.from_mapping({1: 0}))

    def test_non_conjugation_invariant_set(self, s3: FiniteGroup):
        """Test a single transposition and a 3-cycle give a metric that is not bi-invariant."""
        transposition = next(x for x in s3.elements if s3.element_order(x) == 2)
        cycle = next(x for x in s3.elements if s3.element_order(x) == 3)
        weights = {transposition: 1, cycle: 1, s3.inv(cycle): 1}
        with pytest.raises(NotBiInvariant):
            word_metric(s3, LengthWeights.from_mapping(weights))

    @pytest.mark.parametrize("name,weights", [
        ('Z4', {1: 1, 3: 1}),
        ('Z4', {1: 1, 3: 1, 2: 3}),
        ('Z4', {1: 2, 3: 2, 2: '1/2'}),
        ('Z6', {1: 1, 5: 1}),
        ('Z6', {1: 1, 5: 1, 2: '3/2', 4: '3/2'}),
        ('Z6', {2: 1, 4: 1, 3: '1/3'}),
        ('Z2xZ2', {1: 1, 2: 1}),
        ('Z2xZ2', {1: 1, 2: '1/2', 3: 2}),
        ('Z2xZ2', {1: 1, 2: 1, 3: 1}),
    ])
    def test_abelian_always_bi_invariant(self, groups: dict[str, FiniteGroup], name: str, weights: dict):
        """Test symmetric weights on an abelian group always give a translation-invariant metric."""
        group = groups[name]
        metric = word_metric(group, LengthWeights.from_mapping(weights))
        for x in group.elements:
            for y in group.elements:
                for z in group.elements:
                    assert metric(group.mul(z, x), group.mul(z, y)) == metric(x, y)

    def test_cayley_graph_edges(self, z4: FiniteGroup):
        """Test the Cayley graph has one edge per element and generator."""
        graph = cayley_graph(z4, LengthWeights.from_mapping({1: 1, 3: 1}))
        assert graph.number_of_nodes() == 4
        assert graph.number_of_edges() == 8
        assert graph[0][1]['weight'] == 1


class TestIsometries:
    """Test suite for isometry checks between metric groups."""

    def test_inversion_is_isometry_of_word_metric(self, z4_word_context: LipContext):
        """Test inversion on Z4 preserves the cycle metric."""
        z4 = z4_word_context.group
        inversion = GroupIso(z4, z4, (0, 3, 2, 1))
        assert is_isometric_iso(inversion, z4_word_context.metric, z4_word_context.metric)

    def test_identity_between_different_metrics(self, z4_word_context: LipContext):
        """Test the identity from the word metric to the discrete metric has a witness pair."""
        z4 = z4_word_context.group
        identity = GroupIso(z4, z4, (0, 1, 2, 3))
        pair = find_isometry_violation(identity, z4_word_context.metric, discrete_metric(z4))
        assert pair == (0, 2)

    def test_carrier_mismatch(self, z4: FiniteGroup, klein4: FiniteGroup):
        """Test metrics over another group are rejected."""
        identity = GroupIso(z4, z4, (0, 1, 2, 3))
        with pytest.raises(CarrierMismatch):
            find_isometry_violation(identity, discrete_metric(z4), discrete_metric(klein4))
