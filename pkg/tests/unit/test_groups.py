"""
Tests for finite groups.

Covers table validation, the builtin families, family parsing, relabeling,
isomorphism enumeration and its agreement with the brute-force oracle.
"""

import pytest

from src.liptrop.errors import (
    MalformedTable,
    MissingInverse,
    NoIdentity,
    NotAGroupIso,
    NotAssociative,
    OrderTooLarge,
    OutOfRangeEntry,
    UnsupportedFamily,
)
from src.liptrop.groups import (
    FiniteGroup,
    GroupIso,
    brute_force_isomorphisms,
    builtin_group,
    check_group_table,
    element_order_counts,
    enumerate_automorphisms,
    enumerate_isomorphisms,
    parse_family,
    relabeled,
    validate_group,
)


class TestValidateGroup:
    """Test suite for Cayley table validation."""

    def test_valid_cyclic_table(self):
        """Test a valid Z3 table is accepted with inverses computed."""
        group = validate_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]], name='Z3')
        assert group.order == 3
        assert group.identity == 0
        assert group.inverses == (0, 2, 1)

    def test_identity_found_when_not_declared(self):
        """Test the identity is searched for when not at index 0."""
        table = [[1, 0], [0, 1]]
        group = validate_group(table)
        assert group.identity == 1

    def test_not_square(self):
        """Test a ragged table is rejected."""
        with pytest.raises(MalformedTable):
            validate_group([[0, 1], [1]])

    def test_empty_table(self):
        """Test an empty table is rejected."""
        with pytest.raises(MalformedTable):
            validate_group([])

    def test_entry_out_of_range(self):
        """Test an entry outside 0..n-1 names its position."""
        with pytest.raises(OutOfRangeEntry) as exc_info:
            validate_group([[0, 1], [1, 5]])
        assert (exc_info.value.row, exc_info.value.column, exc_info.value.value) == (1, 1, 5)

    def test_boolean_entry_rejected(self):
        """Test booleans are not accepted as indices."""
        with pytest.raises(OutOfRangeEntry):
            validate_group([[0, True], [True, 0]])

    def test_no_identity(self):
        """Test a table without an identity."""
        with pytest.raises(NoIdentity):
            validate_group([[1, 1], [1, 1]])

    def test_declared_identity_wrong(self):
        """Test a declared identity that does not act as identity."""
        with pytest.raises(NoIdentity):
            validate_group([[0, 1], [1, 0]], identity=1)

    def test_missing_inverse(self):
        """Test an element with no two-sided inverse."""
        with pytest.raises(MissingInverse) as exc_info:
            validate_group([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
        assert exc_info.value.element == 1

    def test_not_associative(self):
        """Test a loop with inverses that fails associativity."""
        with pytest.raises(NotAssociative) as exc_info:
            validate_group([[0, 1, 2], [1, 0, 0], [2, 0, 0]])
        i, j, k = exc_info.value.triple
        table = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]
        assert table[table[i][j]][k] != table[i][table[j][k]]

    def test_check_group_table_non_raising(self):
        """Test the report form of validation."""
        assert check_group_table([[0, 1], [1, 0]]) == (True, None)
        is_valid, error = check_group_table([[0, 1, 2], [1, 0, 0], [2, 0, 0]])
        assert is_valid is False
        assert 'associativity' in error.lower()


class TestBuiltinFamilies:
    """Test suite for builtin group families."""

    def test_trivial_group(self):
        """Test cyclic(1) is the trivial group."""
        group = builtin_group('cyclic', 1)
        assert group.order == 1
        assert group.table == ((0,),)

    def test_cyclic_is_modular_addition(self):
        """Test cyclic(4) multiplies by addition mod 4."""
        group = builtin_group('cyclic', 4)
        assert all(group.mul(i, j) == (i + j) % 4 for i in range(4) for j in range(4))

    def test_klein_every_element_self_inverse(self, klein4: FiniteGroup):
        """Test Z2xZ2 has every element self-inverse."""
        assert all(klein4.inv(x) == x for x in klein4.elements)

    def test_desk_groups_are_valid(self, groups: dict[str, FiniteGroup]):
        """Test every builtin table passes full validation."""
        for name, group in groups.items():
            rebuilt = validate_group(group.table, identity=0, name=name)
            assert rebuilt == group

    def test_orders(self, groups: dict[str, FiniteGroup]):
        """Test group orders of the desk set."""
        orders = {name: g.order for name, g in groups.items()}
        assert orders == {'Z1': 1, 'Z2': 2, 'Z3': 3, 'Z4': 4, 'Z6': 6, 'Z2xZ2': 4, 'S3': 6, 'D4': 8, 'Q8': 8}

    def test_commutativity(self, groups: dict[str, FiniteGroup]):
        """Test exactly S3, D4 and Q8 are nonabelian, each with a witness pair."""
        nonabelian = {name for name, g in groups.items() if not g.is_abelian()}
        assert nonabelian == {'S3', 'D4', 'Q8'}
        for name in nonabelian:
            a, b = groups[name].noncommuting_pair()
            assert groups[name].mul(a, b) != groups[name].mul(b, a)

    def test_quaternion_element_orders(self, groups: dict[str, FiniteGroup]):
        """Test Q8 has one element of order 2 and six of order 4."""
        assert element_order_counts(groups['Q8']) == {1: 1, 2: 1, 4: 6}

    def test_dihedral_element_orders(self, groups: dict[str, FiniteGroup]):
        """Test D4 has five elements of order 2."""
        assert element_order_counts(groups['D4']) == {1: 1, 2: 5, 4: 2}

    def test_symmetric_above_four_unsupported(self):
        """Test symmetric(n) is limited to n <= 4."""
        with pytest.raises(UnsupportedFamily):
            builtin_group('symmetric', 5)

    def test_unknown_family(self):
        """Test an unknown family name."""
        with pytest.raises(UnsupportedFamily):
            builtin_group('alternating', 4)

    def test_non_positive_parameter(self):
        """Test cyclic(0) is rejected."""
        with pytest.raises(UnsupportedFamily):
            builtin_group('cyclic', 0)

    def test_order_cap(self):
        """Test the order cap applies to builtin construction."""
        with pytest.raises(OrderTooLarge) as exc_info:
            builtin_group('cyclic', 10, order_cap=8)
        assert exc_info.value.order == 10
        assert exc_info.value.cap == 8

    def test_order_cap_from_environment(self, monkeypatch: pytest.MonkeyPatch):
        """Test LIPTROP_ORDER_CAP lowers the cap."""
        monkeypatch.setenv('LIPTROP_ORDER_CAP', '5')
        with pytest.raises(OrderTooLarge):
            builtin_group('cyclic', 6)

    def test_generating_set_generates(self, groups: dict[str, FiniteGroup]):
        """Test the greedy generating set spans each group."""
        for group in groups.values():
            assert group.subgroup_closure(group.generating_set()) == frozenset(group.elements)


class TestParseFamily:
    """Test suite for family strings."""

    def test_simple(self):
        """Test cyclic(4)."""
        assert parse_family('cyclic(4)') == builtin_group('cyclic', 4)

    def test_nested_direct_product(self, klein4: FiniteGroup):
        """Test direct_product(cyclic(2), cyclic(2)) with spaces."""
        assert parse_family('direct_product(cyclic(2), cyclic(2))') == klein4

    def test_quaternion(self):
        """Test a family without parameters."""
        assert parse_family('quaternion8').order == 8

    def test_trailing_input(self):
        """Test trailing characters are rejected."""
        with pytest.raises(UnsupportedFamily):
            parse_family('cyclic(4))')

    def test_unbalanced(self):
        """Test a missing closing parenthesis."""
        with pytest.raises(UnsupportedFamily):
            parse_family('cyclic(4')


class TestIsomorphisms:
    """Test suite for isomorphism enumeration."""

    @pytest.mark.parametrize("name,expected", [
        ('Z1', 1), ('Z2', 1), ('Z3', 2), ('Z4', 2), ('Z6', 2),
        ('Z2xZ2', 6), ('S3', 6), ('D4', 8), ('Q8', 24),
    ])
    def test_automorphism_counts(self, groups: dict[str, FiniteGroup], name: str, expected: int):
        """Test |Aut(G)| for the desk set."""
        assert len(enumerate_automorphisms(groups[name])) == expected

    def test_z4_automorphisms_are_identity_and_inversion(self, z4: FiniteGroup):
        """Test Aut(Z4) = {identity, inversion}."""
        autos = enumerate_automorphisms(z4)
        assert [a.mapping for a in autos] == [(0, 1, 2, 3), (0, 3, 2, 1)]
        assert autos[0].is_identity

    def test_z4_klein_not_isomorphic(self, z4: FiniteGroup, klein4: FiniteGroup):
        """Test element-order multisets separate Z4 and Z2xZ2."""
        assert enumerate_isomorphisms(z4, klein4) == []

    def test_z6_s3_not_isomorphic(self, groups: dict[str, FiniteGroup]):
        """Test Z6 and S3 have equal order but no isomorphism."""
        assert enumerate_isomorphisms(groups['Z6'], groups['S3']) == []

    def test_d4_q8_not_isomorphic(self, groups: dict[str, FiniteGroup]):
        """Test D4 and Q8 are separated."""
        assert enumerate_isomorphisms(groups['D4'], groups['Q8']) == []

    def test_agrees_with_brute_force(self, groups: dict[str, FiniteGroup]):
        """Test the backtracking search against the bijection oracle on every pair."""
        for g in groups.values():
            for h in groups.values():
                if g.order != h.order:
                    continue
                fast = [iso.mapping for iso in enumerate_isomorphisms(g, h)]
                slow = [iso.mapping for iso in brute_force_isomorphisms(g, h)]
                assert fast == slow, f"{g.name} -> {h.name}"

    def test_brute_force_order_limit(self, groups: dict[str, FiniteGroup]):
        """Test the oracle refuses groups above its limit."""
        with pytest.raises(OrderTooLarge):
            brute_force_isomorphisms(groups['Q8'], groups['Q8'], max_order=6)

    def test_enumeration_respects_cap(self, groups: dict[str, FiniteGroup]):
        """Test enumeration raises above the cap."""
        with pytest.raises(OrderTooLarge):
            enumerate_automorphisms(groups['D4'], order_cap=6)

    def test_relabeled_copy_is_isomorphic(self, s3: FiniteGroup):
        """Test a relabeled S3 is isomorphic to S3 via the permutation."""
        permutation = [3, 5, 0, 1, 4, 2]
        copy = relabeled(s3, permutation)
        assert copy.identity == permutation[s3.identity]
        GroupIso(s3, copy, tuple(permutation))
        assert len(enumerate_isomorphisms(s3, copy)) == 6

    def test_relabeled_rejects_non_permutation(self, s3: FiniteGroup):
        """Test relabeling needs a permutation."""
        with pytest.raises(NotAGroupIso):
            relabeled(s3, [0, 0, 1, 2, 3, 4])


class TestGroupIso:
    """Test suite for GroupIso."""

    def test_rejects_non_homomorphism(self, z4: FiniteGroup):
        """Test a bijection that breaks products is rejected with a witness."""
        with pytest.raises(NotAGroupIso) as exc_info:
            GroupIso(z4, z4, (0, 2, 1, 3))
        assert exc_info.value.witness is not None

    def test_rejects_non_bijection(self, z4: FiniteGroup):
        """Test a non-injective map."""
        with pytest.raises(NotAGroupIso):
            GroupIso(z4, z4, (0, 0, 0, 0))

    def test_inverse_and_compose(self, groups: dict[str, FiniteGroup]):
        """Test T^-1 after T is the identity and Aut(Q8) is closed under composition."""
        q8 = groups['Q8']
        autos = enumerate_automorphisms(q8)
        mappings = {a.mapping for a in autos}
        for a in autos[:6]:
            assert a.inverse().compose(a).is_identity
            for b in autos[:6]:
                assert a.compose(b).mapping in mappings

    def test_call(self, z4: FiniteGroup):
        """Test applying an isomorphism."""
        inversion = GroupIso(z4, z4, (0, 3, 2, 1))
        assert inversion(1) == 3
        assert not inversion.is_identity
