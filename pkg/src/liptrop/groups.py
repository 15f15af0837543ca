"""
Finite Groups

Cayley-table groups: validation, builtin families, and isomorphism /
automorphism enumeration by generator backtracking.

Usage:
    from src.liptrop.groups import builtin_group, enumerate_automorphisms

    klein = builtin_group('direct_product', builtin_group('cyclic', 2), builtin_group('cyclic', 2))
    autos = enumerate_automorphisms(klein)   # 6 maps
"""

import itertools
import logging
import re
import time
from collections import Counter, deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

from .config import resolve_order_cap
from .errors import (
    MalformedTable,
    MissingInverse,
    NoIdentity,
    NotAGroupIso,
    NotAssociative,
    OrderTooLarge,
    OutOfRangeEntry,
    UnsupportedFamily,
)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table on element indices 0..n-1."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    name: str = field(default='group', compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def element_order(self, a: int) -> int:
        """Smallest k >= 1 with a^k = e."""
        k, power = 1, a
        while power != self.identity:
            power = self.table[power][a]
            k += 1
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(a) for a in self.elements)

    def element_order_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_orders()))

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in self.elements for b in range(a + 1, self.order)
        )

    def noncommuting_pair(self) -> Optional[tuple[int, int]]:
        """First pair (a, b) with ab != ba, or None for abelian groups."""
        for a in self.elements:
            for b in range(a + 1, self.order):
                if self.table[a][b] != self.table[b][a]:
                    return (a, b)
        return None

    def subgroup_closure(self, generators: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given elements (closure under right multiplication)."""
        gens = list(generators)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generating_set(self) -> tuple[int, ...]:
        """
        Greedy deterministic generating set.

        Elements are tried by decreasing element order (ties by index); an
        element is kept only if it lies outside the subgroup generated so far.
        """
        orders = self.element_orders()
        candidates = sorted(self.elements, key=lambda a: (-orders[a], a))
        gens: list[int] = []
        span = frozenset([self.identity])
        for a in candidates:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = self.subgroup_closure(gens)
        return tuple(gens)


def _as_index(value: Any, row: int, column: int, order: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < order:
        raise OutOfRangeEntry(row, column, value, order)
    return value


def _is_identity(table: Sequence[Sequence[int]], e: int) -> bool:
    return all(table[e][i] == i and table[i][e] == i for i in range(len(table)))


def check_group_table(table: Sequence[Sequence[Any]], identity: Optional[int] = None) -> tuple[bool, Optional[str]]:
    """
    Non-raising group validation.

    Args:
        table: Candidate Cayley table
        identity: Declared identity index, searched for when None

    Returns:
        Tuple of (is_valid, error_message)
    """
    try:
        validate_group(table, identity)
    except (MalformedTable, OutOfRangeEntry, NoIdentity, MissingInverse, NotAssociative) as e:
        return False, str(e)
    return True, None


def validate_group(
    table: Sequence[Sequence[Any]],
    identity: Optional[int] = None,
    name: str = 'group'
) -> FiniteGroup:
    """
    Validate a raw Cayley table and build a FiniteGroup.

    Checks run cheapest first: shape, entry range, identity, inverses,
    then exhaustive O(n^3) associativity.

    Args:
        table: Square table, table[i][j] = index of g_i * g_j
        identity: Declared identity index; searched for when None
        name: Display name

    Returns:
        Validated FiniteGroup with inverses computed

    Raises:
        MalformedTable, OutOfRangeEntry, NoIdentity, MissingInverse, NotAssociative
    """
    if not isinstance(table, (list, tuple)) or len(table) == 0:
        raise MalformedTable("table must be a non-empty list of rows")
    n = len(table)
    for i, row in enumerate(table):
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise MalformedTable(f"row {i} does not have length {n}")

    rows = tuple(
        tuple(_as_index(value, i, j, n) for j, value in enumerate(row))
        for i, row in enumerate(table)
    )

    if identity is not None:
        if isinstance(identity, bool) or not isinstance(identity, int) or not 0 <= identity < n:
            raise NoIdentity(identity)
        if not _is_identity(rows, identity):
            raise NoIdentity(identity)
        e = identity
    else:
        found = [c for c in range(n) if _is_identity(rows, c)]
        if not found:
            raise NoIdentity()
        e = found[0]

    inverses = []
    for i in range(n):
        inverse = next((j for j in range(n) if rows[i][j] == e and rows[j][i] == e), None)
        if inverse is None:
            raise MissingInverse(i)
        inverses.append(inverse)

    for i in range(n):
        row_i = rows[i]
        for j in range(n):
            ij = row_i[j]
            row_ij = rows[ij]
            row_j = rows[j]
            for k in range(n):
                if row_ij[k] != row_i[row_j[k]]:
                    raise NotAssociative(i, j, k)

    logging.debug(f"Validated group '{name}' of order {n} with identity {e}")
    return FiniteGroup(table=rows, identity=e, inverses=tuple(inverses), name=name)


def _from_trusted_table(table: list[list[int]], name: str) -> FiniteGroup:
    """Build a group from a table produced by a builtin family (identity at 0)."""
    rows = tuple(tuple(row) for row in table)
    e = 0
    inverses = tuple(next(j for j in range(len(rows)) if rows[i][j] == e) for i in range(len(rows)))
    return FiniteGroup(table=rows, identity=e, inverses=inverses, name=name)


def _cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _dihedral_table(n: int) -> list[list[int]]:
    # element f*n + k is s^f r^k; r^k s = s r^-k
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for a in range(size):
        f1, k1 = divmod(a, n)
        for b in range(size):
            f2, k2 = divmod(b, n)
            k = (k2 + (-k1 if f2 else k1)) % n
            table[a][b] = ((f1 + f2) % 2) * n + k
    return table


def _symmetric_table(n: int) -> list[list[int]]:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    return [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]


# Units 1, i, j, k as 0..3; UNIT_PRODUCT[a][b] = (sign, unit)
_UNIT_PRODUCT = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
]


def _quaternion_table() -> list[list[int]]:
    # element 2*unit + (0 for +, 1 for -): order 1, -1, i, -i, j, -j, k, -k
    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        u1, neg1 = divmod(a, 2)
        for b in range(8):
            u2, neg2 = divmod(b, 2)
            sign, unit = _UNIT_PRODUCT[u1][u2]
            if neg1:
                sign = -sign
            if neg2:
                sign = -sign
            table[a][b] = 2 * unit + (0 if sign > 0 else 1)
    return table


def _direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    size = g.order * m
    table = tuple(
        tuple(
            g.table[a // m][b // m] * m + h.table[a % m][b % m]
            for b in range(size)
        )
        for a in range(size)
    )
    identity = g.identity * m + h.identity
    inverses = tuple(g.inverses[a // m] * m + h.inverses[a % m] for a in range(size))
    return FiniteGroup(table=table, identity=identity, inverses=inverses, name=f"{g.name}x{h.name}")


def _positive_int(family: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise UnsupportedFamily(family, f"parameter must be a positive integer, got {value!r}")
    return value


def builtin_group(family: str, *params: Any, order_cap: Optional[int] = None) -> FiniteGroup:
    """
    Build a group from a named family; the identity is always at index 0
    (for direct products of builtin groups).

    Args:
        family: cyclic, dihedral, symmetric, quaternion8 or direct_product
        *params: n for cyclic/dihedral/symmetric, (G, H) for direct_product
        order_cap: Maximum order, resolved through the run configuration

    Returns:
        FiniteGroup

    Raises:
        UnsupportedFamily, OrderTooLarge
    """
    cap = resolve_order_cap(order_cap)

    if family == 'cyclic':
        if len(params) != 1:
            raise UnsupportedFamily(family, "expects one parameter n")
        n = _positive_int(family, params[0])
        if n > cap:
            raise OrderTooLarge(n, cap)
        return _from_trusted_table(_cyclic_table(n), f"Z{n}")

    if family == 'dihedral':
        if len(params) != 1:
            raise UnsupportedFamily(family, "expects one parameter n")
        n = _positive_int(family, params[0])
        if 2 * n > cap:
            raise OrderTooLarge(2 * n, cap)
        return _from_trusted_table(_dihedral_table(n), f"D{n}")

    if family == 'symmetric':
        if len(params) != 1:
            raise UnsupportedFamily(family, "expects one parameter n")
        n = _positive_int(family, params[0])
        if n > 4:
            raise UnsupportedFamily(family, f"only n <= 4 is supported, got {n}")
        order = len(list(itertools.permutations(range(n))))
        if order > cap:
            raise OrderTooLarge(order, cap)
        return _from_trusted_table(_symmetric_table(n), f"S{n}")

    if family == 'quaternion8':
        if params:
            raise UnsupportedFamily(family, "takes no parameters")
        if 8 > cap:
            raise OrderTooLarge(8, cap)
        return _from_trusted_table(_quaternion_table(), "Q8")

    if family == 'direct_product':
        if len(params) != 2 or not all(isinstance(p, FiniteGroup) for p in params):
            raise UnsupportedFamily(family, "expects two FiniteGroup parameters")
        g, h = params
        if g.order * h.order > cap:
            raise OrderTooLarge(g.order * h.order, cap)
        return _direct_product(g, h)

    raise UnsupportedFamily(family)


_FAMILY_TOKEN = re.compile(r'\s*([a-z_0-9]+)\s*')


def parse_family(text: str, order_cap: Optional[int] = None) -> FiniteGroup:
    """
    Parse a family expression such as 'cyclic(4)' or
    'direct_product(cyclic(2), cyclic(2))'.

    Raises:
        UnsupportedFamily on syntax errors or unknown families
    """

    def parse(pos: int) -> tuple[Any, int]:
        match = _FAMILY_TOKEN.match(text, pos)
        if not match:
            raise UnsupportedFamily(text, f"cannot parse at position {pos}")
        word, pos = match.group(1), match.end()
        if word.isdigit():
            return int(word), pos
        args: list[Any] = []
        if pos < len(text) and text[pos] == '(':
            pos += 1
            while True:
                arg, pos = parse(pos)
                args.append(arg)
                while pos < len(text) and text[pos] == ' ':
                    pos += 1
                if pos < len(text) and text[pos] == ',':
                    pos += 1
                    continue
                if pos < len(text) and text[pos] == ')':
                    pos += 1
                    break
                raise UnsupportedFamily(text, f"expected ',' or ')' at position {pos}")
        return builtin_group(word, *args, order_cap=order_cap), pos

    group, end = parse(0)
    if text[end:].strip() or not isinstance(group, FiniteGroup):
        raise UnsupportedFamily(text, "trailing input")
    return group


def relabeled(group: FiniteGroup, permutation: Sequence[int], name: Optional[str] = None) -> FiniteGroup:
    """
    Rename element i to permutation[i]; the result is isomorphic via the permutation.

    Raises:
        NotAGroupIso if permutation is not a bijection of the elements
    """
    n = group.order
    if sorted(permutation) != list(range(n)):
        raise NotAGroupIso("relabeling is not a permutation of the elements")
    back = [0] * n
    for old, new in enumerate(permutation):
        back[new] = old
    table = [[permutation[group.table[back[a]][back[b]]] for b in range(n)] for a in range(n)]
    return validate_group(table, identity=permutation[group.identity], name=name or f"{group.name}'")


@dataclass(frozen=True)
class GroupIso:
    """Group isomorphism source -> target; mapping[i] is the image of g_i."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        n = self.source.order
        if self.target.order != n or len(self.mapping) != n:
            raise NotAGroupIso("source and target orders differ")
        if sorted(self.mapping) != list(range(n)):
            raise NotAGroupIso("map is not a bijection")
        src, dst, m = self.source.table, self.target.table, self.mapping
        for i in range(n):
            for j in range(n):
                if m[src[i][j]] != dst[m[i]][m[j]]:
                    raise NotAGroupIso("products are not preserved", (i, j))

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and all(i == v for i, v in enumerate(self.mapping))

    def inverse(self) -> 'GroupIso':
        back = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            back[y] = x
        return GroupIso(self.target, self.source, tuple(back))

    def compose(self, other: 'GroupIso') -> 'GroupIso':
        """self after other: x -> self(other(x))."""
        if other.target != self.source:
            raise NotAGroupIso("composition of maps with mismatched carriers")
        return GroupIso(other.source, self.target, tuple(self.mapping[y] for y in other.mapping))


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise OrderTooLarge(order, cap)


def enumerate_isomorphisms(
    g: FiniteGroup,
    h: FiniteGroup,
    order_cap: Optional[int] = None
) -> list[GroupIso]:
    """
    All isomorphisms G -> H, sorted by mapping.

    Backtracks over images of a generating set of G. Candidate images must
    have the generator's element order and lie outside the subgroup spanned
    by the images already chosen. Complete assignments are extended along
    the Cayley graph and kept if the result is a bijective homomorphism.

    Args:
        g: Source group
        h: Target group
        order_cap: Maximum order for either group

    Returns:
        List of GroupIso (empty iff G and H are not isomorphic)

    Raises:
        OrderTooLarge
    """
    cap = resolve_order_cap(order_cap)
    _check_cap(g.order, cap)
    _check_cap(h.order, cap)

    if g.order != h.order:
        return []
    if g.element_order_multiset() != h.element_order_multiset():
        return []

    started = time.perf_counter()
    n = g.order
    gens = g.generating_set()
    g_orders = g.element_orders()
    h_orders = h.element_orders()
    candidates = [[y for y in h.elements if h_orders[y] == g_orders[s]] for s in gens]

    found: list[tuple[int, ...]] = []

    def extend(images: list[int]) -> Optional[tuple[int, ...]]:
        mapping: list[Optional[int]] = [None] * n
        mapping[g.identity] = h.identity
        queue = deque([g.identity])
        while queue:
            x = queue.popleft()
            for s, t in zip(gens, images):
                y = g.table[x][s]
                image = h.table[mapping[x]][t]
                if mapping[y] is None:
                    mapping[y] = image
                    queue.append(y)
                elif mapping[y] != image:
                    return None
        if any(v is None for v in mapping) or len(set(mapping)) != n:
            return None
        for i in range(n):
            for j in range(n):
                if mapping[g.table[i][j]] != h.table[mapping[i]][mapping[j]]:
                    return None
        return tuple(mapping)

    def backtrack(depth: int, images: list[int], span: frozenset[int]) -> None:
        if depth == len(gens):
            result = extend(images)
            if result is not None:
                found.append(result)
            return
        for y in candidates[depth]:
            if y in span:
                continue
            images.append(y)
            backtrack(depth + 1, images, h.subgroup_closure(images))
            images.pop()

    backtrack(0, [], frozenset([h.identity]))
    found.sort()

    logging.info(
        f"Found {len(found)} isomorphisms {g.name} -> {h.name} "
        f"(order {n}, {len(gens)} generators, {time.perf_counter() - started:.3f}s)"
    )
    return [GroupIso(g, h, m) for m in found]


def enumerate_automorphisms(g: FiniteGroup, order_cap: Optional[int] = None) -> list[GroupIso]:
    """Aut(G), identity map first."""
    return enumerate_isomorphisms(g, g, order_cap)


def brute_force_isomorphisms(g: FiniteGroup, h: FiniteGroup, max_order: int = 8) -> list[GroupIso]:
    """
    Independent oracle: every bijection fixing the identity, filtered by the
    homomorphism law. Only for small groups.

    Raises:
        OrderTooLarge when the order exceeds max_order
    """
    _check_cap(g.order, max_order)
    if g.order != h.order:
        return []
    n = g.order
    rest_g = [x for x in g.elements if x != g.identity]
    rest_h = [y for y in h.elements if y != h.identity]
    found = []
    for images in itertools.permutations(rest_h):
        mapping = [0] * n
        mapping[g.identity] = h.identity
        for x, y in zip(rest_g, images):
            mapping[x] = y
        if all(
            mapping[g.table[i][j]] == h.table[mapping[i]][mapping[j]]
            for i in range(n) for j in range(n)
        ):
            found.append(tuple(mapping))
    found.sort()
    return [GroupIso(g, h, m) for m in found]


def element_order_counts(g: FiniteGroup) -> dict[int, int]:
    """Element order -> number of elements with that order."""
    return dict(sorted(Counter(g.element_orders()).items()))
