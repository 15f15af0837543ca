"""
Invariant Metrics

Bi-invariant metrics on finite groups: the discrete metric, weighted word
metrics computed by shortest paths on the right Cayley graph, exhaustive
validation, and the isometry check for group isomorphisms.

Usage:
    from src.liptrop.groups import builtin_group
    from src.liptrop.metrics import LengthWeights, word_metric

    z4 = builtin_group('cyclic', 4)
    metric = word_metric(z4, LengthWeights.from_mapping({1: 1, 3: 1}))
    metric(0, 2)   # Fraction(2, 1)
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import networkx as nx

from .errors import (
    CarrierMismatch,
    NotAMetric,
    NotBiInvariant,
    NotGenerating,
    NotSymmetricWeights,
)
from .groups import FiniteGroup, GroupIso


@dataclass(frozen=True)
class InvariantMetric:
    """Validated bi-invariant distance matrix over a finite group."""

    group: FiniteGroup
    dist: tuple[tuple[Fraction, ...], ...]
    name: str = field(default='metric', compare=False)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    @property
    def diameter(self) -> Fraction:
        return max(max(row) for row in self.dist)

    @property
    def is_discrete(self) -> bool:
        return all(
            v == (0 if i == j else 1)
            for i, row in enumerate(self.dist) for j, v in enumerate(row)
        )

    def delta_compatibility_violation(self) -> Optional[tuple[int, int]]:
        """First (z, x) with d(z, x) != d(z x^-1, e), or None."""
        g = self.group
        for z in g.elements:
            for x in g.elements:
                if self.dist[z][x] != self.dist[g.mul(z, g.inv(x))][g.identity]:
                    return (z, x)
        return None


@dataclass(frozen=True)
class LengthWeights:
    """Positive weights on a symmetric generating set."""

    weight: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Any]) -> 'LengthWeights':
        return cls(tuple(sorted((int(s), Fraction(w)) for s, w in mapping.items())))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.weight)


def validate_metric(group: FiniteGroup, matrix: Sequence[Sequence[Any]], name: str = 'metric') -> InvariantMetric:
    """
    Validate a distance matrix against the metric axioms and bi-invariance.

    Args:
        group: Carrier group
        matrix: n x n rationals (anything Fraction accepts)
        name: Display name

    Returns:
        InvariantMetric

    Raises:
        NotAMetric: axiom name and witness
        NotBiInvariant: witness triple (x, y, z)
    """
    n = group.order
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise NotAMetric('shape', (n,))
    dist = tuple(tuple(Fraction(v) for v in row) for row in matrix)

    for i in range(n):
        if dist[i][i] != 0:
            raise NotAMetric('zero diagonal', (i, i))
        for j in range(n):
            if i != j and dist[i][j] <= 0:
                raise NotAMetric('positivity', (i, j))
            if dist[i][j] != dist[j][i]:
                raise NotAMetric('symmetry', (i, j))

    for i in range(n):
        for j in range(n):
            dij = dist[i][j]
            for k in range(n):
                if dist[i][k] > dij + dist[j][k]:
                    raise NotAMetric('triangle inequality', (i, j, k))

    table = group.table
    for x in range(n):
        row_x = table[x]
        for y in range(n):
            xy, yx = row_x[y], table[y][x]
            for z in range(n):
                d = dist[y][z]
                if dist[xy][row_x[z]] != d or dist[yx][table[z][x]] != d:
                    raise NotBiInvariant(x, y, z)

    logging.debug(f"Validated metric '{name}' on {group.name} (order {n})")
    return InvariantMetric(group=group, dist=dist, name=name)


def discrete_metric(group: FiniteGroup) -> InvariantMetric:
    """d(x, y) = 0 if x = y else 1."""
    n = group.order
    matrix = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    return validate_metric(group, matrix, name=f"disc({group.name})")


def cayley_graph(group: FiniteGroup, weights: LengthWeights) -> nx.DiGraph:
    """Right Cayley graph: edge x -> x*s with the weight of s."""
    graph = nx.DiGraph()
    graph.add_nodes_from(group.elements)
    for s, w in weights.weight:
        for x in group.elements:
            y = group.mul(x, s)
            if y != x:
                graph.add_edge(x, y, weight=w)
    return graph


def _check_weights(group: FiniteGroup, weights: LengthWeights) -> None:
    table = weights.as_dict()
    for s, w in weights.weight:
        if not 0 <= s < group.order:
            raise NotSymmetricWeights(s, "not an element index")
        if w <= 0:
            raise NotSymmetricWeights(s, f"weight {w} is not positive")
        inverse = group.inv(s)
        if inverse not in table:
            raise NotSymmetricWeights(s, f"inverse {inverse} carries no weight")
        if table[inverse] != w:
            raise NotSymmetricWeights(s, f"weight {w} differs from weight {table[inverse]} of inverse {inverse}")


def word_metric(group: FiniteGroup, weights: LengthWeights) -> InvariantMetric:
    """
    Weighted word metric: d(x, y) is the shortest weighted path from x to y
    in the right Cayley graph.

    Raises:
        NotSymmetricWeights, NotGenerating, NotBiInvariant
    """
    _check_weights(group, weights)
    graph = cayley_graph(group, weights)

    lengths = dict(nx.all_pairs_dijkstra_path_length(graph, weight='weight'))
    matrix = []
    for x in group.elements:
        row = lengths[x]
        missing = next((y for y in group.elements if y not in row), None)
        if missing is not None:
            raise NotGenerating(missing)
        matrix.append([Fraction(row[y]) for y in group.elements])

    label = ','.join(f"{s}:{w}" for s, w in weights.weight)
    metric = validate_metric(group, matrix, name=f"word({group.name};{label})")
    logging.info(f"Built word metric on {group.name} with diameter {metric.diameter}")
    return metric


def find_isometry_violation(
    iso: GroupIso,
    source: InvariantMetric,
    target: InvariantMetric
) -> Optional[tuple[int, int]]:
    """
    First pair (x, y) with d_Y(T x, T y) != d_X(x, y), or None.

    Raises:
        CarrierMismatch
    """
    if iso.source != source.group or iso.target != target.group:
        raise CarrierMismatch()
    m = iso.mapping
    for x in source.group.elements:
        for y in range(x + 1, source.group.order):
            if target.dist[m[x]][m[y]] != source.dist[x][y]:
                return (x, y)
    return None


def is_isometric_iso(iso: GroupIso, source: InvariantMetric, target: InvariantMetric) -> bool:
    return find_isometry_violation(iso, source, target) is None
