"""
Liptrop Errors

Exception hierarchy shared by every liptrop module. Each error carries the
witness that made the check fail so callers (and the CLI) can report it.

Usage:
    from src.liptrop.errors import LiptropError, NotAssociative

    try:
        validate_group(table)
    except NotAssociative as e:
        print(e.triple)
"""

from typing import Any, Optional


class LiptropError(ValueError):
    """Base class for all liptrop errors."""


# Group errors

class GroupError(LiptropError):
    """A Cayley table or group request is invalid."""


class MalformedTable(GroupError):
    """Table is empty or not square."""

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(f"Malformed Cayley table: {detail}")


class OutOfRangeEntry(GroupError):
    """Table entry is not an element index in [0, n)."""

    def __init__(self, row: int, column: int, value: Any, order: int):
        self.row = row
        self.column = column
        self.value = value
        self.order = order
        super().__init__(
            f"Entry table[{row}][{column}] = {value!r} is not an element index in [0, {order})"
        )


class NoIdentity(GroupError):
    """No two-sided identity element exists (or the declared one is not)."""

    def __init__(self, candidate: Optional[int] = None):
        self.candidate = candidate
        if candidate is None:
            message = "Table has no two-sided identity element"
        else:
            message = f"Element {candidate} is not a two-sided identity"
        super().__init__(message)


class MissingInverse(GroupError):
    """Element has no two-sided inverse."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"Element {element} has no two-sided inverse")


class NotAssociative(GroupError):
    """Associativity fails for the triple (i, j, k)."""

    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(f"Associativity fails: ({i}*{j})*{k} != {i}*({j}*{k})")


class UnsupportedFamily(GroupError):
    """Unknown builtin group family or unsupported parameters."""

    def __init__(self, family: str, detail: str = ""):
        self.family = family
        suffix = f": {detail}" if detail else ""
        super().__init__(f"Unsupported group family '{family}'{suffix}")


class OrderTooLarge(GroupError):
    """Group order exceeds the configured cap."""

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"Group order {order} exceeds the order cap {cap}")


class NotAGroupIso(GroupError):
    """A proposed map is not a bijective homomorphism."""

    def __init__(self, detail: str, witness: Optional[tuple[int, ...]] = None):
        self.detail = detail
        self.witness = witness
        super().__init__(f"Not a group isomorphism: {detail}")


# Metric errors

class MetricError(LiptropError):
    """A distance matrix or weight set is invalid."""


class NotAMetric(MetricError):
    """A metric axiom fails."""

    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"Metric axiom '{axiom}' fails at {witness}")


class NotBiInvariant(MetricError):
    """d(xy, xz) = d(yx, zx) = d(y, z) fails for the triple (x, y, z)."""

    def __init__(self, x: int, y: int, z: int):
        self.triple = (x, y, z)
        super().__init__(f"Metric is not bi-invariant at (x, y, z) = ({x}, {y}, {z})")


class NotGenerating(MetricError):
    """Weighted set does not generate the group."""

    def __init__(self, unreachable: int):
        self.unreachable = unreachable
        super().__init__(f"Weighted set does not generate the group: element {unreachable} unreachable")


class NotSymmetricWeights(MetricError):
    """weight(s) != weight(s^-1), or a weight is not positive."""

    def __init__(self, element: int, detail: str):
        self.element = element
        super().__init__(f"Invalid weight for element {element}: {detail}")


class CarrierMismatch(MetricError):
    """Group isomorphism does not run between the carriers of the metrics."""

    def __init__(self, detail: str = "isomorphism and metrics have different carriers"):
        super().__init__(detail)


# Monoid errors

class MonoidError(LiptropError):
    """A function-space operation received incompatible input."""


class ContextMismatch(MonoidError):
    """Operands live over different (group, metric) contexts."""

    def __init__(self, detail: str = "operands belong to different contexts"):
        super().__init__(detail)


class ConeMismatch(MonoidError):
    """Function is not a member of the requested cone."""

    def __init__(self, cone: str, tags: tuple[str, ...] = ()):
        self.cone = cone
        self.tags = tags
        super().__init__(f"Function is not in cone {cone} (tags: {', '.join(tags) or 'none'})")


class NotLip1(MonoidError):
    """Function is not 1-Lipschitz."""

    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"Function is not 1-Lipschitz at pair {pair}")


class NegativeCap(MonoidError):
    """cap_with received a negative level."""

    def __init__(self, level: Any):
        self.level = level
        super().__init__(f"Cap level must be nonnegative, got {level}")


class UnsupportedCone(MonoidError):
    """Operation is not defined for this cone."""

    def __init__(self, cone: str):
        self.cone = cone
        super().__init__(f"Operation not supported for cone {cone}")


class IdentityNotAtZero(MonoidError):
    """Star context requires the group identity at index 0."""

    def __init__(self, identity: int):
        self.identity = identity
        super().__init__(f"Group identity must be at index 0 for the R^n layer, found at {identity}")


class NotIsometric(MonoidError):
    """Composition operator built from a non-isometric group isomorphism."""

    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"Group isomorphism is not isometric at pair {pair}")


# Input errors

class FormatError(LiptropError):
    """Input file or document does not follow the documented format."""

    def __init__(self, source: str, field: str, detail: str):
        self.source = source
        self.field = field
        self.detail = detail
        super().__init__(f"{source}: field '{field}': {detail}")


class ConfigError(LiptropError):
    """Run configuration is invalid."""
