"""
Liptrop Module

Finite groups, invariant metrics and the inf-convolution monoids of
1-Lipschitz functions over them.

Components:
- groups: Cayley-table groups, builtin families, isomorphism search
- metrics: discrete and word metrics, bi-invariance validation
- lip_monoid: function cones, inf-convolution, units, tau decomposition
- banach_stone: composition operators and the isomorphism decision
- rn_star: the plain-vector semigroup (R^n, star)
- sampling: seeded exact samples for the property suites
"""

from .banach_stone import CompositionIso, IsoDecision, decide_monoid_iso, is_m_group
from .config import LiptropConfig, RunConfig
from .errors import LiptropError
from .groups import FiniteGroup, GroupIso, builtin_group, enumerate_automorphisms, enumerate_isomorphisms, validate_group
from .lip_monoid import ConeTag, LipContext, LipFn, classify, inf_conv
from .metrics import InvariantMetric, LengthWeights, discrete_metric, word_metric
from .rn_star import RnVector, StarContext, star
from .sampling import RationalSampler

__all__ = [
    'CompositionIso',
    'ConeTag',
    'FiniteGroup',
    'GroupIso',
    'InvariantMetric',
    'IsoDecision',
    'LengthWeights',
    'LipContext',
    'LipFn',
    'LiptropConfig',
    'LiptropError',
    'RationalSampler',
    'RnVector',
    'RunConfig',
    'StarContext',
    'builtin_group',
    'classify',
    'decide_monoid_iso',
    'discrete_metric',
    'enumerate_automorphisms',
    'enumerate_isomorphisms',
    'inf_conv',
    'is_m_group',
    'star',
    'validate_group',
    'word_metric',
]

__version__ = '0.1.0'
