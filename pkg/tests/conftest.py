"""
Pytest configuration and shared fixtures for liptrop tests.

Provides the desk-scale group set, discrete and word-metric contexts, a
seeded sampler and temporary JSON input files.
"""

import json
import tempfile
from collections.abc import Generator
from pathlib import Path
from typing import Any

import pytest

from src.liptrop.config import RunConfig
from src.liptrop.groups import FiniteGroup, builtin_group
from src.liptrop.lip_monoid import LipContext
from src.liptrop.metrics import LengthWeights, word_metric
from src.liptrop.sampling import RationalSampler


def desk_groups() -> dict[str, FiniteGroup]:
    """The reference set S: Z1, Z2, Z3, Z4, Z6, Z2xZ2, S3, D4, Q8."""
    z2 = builtin_group('cyclic', 2)
    return {
        'Z1': builtin_group('cyclic', 1),
        'Z2': z2,
        'Z3': builtin_group('cyclic', 3),
        'Z4': builtin_group('cyclic', 4),
        'Z6': builtin_group('cyclic', 6),
        'Z2xZ2': builtin_group('direct_product', z2, z2),
        'S3': builtin_group('symmetric', 3),
        'D4': builtin_group('dihedral', 4),
        'Q8': builtin_group('quaternion8'),
    }


@pytest.fixture(scope="session")
def groups() -> dict[str, FiniteGroup]:
    """Desk-scale groups keyed by name."""
    return desk_groups()


@pytest.fixture(scope="session")
def z2(groups: dict[str, FiniteGroup]) -> FiniteGroup:
    return groups['Z2']


@pytest.fixture(scope="session")
def z4(groups: dict[str, FiniteGroup]) -> FiniteGroup:
    return groups['Z4']


@pytest.fixture(scope="session")
def klein4(groups: dict[str, FiniteGroup]) -> FiniteGroup:
    return groups['Z2xZ2']


@pytest.fixture(scope="session")
def s3(groups: dict[str, FiniteGroup]) -> FiniteGroup:
    return groups['S3']


@pytest.fixture(scope="session")
def z4_word_context(z4: FiniteGroup) -> LipContext:
    """Z4 with generators 1 and 3 of length 1: the 4-cycle metric."""
    weights = LengthWeights.from_mapping({1: 1, 3: 1})
    return LipContext(z4, word_metric(z4, weights))


@pytest.fixture(scope="session")
def s3_word_context(s3: FiniteGroup) -> LipContext:
    """S3 with all transpositions of length 1; a conjugation-invariant generating set."""
    transpositions = [x for x in s3.elements if x != s3.identity and s3.element_order(x) == 2]
    weights = LengthWeights.from_mapping({x: 1 for x in transpositions})
    return LipContext(s3, word_metric(s3, weights))


@pytest.fixture(scope="session")
def z2_context(z2: FiniteGroup) -> LipContext:
    return LipContext.discrete(z2)


@pytest.fixture
def sampler() -> RationalSampler:
    """Seeded sampler; the same seed draws the same values in every run."""
    return RationalSampler(seed=7, max_denominator=8, value_bound=3)


@pytest.fixture
def fast_run_config() -> RunConfig:
    """Run configuration small enough for unit tests."""
    return RunConfig(seed=7, samples=20, max_denominator=8, value_bound=3)


@pytest.fixture
def temp_dir() -> Generator[str, None, None]:
    """Temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


def write_json(directory: str, name: str, document: Any) -> str:
    path = Path(directory) / name
    path.write_text(json.dumps(document), encoding='utf-8')
    return str(path)


@pytest.fixture
def sample_files(temp_dir: str) -> dict[str, str]:
    """Group, metric, weights and function files in a temporary directory."""
    z4_table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    klein_table = [[i ^ j for j in range(4)] for i in range(4)]
    # identity and inverses present, (1*2)*2 != 1*(2*2)
    broken_table = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]
    return {
        'z2': write_json(temp_dir, 'z2.json', {'name': 'Z2', 'order': 2, 'identity': 0, 'table': [[0, 1], [1, 0]]}),
        'z3': write_json(temp_dir, 'z3.json', {'name': 'Z3', 'order': 3, 'identity': 0,
                                               'table': [[(i + j) % 3 for j in range(3)] for i in range(3)]}),
        'z4': write_json(temp_dir, 'z4.json', {'name': 'Z4', 'order': 4, 'identity': 0, 'table': z4_table}),
        'klein4': write_json(temp_dir, 'klein4.json', {'name': 'Z2xZ2', 'order': 4, 'identity': 0,
                                                       'table': klein_table}),
        'broken': write_json(temp_dir, 'broken.json', {'name': 'broken', 'order': 3, 'table': broken_table}),
        'z4_word': write_json(temp_dir, 'z4_word.json', {'group': 'z4.json', 'weights': {'1': '1', '3': '1'}}),
        'z2_half': write_json(temp_dir, 'z2_half.json', {'group': 'z2.json', 'matrix': [['0', '1/2'], ['1/2', '0']]}),
        'weights': write_json(temp_dir, 'weights.json', {'weights': {'1': '1', '3': '1'}}),
        'f': write_json(temp_dir, 'f.json', {'values': ['1/2', '3/10']}),
        'g': write_json(temp_dir, 'g.json', {'values': ['1/5', '2/5']}),
        'h': write_json(temp_dir, 'h.json', {'values': ['0', '2']}),
        'bad_json': str(_write_text(temp_dir, 'bad.json', '{"values": [')),
        'short': write_json(temp_dir, 'short.json', {'values': ['1']}),
    }


def _write_text(directory: str, name: str, text: str) -> Path:
    path = Path(directory) / name
    path.write_text(text, encoding='utf-8')
    return path
