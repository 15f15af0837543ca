"""
Context Loader

Resolve CLI context arguments (group files, metric files, weight files or
builtin family strings) into LipContexts, and load function files.

Usage:
    from pipelines.utils.context_loader import ContextLoader

    loader = ContextLoader(order_cap=64)
    context = loader.load_context('data/z4_word.json')
    f = loader.load_function('data/f.json', context)
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

from src.liptrop.errors import FormatError
from src.liptrop.groups import FiniteGroup, parse_family
from src.liptrop.lip_monoid import LipContext, LipFn
from src.liptrop.metrics import LengthWeights, validate_metric, word_metric
from src.liptrop.schemas import group_from_document, parse_matrix, parse_values, parse_weights


def _is_path_reference(text: str) -> bool:
    # family strings never contain a separator or a .json suffix
    return text.endswith('.json') or '/' in text or os.sep in text


class ContextLoader:
    """Load groups, metrics and functions from JSON files or family strings."""

    def __init__(self, order_cap: Optional[int] = None):
        """Initialize loader with the run's order cap."""
        self.order_cap = order_cap
        self.loaded_count = 0
        self.error_count = 0

    def read_document(self, path: str) -> Any:
        """
        Read one JSON document.

        Raises:
            OSError: unreadable file
            FormatError: invalid UTF-8 or invalid JSON
        """
        try:
            with open(path, encoding='utf-8') as f:
                document = json.load(f)
        except UnicodeDecodeError as e:
            self.error_count += 1
            logging.error(f"Failed to decode {path}: {e}")
            raise FormatError(path, '$', f"invalid UTF-8 at byte {e.start}") from e
        except json.JSONDecodeError as e:
            self.error_count += 1
            logging.error(f"Failed to parse JSON from {path}: {e}")
            raise FormatError(path, '$', f"invalid JSON: {e.msg} at line {e.lineno}") from e
        self.loaded_count += 1
        return document

    def load_group(self, reference: Any, base_dir: Optional[Path] = None) -> FiniteGroup:
        """
        Group from an inline document, a file path, or a family string such as 'cyclic(4)'.
        """
        if isinstance(reference, dict):
            return group_from_document(reference, '<inline group>')

        text = str(reference)
        candidate = Path(text)
        if base_dir is not None and not candidate.is_absolute():
            candidate = base_dir / candidate
        if candidate.exists():
            return group_from_document(self.read_document(str(candidate)), str(candidate))
        if _is_path_reference(text):
            raise FileNotFoundError(f"Group file not found: {candidate}")
        return parse_family(text, order_cap=self.order_cap)

    def load_context(self, reference: str, weights_path: Optional[str] = None) -> LipContext:
        """
        Build a context.

        A group file or family string gives the discrete metric; a document
        with "matrix" gives a validated explicit metric; a document with
        "weights" (or an extra weights file) gives the word metric.
        """
        path = Path(reference)
        if path.exists():
            document = self.read_document(reference)
            base_dir = path.parent
            if isinstance(document, dict) and 'matrix' in document:
                group = self.load_group(document['group'], base_dir)
                metric = validate_metric(group, parse_matrix(document, reference), name=path.stem)
                context = LipContext(group, metric)
            elif isinstance(document, dict) and 'weights' in document:
                if 'group' not in document:
                    raise FormatError(reference, 'group', "weights document needs a group reference")
                group = self.load_group(document['group'], base_dir)
                weights = LengthWeights.from_mapping(parse_weights(document, reference))
                context = LipContext(group, word_metric(group, weights))
            else:
                group = group_from_document(document, reference)
                context = LipContext.discrete(group)
        else:
            if _is_path_reference(reference):
                raise FileNotFoundError(f"Context file not found: {reference}")
            group = parse_family(reference, order_cap=self.order_cap)
            context = LipContext.discrete(group)

        if weights_path is not None:
            weights = LengthWeights.from_mapping(parse_weights(self.read_document(weights_path), weights_path))
            context = LipContext(context.group, word_metric(context.group, weights))

        logging.info(f"Loaded context {context.group.name} (order {context.order}) with metric {context.name}")
        return context

    def load_function(self, path: str, context: LipContext) -> LipFn:
        """Function file whose length must match the context group order."""
        values = parse_values(self.read_document(path), path, expected_length=context.order)
        return context.function(values)
