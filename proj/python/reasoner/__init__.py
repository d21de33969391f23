"""Python access to the AMR rule-of-thumb reasoner."""

import json

from . import _reasoner
from ._reasoner import (
    ReasonerError,
    collapsability,
    formula,
    hybrid_similarity,
    merge_trees,
    normalize_penman,
    prove,
    rot_implication,
    sst_facts,
)

__all__ = [
    "ReasonerError",
    "collapsability",
    "evaluate",
    "formula",
    "hybrid_similarity",
    "load_document",
    "match",
    "merge_trees",
    "normalize_penman",
    "prove",
    "rot_implication",
    "sst_facts",
]


def load_document(text):
    """Validate an aligned AMR document (JSON text) and return it as a dict."""
    return json.loads(_reasoner.normalize_document(text))


def match(rot_path, sst_path, **kwargs):
    return json.loads(_reasoner.match(str(rot_path), str(sst_path), **kwargs))


def evaluate(corpus_dir, **kwargs):
    return json.loads(_reasoner.evaluate(str(corpus_dir), **kwargs))
