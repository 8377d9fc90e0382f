"""Exact character tables of small permutation groups and a harness checking
normal p-complement theorems stated in terms of codegrees and degrees."""

__version__ = "0.1.0"

from .chartab import CharacterTable, ClassFunction, IrreducibleEntry, character_table
from .corpus import default_corpus, load_corpus, parse_group_spec
from .errors import (
    ConsistencyError,
    CtlabError,
    InputError,
    ResourceError,
    SpecSyntaxError,
)
from .permgroup import PermGroup, Permutation, Subgroup
from .structure import has_normal_p_complement, normal_subgroups

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "ConsistencyError",
    "CtlabError",
    "InputError",
    "IrreducibleEntry",
    "PermGroup",
    "Permutation",
    "ResourceError",
    "SpecSyntaxError",
    "Subgroup",
    "character_table",
    "default_corpus",
    "has_normal_p_complement",
    "load_corpus",
    "normal_subgroups",
    "parse_group_spec",
]
