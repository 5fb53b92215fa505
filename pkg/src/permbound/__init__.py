"""Permutation-group engine and harness for generator-count bounds on transitive groups."""

from __future__ import annotations

from .group import Group, alternating_group, cyclic_group, dihedral_group, symmetric_group, trivial_group
from .perm import Permutation, format_permutation, parse_permutation

__all__ = [
    "Group",
    "Permutation",
    "alternating_group",
    "cyclic_group",
    "dihedral_group",
    "format_permutation",
    "parse_permutation",
    "symmetric_group",
    "trivial_group",
]
