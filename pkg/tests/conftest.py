from __future__ import annotations

import functools
import os

import pytest

from permbound.transitive import enumerate_transitive

# catalogs are recomputed in-process rather than read from a stale cache
os.environ.pop("PERMBOUND_CACHE_DIR", None)


@functools.lru_cache(maxsize=None)
def catalog(n: int):
    return enumerate_transitive(n, use_cache=False)


@pytest.fixture(scope="session")
def catalogs():
    return {n: catalog(n) for n in range(1, 8)}


@functools.lru_cache(maxsize=None)
def subgroup_classes(n: int):
    """One Group per conjugacy class of subgroups of Sym(n)."""
    from permbound.group import Group
    from permbound.transitive import SubgroupEnumerator

    enum = SubgroupEnumerator(n)
    enum.run()
    T = enum.table
    return [Group(n, [T.element(g) for g in c.gens]) for c in enum.classes]
