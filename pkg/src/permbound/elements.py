"""Explicit element tables for small groups.

Elements are numpy rows of images, indexed in the order of their base-image
codes. Right multiplication columns (``x -> x * g`` for all x) are the unit
of work for subgroup closures; they are cached, and precomputed in full when
the group is small enough for a Cayley table.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import _kernels
from .group import Group
from .perm import Permutation

DEFAULT_ELEMENT_CAP = 10**5
TABLE_CAP = 6000


class ElementCapExceeded(ValueError):
    pass


class ElementTable:
    def __init__(self, G: Group, cap: int | None = DEFAULT_ELEMENT_CAP, *, _rows=None, _base=None):
        order = G.order()
        if cap is not None and order > cap:
            raise ElementCapExceeded(f"|G| = {order} exceeds element cap {cap}")
        self.group = G
        self.degree = G.degree
        self.size = order
        n = self.degree
        if _rows is None:
            chain = G.chain
            self.base = np.array(chain.base, dtype=np.int64)
            perms = np.arange(n, dtype=np.int32)[None, :]
            for lv in reversed(chain.levels):
                trans = np.array(list(lv.transversal.values()), dtype=np.int32)
                # row e*u has images u[e[x]]
                perms = trans[:, perms].transpose(1, 0, 2).reshape(-1, n)
        else:
            perms = np.asarray(_rows, dtype=np.int32)
            self.base = np.array(_base, dtype=np.int64)
        self._exact_codes = len(self.base) * np.log2(max(n, 2)) < 62
        codes = self._codes_from_base_images(perms[:, self.base])
        order_idx = np.argsort(codes, kind="stable")
        self.perms = np.ascontiguousarray(perms[order_idx])
        self.codes = codes[order_idx]
        if len(self.codes) > 1 and (np.diff(self.codes) == 0).any():
            raise RuntimeError("element code collision")
        self.identity = int(self.index_of(np.arange(n)[None, :])[0])
        self._right: np.ndarray | None = None
        self._right_cache: dict[int, np.ndarray] = {}
        if self.size <= TABLE_CAP:
            self._right = np.empty((self.size, self.size), dtype=np.int32)
            for g in range(self.size):
                self._right[g] = self._compute_right(g)

    @classmethod
    def symmetric(cls, n: int) -> ElementTable:
        """Sym(n) with elements indexed in lexicographic order of their images."""
        from itertools import permutations

        from .group import symmetric_group

        rows = np.array(list(permutations(range(n))), dtype=np.int32).reshape(-1, n)
        return cls(symmetric_group(n), cap=None, _rows=rows, _base=list(range(n - 1, -1, -1)))

    # -- indexing -------------------------------------------------------------

    def _codes_from_base_images(self, imgs: np.ndarray) -> np.ndarray:
        imgs = imgs.astype(np.uint64)
        if self._exact_codes:
            weights = np.uint64(self.degree) ** np.arange(imgs.shape[1], dtype=np.uint64)
            return (imgs * weights).sum(axis=1).astype(np.int64)
        h = np.full(imgs.shape[0], np.uint64(1469598103934665603), dtype=np.uint64)
        for j in range(imgs.shape[1]):
            h = (h ^ (imgs[:, j] + np.uint64(1))) * np.uint64(1099511628211)
        return h.view(np.int64)

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        """Indices of full image rows (which must be group elements)."""
        rows = np.atleast_2d(rows)
        return self._index_from_base_images(rows[:, self.base])

    def _index_from_base_images(self, imgs: np.ndarray) -> np.ndarray:
        codes = self._codes_from_base_images(imgs)
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, self.size - 1)
        if not np.array_equal(self.codes[idx], codes):
            raise ValueError("permutation is not an element of the group")
        return idx.astype(np.int32)

    def index(self, g: Permutation) -> int:
        return int(self.index_of(np.array(g.images))[0])

    def element(self, i: int) -> Permutation:
        return Permutation(self.perms[i].tolist(), check=False)

    # -- multiplication ---------------------------------------------------------

    def _compute_right(self, g: int) -> np.ndarray:
        gimg = self.perms[g]
        return self._index_from_base_images(gimg[self.perms[:, self.base]])

    def right(self, g: int) -> np.ndarray:
        """``out[x]`` is the index of ``x * g``."""
        if self._right is not None:
            return self._right[g]
        col = self._right_cache.get(g)
        if col is None:
            if len(self._right_cache) > 4096:
                self._right_cache.clear()
            col = self._compute_right(g)
            self._right_cache[g] = col
        return col

    def right_stack(self, gens) -> np.ndarray:
        gens = list(gens)
        if not gens:
            return np.empty((0, self.size), dtype=np.int32)
        if self._right is not None:
            return self._right[np.array(gens, dtype=np.int64)]
        return np.stack([self.right(g) for g in gens])

    def left(self, h: int) -> np.ndarray:
        """``out[x]`` is the index of ``h * x``."""
        himg = self.perms[h]
        return self._index_from_base_images(self.perms[:, himg[self.base]])

    def conjugation(self, g: int) -> np.ndarray:
        """``out[x]`` is the index of ``g^-1 x g``."""
        gimg = self.perms[g]
        ginv = np.argsort(gimg)
        return self._index_from_base_images(gimg[self.perms[:, ginv[self.base]]])

    def mul(self, a: int, b: int) -> int:
        return int(self.right(b)[a])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv_rows = np.argsort(self.perms, axis=1)
        return self.index_of(inv_rows)

    # -- invariants -------------------------------------------------------------

    @cached_property
    def cycle_lengths(self) -> np.ndarray:
        return _kernels.cycle_lengths(self.perms)

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.lcm.reduce(self.cycle_lengths.astype(np.int64), axis=1)

    @cached_property
    def cycle_type_counts(self) -> np.ndarray:
        """``out[e, k]`` = number of k-cycles of element e (k = 1..degree)."""
        cl = self.cycle_lengths
        n = self.degree
        counts = np.zeros((self.size, n + 1), dtype=np.int64)
        for k in range(1, n + 1):
            counts[:, k] = (cl == k).sum(axis=1) // k
        return counts

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Conjugacy class label (smallest index in class) for every element."""
        gens = [self.index(g) for g in self.group.generators]
        maps = np.stack([self.conjugation(g) for g in gens]) if gens else np.empty((0, self.size))
        return _kernels.orbit_labels(maps)

    @cached_property
    def class_representatives(self) -> list[int]:
        return sorted(set(self.class_labels.tolist()))

    # -- subgroups --------------------------------------------------------------

    def closure(self, gens, seeds=None, stop_at: int | None = None) -> tuple[np.ndarray, int]:
        """Mask and size of the subgroup generated by ``gens`` (element indices).

        ``seeds`` must already lie in that subgroup; defaults to the identity.
        """
        seeds = np.array([self.identity] if seeds is None else seeds, dtype=np.int32)
        return _kernels.closure(self.right_stack(gens), seeds, stop_at)

    def subgroup_group(self, mask: np.ndarray, gens=None) -> Group:
        if gens is None:
            gens = np.flatnonzero(mask).tolist()
        return Group(self.degree, [self.element(int(i)) for i in gens])


def element_closure_order(G: Group, limit: int = 10**6) -> int:
    """Order by naive closure over Python permutations (independent of the chain)."""
    ident = tuple(range(G.degree))
    gens = [g.images for g in G.generators]
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > limit:
                    raise ElementCapExceeded("closure limit exceeded")
    return len(seen)
