"""Hot inner loops, each with a numba and a pure-numpy implementation.

Set ``PERMBOUND_DISABLE_NUMBA=1`` to force the numpy path (also used
automatically when numba is not importable). Both paths return identical
results; ``benchmarks/bench_kernels.py`` times one against the other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None


def numba_enabled() -> bool:
    flag = os.environ.get("PERMBOUND_DISABLE_NUMBA", "").strip().lower()
    return numba is not None and flag not in ("1", "true", "yes")


def _njit(func):
    if numba is None:  # pragma: no cover
        return func
    return numba.njit(cache=True, nogil=True)(func)


# -- subgroup closure --------------------------------------------------------
# ``right[j, x]`` is the index of x * g_j.  Starting from ``seeds`` (elements
# already known to lie in the subgroup), breadth-first right multiplication
# yields every element.  Stops early once ``stop_at`` elements are reached.

@_njit
def _closure_nb(right, seeds, stop_at):
    k, n = right.shape
    mask = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int32)
    size = 0
    for s in seeds:
        if not mask[s]:
            mask[s] = True
            queue[size] = s
            size += 1
    head = 0
    while head < size and size < stop_at:
        x = queue[head]
        head += 1
        for j in range(k):
            y = right[j, x]
            if not mask[y]:
                mask[y] = True
                queue[size] = y
                size += 1
    return mask, size


def _closure_np(right, seeds, stop_at):
    n = right.shape[1]
    mask = np.zeros(n, dtype=bool)
    frontier = np.unique(seeds)
    mask[frontier] = True
    size = frontier.size
    while frontier.size and size < stop_at:
        nxt = right[:, frontier].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        size += nxt.size
        frontier = nxt
    return mask, int(size)


def closure(right: np.ndarray, seeds: np.ndarray, stop_at: int | None = None) -> tuple[np.ndarray, int]:
    right = np.ascontiguousarray(right, dtype=np.int32)
    seeds = np.ascontiguousarray(seeds, dtype=np.int32)
    if stop_at is None:
        stop_at = right.shape[1] + 1
    if numba_enabled():
        mask, size = _closure_nb(right, seeds, stop_at)
        return mask, int(size)
    return _closure_np(right, seeds, stop_at)


# -- orbits of index maps ---------------------------------------------------
# Labels every point by the smallest point of its orbit under the maps.

@_njit
def _orbit_labels_nb(maps):
    k, n = maps.shape
    labels = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = start
        queue[0] = start
        head = 0
        size = 1
        while head < size:
            x = queue[head]
            head += 1
            for j in range(k):
                y = maps[j, x]
                if labels[y] < 0:
                    labels[y] = start
                    queue[size] = y
                    size += 1
    return labels


def _orbit_labels_np(maps):
    n = maps.shape[1]
    labels = np.arange(n, dtype=np.int64)
    while True:
        new = labels.copy()
        for m in maps:
            new = np.minimum(new, new[m])
            np.minimum.at(new, m, new.copy())
        new = new[new]
        if np.array_equal(new, labels):
            return labels.astype(np.int32)
        labels = new


def orbit_labels(maps: np.ndarray) -> np.ndarray:
    maps = np.ascontiguousarray(maps, dtype=np.int32)
    if maps.shape[0] == 0:
        return np.arange(maps.shape[1], dtype=np.int32)
    if numba_enabled():
        return _orbit_labels_nb(maps)
    return _orbit_labels_np(maps)


# -- cycle lengths -----------------------------------------------------------
# out[e, x] = length of the cycle of element e through point x.

@_njit
def _cycle_lengths_nb(perms):
    m, n = perms.shape
    out = np.zeros((m, n), np.int32)
    for e in range(m):
        for x in range(n):
            if out[e, x]:
                continue
            length = 1
            y = perms[e, x]
            while y != x:
                y = perms[e, y]
                length += 1
            out[e, x] = length
            y = perms[e, x]
            while y != x:
                out[e, y] = length
                y = perms[e, y]
    return out


def _cycle_lengths_np(perms):
    m, n = perms.shape
    ident = np.arange(n)
    out = np.zeros((m, n), dtype=np.int32)
    cur = perms.astype(np.int64)
    for k in range(1, n + 1):
        hit = (cur == ident) & (out == 0)
        out[hit] = k
        if not (out == 0).any():
            break
        cur = np.take_along_axis(perms, cur, axis=1).astype(np.int64)
    return out


def cycle_lengths(perms: np.ndarray) -> np.ndarray:
    perms = np.ascontiguousarray(perms, dtype=np.int32)
    if perms.shape[1] == 0:
        return np.zeros(perms.shape, dtype=np.int32)
    if numba_enabled():
        return _cycle_lengths_nb(perms)
    return _cycle_lengths_np(perms)


# -- minimal block containing two points -------------------------------------
# Union-find refinement: merging a ~ b forces a^g ~ b^g for every generator.
# Returns, per point, the smallest point in its block.

@_njit
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@_njit
def _min_block_nb(gens, a, b):
    k, n = gens.shape
    parent = np.arange(n).astype(np.int32)
    stack_a = np.empty(n * (k + 1) + 1, np.int32)
    stack_b = np.empty(n * (k + 1) + 1, np.int32)
    top = 0
    stack_a[0] = a
    stack_b[0] = b
    top = 1
    while top > 0:
        top -= 1
        x = _find(parent, stack_a[top])
        y = _find(parent, stack_b[top])
        if x == y:
            continue
        if y < x:
            x, y = y, x
        parent[y] = x
        for j in range(k):
            stack_a[top] = gens[j, x]
            stack_b[top] = gens[j, y]
            top += 1
    labels = np.empty(n, np.int32)
    for x in range(n):
        labels[x] = _find(parent, x)
    return labels


def _min_block_np(gens, a, b):
    n = gens.shape[1]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rows = gens.tolist()
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x, y = find(x), find(y)
        if x == y:
            continue
        if y < x:
            x, y = y, x
        parent[y] = x
        for g in rows:
            stack.append((g[x], g[y]))
    return np.array([find(x) for x in range(n)], dtype=np.int32)


def min_block_labels(gens: np.ndarray, a: int, b: int) -> np.ndarray:
    gens = np.ascontiguousarray(gens, dtype=np.int32).reshape(-1, gens.shape[-1])
    if numba_enabled():
        return _min_block_nb(gens, int(a), int(b))
    return _min_block_np(gens, int(a), int(b))
