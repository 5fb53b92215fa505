"""Minimal number of generators d(G): exact search and cheap two-sided bounds."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .elements import ElementCapExceeded, ElementTable
from .group import Group
from .perm import Permutation
from .series import DEFAULT_QUOTIENT_CAP, QuotientTooLarge, derived_subgroup, quotient

DEFAULT_D_CAP = 2 * 10**4


@dataclass
class GenRankResult:
    lower: int
    upper: int
    witness: list[Permutation] = field(default_factory=list)
    method: str = "exact"
    seed: int | None = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"d(G) only bounded: {self.lower} <= d <= {self.upper}")
        return self.upper

    def to_dict(self) -> dict:
        out = {"lower": self.lower, "upper": self.upper, "exact": self.exact, "method": self.method}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _witness_generates(G: Group, witness: list[Permutation]) -> bool:
    return Group(G.degree, witness).order() == G.order()


def d_exact(G: Group, element_cap: int = DEFAULT_D_CAP) -> GenRankResult:
    """Exact d(G) by staged search over generated subgroups.

    Stage k extends every distinct (k-1)-generated subgroup H by one element
    from each H-double coset. First coordinates are conjugacy class
    representatives, which loses nothing since generation is invariant under
    conjugation.
    """
    order = G.order()
    if order > element_cap:
        raise ElementCapExceeded(f"|G| = {order} exceeds cap {element_cap}")
    if order == 1:
        return GenRankResult(0, 0, [])
    E = ElementTable(G, cap=element_cap)
    reps = [r for r in E.class_representatives if r != E.identity]
    for a in reps:
        if E.element_orders[a] == order:
            return _finish(G, E, 1, (a,))

    layer: list[tuple[tuple[int, ...], np.ndarray]] = []
    seen: set[bytes] = set()
    for a in reps:
        mask, _ = E.closure([a])
        key = np.packbits(mask).tobytes()
        if key not in seen:
            seen.add(key)
            layer.append(((a,), mask))

    k = 2
    while layer:
        nxt = []
        seen = set()
        for gens, mask in layer:
            h_elems = np.flatnonzero(mask).astype(np.int32)
            h_right = E.right_stack(gens)
            visited = mask.copy()
            for g in range(E.size):
                if visited[g]:
                    continue
                dc, _ = _kernels.closure(h_right, E.right(g)[h_elems])
                visited |= dc
                new_gens = gens + (g,)
                kmask, size = E.closure(new_gens, seeds=h_elems, stop_at=order)
                if size >= order:
                    return _finish(G, E, k, new_gens)
                key = np.packbits(kmask).tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append((new_gens, kmask))
        layer = nxt
        k += 1
    raise RuntimeError("generator search exhausted without generating the group")


def _finish(G: Group, E: ElementTable, k: int, idx) -> GenRankResult:
    witness = [E.element(int(i)) for i in idx]
    if not _witness_generates(G, witness):
        raise RuntimeError("witness does not generate the group")
    return GenRankResult(k, k, witness, method="exact")


def abelian_rank(A: Group, element_cap: int = 10**5) -> int:
    """d of a finite abelian group: max over p of the p-rank (from element orders)."""
    order = A.order()
    if order == 1:
        return 0
    E = ElementTable(A, cap=element_cap)
    orders = E.element_orders
    best = 0
    for p in _prime_factors(order):
        count = int(((orders == 1) | (orders == p)).sum())
        best = max(best, round(math.log(count, p)))
    return best


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def abelianization_rank(G: Group, quotient_cap: int = DEFAULT_QUOTIENT_CAP) -> int:
    D = derived_subgroup(G)
    if D.order() == G.order():
        return 0
    return abelian_rank(quotient(G, D, cap=quotient_cap))


def d_bounds(
    G: Group,
    trials: int = 50,
    seed: int = 0,
    quotient_cap: int = DEFAULT_QUOTIENT_CAP,
) -> GenRankResult:
    """Lower bound from the abelianization, upper bound from random tuples."""
    order = G.order()
    if order == 1:
        return GenRankResult(0, 0, [], method="bounds", seed=seed)
    try:
        lower = max(1, abelianization_rank(G, quotient_cap))
    except QuotientTooLarge:
        lower = 1
    given = G.nontrivial_generators()
    rng = random.Random(seed)
    for k in range(lower, len(given)):
        for _ in range(trials):
            tup = [G.random_element(rng) for _ in range(k)]
            if _witness_generates(G, tup):
                return GenRankResult(lower, k, tup, method="bounds", seed=seed)
    return GenRankResult(lower, len(given), list(given), method="bounds", seed=seed)


def d_group(G: Group, element_cap: int = DEFAULT_D_CAP, trials: int = 50, seed: int = 0) -> GenRankResult:
    """Exact d(G) when |G| is within the cap, otherwise bounds."""
    if G.order() <= element_cap:
        return d_exact(G, element_cap)
    return d_bounds(G, trials=trials, seed=seed)
