"""Normal closures, derived series, coset-action quotients, composition length."""

from __future__ import annotations

from dataclasses import dataclass

from .chain import StabilizerChain, mul
from .elements import DEFAULT_ELEMENT_CAP, ElementTable
from .group import Group
from .perm import Permutation, commutator

DEFAULT_QUOTIENT_CAP = 10**5


class QuotientTooLarge(ValueError):
    pass


class NotNormalError(ValueError):
    pass


@dataclass
class SubgroupWitness:
    parent: Group
    group: Group
    normal: bool = False

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self.group.generators

    def order(self) -> int:
        return self.group.order()

    def verify(self) -> bool:
        if not self.group.is_subgroup_of(self.parent):
            return False
        if self.normal:
            return is_normal(self.parent, self.group)
        return True


def is_normal(G: Group, N: Group) -> bool:
    for n in N.generators:
        for g in G.generators:
            if not N.contains(~g * n * g):
                return False
    return True


def normal_closure(G: Group, seeds) -> SubgroupWitness:
    """Smallest normal subgroup of G containing ``seeds``."""
    seeds = list(seeds)
    for s in seeds:
        if not G.contains(s):
            raise ValueError(f"seed {s} is not in the group")
    chain = StabilizerChain(G.degree)
    gens: list[Permutation] = []
    queue: list[Permutation] = []
    for s in seeds:
        if chain.add_generator(s.images):
            gens.append(s)
            queue.append(s)
    ginv = [~g for g in G.generators]
    i = 0
    while i < len(queue):
        n = queue[i]
        i += 1
        for g, gi in zip(G.generators, ginv):
            c = gi * n * g
            if chain.add_generator(c.images):
                gens.append(c)
                queue.append(c)
    return SubgroupWitness(G, Group.with_chain(G.degree, gens, chain), normal=True)


def derived_subgroup(G: Group) -> Group:
    gens = G.nontrivial_generators()
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, comms).group


def derived_series(G: Group) -> list[Group]:
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)
        if D.order() == 1:
            return series


def is_soluble(G: Group) -> bool:
    return derived_series(G)[-1].order() == 1


# -- quotients ---------------------------------------------------------------

def _canonical_coset_rep(chain: StabilizerChain, g):
    """Lexicographically least element of the right coset N*g (by base images)."""
    for lv in chain.levels:
        best = min(lv.transversal, key=lambda delta: g[delta])
        g = mul(lv.transversal[best], g)
    return g


def quotient(G: Group, N: SubgroupWitness | Group, cap: int = DEFAULT_QUOTIENT_CAP) -> Group:
    """G/N realised as the action of G on the right cosets of N."""
    Ngroup = N.group if isinstance(N, SubgroupWitness) else N
    if not Ngroup.is_subgroup_of(G) or not is_normal(G, Ngroup):
        raise NotNormalError("N is not a normal subgroup of G")
    index = G.order() // Ngroup.order()
    if index > cap:
        raise QuotientTooLarge(f"quotient too large: index {index} exceeds cap {cap}")
    gbase = G.chain.base
    nchain = StabilizerChain(G.degree, (g.images for g in Ngroup.generators), gbase)
    gimgs = [g.images for g in G.generators]
    ident = tuple(range(G.degree))

    def key(h):
        c = _canonical_coset_rep(nchain, h)
        return tuple(c[b] for b in gbase)

    reps = [ident]
    index_of = {key(ident): 0}
    images = [[] for _ in gimgs]
    for r in reps:
        for j, x in enumerate(gimgs):
            h = mul(r, x)
            k = key(h)
            pos = index_of.get(k)
            if pos is None:
                pos = len(reps)
                index_of[k] = pos
                reps.append(h)
            images[j].append(pos)
    if len(reps) != index:
        raise RuntimeError(f"coset enumeration found {len(reps)} cosets, expected {index}")
    return Group(index, [Permutation(img, check=False) for img in images])


# -- composition length -------------------------------------------------------

def _nontrivial_normal_closures(G: Group, element_cap: int) -> list[SubgroupWitness]:
    E = ElementTable(G, cap=element_cap)
    out = []
    for rep in E.class_representatives:
        if rep == E.identity:
            continue
        out.append(normal_closure(G, [E.element(rep)]))
    return out


def composition_factors(
    G: Group,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    quotient_cap: int = DEFAULT_QUOTIENT_CAP,
    rule: str = "smallest",
) -> list[int]:
    """Orders of the composition factors, found by recursive splitting.

    ``rule`` picks the normal subgroup used to split: the smallest nontrivial
    normal closure of a class representative, or the largest proper one.
    """
    order = G.order()
    if order == 1:
        return []
    closures = _nontrivial_normal_closures(G, element_cap)
    proper = [N for N in closures if N.order() < order]
    if not proper:
        return [order]
    if rule == "smallest":
        N = min(proper, key=lambda w: w.order())
    elif rule == "largest":
        N = max(proper, key=lambda w: w.order())
    else:
        raise ValueError(f"unknown rule {rule!r}")
    Q = quotient(G, N, cap=quotient_cap)
    return (
        composition_factors(N.group, element_cap, quotient_cap, rule)
        + composition_factors(Q, element_cap, quotient_cap, rule)
    )


def composition_length(
    G: Group,
    element_cap: int = DEFAULT_ELEMENT_CAP,
    quotient_cap: int = DEFAULT_QUOTIENT_CAP,
    rule: str = "smallest",
) -> int:
    return len(composition_factors(G, element_cap, quotient_cap, rule))


__all__ = [
    "SubgroupWitness",
    "QuotientTooLarge",
    "NotNormalError",
    "normal_closure",
    "derived_subgroup",
    "derived_series",
    "is_soluble",
    "quotient",
    "composition_factors",
    "composition_length",
    "is_normal",
]
