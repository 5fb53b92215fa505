"""Permutation groups given by generators, with a lazily built stabilizer chain."""

from __future__ import annotations

import threading
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .chain import StabilizerChain
from .perm import Permutation, parse_permutation


class Group:
    """A permutation group of degree ``degree`` generated by ``generators``.

    Groups are value-immutable: the generator list is frozen at construction,
    and the stabilizer chain and order are filled in at most once.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), name: str | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._lock = threading.Lock()
        self._chain: StabilizerChain | None = None

    @classmethod
    def with_chain(cls, degree: int, generators, chain: StabilizerChain) -> Group:
        """Wrap generators together with an already computed chain for them."""
        G = cls(degree, generators)
        G._chain = chain
        return G

    @classmethod
    def from_cycles(cls, degree: int, texts: Sequence[str], name: str | None = None) -> Group:
        return cls(degree, [parse_permutation(t, degree) for t in texts], name=name)

    def __repr__(self) -> str:
        label = self.name or "Group"
        gens = ", ".join(str(g) for g in self.generators)
        return f"<{label} degree={self.degree} gens=[{gens}]>"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, (g.images for g in self.generators))
        return self._chain

    def chain_with_base(self, base: Sequence[int]) -> StabilizerChain:
        """A fresh chain whose base starts with ``base`` (not cached)."""
        return StabilizerChain(self.degree, (g.images for g in self.generators), base)

    @cached_property
    def _order(self) -> int:
        return self.chain.order()

    def order(self) -> int:
        return self._order

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return self.chain.contains(g.images)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def nontrivial_generators(self) -> list[Permutation]:
        return [g for g in self.generators if not g.is_identity()]

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        for x in out:
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted 0-based point lists, ordered by smallest point."""
        seen = [False] * self.degree
        result = []
        for p in range(self.degree):
            if seen[p]:
                continue
            orb = sorted(self.orbit(p))
            for x in orb:
                seen[x] = True
            result.append(orb)
        return result

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def point_stabilizer(self, point: int) -> Group:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point + 1} out of range 1..{self.degree}")
        ch = self.chain_with_base([point])
        gens = [Permutation(g, check=False) for g in ch.levels[1].gens] if len(ch.levels) > 1 else []
        stab = Group(self.degree, gens)
        stab.__dict__["_order"] = self.order() // len(self.orbit(point))
        return stab

    def elements(self) -> list[Permutation]:
        """All elements; only sensible for small groups."""
        from .elements import ElementTable

        return [Permutation(row.tolist(), check=False) for row in ElementTable(self).perms]

    def random_element(self, rng) -> Permutation:
        return Permutation(self.chain.random_element(rng), check=False)

    def is_subgroup_of(self, other: Group) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def same_group(self, other: Group) -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def is_even(self) -> bool:
        from .perm import sign

        return all(sign(g) == 1 for g in self.generators)

    def contains_alternating(self) -> bool:
        return contains_alternating(self)


def contains_alternating(G: Group) -> bool:
    """True iff ``G`` contains Alt(degree), decided by ``2|G| >= degree!``."""
    return 2 * G.order() >= factorial(G.degree)


def orbits(G: Group) -> list[list[int]]:
    return G.orbits()


def is_transitive(G: Group) -> bool:
    return G.is_transitive()


def order(G: Group) -> int:
    return G.order()


def contains(G: Group, g: Permutation) -> bool:
    return G.contains(g)


def point_stabilizer(G: Group, point: int) -> Group:
    return G.point_stabilizer(point)


# -- standard groups -------------------------------------------------------

def trivial_group(degree: int = 1) -> Group:
    return Group(degree, [], name=f"1_{degree}")


def cyclic_group(n: int) -> Group:
    gens = [Permutation([(i + 1) % n for i in range(n)])] if n > 1 else []
    return Group(n, gens, name=f"C{n}")


def symmetric_group(n: int) -> Group:
    gens = []
    if n >= 2:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
        gens.append(Permutation.from_cycles([(0, 1)], n))
    if n == 2:
        gens = gens[1:]
    return Group(n, gens, name=f"S{n}")


def alternating_group(n: int) -> Group:
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    if n >= 4:
        # (1 2 3) together with an (n-1)- or n-cycle of the right parity generates
        cyc = list(range(1, n)) if n % 2 == 0 else list(range(n))
        gens = [Permutation.from_cycles([(0, 1, 2)], n), Permutation.from_cycles([tuple(cyc)], n)]
    return Group(n, gens, name=f"A{n}")


def dihedral_group(n: int) -> Group:
    """Symmetries of the n-gon, degree n (order 2n for n >= 3)."""
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return Group(n, [rot, ref], name=f"D{2 * n}")
