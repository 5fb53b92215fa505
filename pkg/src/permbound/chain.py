"""Deterministic Schreier-Sims on raw image tuples.

Base points are taken in the order they are needed, always the smallest
point moved by the permutation that forced the extension, after any
caller-supplied base prefix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

Img = tuple[int, ...]


def mul(a: Img, b: Img) -> Img:
    return tuple([b[x] for x in a])


def inv(a: Img) -> Img:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


_IDENTITIES: dict[int, Img] = {}


def identity(n: int) -> Img:
    e = _IDENTITIES.get(n)
    if e is None:
        e = _IDENTITIES[n] = tuple(range(n))
    return e


def is_id(a: Img) -> bool:
    return a == identity(len(a))


def first_moved(a: Img) -> int:
    for i, x in enumerate(a):
        if i != x:
            return i
    return -1


@dataclass
class Level:
    point: int
    gens: list[Img] = field(default_factory=list)
    # orbit point -> element mapping `point` to it, and its inverse
    transversal: dict[int, Img] = field(default_factory=dict)
    inverses: dict[int, Img] = field(default_factory=dict)
    # Schreier generators (orbit point, generator index) already sifted
    checked: set[tuple[int, int]] = field(default_factory=set)

    def extend_orbit(self, identity: Img) -> None:
        """Grow the transversal; existing coset representatives are kept."""
        trans = self.transversal
        if not trans:
            trans[self.point] = identity
            self.inverses[self.point] = identity
        queue = list(trans)
        for beta in queue:
            u = trans[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in trans:
                    w = mul(u, s)
                    trans[gamma] = w
                    self.inverses[gamma] = inv(w)
                    queue.append(gamma)


class StabilizerChain:
    """Base, strong generators and transversals for a permutation group."""

    def __init__(self, degree: int, gens: Iterable[Img] = (), base: Sequence[int] = ()):
        self.degree = degree
        self.identity: Img = identity(degree)
        self.levels: list[Level] = [Level(b) for b in base]
        for lv in self.levels:
            lv.extend_orbit(self.identity)
        for g in gens:
            self.add_generator(tuple(g))
        self._trim()

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        return prod(len(lv.transversal) for lv in self.levels)

    def transversal_sizes(self) -> list[int]:
        return [len(lv.transversal) for lv in self.levels]

    def strong_generators(self) -> list[Img]:
        return list(self.levels[0].gens) if self.levels else []

    def sift(self, g: Img, start: int = 0) -> tuple[Img, int]:
        """Strip ``g`` through levels ``start..``; returns residue and drop-out level."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = g[lv.point]
            if beta == lv.point:
                continue
            ui = lv.inverses.get(beta)
            if ui is None:
                return g, i
            g = tuple([ui[x] for x in g])
        return g, len(self.levels)

    def contains(self, g: Img) -> bool:
        if len(g) != self.degree:
            return False
        res, _ = self.sift(tuple(g))
        return is_id(res)

    def add_generator(self, g: Img) -> bool:
        """Extend the group by ``g``; returns False if ``g`` was already a member."""
        res, _ = self.sift(g)
        if is_id(res):
            return False
        j = 0
        while j < len(self.levels) and g[self.levels[j].point] == self.levels[j].point:
            j += 1
        if j == len(self.levels):
            self.levels.append(Level(first_moved(g)))
        for lvl in range(j + 1):
            self.levels[lvl].gens.append(g)
            self.levels[lvl].extend_orbit(self.identity)
        self._schreier_sims(j)
        return True

    def _schreier_sims(self, i: int) -> None:
        while i >= 0:
            lv = self.levels[i]
            restart = False
            for beta in list(lv.transversal):
                u = lv.transversal[beta]
                for si, s in enumerate(lv.gens):
                    if (beta, si) in lv.checked:
                        continue
                    lv.checked.add((beta, si))
                    h = mul(mul(u, s), lv.inverses[s[beta]])
                    if h == self.identity:
                        continue
                    res, j = self.sift(h, i + 1)
                    if res == self.identity:
                        continue
                    if j == len(self.levels):
                        self.levels.append(Level(first_moved(res)))
                    for lvl in range(i + 1, j + 1):
                        self.levels[lvl].gens.append(res)
                        self.levels[lvl].extend_orbit(self.identity)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def _trim(self) -> None:
        while self.levels and len(self.levels[-1].transversal) == 1 and not self.levels[-1].gens:
            self.levels.pop()

    def random_element(self, rng: random.Random) -> Img:
        g = self.identity
        for lv in reversed(self.levels):
            g = mul(g, rng.choice(list(lv.transversal.values())))
        return g

    def base_images(self, g: Img) -> tuple[int, ...]:
        return tuple(g[lv.point] for lv in self.levels)
