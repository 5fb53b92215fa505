"""Permutations on {1..n}, stored 0-based as image tuples.

Composition is left-to-right: ``x^(a*b) == (x^a)^b``, i.e. ``(a * b)(x) = b(a(x))``.
Points are 1-based in every text form (cycle notation, group files) and
0-based everywhere else.
"""

from __future__ import annotations

import re
from math import lcm
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """Immutable permutation of ``range(degree)``."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        img = tuple(int(x) for x in images)
        if check and sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {img}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based cycles."""
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for p in cyc:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p + 1} out of range 1..{degree}")
                if p in seen:
                    raise ValueError(f"point {p + 1} repeated")
                seen.add(p)
            for i, p in enumerate(cyc):
                img[p] = cyc[(i + 1) % len(cyc)]
        return cls(img, check=False)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """0-based image tuple."""
        return self._img

    def __call__(self, x: int) -> int:
        return self._img[x]

    def __getitem__(self, x: int) -> int:
        return self._img[x]

    def __len__(self) -> int:
        return len(self._img)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __lt__(self, other: Permutation) -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: Permutation) -> Permutation:
        return product(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self._img) if i != x]

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point (0-based)."""
        seen = [False] * len(self._img)
        out = []
        for i in range(len(self._img)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self._img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._img[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths, fixed points included."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"


def _check_same_degree(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")


def product(a: Permutation, b: Permutation) -> Permutation:
    """``a`` first, then ``b``."""
    _check_same_degree(a, b)
    bi = b._img
    return Permutation([bi[x] for x in a._img], check=False)


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a._img):
        inv[x] = i
    return Permutation(inv, check=False)


def sign(a: Permutation) -> int:
    """+1 for even permutations, -1 for odd ones."""
    transpositions = sum(len(c) - 1 for c in a.cycles())
    return -1 if transpositions % 2 else 1


def element_order(a: Permutation) -> int:
    return lcm(*(len(c) for c in a.cycles(include_fixed=True))) if a.degree else 1


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return inverse(a) * inverse(b) * a * b


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint cycle notation such as ``"(1 2 3)(4 5)"``.

    ``"()"`` is the identity. Commas are accepted as separators inside cycles.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    s = text.strip()
    if not s:
        raise ValueError("empty permutation text")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError(f"malformed cycle text: {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(tok) - 1 for tok in body]
        except ValueError:
            raise ValueError(f"malformed cycle text: {text!r}") from None
        if pts:
            cycles.append(pts)
    if pos != len(s) or pos == 0:
        raise ValueError(f"malformed cycle text: {text!r}")
    return Permutation.from_cycles(cycles, degree)


def format_permutation(a: Permutation) -> str:
    cyc = a.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)
