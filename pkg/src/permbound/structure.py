"""Block systems, primitivity, primitive decompositions and largeness."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .group import Group, contains_alternating
from .perm import Permutation


class NotTransitiveError(ValueError):
    pass


class BlockSystemError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSystem:
    """Partition of ``range(degree)`` into equal blocks, sorted by smallest point."""

    degree: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise BlockSystemError("blocks must have equal size")
        pts = sorted(p for b in self.blocks for p in b)
        if pts != list(range(self.degree)):
            raise BlockSystemError("blocks must partition the points")

    @classmethod
    def from_labels(cls, labels) -> BlockSystem:
        groups: dict[int, list[int]] = {}
        for p, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(p)
        blocks = sorted(tuple(sorted(b)) for b in groups.values())
        return cls(len(labels), tuple(blocks))

    @classmethod
    def contiguous(cls, block_size: int, n_blocks: int) -> BlockSystem:
        r = block_size
        return cls(r * n_blocks, tuple(tuple(range(j * r, (j + 1) * r)) for j in range(n_blocks)))

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self) -> list[int]:
        out = [0] * self.degree
        for j, b in enumerate(self.blocks):
            for p in b:
                out[p] = j
        return out

    def is_invariant(self, G: Group) -> bool:
        where = self.block_of()
        for g in G.generators:
            for b in self.blocks:
                if len({where[g[p]] for p in b}) != 1:
                    return False
        return True

    def is_trivial(self) -> bool:
        return self.block_size in (1, self.degree)


@dataclass(frozen=True)
class Primitive:
    """Tagged outcome of ``minimal_block_system`` for a primitive group."""

    degree: int


def _gen_array(G: Group) -> np.ndarray:
    gens = G.nontrivial_generators()
    if not gens:
        return np.empty((0, G.degree), dtype=np.int32)
    return np.array([g.images for g in gens], dtype=np.int32)


def block_containing(G: Group, a: int, b: int) -> BlockSystem:
    """The finest G-invariant partition putting ``a`` and ``b`` together."""
    return BlockSystem.from_labels(_kernels.min_block_labels(_gen_array(G), a, b))


def minimal_block_system(G: Group) -> BlockSystem | Primitive:
    """A block system of smallest nontrivial block size, or ``Primitive``.

    Candidates are the minimal blocks containing {0, w} for every w != 0; the
    smallest block size wins, ties going to the smallest w.
    """
    if not G.is_transitive():
        raise NotTransitiveError("group is not transitive")
    n = G.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    gens = _gen_array(G)
    best = None
    best_size = n
    for w in range(1, n):
        labels = _kernels.min_block_labels(gens, 0, w)
        size = int((labels == labels[0]).sum())
        if size < best_size:
            best, best_size = labels, size
            if size == 2:
                break
    if best is None:
        return Primitive(n)
    return BlockSystem.from_labels(best)


def is_primitive(G: Group) -> bool:
    if not G.is_transitive():
        raise NotTransitiveError("group is not transitive")
    if G.degree < 2:
        return True
    return isinstance(minimal_block_system(G), Primitive)


def _check_system(G: Group, B: BlockSystem) -> None:
    if B.degree != G.degree:
        raise BlockSystemError("block system degree differs from group degree")
    if not B.is_invariant(G):
        raise BlockSystemError("block system is not invariant under the group")


def _block_image(g: Permutation, B: BlockSystem, where: list[int]) -> Permutation:
    return Permutation([where[g[b[0]]] for b in B.blocks], check=False)


def block_action(G: Group, B: BlockSystem) -> Group:
    """Image of ``G`` permuting the blocks (block j = j-th in sorted order)."""
    _check_system(G, B)
    where = B.block_of()
    return Group(B.n_blocks, [_block_image(g, B, where) for g in G.generators])


def block_stabilizer(G: Group, B: BlockSystem, index: int = 0) -> Group:
    """Setwise stabilizer of block ``index`` (as a subgroup of G)."""
    _check_system(G, B)
    block = B.blocks[index]
    alpha = block[0]
    ch = G.chain_with_base([alpha])
    lv = ch.levels[0] if ch.levels and ch.levels[0].point == alpha else None
    gens = []
    if len(ch.levels) > 1:
        gens.extend(Permutation(g, check=False) for g in ch.levels[1].gens)
    if lv is not None:
        for delta in block:
            u = lv.transversal.get(delta)
            if u is not None and delta != alpha:
                gens.append(Permutation(u, check=False))
    return Group(G.degree, gens)


def restrict_to_block(g: Permutation, block: tuple[int, ...]) -> Permutation:
    pos = {p: i for i, p in enumerate(block)}
    return Permutation([pos[g[p]] for p in block], check=False)


def block_component(G: Group, B: BlockSystem, index: int = 0) -> Group:
    """Action of the stabilizer of block ``index`` on that block (degree r)."""
    if B.is_trivial():
        raise BlockSystemError("block system is trivial")
    stab = block_stabilizer(G, B, index)
    block = B.blocks[index]
    return Group(B.block_size, [restrict_to_block(g, block) for g in stab.generators])


@dataclass
class PrimitiveDecomposition:
    """R_1 wr R_2 wr ... wr R_t with R_1 innermost.

    ``tops[i]`` is the group left after stripping components 1..i+1, i.e. the
    image under the i-th top projection; the last component equals the last
    top-level group.
    """

    group: Group
    components: list[Group] = field(default_factory=list)
    systems: list[BlockSystem] = field(default_factory=list)
    tops: list[Group] = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [R.degree for R in self.components]

    def __len__(self) -> int:
        return len(self.components)

    def summary(self) -> list[dict]:
        return [
            {
                "degree": R.degree,
                "order": R.order(),
                "primitive": True,
                "contains_alt": contains_alternating(R),
            }
            for R in self.components
        ]


def primitive_decomposition(G: Group) -> PrimitiveDecomposition:
    if not G.is_transitive():
        raise NotTransitiveError("group is not transitive")
    if G.degree < 2:
        raise ValueError("degree must be at least 2")
    dec = PrimitiveDecomposition(G)
    current = G
    while True:
        sys_ = minimal_block_system(current) if current.degree > 1 else Primitive(1)
        if isinstance(sys_, Primitive):
            dec.components.append(current)
            break
        dec.components.append(block_component(current, sys_))
        dec.systems.append(sys_)
        current = block_action(current, sys_)
        dec.tops.append(current)
    return dec


def is_large_subgroup(G: Group, R: Group, S: Group, B: BlockSystem) -> bool:
    """Is G a large subgroup of R wr S for the block system B?

    Block i is identified with R's points in sorted order, and blocks are
    numbered in sorted order to match S.
    """
    r, s = R.degree, S.degree
    if B.block_size != r or B.n_blocks != s or G.degree != r * s:
        raise ValueError("incompatible degrees")
    if not B.is_invariant(G):
        return False
    if not block_action(G, B).same_group(S):
        return False
    for i, block in enumerate(B.blocks):
        stab = block_stabilizer(G, B, i)
        image = Group(r, [restrict_to_block(g, block) for g in stab.generators])
        if not image.same_group(R):
            return False
    return True
