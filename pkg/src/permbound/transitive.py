"""Transitive subgroups of Sym(n) up to conjugacy, and the extremal table f(n).

Exhaustive mode walks the subgroup classes of Sym(n) breadth first: every
subgroup is <H, g> for a smaller subgroup H, so extending one representative
per conjugacy class by one element from each H-double coset reaches every
class. New subgroups are deduplicated by element set and then by an explicit
conjugacy test against known classes with the same invariants.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .elements import ElementTable
from .group import Group, alternating_group, cyclic_group, dihedral_group, symmetric_group
from .perm import format_permutation

EXHAUSTIVE_CAP = 7
LONG_RUNNING_CAP = 8


class DegreeAboveCap(ValueError):
    pass


@dataclass
class SubgroupClass:
    mask: np.ndarray
    gens: tuple[int, ...]
    order: int
    invariant: tuple


@dataclass
class CatalogEntry:
    id: str
    group: Group
    order: int
    canonical: tuple[int, ...] = ()
    info: dict = field(default_factory=dict)

    def generator_strings(self) -> list[str]:
        return [format_permutation(g) for g in self.group.generators]


@dataclass
class TransitiveCatalog:
    degree: int
    mode: str
    entries: list[CatalogEntry]
    total_classes: int | None = None

    def __len__(self) -> int:
        return len(self.entries)

    def by_id(self, entry_id: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise KeyError(entry_id)


class SubgroupEnumerator:
    """Conjugacy classes of subgroups of Sym(n), n <= 8."""

    def __init__(self, n: int, extension_order: np.ndarray | None = None):
        self.n = n
        self.table = ElementTable.symmetric(n)
        T = self.table
        self.size = T.size
        self.extension_order = (
            np.arange(self.size) if extension_order is None else np.asarray(extension_order)
        )
        cl = T.cycle_type_counts
        _, self.cycle_type_id = np.unique(cl, axis=0, return_inverse=True)
        self.cycle_type_id = self.cycle_type_id.ravel()
        self.n_types = int(self.cycle_type_id.max()) + 1
        self._inv_rows = T.perms[T.inverse]
        self._conj_cache: dict[int, np.ndarray] = {}
        self.classes: list[SubgroupClass] = []
        self._by_invariant: dict[tuple, list[int]] = {}
        self._known: dict[bytes, int] = {}

    # -- helpers ----------------------------------------------------------------

    def conjugates_of(self, k: int) -> np.ndarray:
        """``out[x]`` = index of x^-1 k x, for every x."""
        col = self._conj_cache.get(k)
        if col is None:
            T = self.table
            inner = T.perms[k][self._inv_rows]
            rows = np.take_along_axis(T.perms, inner, axis=1)
            col = T.index_of(rows)
            if len(self._conj_cache) > 20000:
                self._conj_cache.clear()
            self._conj_cache[k] = col
        return col

    def _orbit_profile(self, gens) -> tuple[int, ...]:
        if not gens:
            return (1,) * self.n
        labels = _kernels.orbit_labels(self.table.perms[list(gens)])
        return tuple(sorted(np.bincount(labels, minlength=self.n)[np.unique(labels)]))

    def _invariant(self, mask: np.ndarray, gens) -> tuple:
        types = np.bincount(self.cycle_type_id[mask], minlength=self.n_types)
        return (int(mask.sum()), tuple(types.tolist()), self._orbit_profile(gens))

    def conjugating_elements(self, gens, target_mask: np.ndarray) -> np.ndarray:
        """Mask of x with x^-1 <gens> x <= target."""
        ok = np.ones(self.size, dtype=bool)
        for k in gens:
            ok &= target_mask[self.conjugates_of(k)]
        return ok

    def _classify(self, mask: np.ndarray, gens) -> tuple[int, bool]:
        key = np.packbits(mask).tobytes()
        cid = self._known.get(key)
        if cid is not None:
            return cid, False
        inv = self._invariant(mask, gens)
        for cid in self._by_invariant.get(inv, []):
            if self.conjugating_elements(gens, self.classes[cid].mask).any():
                self._known[key] = cid
                return cid, False
        cid = len(self.classes)
        self.classes.append(SubgroupClass(mask, tuple(gens), int(mask.sum()), inv))
        self._by_invariant.setdefault(inv, []).append(cid)
        self._known[key] = cid
        return cid, True

    # -- enumeration ----------------------------------------------------------------

    def run(self) -> list[SubgroupClass]:
        T = self.table
        ident = np.zeros(self.size, dtype=bool)
        ident[T.identity] = True
        self._classify(ident, ())
        qi = 0
        while qi < len(self.classes):
            H = self.classes[qi]
            qi += 1
            h_elems = np.flatnonzero(H.mask).astype(np.int32)
            h_right = T.right_stack(H.gens)
            visited = H.mask.copy()
            for g in self.extension_order:
                g = int(g)
                if visited[g]:
                    continue
                dc, _ = _kernels.closure(h_right, T.right(g)[h_elems])
                visited |= dc
                gens = H.gens + (g,)
                kmask, _ = T.closure(gens, seeds=h_elems)
                self._classify(kmask, gens)
        return self.classes

    # -- canonical forms ----------------------------------------------------------------

    def canonical_form(self, mask: np.ndarray) -> tuple[int, ...]:
        """Lexicographically least sorted element list over all conjugates."""
        elems = np.flatnonzero(mask)
        conj = np.stack([self.conjugates_of(int(h)) for h in elems])  # (|H|, |Sym|)
        conj.sort(axis=0)
        cols = conj.T
        best = np.lexsort(cols.T[::-1])[0]
        return tuple(int(v) for v in cols[best])

    def canonical_generators(self, canonical: tuple[int, ...]) -> list[int]:
        T = self.table
        target = len(canonical)
        gens: list[int] = []
        mask = np.zeros(self.size, dtype=bool)
        mask[T.identity] = True
        size = 1
        for e in canonical:
            if size == target:
                break
            if mask[e]:
                continue
            gens.append(e)
            mask, size = T.closure(gens)
        return gens


def _check_cap(n: int, allow_long: bool) -> None:
    cap = LONG_RUNNING_CAP if allow_long else EXHAUSTIVE_CAP
    if n > cap:
        raise DegreeAboveCap(f"degree {n} above exhaustive cap {cap}")
    if n < 1:
        raise ValueError("degree must be positive")


def enumerate_transitive(
    n: int,
    mode: str = "exhaustive",
    *,
    allow_long: bool = False,
    extension_order: np.ndarray | None = None,
    use_cache: bool = True,
) -> TransitiveCatalog:
    if mode == "curated":
        return curated_catalog(n)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    _check_cap(n, allow_long)
    if use_cache and extension_order is None:
        cached = load_catalog(n)
        if cached is not None:
            return cached
    enum = SubgroupEnumerator(n, extension_order)
    classes = enum.run()
    transitive = [c for c in classes if c.invariant[2] == (n,)]
    found = []
    for c in transitive:
        canon = enum.canonical_form(c.mask)
        gens = enum.canonical_generators(canon)
        G = Group(n, [enum.table.element(g) for g in gens])
        found.append((c.order, [enum.table.perms[g].tolist() for g in gens], canon, G))
    found.sort(key=lambda t: (t[0], t[1]))
    entries = [
        CatalogEntry(f"n{n}_{i + 1:02d}", G, order, canon)
        for i, (order, _, canon, G) in enumerate(found)
    ]
    cat = TransitiveCatalog(n, "exhaustive", entries, total_classes=len(classes))
    if use_cache and extension_order is None:
        save_catalog(cat)
    return cat


def identify(G: Group, catalog: TransitiveCatalog, enum: SubgroupEnumerator | None = None) -> str:
    """Catalog id of the conjugacy class of ``G``."""
    enum = enum or SubgroupEnumerator(catalog.degree)
    T = enum.table
    gens = [T.index(g) for g in G.generators]
    mask, _ = T.closure(gens)
    canon = enum.canonical_form(mask)
    for e in catalog.entries:
        if e.canonical == canon:
            return e.id
    raise KeyError("group not in catalog")


def curated_catalog(n: int) -> TransitiveCatalog:
    """Named transitive families of degree n, without any completeness claim."""
    from .constructions import iterated_wreath, wreath_imprimitive

    groups = [cyclic_group(n), symmetric_group(n)]
    if n >= 3:
        groups.append(dihedral_group(n))
    if n >= 3:
        groups.append(alternating_group(n))
    if _is_prime(n) and n > 2:
        groups.append(_affine(n))
    for r in range(2, n):
        if n % r == 0:
            s = n // r
            groups.append(wreath_imprimitive(symmetric_group(r), symmetric_group(s)))
            groups.append(wreath_imprimitive(cyclic_group(r), cyclic_group(s)))
    if n > 1 and n & (n - 1) == 0:
        groups.append(iterated_wreath([symmetric_group(2)] * (n.bit_length() - 1)))
    # conjugates are merged by a conjugator search where Sym(n) is small enough
    enum = SubgroupEnumerator(n) if n <= LONG_RUNNING_CAP else None
    entries = []
    masks = []
    for G in groups:
        if not G.is_transitive():
            continue
        if enum is not None:
            T = enum.table
            gens = [T.index(g) for g in G.generators]
            mask, size = T.closure(gens)
            if any(m.sum() == size and enum.conjugating_elements(gens, m).any() for m in masks):
                continue
            masks.append(mask)
        elif any(e.order == G.order() and e.group.same_group(G) for e in entries):
            continue
        entries.append(CatalogEntry(f"n{n}_c{len(entries) + 1:02d}", G, G.order(), info={"name": G.name}))
    return TransitiveCatalog(n, "curated", entries)


def _is_prime(m: int) -> bool:
    return m >= 2 and all(m % q for q in range(2, int(m**0.5) + 1))


def _affine(q: int) -> Group:
    from .constructions import _affine_line

    return _affine_line(q)


# -- persistence --------------------------------------------------------------------

def cache_dir() -> Path | None:
    d = os.environ.get("PERMBOUND_CACHE_DIR")
    return Path(d) if d else None


def save_catalog(cat: TransitiveCatalog, root: Path | None = None) -> Path | None:
    from .io import write_group_file

    root = root or cache_dir()
    if root is None:
        return None
    d = Path(root) / f"degree{cat.degree}"
    d.mkdir(parents=True, exist_ok=True)
    index = {"schema_version": 1, "degree": cat.degree, "mode": cat.mode,
             "total_classes": cat.total_classes, "entries": []}
    for e in cat.entries:
        fname = f"{e.id}.grp"
        write_group_file(d / fname, e.group, comment=f"{e.id} order {e.order}")
        index["entries"].append({"id": e.id, "file": fname, "order": e.order,
                                 "canonical": list(e.canonical), **e.info})
    (d / "index.json").write_text(json.dumps(index, indent=1, sort_keys=True) + "\n")
    return d


def load_catalog(n: int, root: Path | None = None) -> TransitiveCatalog | None:
    from .io import read_group_file

    root = root or cache_dir()
    if root is None:
        return None
    d = Path(root) / f"degree{n}"
    idx = d / "index.json"
    if not idx.exists():
        return None
    index = json.loads(idx.read_text())
    entries = []
    for rec in index["entries"]:
        G = read_group_file(d / rec["file"])
        info = {k: v for k, v in rec.items() if k not in ("id", "file", "order", "canonical")}
        entries.append(CatalogEntry(rec["id"], G, rec["order"], tuple(rec["canonical"]), info))
    return TransitiveCatalog(n, index["mode"], entries, index.get("total_classes"))


# -- f table ------------------------------------------------------------------------

@dataclass
class FTableRow:
    n: int
    f: float
    f_over_n2: float
    witness: str
    d: int
    order: int


def f_table(max_n: int, min_n: int = 2, element_cap: int = 2 * 10**4) -> list[FTableRow]:
    from .bounds import log2_int
    from .genrank import d_exact

    rows = []
    for n in range(min_n, max_n + 1):
        cat = enumerate_transitive(n)
        best = None
        for e in cat.entries:
            d = d_exact(e.group, max(element_cap, e.order)).value
            val = d * log2_int(e.order)
            if best is None or val > best[0]:
                best = (val, e, d)
        val, e, d = best
        rows.append(FTableRow(n, val, val / n**2, e.id, d, e.order))
    return rows


def f_table_csv(rows: list[FTableRow]) -> str:
    lines = ["n,f,f_over_n2,witness"]
    for r in rows:
        lines.append(f"{r.n},{r.f!r},{r.f_over_n2!r},{r.witness}")
    return "\n".join(lines) + "\n"


def log2_factorial(n: int) -> float:
    return math.log2(math.factorial(n))
