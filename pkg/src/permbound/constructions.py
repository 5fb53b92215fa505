"""Wreath products and the soluble witness subgroups of Alt(n).

Wreath products use contiguous blocks: block j is ``range(j*r, (j+1)*r)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .group import Group, cyclic_group, trivial_group
from .perm import Permutation, sign
from .series import is_soluble


class ConstructionError(ValueError):
    pass


def _embed(g: Permutation, block: int, r: int, n: int) -> Permutation:
    img = list(range(n))
    off = block * r
    for i in range(r):
        img[off + i] = off + g[i]
    return Permutation(img, check=False)


def _rigid(s: Permutation, r: int) -> Permutation:
    return Permutation([s[j] * r + i for j in range(s.degree) for i in range(r)], check=False)


def wreath_imprimitive(R: Group, S: Group) -> Group:
    """R wr S on r*s points: copies of R on blocks, S permuting blocks rigidly.

    R's generators are placed on the first block of every S-orbit, so the
    base group is the full R^s even when S is intransitive.
    """
    r, s = R.degree, S.degree
    n = r * s
    gens = []
    for orb in S.orbits():
        gens.extend(_embed(g, orb[0], r, n) for g in R.nontrivial_generators())
    gens.extend(_rigid(t, r) for t in S.nontrivial_generators())
    W = Group(n, gens, name=f"({R.name or 'R'})wr({S.name or 'S'})")
    W.__dict__["_order"] = R.order() ** s * S.order()
    return W


def iterated_wreath(components: list[Group]) -> Group:
    """R_1 wr R_2 wr ... wr R_t with R_1 innermost."""
    if not components:
        raise ConstructionError("need at least one component")
    W = components[0]
    for R in components[1:]:
        W = wreath_imprimitive(W, R)
    return W


def even_part(G: Group) -> Group:
    """Kernel of the sign map restricted to G, via Schreier generators."""
    gens = G.nontrivial_generators()
    odd = [g for g in gens if sign(g) == -1]
    if not odd:
        return G
    t = odd[0]
    ti = ~t
    new = []
    for g in gens:
        if sign(g) == 1:
            new.extend([g, t * g * ti])
        else:
            new.extend([g * ti, t * g])
    new = [g for g in dict.fromkeys(new) if not g.is_identity()]
    H = Group(G.degree, new)
    H.__dict__["_order"] = G.order() // 2
    return H


def sylow2_alt_tower(k: int) -> Group:
    """A Sylow 2-subgroup of Alt(2^k): even part of the k-fold wreath of C2."""
    if k < 2:
        raise ConstructionError("k must be at least 2 (Alt(2) is trivial)")
    P = even_part(iterated_wreath([cyclic_group(2)] * k))
    P.name = f"Syl2(A{2**k})"
    return P


def _direct_product(groups: list[Group]) -> Group:
    n = sum(G.degree for G in groups)
    gens = []
    off = 0
    for G in groups:
        for g in G.nontrivial_generators():
            img = list(range(n))
            for i in range(G.degree):
                img[off + i] = off + g[i]
            gens.append(Permutation(img, check=False))
        off += G.degree
    D = Group(n, gens)
    D.__dict__["_order"] = prod(G.order() for G in groups)
    return D


def _cycles_perm(lengths: list[int]) -> Permutation:
    n = sum(lengths)
    cycles = []
    off = 0
    for length in lengths:
        cycles.append(tuple(range(off, off + length)))
        off += length
    return Permutation.from_cycles(cycles, n)


@dataclass
class Construction:
    """A witness group with the recipe that produced it.

    ``strategy`` is "paper" when the textbook recipe applies literally,
    "fallback" otherwise, and "infeasible" (with ``group`` None) when no
    witness exists.
    """

    kind: str
    params: dict
    group: Group | None
    strategy: str
    notes: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.group is not None


def soluble_transitive_alt(n: int) -> Construction:
    """A soluble transitive subgroup of Alt(n), n != 2."""
    params = {"n": n}
    if n < 1:
        raise ConstructionError("n must be positive")
    if n == 2:
        raise ConstructionError("no such subgroup exists: Alt(2) is trivial")
    if n % 2 == 1:
        G = cyclic_group(n)
        return Construction("soluble-alt", params, G, "paper")
    k = (n & -n).bit_length() - 1
    r = n >> k
    if k >= 2:
        P = sylow2_alt_tower(k)
        G = P if r == 1 else wreath_imprimitive(P, cyclic_group(r))
        return Construction("soluble-alt", params, G, "paper")
    # n = 2m with m odd: the Sylow 2-subgroup of Alt(2) is trivial, so P wr C_m
    # is intransitive; use the even part of C2 wr C_m instead.
    m = r
    rotation = Permutation([(p + 2) % n for p in range(n)])
    swaps = Permutation.from_cycles([(0, 1), (2, 3)], n)
    G = Group(n, [rotation, swaps], name=f"E(C2wrC{m})")
    return Construction(
        "soluble-alt",
        params,
        G,
        "fallback",
        ["n = 2 mod 4: P wr <x> with P a Sylow 2-subgroup of Alt(2) is intransitive"],
    )


def _alt_part(length: int) -> Group | None:
    if length == 2 or length < 1:
        return None
    if length == 1:
        return trivial_group(1)
    return soluble_transitive_alt(length).group


def _pprime(length: int, p: int) -> bool:
    return length >= 1 and length % p != 0


def two_orbit_pprime(n: int, p: int, in_alt: bool = True) -> Construction:
    """Soluble T <= Sym(n) (Alt(n) if ``in_alt``) with <= 2 orbits of p'-length."""
    params = {"n": n, "p": p, "in_alt": in_alt}
    if n < 1:
        raise ConstructionError("n must be positive")
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ConstructionError(f"{p} is not prime")
    parts = _paper_parts(n, p)
    if parts is not None:
        if p == 2:
            G = _cyclic_on_parts(parts)
            return Construction("two-orbit", params, G, "paper", [f"orbit lengths {parts}"])
        groups = [_alt_part(length) for length in parts]
        if all(g is not None for g in groups):
            G = _direct_product(groups)
            return Construction("two-orbit", params, G, "paper", [f"orbit lengths {parts}"])
        note = f"recipe needs a transitive subgroup of Alt(2) (parts {parts})"
    else:
        note = "recipe undefined for n < p"
    witness = _fallback_search(n, p, in_alt)
    if witness is None:
        return Construction(
            "two-orbit",
            params,
            None,
            "infeasible",
            [note, "no witness: every split into at most two p'-lengths was exhausted"],
        )
    G, desc = witness
    return Construction("two-orbit", params, G, "fallback", [note, desc])


def _paper_parts(n: int, p: int) -> list[int] | None:
    """Orbit lengths prescribed by the recipe, or None where it is undefined."""
    if p == 2:
        if n % 2:
            return [n]
        return [1, 1] if n == 2 else [3, n - 3]
    t, k = divmod(n, p)
    if t == 0:
        return None
    if k != p - 1:
        return [t * p - 1, k + 1]
    return [t * p + 1, k - 1]


def _cyclic_on_parts(parts: list[int]) -> Group:
    n = sum(parts)
    return Group(n, [g for g in [_cycles_perm(parts)] if not g.is_identity()])


def _candidate_splits(n: int, p: int) -> list[list[int]]:
    out = []
    if _pprime(n, p):
        out.append([n])
    for a in range(n - 1, 0, -1):
        b = n - a
        if a >= b and _pprime(a, p) and _pprime(b, p):
            out.append([a, b])
    return out


def _fallback_search(n: int, p: int, in_alt: bool):
    """Search witness shapes in a fixed order.

    1. one permutation whose cycles are the orbits;
    2. direct products of soluble transitive subgroups of Alt on each part;
    3. for a part of size 2 next to a part of size m >= 2, the graph of the
       sign map on a soluble transitive group of degree m with odd elements.
    """
    splits = _candidate_splits(n, p)
    for parts in splits:
        g = _cycles_perm(parts)
        if not in_alt or sign(g) == 1:
            return _cyclic_on_parts(parts), f"cyclic witness, cycle lengths {parts}"
    for parts in splits:
        groups = [_alt_part(length) for length in parts]
        if all(G is not None for G in groups):
            return _direct_product(groups), f"direct product of Alt parts, lengths {parts}"
    for parts in splits:
        if len(parts) == 2 and 2 in parts and min(parts) >= 2:
            m = max(parts) if parts != [2, 2] else 2
            T = _odd_soluble_transitive(m)
            if T is None:
                continue
            gens = []
            for g in T.nontrivial_generators():
                img = list(g.images) + [m, m + 1]
                if sign(g) == -1:
                    img[m], img[m + 1] = m + 1, m
                gens.append(Permutation(img, check=False))
            return Group(m + 2, gens), f"sign graph over a degree-{m} group, lengths {[m, 2]}"
    return None


def _odd_soluble_transitive(m: int) -> Group | None:
    """A soluble transitive group of degree m containing an odd permutation."""
    if m < 2:
        return None
    if m % 2 == 0:
        return cyclic_group(m)
    if m % 4 == 3:
        from .group import dihedral_group

        return dihedral_group(m)
    # m = 1 mod 4: affine-type group on one prime factor carries an odd (q-1)-cycle
    q = _smallest_prime_factor(m)
    A = _affine_line(q)
    if q == m:
        return A
    return wreath_imprimitive(A, cyclic_group(m // q))


def _smallest_prime_factor(m: int) -> int:
    q = 2
    while m % q:
        q += 1
    return q


def _affine_line(q: int) -> Group:
    """AGL(1, q) for prime q: x -> x + 1 and x -> w x for a primitive root w."""
    w = next(
        c for c in range(2, q) if all(pow(c, (q - 1) // f, q) != 1 for f in _factors(q - 1))
    ) if q > 2 else 1
    shift = Permutation([(x + 1) % q for x in range(q)])
    scale = Permutation([(w * x) % q for x in range(q)])
    return Group(q, [g for g in (shift, scale) if not g.is_identity()], name=f"AGL(1,{q})")


def _factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


# -- verification --------------------------------------------------------------

def construction_certificate(c: Construction) -> dict:
    """Properties recomputed from the emitted generators."""
    cert = {"kind": c.kind, "params": c.params, "strategy": c.strategy, "notes": list(c.notes)}
    if c.group is None:
        return cert
    G = c.group
    orbit_lengths = sorted((len(o) for o in G.orbits()), reverse=True)
    cert.update(
        {
            "degree": G.degree,
            "order": G.order(),
            "orbit_lengths": orbit_lengths,
            "transitive": len(orbit_lengths) == 1,
            "soluble": is_soluble(G),
            "generator_signs": [sign(g) for g in G.generators],
            "even": G.is_even(),
        }
    )
    if "p" in c.params:
        cert["pprime_orbits"] = all(length % c.params["p"] for length in orbit_lengths)
    return cert


def verify_soluble_alt(c: Construction) -> bool:
    cert = construction_certificate(c)
    return bool(
        c.group is not None
        and cert["degree"] == c.params["n"]
        and cert["transitive"]
        and cert["soluble"]
        and cert["even"]
    )


def verify_two_orbit(c: Construction) -> bool:
    cert = construction_certificate(c)
    if c.group is None:
        return False
    ok = (
        cert["degree"] == c.params["n"]
        and len(cert["orbit_lengths"]) <= 2
        and cert["pprime_orbits"]
        and cert["soluble"]
    )
    if c.params["in_alt"]:
        ok = ok and cert["even"]
    return bool(ok)
