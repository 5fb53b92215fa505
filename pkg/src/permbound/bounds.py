"""Constants, bl_W(G), and evaluators for every inequality the harness checks.

All logarithms are base 2; the natural log only enters ``C_TILDE``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .genrank import GenRankResult
from .group import Group, contains_alternating
from .structure import PrimitiveDecomposition

# -- constants ---------------------------------------------------------------

C0 = math.log(48, 9) + math.log(24, 9) / 3
C1 = 0.920584
C2 = 2 ** (math.log2(95040) / 11)
B1 = 2 / math.sqrt(math.pi)
C_TILDE = 2 * 1.25506 / math.log(2)
C_BIG = C0 + 2
# Any constant making the single-regime wreath bound valid for all s >= 2 works;
# C_TILDE does, because log s >= sqrt(log s) there and B1 < C_TILDE.
B1_PRIME = C_TILDE

SMALL_N_LIMIT = 51
REL_TOL = 1e-9
FLOOR_NUDGE = 1e-12


def floor_nudged(x: float) -> int:
    return math.floor(x + FLOOR_NUDGE)


def log2_int(m: int) -> float:
    """log2 of a (possibly huge) positive integer."""
    if m <= 0:
        raise ValueError("log of non-positive integer")
    shift = max(m.bit_length() - 53, 0)
    return math.log2(m >> shift) + shift


def constants() -> dict[str, float]:
    return {
        "c0": C0,
        "c1": C1,
        "c2": C2,
        "b1": B1,
        "c_tilde": C_TILDE,
        "C": C_BIG,
        "b1_prime": B1_PRIME,
    }


# -- reports -------------------------------------------------------------------

@dataclass
class BoundReport:
    name: str
    lhs: float | None
    rhs: float | None
    holds: bool | None
    context: dict = field(default_factory=dict)
    status: str = "checked"  # "checked" | "upper-bound check" | "skipped"
    reason: str = ""

    @property
    def violated(self) -> bool:
        return self.holds is False

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "status": self.status,
            "context": self.context,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def _leq(lhs: float, rhs: float) -> bool:
    if isinstance(lhs, int) and isinstance(rhs, int):
        return lhs <= rhs
    return lhs <= rhs or math.isclose(lhs, rhs, rel_tol=REL_TOL)


def _report(name, lhs, rhs, context=None, status="checked") -> BoundReport:
    return BoundReport(name, lhs, rhs, _leq(lhs, rhs), context or {}, status)


def skipped(name: str, reason: str, context=None) -> BoundReport:
    return BoundReport(name, None, None, None, context or {}, "skipped", reason)


def _d_side(d: GenRankResult) -> tuple[int, str]:
    return (d.upper, "checked") if d.exact else (d.upper, "upper-bound check")


# -- bl ------------------------------------------------------------------------

@dataclass
class BlValue:
    value: float
    achieved_by: int | str  # 1-based component index, or "floor c2"
    d_list: list[int]

    def to_dict(self) -> dict:
        return {"value": self.value, "achieved_by": self.achieved_by, "d_list": self.d_list}


def bl(decomp: PrimitiveDecomposition) -> BlValue:
    d_list = [R.degree if contains_alternating(R) else 1 for R in decomp.components]
    d_max = max(d_list)
    if d_max > C2:
        return BlValue(float(d_max), d_list.index(d_max) + 1, d_list)
    return BlValue(C2, "floor c2", d_list)


# -- individual inequalities ---------------------------------------------------------

def trans_d_rhs(n: int) -> int:
    return floor_nudged(C1 * n / math.sqrt(math.log2(n)))


def check_order_bound(G: Group, blv: BlValue) -> BoundReport:
    """log2|G| <= n log2(bl)."""
    n = G.degree
    return _report("order_bl", log2_int(G.order()), n * math.log2(blv.value), {"n": n, "bl": blv.value})


def check_trans_d(G: Group, d: GenRankResult) -> BoundReport:
    """d(G) <= floor(c1 n / sqrt(log n)) for transitive G of degree n >= 2."""
    n = G.degree
    ctx = {"n": n}
    if n < 2:
        return skipped("transitive_d", "degree < 2", ctx)
    if not d.exact:
        return skipped("transitive_d", "d(G) not exactly known", ctx)
    return _report("transitive_d", d.value, trans_d_rhs(n), ctx)


def primitive_d_rhs(r: int, is_s3: bool) -> int:
    if r == 3 and is_s3:
        return 2
    return floor_nudged(math.log2(r))


def check_primitive_d(G: Group, d: GenRankResult, primitive: bool = True) -> BoundReport:
    """d(G) <= floor(log2 r) for primitive G of degree r, except S3 on 3 points."""
    r = G.degree
    if not primitive:
        raise ValueError("group is not primitive")
    is_s3 = r == 3 and G.order() == 6
    ctx = {"r": r, "s3_exception": is_s3}
    if r < 2:
        return skipped("primitive_d", "degree < 2", ctx)
    lhs, status = _d_side(d)
    return _report("primitive_d", lhs, primitive_d_rhs(r, is_s3), ctx, status)


def pq1_bound(aR: int, s: int, d_top: int) -> int:
    """Upper bound on d(G) for G large in R wr S, S transitive of degree s."""
    if s < 2:
        raise ValueError("s must be at least 2")
    if s <= 1260:
        return floor_nudged(C_TILDE * aR * s / math.log2(s)) + d_top
    return floor_nudged(aR * B1 * s / math.sqrt(math.log2(s))) + d_top


def check_wreath_d(d_G: GenRankResult, aR: int, s: int, d_top: GenRankResult) -> BoundReport:
    ctx = {"a_R": aR, "s": s}
    if not d_top.exact:
        return skipped("wreath_d", "d of the top group not exactly known", ctx)
    ctx["d_top"] = d_top.value
    lhs, status = _d_side(d_G)
    return _report("wreath_d", lhs, pq1_bound(aR, s, d_top.value), ctx, status)


def pyber_rhs(r: int) -> float:
    return (2 + C0) * math.log2(r) - math.log2(24) / 3


def check_pyber(R: Group, aR: int, primitive: bool = True) -> BoundReport:
    """a(R) <= (2 + c0) log r - (1/3) log 24 for primitive R of degree r >= 2."""
    if not primitive:
        raise ValueError("group is not primitive")
    r = R.degree
    if r < 2:
        return skipped("pyber_length", "degree < 2", {"r": r})
    return _report("pyber_length", aR, pyber_rhs(r), {"r": r})


def check_cst(G: Group, aG: int) -> BoundReport:
    """a(G) <= (3/2) n."""
    n = G.degree
    return _report("cst_length", aG, 1.5 * n, {"n": n})


def check_maroti(R: Group, primitive: bool = True) -> BoundReport:
    """|R| <= c2^(r-1) for primitive R of degree r not containing Alt(r)."""
    if not primitive:
        raise ValueError("group is not primitive")
    if contains_alternating(R):
        raise ValueError("group contains the alternating group")
    r = R.degree
    return _report(
        "maroti_order",
        log2_int(R.order()),
        (r - 1) * math.log2(C2),
        {"r": r, "order": R.order(), "c2_pow": C2 ** (r - 1)},
    )


def main_lemma_rhs(aR: int, v: int, d_S: int) -> int:
    return 2 * aR * v + d_S


class LargenessError(ValueError):
    pass


def check_main_lemma(
    R: Group,
    U_kind: str,
    u: int,
    V: Group,
    G: Group,
    S: Group,
    *,
    aR: int,
    d_G: GenRankResult,
    d_S: GenRankResult,
) -> BoundReport:
    """d(G) <= 2 a(R) v + d(S) for S large in U wr V and G large in R wr S.

    Both wreath products use contiguous blocks.
    """
    from .group import alternating_group, symmetric_group
    from .structure import BlockSystem, is_large_subgroup

    if U_kind not in ("Alt", "Sym"):
        raise ValueError("U_kind must be 'Alt' or 'Sym'")
    U = alternating_group(u) if U_kind == "Alt" else symmetric_group(u)
    v, r = V.degree, R.degree
    if S.degree != u * v or G.degree != r * S.degree:
        raise LargenessError("incompatible degrees")
    if not is_large_subgroup(S, U, V, BlockSystem.contiguous(u, v)):
        raise LargenessError(f"S is not large in {U_kind}({u}) wr V")
    if not is_large_subgroup(G, R, S, BlockSystem.contiguous(r, S.degree)):
        raise LargenessError("G is not large in R wr S")
    ctx = {"r": r, "U": f"{U_kind}({u})", "v": v, "a_R": aR, "order": G.order()}
    if not d_S.exact:
        return skipped("main_lemma", "d(S) not exactly known", ctx)
    ctx["d_S"] = d_S.value
    lhs, status = _d_side(d_G)
    return _report("main_lemma", lhs, main_lemma_rhs(aR, v, d_S.value), ctx, status)


# -- case trace certificate -------------------------------------------------------

@dataclass
class Certificate:
    case: str  # PRIMITIVE | SMALL_N | CASE_A | CASE_B
    n: int
    bound: float
    quantities: dict
    actual: float | None = None
    holds: bool | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "case": self.case,
            "n": self.n,
            "B": self.bound,
            "B_over_n2": self.bound / self.n**2,
            "quantities": self.quantities,
            "actual": self.actual,
            "holds": self.holds,
        }
        if self.note:
            out["note"] = self.note
        return out


def _alt_component_split(decomp: PrimitiveDecomposition, d: float) -> tuple[int, int, int | None]:
    """(r_tilde, s_tilde, i) for the first component i >= 2 that is Alt/Sym of degree d."""
    n = decomp.group.degree
    degrees = decomp.degrees
    for i in range(1, len(decomp.components)):
        R = decomp.components[i]
        if R.degree == d and contains_alternating(R):
            r_t = math.prod(degrees[:i])
            return r_t, n // r_t, i + 1
    r = degrees[0]
    return r, n // r, None


def certificate(G: Group, decomp: PrimitiveDecomposition, blv: BlValue, d: GenRankResult | None) -> Certificate:
    n = G.degree
    dval = blv.value
    if len(decomp.components) == 1:
        B = 2 * n * math.log2(n) if n > 1 else 0.0
        cert = Certificate("PRIMITIVE", n, B, {"d": dval})
    elif n < SMALL_N_LIMIT:
        B = trans_d_rhs(n) * n * math.log2(dval)
        cert = Certificate("SMALL_N", n, B, {"d": dval, "d_bound": trans_d_rhs(n)})
    else:
        r = decomp.degrees[0]
        s = n // r
        r_t, s_t, alt_index = _alt_component_split(decomp, dval)
        q = {"r": r, "s": s, "r_tilde": r_t, "s_tilde": s_t, "d": dval, "alt_component": alt_index}
        if dval == r or dval <= max(math.log2(r_t), math.log2(s_t)):
            B = (C_BIG * B1_PRIME * math.log2(r) + C1) * math.log2(dval) / (r * math.sqrt(math.log2(s))) * n**2
            cert = Certificate("CASE_A", n, B, q, note="proof-trace, not a theorem statement")
        else:
            if alt_index is None:
                raise RuntimeError("no Alt/Sym component of degree bl beyond the first")
            v = s_t / dval
            d_top = 2.0 if v < 2 else (2 * B1_PRIME + C1) * v / math.sqrt(math.log2(v))
            d_bound = 2 * 1.5 * r_t * v + d_top
            B = d_bound * n * math.log2(dval)
            q["v"] = v
            cert = Certificate("CASE_B", n, B, q, note="proof-trace, not a theorem statement")
    if d is not None and d.exact:
        cert.actual = d.value * log2_int(G.order())
        cert.holds = _leq(cert.actual, cert.bound)
    return cert
