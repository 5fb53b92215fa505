from __future__ import annotations

import math

import pytest

from permbound import bounds
from permbound.constructions import iterated_wreath, wreath_imprimitive
from permbound.genrank import GenRankResult, d_exact
from permbound.group import Group, alternating_group, cyclic_group, symmetric_group, trivial_group
from permbound.report import Config, LemmaInstance, analyze, lemma_instances, run_lemma_instance
from permbound.structure import primitive_decomposition


def exact(k: int) -> GenRankResult:
    return GenRankResult(k, k)


def C4():
    return Group.from_cycles(4, ["(1 2 3 4)"])


def test_constant_ranges():
    assert 2.2439 < bounds.C0 < 2.2440
    assert 0.920584 <= bounds.C1 < 0.920585
    assert 2.83489 < bounds.C2 < 2.83490
    # the defining formula 2/sqrt(pi) = 1.12838...; the printed "1.2838..." drops a digit
    assert 1.1283 < bounds.B1 < 1.1284
    assert 3.621337 < bounds.C_TILDE < 3.621338
    assert math.isclose(bounds.C2**11, 95040, rel_tol=1e-12)
    assert bounds.C_BIG == bounds.C0 + 2
    assert bounds.B1_PRIME == bounds.C_TILDE


def truncated(x: float, places: int) -> str:
    return f"{math.floor(x * 10**places) / 10**places:.{places}f}"


def test_printed_decimals():
    # printed values are truncations ("2.24399...")
    assert truncated(bounds.C0, 5) == "2.24399"
    assert truncated(bounds.C_TILDE, 6) == "3.621337"
    assert truncated(bounds.C2, 5) == "2.83489"
    assert truncated(bounds.B1, 5) == "1.12837"


def test_bl_examples():
    assert bounds.bl(primitive_decomposition(symmetric_group(4))).value == 4
    blv = bounds.bl(primitive_decomposition(C4()))
    assert blv.value == bounds.C2 and blv.achieved_by == "floor c2" and blv.d_list == [2, 2]
    W = wreath_imprimitive(symmetric_group(4), symmetric_group(3))
    assert bounds.bl(primitive_decomposition(W)).value == 4


def test_order_bound_examples():
    S4 = symmetric_group(4)
    r = bounds.check_order_bound(S4, bounds.bl(primitive_decomposition(S4)))
    assert r.holds and math.isclose(r.lhs, math.log2(24)) and r.rhs == 8
    r = bounds.check_order_bound(C4(), bounds.bl(primitive_decomposition(C4())))
    assert r.lhs == 2 and math.isclose(r.rhs, 4 * math.log2(95040) / 11)
    W = wreath_imprimitive(symmetric_group(4), symmetric_group(3))
    assert W.order() == 82944
    r = bounds.check_order_bound(W, bounds.bl(primitive_decomposition(W)))
    assert r.holds and round(r.lhs, 2) == 16.34 and r.rhs == 24


def test_trans_d_examples():
    assert bounds.trans_d_rhs(6) == 3
    assert bounds.trans_d_rhs(2) == 1
    assert bounds.trans_d_rhs(4) == 2
    V4 = Group.from_cycles(4, ["(1 2)(3 4)", "(1 3)(2 4)"])
    assert bounds.check_trans_d(V4, d_exact(V4)).holds
    r = bounds.check_trans_d(V4, GenRankResult(1, 2))
    assert r.status == "skipped" and r.holds is None


def test_primitive_d_examples():
    r = bounds.check_primitive_d(symmetric_group(3), exact(2))
    assert r.rhs == 2 and r.holds and r.context["s3_exception"]
    assert bounds.check_primitive_d(alternating_group(5), exact(2)).rhs == 2
    assert bounds.check_primitive_d(cyclic_group(5), exact(1)).holds
    r = bounds.check_primitive_d(symmetric_group(5), GenRankResult(1, 2))
    assert r.status == "upper-bound check" and r.lhs == 2
    with pytest.raises(ValueError):
        bounds.check_primitive_d(C4(), exact(1), primitive=False)


def test_pq1_examples():
    assert bounds.pq1_bound(1, 4, 1) == 8
    assert bounds.pq1_bound(2, 2, 2) == 16
    # floor(1.12838 * 2048 / sqrt(11)) + 1
    assert bounds.pq1_bound(1, 2048, 1) == 697
    assert bounds.pq1_bound(1, 1260, 0) == math.floor(bounds.C_TILDE * 1260 / math.log2(1260))
    with pytest.raises(ValueError):
        bounds.pq1_bound(1, 1, 0)


def test_length_bound_examples():
    r = bounds.check_pyber(alternating_group(5), 1)
    assert r.holds and round(r.rhs, 3) == 8.326
    W = wreath_imprimitive(symmetric_group(2), symmetric_group(3))
    r = bounds.check_cst(W, 4)
    assert r.holds and r.rhs == 9


def test_maroti_examples():
    from tests.conftest import catalog

    psl = [e.group for e in catalog(7).entries if e.order == 168]
    assert len(psl) == 1
    r = bounds.check_maroti(psl[0])
    assert r.holds and math.isclose(r.context["c2_pow"], 95040 ** (6 / 11), rel_tol=1e-12)
    assert abs(r.context["c2_pow"] - 518.9) < 0.5
    with pytest.raises(ValueError):
        bounds.check_maroti(alternating_group(5))


def test_comparison_tolerance():
    assert bounds._leq(1.0 + 1e-12, 1.0)
    assert not bounds._leq(1.0 + 1e-6, 1.0)
    assert not bounds._leq(3, 2)
    assert bounds.floor_nudged(2.9999999999999996) == 3


def test_main_lemma_examples():
    r = run_lemma_instance(LemmaInstance("C2|A3|1", cyclic_group(2), "Alt", 3, trivial_group(1)))
    assert (r["lhs"], r["rhs"], r["holds"], r["status"]) == (2, 3, True, "checked")
    r = run_lemma_instance(LemmaInstance("C2|S2|1", cyclic_group(2), "Sym", 2, trivial_group(1)))
    assert (r["lhs"], r["rhs"]) == (2, 3)
    r = run_lemma_instance(LemmaInstance("C3|S3|C2", cyclic_group(3), "Sym", 3, cyclic_group(2)), Config(seed=7))
    assert r["rhs"] == 6 and r["lhs"] <= 6


def test_main_lemma_rejects_non_large():
    R, S = cyclic_group(2), alternating_group(3)
    G = Group.from_cycles(6, ["(1 3 5)(2 4 6)"])
    with pytest.raises(bounds.LargenessError):
        bounds.check_main_lemma(R, "Alt", 3, trivial_group(1), G, S, aR=1, d_G=exact(1), d_S=exact(1))


def test_lemma_instances_hold():
    insts = lemma_instances()
    assert len(insts) >= 10
    for inst in insts:
        r = run_lemma_instance(inst)
        assert r["holds"], r
        if r["context"]["order"] <= 2 * 10**4:
            assert r["status"] == "checked"


def test_certificate_examples():
    S5 = symmetric_group(5)
    c = bounds.certificate(S5, primitive_decomposition(S5), bounds.bl(primitive_decomposition(S5)), exact(2))
    assert c.case == "PRIMITIVE" and round(c.bound, 1) == 23.2 and round(c.actual, 2) == 13.81 and c.holds
    dec = primitive_decomposition(C4())
    c = bounds.certificate(C4(), dec, bounds.bl(dec), exact(1))
    assert c.case == "SMALL_N" and round(c.bound, 2) == 12.03 and c.actual == 2 and c.holds


@pytest.mark.parametrize(
    "G",
    [
        iterated_wreath([symmetric_group(2)] * 6),
        wreath_imprimitive(alternating_group(4), iterated_wreath([cyclic_group(2)] * 4)),
        wreath_imprimitive(symmetric_group(8), symmetric_group(8)),
    ],
    ids=["S2^6", "A4wrC2^4", "S8wrS8"],
)
def test_degree_64_certificates(G):
    r = analyze(G)
    cert = r["certificate"]
    assert cert["case"] in ("CASE_A", "CASE_B")
    if r["d"]["exact"]:
        assert cert["holds"]
    assert not [c for c in r["checks"] if c["holds"] is False]


def test_second_branch_certificate():
    r = analyze(wreath_imprimitive(cyclic_group(2), symmetric_group(30)))
    cert = r["certificate"]
    assert cert["case"] == "CASE_B" and cert["quantities"]["alt_component"] == 2
    assert cert["holds"] is True
