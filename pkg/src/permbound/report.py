"""Per-group analysis reports and the catalog-wide verification harness."""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import bounds
from .bounds import BoundReport
from .elements import ElementCapExceeded
from .genrank import DEFAULT_D_CAP, GenRankResult, d_bounds, d_exact
from .group import Group, alternating_group, contains_alternating, cyclic_group, symmetric_group, trivial_group
from .perm import format_permutation
from .series import QuotientTooLarge, composition_length, is_soluble
from .structure import is_large_subgroup, primitive_decomposition

SCHEMA_VERSION = 1


@dataclass
class Config:
    seed: int = 0
    element_cap: int = DEFAULT_D_CAP
    trials: int = 50
    jobs: int = 1


def genrank(G: Group, cfg: Config) -> GenRankResult:
    if G.order() <= cfg.element_cap:
        return d_exact(G, cfg.element_cap)
    return d_bounds(G, trials=cfg.trials, seed=cfg.seed)


def length(G: Group, cfg: Config) -> tuple[int | None, str]:
    """Composition length and how it was obtained."""
    try:
        return composition_length(G), "series"
    except (ElementCapExceeded, QuotientTooLarge):
        pass
    if G.degree >= 5 and contains_alternating(G):
        # Alt(r) is simple for r >= 5
        return (1 if 2 * G.order() == math.factorial(G.degree) else 2), "alternating/symmetric"
    if is_soluble(G):
        # every factor of a soluble group has prime order
        return _big_omega(G.order()), "prime factorisation (soluble)"
    return None, "unknown"


def _big_omega(m: int) -> int:
    count, q = 0, 2
    while q * q <= m:
        while m % q == 0:
            m //= q
            count += 1
        q += 1
    return count + (m > 1)


def analyze(G: Group, cfg: Config | None = None, name: str | None = None) -> dict:
    cfg = cfg or Config()
    n = G.degree
    order = G.order()
    d = genrank(G, cfg)
    a, a_method = length(G, cfg)
    transitive = G.is_transitive()
    checks: list[BoundReport] = []
    out = {
        "schema_version": SCHEMA_VERSION,
        "group": name or G.name or "G",
        "generators": [format_permutation(g) for g in G.generators],
        "degree": n,
        "order": order,
        "transitive": transitive,
        "seed": cfg.seed,
        "element_cap": cfg.element_cap,
        "d": d.to_dict(),
        "a": a,
        "a_method": a_method,
        "bl": None,
        "decomposition": None,
        "checks": [],
        "certificate": None,
    }
    if a is not None:
        checks.append(bounds.check_cst(G, a))
    else:
        checks.append(bounds.skipped("cst_length", "composition length unavailable", {"n": n}))
    if not transitive or n < 2:
        reason = "group is not transitive" if not transitive else "degree < 2"
        for nm in ("order_bl", "transitive_d", "primitive_d", "pyber_length", "maroti_order", "wreath_d"):
            checks.append(bounds.skipped(nm, reason, {"n": n}))
        out["primitive"] = False if not transitive else True
        out["checks"] = [c.to_dict() for c in checks]
        return out

    dec = primitive_decomposition(G)
    blv = bounds.bl(dec)
    primitive = len(dec.components) == 1
    out["primitive"] = primitive
    out["bl"] = blv.to_dict()
    out["decomposition"] = dec.summary()
    checks.append(bounds.check_order_bound(G, blv))
    checks.append(bounds.check_trans_d(G, d))
    comp_info = []
    for i, R in enumerate(dec.components):
        dR = d if primitive else genrank(R, cfg)
        aR = a if primitive else length(R, cfg)[0]
        tag = {"component": i + 1}
        comp_info.append({"d": dR.to_dict(), "a": aR})
        rep = bounds.check_primitive_d(R, dR)
        rep.context.update(tag)
        checks.append(rep)
        if aR is not None:
            rep = bounds.check_pyber(R, aR)
        else:
            rep = bounds.skipped("pyber_length", "composition length unavailable", {"r": R.degree})
        rep.context.update(tag)
        checks.append(rep)
        if contains_alternating(R):
            rep = bounds.skipped("maroti_order", "component contains the alternating group", {"r": R.degree})
        else:
            rep = bounds.check_maroti(R)
        rep.context.update(tag)
        checks.append(rep)
    for entry, info in zip(out["decomposition"], comp_info):
        entry.update(info)
    checks.append(_wreath_check(G, dec, d, comp_info, cfg))
    cert = bounds.certificate(G, dec, blv, d)
    out["certificate"] = cert.to_dict()
    checks.append(
        BoundReport("certificate", cert.actual, cert.bound, cert.holds, {"case": cert.case},
                    "checked" if cert.holds is not None else "skipped",
                    "" if cert.holds is not None else "d(G) not exactly known")
    )
    out["checks"] = [c.to_dict() for c in checks]
    return out


def _wreath_check(G, dec, d, comp_info, cfg) -> BoundReport:
    """Wreath-product d bound for G inside R_1 wr (block action)."""
    if len(dec.components) == 1:
        return bounds.skipped("wreath_d", "group is primitive", {})
    R, S, B = dec.components[0], dec.tops[0], dec.systems[0]
    aR = comp_info[0]["a"]
    if aR is None:
        return bounds.skipped("wreath_d", "a(R) unavailable", {})
    if B.blocks != tuple(sorted(B.blocks)) or not is_large_subgroup(G, R, S, B):
        return bounds.skipped("wreath_d", "largeness not certified for the sorted block labelling", {})
    return bounds.check_wreath_d(d, aR, S.degree, genrank(S, cfg))


def violations(report: dict) -> list[dict]:
    return [c for c in report["checks"] if c["holds"] is False]


def format_text(report: dict) -> str:
    lines = [
        f"group       {report['group']}",
        f"degree      {report['degree']}",
        f"order       {report['order']}",
        f"transitive  {report['transitive']}",
        f"primitive   {report.get('primitive')}",
    ]
    d = report["d"]
    lines.append(f"d           {d['upper'] if d['exact'] else str(d['lower']) + '..' + str(d['upper'])}"
                 f" ({d['method']})")
    lines.append(f"a           {report['a']}")
    if report["bl"] is not None:
        bl = report["bl"]
        lines.append(f"bl          {bl['value']:.6g} (achieved by {bl['achieved_by']})")
        lines.append("components  " + ", ".join(
            f"{c['degree']}:{c['order']}{'*' if c['contains_alt'] else ''}" for c in report["decomposition"]))
    lines.append("checks")
    for c in report["checks"]:
        if c["status"] == "skipped":
            lines.append(f"  {c['name']:<14} skipped: {c.get('reason', '')}")
        else:
            mark = "ok" if c["holds"] else "VIOLATED"
            lines.append(f"  {c['name']:<14} {_num(c['lhs'])} <= {_num(c['rhs'])}  {mark}"
                         + ("  [upper-bound check]" if c["status"] == "upper-bound check" else ""))
    cert = report["certificate"]
    if cert is not None:
        lines.append(f"certificate {cert['case']}  B = {cert['B']:.6g}  B/n^2 = {cert['B_over_n2']:.6g}"
                     f"  actual = {_num(cert['actual'])}")
    return "\n".join(lines) + "\n"


def _num(x) -> str:
    if x is None:
        return "-"
    return str(x) if isinstance(x, int) else f"{x:.6g}"


def dumps(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# -- catalog harness ------------------------------------------------------------------

@dataclass
class VerifyResult:
    degree: int
    reports: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[tuple[str, dict]]:
        return [(r["group"], c) for r in self.reports for c in violations(r)]


def verify_degree(n: int, cfg: Config | None = None, mode: str = "exhaustive", allow_long: bool = False) -> VerifyResult:
    from .transitive import enumerate_transitive

    cfg = cfg or Config()
    cat = enumerate_transitive(n, mode, allow_long=allow_long)
    d_cap = max(cfg.element_cap, 5040)  # the full catalog keeps d exact up to Sym(7)
    sub = Config(cfg.seed, d_cap, cfg.trials, 1)

    def run(entry):
        return analyze(entry.group, sub, name=entry.id)

    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as ex:
            reports = list(ex.map(run, cat.entries))
    else:
        reports = [run(e) for e in cat.entries]
    return VerifyResult(n, reports)


# -- main lemma instances ------------------------------------------------------------------

@dataclass
class LemmaInstance:
    label: str
    R: Group
    U_kind: str
    u: int
    V: Group


def lemma_instances() -> list[LemmaInstance]:
    """(R, U, V) triples; S = U wr V and G = R wr S on contiguous blocks."""
    one = trivial_group(1)
    specs = [
        ("C2|A3|1", cyclic_group(2), "Alt", 3, one),
        ("C2|S2|1", cyclic_group(2), "Sym", 2, one),
        ("C3|S3|C2", cyclic_group(3), "Sym", 3, cyclic_group(2)),
        ("C2|S3|1", cyclic_group(2), "Sym", 3, one),
        ("S3|S2|1", symmetric_group(3), "Sym", 2, one),
        ("C3|A3|1", cyclic_group(3), "Alt", 3, one),
        ("C2|A4|1", cyclic_group(2), "Alt", 4, one),
        ("C2|S4|1", cyclic_group(2), "Sym", 4, one),
        ("C2|S2|C2", cyclic_group(2), "Sym", 2, cyclic_group(2)),
        ("S3|A3|1", symmetric_group(3), "Alt", 3, one),
        ("C5|S2|1", cyclic_group(5), "Sym", 2, one),
        ("A4|S2|1", alternating_group(4), "Sym", 2, one),
        ("C3|S2|C2", cyclic_group(3), "Sym", 2, cyclic_group(2)),
        ("C2|A5|1", cyclic_group(2), "Alt", 5, one),
    ]
    return [LemmaInstance(*s) for s in specs]


def run_lemma_instance(inst: LemmaInstance, cfg: Config | None = None) -> dict:
    from .constructions import wreath_imprimitive

    cfg = cfg or Config()
    U = alternating_group(inst.u) if inst.U_kind == "Alt" else symmetric_group(inst.u)
    S = wreath_imprimitive(U, inst.V)
    G = wreath_imprimitive(inst.R, S)
    aR = composition_length(inst.R)
    rep = bounds.check_main_lemma(
        inst.R, inst.U_kind, inst.u, inst.V, G, S,
        aR=aR, d_G=genrank(G, cfg), d_S=genrank(S, cfg),
    )
    rep.context["label"] = inst.label
    return rep.to_dict()
