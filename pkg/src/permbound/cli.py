"""Command-line entry point: ``permbound <command> ...``.

Exit status: 0 on success, 1 on usage or input errors, 2 when a bound is
violated or a construction is infeasible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import report as rep
from .constructions import (
    ConstructionError,
    construction_certificate,
    soluble_transitive_alt,
    two_orbit_pprime,
    verify_soluble_alt,
    verify_two_orbit,
)
from .io import GroupFileError, format_group, read_group_file
from .transitive import DegreeAboveCap, enumerate_transitive, f_table, f_table_csv

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _degree_range(text: str) -> list[int]:
    try:
        if "-" in text or ".." in text:
            lo, hi = text.replace("..", "-").split("-")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permbound", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--element-cap", type=_positive, default=rep.DEFAULT_D_CAP)
    common.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("--format", choices=["json", "text", "csv"], default="text")
    common.add_argument("--out", type=Path)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="report on one group file")
    a.add_argument("file", type=Path)

    v = sub.add_parser("verify", parents=[common], help="run every check on catalog groups")
    v.add_argument("--degree", type=_degree_range, required=True, help="n or lo-hi")
    v.add_argument("--mode", choices=["exhaustive", "curated"], default="exhaustive")
    v.add_argument("--long", action="store_true", help="allow degree 8 exhaustive (hours)")

    e = sub.add_parser("enumerate", parents=[common], help="list transitive groups of a degree")
    e.add_argument("--degree", type=_positive, required=True)
    e.add_argument("--mode", choices=["exhaustive", "curated"], default="exhaustive")
    e.add_argument("--long", action="store_true", help="allow degree 8 exhaustive (hours)")

    c = sub.add_parser("construct", parents=[common], help="build a witness group")
    c.add_argument("kind", choices=["soluble-alt", "two-orbit"])
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--p", type=_positive)
    c.add_argument("--alt", action="store_true", help="require the group inside Alt(n)")

    f = sub.add_parser("ftable", parents=[common], help="f(n) = max d(G) log|G| as CSV")
    f.add_argument("--max", type=_positive, required=True)
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _config(args) -> rep.Config:
    return rep.Config(seed=args.seed, element_cap=args.element_cap, jobs=args.jobs)


def cmd_analyze(args) -> int:
    if args.format == "csv":
        raise UsageError("csv output is only available for ftable")
    G = read_group_file(args.file)
    r = rep.analyze(G, _config(args), name=args.file.stem)
    _emit(rep.dumps(r) if args.format == "json" else rep.format_text(r), args.out)
    return EXIT_VIOLATION if rep.violations(r) else EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    results = [rep.verify_degree(n, cfg, args.mode, args.long) for n in args.degree]
    bad = [(v.degree, g, c) for v in results for g, c in v.violations]
    if args.format == "json":
        payload = {
            "schema_version": rep.SCHEMA_VERSION,
            "seed": args.seed,
            "degrees": {str(v.degree): v.reports for v in results},
            "violations": len(bad),
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = []
        for v in results:
            n_checked = sum(c["status"] != "skipped" for r in v.reports for c in r["checks"])
            lines.append(f"degree {v.degree}: {len(v.reports)} groups, {n_checked} checks, "
                         f"{len(v.violations)} violations")
        for n, g, c in bad:
            lines.append(f"VIOLATION degree {n} {g}: {json.dumps(c, sort_keys=True)}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_enumerate(args) -> int:
    cat = enumerate_transitive(args.degree, args.mode, allow_long=args.long)
    if args.format == "json":
        payload = {
            "schema_version": rep.SCHEMA_VERSION,
            "degree": cat.degree,
            "mode": cat.mode,
            "count": len(cat),
            "entries": [{"id": e.id, "order": e.order, "generators": e.generator_strings()}
                        for e in cat.entries],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"degree {cat.degree} ({cat.mode}): {len(cat)} groups"]
        lines += [f"{e.id}  order {e.order}  " + " ".join(e.generator_strings()) for e in cat.entries]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.kind == "soluble-alt":
        c = soluble_transitive_alt(args.n)
        ok = verify_soluble_alt(c)
    else:
        if args.p is None:
            raise UsageError("two-orbit needs --p")
        c = two_orbit_pprime(args.n, args.p, args.alt)
        ok = c.feasible and verify_two_orbit(c)
    cert = construction_certificate(c)
    cert["verified"] = ok
    group_text = format_group(c.group, f"{c.kind} {c.params} strategy {c.strategy}") if c.group else ""
    if args.format == "json":
        cert["group_file"] = group_text
        _emit(json.dumps(cert, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"strategy {c.strategy}"] + [f"note: {x}" for x in c.notes]
        if c.group is not None:
            lines.append(f"order {cert['order']}  orbits {cert['orbit_lengths']}  soluble {cert['soluble']}"
                         f"  even {cert['even']}  verified {ok}")
        sys.stdout.write("\n".join(lines) + "\n")
        # --out receives the group file itself
        if group_text:
            _emit(group_text, args.out)
    return EXIT_OK if (c.feasible and ok) else EXIT_VIOLATION


def cmd_ftable(args) -> int:
    if args.max > 7:
        raise DegreeAboveCap(f"degree {args.max} above exhaustive cap 7")
    rows = f_table(args.max, element_cap=max(args.element_cap, 5040))
    if args.format == "json":
        text = json.dumps([r.__dict__ for r in rows], indent=2, sort_keys=True) + "\n"
    else:
        text = f_table_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "construct": cmd_construct,
    "ftable": cmd_ftable,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DegreeAboveCap, GroupFileError, ConstructionError, OSError) as exc:
        print(f"permbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
