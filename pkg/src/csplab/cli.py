"""Command-line front end: ``csplab {verify,sweep,tables,census}``.

Exit codes: 0 when every verdict passes, 1 on any mismatch or non-integer
evaluation, 2 on usage errors (bad arguments, unknown class, budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import __version__
from .coxeter import (
    EXCEPTIONAL, ClassParseError, CoxType, UnsupportedClass, class_string, enumerate_classes,
    parse_class,
)
from .models import Budget, BudgetExceeded, get_model
from .verify import FAIL, PASS, UNSUPPORTED, ClassReport, GroupReport, Job, run_jobs, verify_class

MIN_INDEX = {"A": 3, "B": 2, "D": 4, "I2": 3}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    types: list[str]
    ranks: list[int]
    ms: list[int]
    lam: str | None
    fmt: str
    jobs: int
    budget: Budget
    experimental: bool
    brute: bool

    def to_dict(self) -> dict:
        return {
            "command": self.command, "types": self.types, "ranks": self.ranks, "m": self.ms,
            "lambda": self.lam, "format": self.fmt, "jobs": self.jobs,
            "budget": {"polygon": self.budget.polygon, "vertices": self.budget.vertices},
            "experimental": self.experimental, "brute": self.brute,
        }


def _ints(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("values must be positive")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csplab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"csplab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "md"), default="json")
        sp.add_argument("--out", help="write the report here instead of standard output")
        sp.add_argument("--budget", help='enumeration caps, "polygon=40,vertices=300" or a vertex cap')
        sp.add_argument("--experimental", action="store_true", help="allow type D with m >= 2")

    v = sub.add_parser("verify", help="verify one class")
    v.add_argument("--type", required=True, help="A, B, D, I2 or an exceptional type")
    v.add_argument("--rank", type=int, help="family index: n for A (S_n), B_n, D_n; k for I2(k)")
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--lambda", dest="lam", required=True, help='class, e.g. "2,2", "1|j=1", "2,2:+"')
    v.add_argument("--no-brute", action="store_true", help="skip face enumeration")
    common(v)

    s = sub.add_parser("sweep", help="verify every class over ranges of types, ranks and m")
    s.add_argument("--types", default="A,B,I2")
    s.add_argument("--max-rank", type=int, default=5)
    s.add_argument("--m", default="1", type=_ints)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--no-brute", action="store_true")
    common(s)

    t = sub.add_parser("tables", help="check exceptional sieving tables")
    t.add_argument("--type", default="all", help="H3, H4, F4, E6, E7, E8 or all")
    common(t)

    c = sub.add_parser("census", help="face counts per class")
    c.add_argument("--type", required=True)
    c.add_argument("--rank", type=int)
    c.add_argument("--m", type=int, default=1)
    common(c)
    return p


def _cox(family: str, index: int | None) -> CoxType:
    family = family.strip()
    if family in EXCEPTIONAL:
        return CoxType(family)
    if family not in MIN_INDEX:
        raise UsageError(f"unknown type {family!r}")
    if index is None:
        raise UsageError(f"type {family} needs --rank")
    try:
        return CoxType(family, index)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> Budget:
    base = Budget.from_env()
    if not args.budget:
        return base
    try:
        return Budget.parse(args.budget, base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_d(W: CoxType, m: int, experimental: bool) -> None:
    if W.family == "D" and m > 1 and not experimental:
        raise UsageError("type D with m >= 2 needs --experimental")


def _summary(reports: list[ClassReport], groups: list[GroupReport]) -> dict:
    return {
        "classes": len(reports),
        "passed": sum(r.status == PASS for r in reports),
        "failed": sum(r.status == FAIL for r in reports),
        "unsupported": sum(r.status == UNSUPPORTED for r in reports),
        "census_failures": sum(1 for g in groups if g.total_faces is not None and not g.census_ok),
    }


def render(config: RunConfig, reports: list[ClassReport], groups: list[GroupReport]) -> str:
    if config.fmt == "json":
        doc = {
            "version": __version__,
            "config": config.to_dict(),
            "reports": [r.to_dict() for r in reports],
            "census": [
                {"type": g.cox, "m": g.m, "total_faces": g.total_faces,
                 "classified_faces": g.classified_faces, "stray_classes": g.stray_classes}
                for g in groups if g.total_faces is not None
            ],
            "summary": _summary(reports, groups),
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    rows = [row for r in reports for row in r.rows()]
    header = ("type", "m", "lambda", "d", "brute", "poly", "closed", "agree")
    if config.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if x is None else x for x in row])
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join("" if x is None else str(x) for x in row) + " |")
    s = _summary(reports, groups)
    lines.append("")
    lines.append(f"{s['classes']} classes: {s['passed']} passed, {s['failed']} failed, "
                 f"{s['unsupported']} unsupported")
    return "\n".join(lines) + "\n"


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _cmd_verify(args, config: RunConfig):
    W = _cox(args.type, args.rank)
    _check_d(W, args.m, args.experimental)
    if not W.is_classical and args.m != 1:
        raise UsageError("exceptional types are tabulated for m = 1 only")
    try:
        c = parse_class(W, args.lam)
    except ClassParseError as exc:
        raise UsageError(str(exc)) from None
    with_brute = config.brute and W.is_classical
    if with_brute:
        get_model(W, args.m, config.budget, experimental=args.experimental)
    _progress(f"verifying {W} m={args.m} lambda={class_string(c)}")
    rep = verify_class(W, args.m, c, with_brute, config.budget, args.experimental)
    return [rep], []


def _sweep_jobs(args, config: RunConfig) -> list[Job]:
    jobs = []
    for fam in config.types:
        if fam in EXCEPTIONAL:
            jobs.append(Job(CoxType(fam), 1, config.budget, False))
            continue
        if fam not in MIN_INDEX:
            raise UsageError(f"unknown type {fam!r}")
        for m in config.ms:
            if fam == "D" and m > 1 and not args.experimental:
                _progress(f"skipping D with m={m} (needs --experimental)")
                continue
            for n in range(MIN_INDEX[fam], args.max_rank + 1):
                jobs.append(Job(CoxType(fam, n), m, config.budget, config.brute, args.experimental))
    return jobs


def _cmd_sweep(args, config: RunConfig):
    jobs = _sweep_jobs(args, config)
    _progress(f"sweep: {len(jobs)} groups on {config.jobs} worker(s)")
    groups = run_jobs(jobs, config.jobs)
    return [r for g in groups for r in g.reports], groups


def _cmd_tables(args, config: RunConfig):
    names = EXCEPTIONAL if args.type == "all" else [args.type]
    for name in names:
        if name not in EXCEPTIONAL:
            raise UsageError(f"{name!r} is not an exceptional type")
    groups = run_jobs([Job(CoxType(n), 1, config.budget, False) for n in names], 1)
    return [r for g in groups for r in g.reports], groups


def _cmd_census(args, config: RunConfig) -> str:
    W = _cox(args.type, args.rank)
    if not W.is_classical:
        raise UsageError(f"no face enumeration for {W}")
    _check_d(W, args.m, args.experimental)
    model = get_model(W, args.m, config.budget, experimental=args.experimental)
    census = model.census
    counts = [(class_string(c), len(census.get(c, ()))) for c in enumerate_classes(W)]
    total = len(model.face_indices)
    if config.fmt == "json":
        doc = {"version": __version__, "config": config.to_dict(), "type": str(W), "m": args.m,
               "N": model.N, "vertices": len(model.vertices), "total_faces": total,
               "classes": [{"lambda": lam, "faces": k} for lam, k in counts]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if config.fmt == "csv":
        return "lambda,faces\n" + "".join(f'"{lam}",{k}\n' for lam, k in counts)
    lines = ["| lambda | faces |", "|---|---|"] + [f"| {lam} | {k} |" for lam, k in counts]
    return "\n".join(lines) + f"\n\ntotal faces: {total}\n"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        budget = _budget(args)
        types = ([t.strip() for t in args.types.split(",")] if args.command == "sweep"
                 else [args.type])
        ms = args.m if args.command == "sweep" else [getattr(args, "m", 1)]
        if any(m < 1 for m in ms):
            raise UsageError("m must be positive")
        ranks = [args.max_rank] if args.command == "sweep" else [getattr(args, "rank", None) or 0]
        config = RunConfig(args.command, types, ranks, ms, getattr(args, "lam", None), args.format,
                           getattr(args, "jobs", 1), budget, args.experimental,
                           not getattr(args, "no_brute", False))
        if config.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.command == "census":
            text, code = _cmd_census(args, config), 0
        else:
            handler = {"verify": _cmd_verify, "sweep": _cmd_sweep, "tables": _cmd_tables}[args.command]
            reports, groups = handler(args, config)
            text = render(config, reports, groups)
            s = _summary(reports, groups)
            code = 0 if s["failed"] == 0 and s["census_failures"] == 0 else 1
    except (UsageError, BudgetExceeded, UnsupportedClass) as exc:
        print(f"csplab: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
