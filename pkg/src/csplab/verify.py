"""Divisor sweeps comparing brute force, mu evaluations and closed forms."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .coxeter import (
    CoxType, ParabolicClass, UnsupportedClass, class_string, coxeter_number, enumerate_classes,
    exceptional_rows, exceptional_type_data, reflection_property,
)
from .models import Budget, BudgetExceeded, TypingAmbiguity, get_model
from .qexact import NotPolynomial, divisors
from .sieving import NonIntegerEvaluation, closed_form_fixed, mu, mu_eval

PASS, FAIL, UNSUPPORTED = "pass", "fail", "unsupported"


@dataclass
class ClassReport:
    cox: str
    m: int
    lam: str
    divisors: list[int]
    brute: list[int | None]
    poly: list[int | None]
    closed: list[int | None]
    status: str = PASS
    mismatch: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "type": self.cox, "m": self.m, "lambda": self.lam, "divisors": self.divisors,
            "brute": self.brute, "poly": self.poly, "closed": self.closed,
            "verdict": self.status, "mismatch": self.mismatch, "notes": self.notes,
        }

    def rows(self) -> Iterable[tuple]:
        for i, d in enumerate(self.divisors):
            vals = [v for v in (self.brute[i], self.poly[i], self.closed[i]) if v is not None]
            if self.status == UNSUPPORTED:
                agree = True
            else:
                agree = self.poly[i] is not None and len(set(vals)) == 1
            yield (self.cox, self.m, self.lam, d, self.brute[i], self.poly[i], self.closed[i], agree)


# ------------------------------------------------------------- realizability

def mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


@dataclass(frozen=True)
class OrbitProfile:
    """Orbit counts by orbit size, from Moebius inversion of fixed-point counts."""
    N: int
    orbit_counts: dict[int, Fraction]

    @property
    def realizable(self) -> bool:
        return all(v.denominator == 1 and v >= 0 for v in self.orbit_counts.values())


def csp_realizability(values: dict[int, int], N: int) -> OrbitProfile:
    """``values[d]`` is the number of points fixed by an element of order d.

    >>> csp_realizability({1: 1, 2: 0}, 2).realizable
    False
    """
    divs = divisors(N)
    missing = [d for d in divs if d not in values]
    if missing:
        raise ValueError(f"missing fixed-point counts for orders {missing}")
    counts = {}
    for c in divs:
        # points whose stabilizer has order exactly c
        a = sum(mobius(c2 // c) * values[c2] for c2 in divs if c2 % c == 0)
        e = N // c
        counts[e] = Fraction(a, e)
    return OrbitProfile(N, dict(sorted(counts.items())))


# --------------------------------------------------------------- class sweeps

def verify_class(W: CoxType, m: int, c: ParabolicClass, with_brute: bool = True,
                 budget: Budget | None = None, experimental: bool = False) -> ClassReport:
    N = m * coxeter_number(W) + 2
    divs = divisors(N)
    rep = ClassReport(str(W), m, class_string(c), divs, [None] * len(divs),
                      [None] * len(divs), [None] * len(divs))
    model = None
    if with_brute and W.is_classical:
        try:
            model = get_model(W, m, budget, experimental=experimental)
            rep.brute = [model.fixed_count(c, d) for d in divs]
        except BudgetExceeded as exc:
            rep.notes.append(f"brute force skipped: {exc}")
        except TypingAmbiguity as exc:
            rep.status = FAIL
            rep.notes.append(f"typing ambiguity: {exc}")
    if not reflection_property(c):
        rep.status = UNSUPPORTED
        rep.notes.append("normalizer quotient is not a reflection group; no sieving polynomial")
        return rep
    try:
        mu(W, m, c)
    except NotPolynomial as exc:
        rep.status = FAIL
        rep.mismatch = {"d": None, "reason": f"not a polynomial at factor {exc.factor}"}
        return rep
    for i, d in enumerate(divs):
        try:
            rep.poly[i] = mu_eval(W, m, c, d)
        except NonIntegerEvaluation as exc:
            rep.notes.append(f"d={d}: non-integer evaluation, residue {exc.residue}")
        rep.closed[i] = closed_form_fixed(W, m, c, d)
    _judge(rep, model, c)
    return rep


def _judge(rep: ClassReport, model, c: ParabolicClass) -> None:
    if rep.status != PASS:
        return
    for i, d in enumerate(rep.divisors):
        b, p, cf = rep.brute[i], rep.poly[i], rep.closed[i]
        bad = None
        if p is None:
            bad = "non-integer evaluation"
        elif b is not None and b != p:
            bad = "brute force differs from mu"
        elif cf is not None and cf != p:
            bad = "closed form differs from mu"
        if bad:
            rep.status = FAIL
            rep.mismatch = {"d": d, "reason": bad, "brute": b, "poly": p, "closed": cf}
            if model is not None:
                rep.mismatch["witnesses"] = [str(f) for f in model.fixed_faces(c, d)[:3]]
            return
    values = dict(zip(rep.divisors, rep.poly))
    profile = csp_realizability(values, rep.divisors[-1])
    if not profile.realizable:
        rep.status = FAIL
        rep.mismatch = {"d": None, "reason": "orbit profile not realizable",
                        "orbits": {str(e): str(v) for e, v in profile.orbit_counts.items()}}
        return
    if any(v < 0 for v in rep.poly):
        rep.status = FAIL
        rep.mismatch = {"d": None, "reason": "negative evaluation"}


@dataclass
class GroupReport:
    cox: str
    m: int
    reports: list[ClassReport]
    total_faces: int | None = None
    classified_faces: int | None = None
    stray_classes: list[str] = field(default_factory=list)

    @property
    def census_ok(self) -> bool:
        return self.total_faces == self.classified_faces and not self.stray_classes


def verify_group(W: CoxType, m: int, budget: Budget | None = None, with_brute: bool = True,
                 experimental: bool = False) -> GroupReport:
    """Verify every class of W; the face census must partition all faces."""
    if not W.is_classical:
        raise ValueError(f"face enumeration is not available for {W}; use exceptional_table_check")
    classes = enumerate_classes(W, include_full=True)
    out = GroupReport(str(W), m, [])
    if with_brute:
        model = get_model(W, m, budget, experimental=experimental)
        out.total_faces = len(model.face_indices)
        census = model.census
        out.stray_classes = sorted(class_string(c) for c in census if c not in classes)
        out.classified_faces = sum(len(census.get(c, ())) for c in classes)
    out.reports = [verify_class(W, m, c, with_brute, budget, experimental) for c in classes]
    return out


def exceptional_table_check(W: CoxType) -> list[ClassReport]:
    """One report per printed table row, plus the trivial (Fuss-Catalan) class."""
    if W.is_classical:
        raise ValueError(f"{W} has no exceptional table")
    data = exceptional_type_data(W)
    listed = data["divisors"]
    N = coxeter_number(W) + 2
    reports = []
    trivial = ParabolicClass(W, tag="trivial")
    reports.append(verify_class(W, 1, trivial, with_brute=False))
    for row in exceptional_rows(W):
        c = ParabolicClass(W, tag=row["labels"][0])
        rep = verify_class(W, 1, c, with_brute=False)
        rep.lam = "; ".join(row["labels"])
        if row.get("starred"):
            rep.notes.append("starred: " + ", ".join(row["starred"]))
        if row.get("suspect_labels"):
            rep.notes.append("label rank inconsistent with row: " + ", ".join(row["suspect_labels"]))
        reports.append(rep)
    if listed != divisors(N):
        for rep in reports:
            rep.status = FAIL
            rep.mismatch = {"d": None, "reason": f"listed divisors {listed} differ from divisors of {N}"}
    return reports


# ------------------------------------------------------------- batch sweeps

@dataclass(frozen=True)
class Job:
    cox: CoxType
    m: int
    budget: Budget
    with_brute: bool = True
    experimental: bool = False


def run_job(job: Job) -> GroupReport:
    W = job.cox
    if not W.is_classical:
        return GroupReport(str(W), 1, exceptional_table_check(W))
    try:
        return verify_group(W, job.m, job.budget, job.with_brute, job.experimental)
    except BudgetExceeded as exc:
        g = verify_group(W, job.m, job.budget, with_brute=False)
        for r in g.reports:
            r.notes.append(f"brute force skipped: {exc}")
        return g


def run_jobs(jobs: list[Job], workers: int = 1) -> list[GroupReport]:
    """Run jobs in order; with workers > 1 they run in separate processes."""
    if workers <= 1 or len(jobs) <= 1:
        return [run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_job, jobs))
