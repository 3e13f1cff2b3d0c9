from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from csplab.coxeter import CoxType, parse_class
from csplab.models import Budget
from csplab.verify import (
    FAIL, PASS, UNSUPPORTED, Job, csp_realizability, exceptional_table_check, mobius, run_jobs,
    verify_class, verify_group,
)


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_realizability_hexagon_profile():
    # three long diagonals of the hexagon form one orbit of size 3
    prof = csp_realizability({1: 3, 2: 3, 3: 0, 6: 0}, 6)
    assert prof.realizable
    assert {e: v for e, v in prof.orbit_counts.items() if v} == {3: 1}


def test_realizability_rejects_bad_profile():
    prof = csp_realizability({1: 2, 2: 1}, 2)
    assert not prof.realizable
    assert prof.orbit_counts[2] == Fraction(1, 2)


def test_realizability_needs_all_divisors():
    with pytest.raises(ValueError):
        csp_realizability({1: 1}, 4)


@given(st.sampled_from([4, 6, 8, 12]), st.data())
def test_realizability_of_actual_actions(N, data):
    # any multiset of orbit sizes dividing N gives a realizable profile
    sizes = data.draw(st.lists(st.sampled_from([e for e in range(1, N + 1) if N % e == 0]), max_size=6))
    fixed = {d: sum(e for e in sizes if (N // d) % e == 0) for d in range(1, N + 1) if N % d == 0}
    prof = csp_realizability(fixed, N)
    assert prof.realizable
    for e in set(sizes):
        assert prof.orbit_counts[e] == sizes.count(e)


def test_verify_class_hexagon():
    W = CoxType("A", 4)
    rep = verify_class(W, 1, parse_class(W, "2,2"))
    assert rep.status == PASS
    assert rep.divisors == [1, 2, 3, 6]
    assert rep.brute == rep.poly == [3, 3, 0, 0]
    d = rep.to_dict()
    assert d["verdict"] == "pass" and d["lambda"] == "2,2" and d["type"] == "A3"
    assert all(row[-1] for row in rep.rows())


def test_unsupported_d_class_keeps_brute_counts():
    W = CoxType("D", 6)
    rep = verify_class(W, 1, parse_class(W, "3,2,1"))
    assert rep.status == UNSUPPORTED
    assert rep.brute[0] > 0
    assert rep.poly == [None] * len(rep.divisors)


@pytest.mark.parametrize("W", [CoxType("D", 4), CoxType("B", 3), CoxType("I2", 6)])
def test_verify_group_census(W):
    g = verify_group(W, 1)
    assert g.census_ok
    assert all(r.status in (PASS, UNSUPPORTED) for r in g.reports)


def test_h3_tables_pass():
    reps = exceptional_table_check(CoxType("H3"))
    assert [r.lam for r in reps] == ["trivial", "A_1", "A_1^2; A_2; I_2(5)"]
    assert all(r.status == PASS for r in reps)
    assert [r.poly[0] for r in reps] == [32, 48, 6]


def test_non_polynomial_row_is_reported():
    reps = {r.lam: r for r in exceptional_table_check(CoxType("E8"))}
    rep = reps["A_3"]
    assert rep.status == FAIL
    assert "not a polynomial" in rep.mismatch["reason"]


def test_e7_suspect_labels_noted():
    reps = exceptional_table_check(CoxType("E7"))
    assert any("label rank" in n for r in reps for n in r.notes)


def test_jobs_are_scheduling_independent():
    jobs = [Job(CoxType("A", n), 1, Budget()) for n in (3, 4, 5)] + [Job(CoxType("H3"), 1, Budget())]
    one = [[r.to_dict() for r in g.reports] for g in run_jobs(jobs, 1)]
    two = [[r.to_dict() for r in g.reports] for g in run_jobs(jobs, 2)]
    assert one == two


def test_budget_fallback_drops_brute_force():
    job = Job(CoxType("A", 6), 1, Budget(polygon=6, vertices=200))
    (g,) = run_jobs([job])
    assert g.total_faces is None
    assert all(r.brute[0] is None and r.status == PASS for r in g.reports)
