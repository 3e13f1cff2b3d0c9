import pytest

from csplab.coxeter import CoxType, ParabolicClass, enumerate_classes, parse_class, reflection_property
from csplab.models import Budget, get_model
from csplab.qexact import QPoly, QProduct, divisors, expand
from csplab.sieving import closed_form_fixed, generic_product, mu, mu_eval, multinomial

A3 = CoxType("A", 4)
H3 = CoxType("H3")


def supported(W):
    return [c for c in enumerate_classes(W) if reflection_property(c)]


def test_hexagon_polynomial():
    sp = mu(A3, 1, parse_class(A3, "2,2"))
    assert sp.expanded == QPoly((1, 0, 1, 0, 1))
    assert sp.expanded.at_one() == 3
    assert [mu_eval(A3, 1, parse_class(A3, "2,2"), d) for d in (1, 2, 3, 6)] == [3, 3, 0, 0]


def test_type_a_m2_part_map():
    # octagon: 5 faces of type [2,2] after k -> 2k
    assert mu(A3, 2, parse_class(A3, "2,2")).expanded.at_one() == 5


@pytest.mark.parametrize("k", [4, 6, 8, 10])
def test_dihedral_even_rank1(k):
    W = CoxType("I2", k)
    c = ParabolicClass(W, tag="rank1", class_id=0)
    assert mu(W, 1, c).expanded == expand(QProduct.of([k + 2], [2]))


def test_h3_a1_row():
    sp = mu(H3, 1, parse_class(H3, "A_1"))
    assert sp.product == QProduct.of([16, 12], [2, 2])
    assert sp.expanded.at_one() == 48


def test_h3_trivial_is_fuss_catalan():
    assert mu(H3, 1, ParabolicClass(H3, tag="trivial")).expanded.at_one() == 32


def test_mu_eval_rejects_non_divisor():
    with pytest.raises(ValueError):
        mu_eval(A3, 1, parse_class(A3, "2,2"), 4)


def test_multinomial():
    assert multinomial(4, [2, 2]) == 6
    assert multinomial(4, [2, 1]) == 0


def test_b_lemma_formula_example():
    # B3, m=1, lambda=[1,1] (n_1 = 2, l = 2), d=2: C(2; 2) * C(4 + 2 - 1; 2) = 10
    W = CoxType("B", 3)
    c = parse_class(W, "1,1|j=1")
    assert closed_form_fixed(W, 1, c, 2) == 10 == mu_eval(W, 1, c, 2)


@pytest.mark.parametrize("k, m", [(3, 2), (5, 2), (7, 2), (5, 4)])
def test_dihedral_half_turn_facets(k, m):
    W = CoxType("I2", k)
    c = ParabolicClass(W, tag="trivial")
    assert closed_form_fixed(W, m, c, 2) == (m * k + 2) // 2 == mu_eval(W, m, c, 2)


def test_d_case2_odd_divisor_vanishes():
    # D7 m=1: N = 14, d = 7 does not divide the parts of [4,2,...]
    W = CoxType("D", 7)
    for c in supported(W):
        if c.d_case == 2:
            assert closed_form_fixed(W, 1, c, 7) == 0 == mu_eval(W, 1, c, 7)


def test_type_a_has_no_closed_form():
    assert closed_form_fixed(A3, 1, parse_class(A3, "2,2"), 2) is None


# ------------------------------------------------------ properties per group

GROUPS = [(CoxType("A", n), m) for n in range(3, 7) for m in (1, 2)] + [
    (CoxType("B", n), m) for n in range(2, 5) for m in (1, 2)] + [
    (CoxType("D", n), 1) for n in (4, 5, 6)] + [
    (CoxType("I2", k), m) for k in range(3, 9) for m in (1, 2, 3)]


@pytest.mark.parametrize("W, m", GROUPS, ids=[f"{W}-m{m}" for W, m in GROUPS])
def test_printed_form_matches_generic_product(W, m):
    for c in supported(W):
        sp = mu(W, m, c)
        assert sp.expanded == expand(generic_product(W, m, c))
        assert all(x >= 0 for x in sp.expanded.coeffs)
        assert sp.expanded.at_one() >= 1


@pytest.mark.parametrize("W, m", GROUPS, ids=[f"{W}-m{m}" for W, m in GROUPS])
def test_closed_form_equals_mu(W, m):
    N = m * W.h + 2
    for c in supported(W):
        for d in divisors(N):
            cf = closed_form_fixed(W, m, c, d)
            if cf is not None:
                assert cf == mu_eval(W, m, c, d), (str(c), d)


@pytest.mark.parametrize("W, m", GROUPS, ids=[f"{W}-m{m}" for W, m in GROUPS])
def test_mu_at_one_is_face_count(W, m):
    model = get_model(W, m, Budget(40, 400))
    census = model.census
    for c in supported(W):
        assert mu_eval(W, m, c, 1) == len(census.get(c, ()))


def test_exceptional_polynomials_nonnegative():
    for name in ("H3", "H4", "F4", "E6"):
        W = CoxType(name)
        for c in enumerate_classes(W):
            assert all(x >= 0 for x in mu(W, 1, c).expanded.coeffs)
