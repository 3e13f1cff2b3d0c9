"""Sieving polynomials mu_lambda(q) and closed-form fixed-face counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod

from .coxeter import (
    CoxType, ParabolicClass, UnsupportedClass, class_data, coxeter_number,
    exceptional_row, exceptional_type_data,
)
from .qexact import QPoly, QProduct, RootEvalResult, eval_at_primitive_root, eval_product_at_root, expand


class NonIntegerEvaluation(ArithmeticError):
    def __init__(self, d: int, residue: QPoly):
        super().__init__(f"residue modulo Phi_{d} is not constant: {residue}")
        self.d = d
        self.residue = residue


class EvaluationMismatch(AssertionError):
    """The two evaluation routes disagree; this is an arithmetic bug."""


@dataclass(frozen=True)
class SievingPolynomial:
    product: QProduct
    expanded: QPoly
    provenance: str

    def __str__(self) -> str:
        return str(self.expanded)


def _factorials(mults, s: int = 1) -> list[tuple[int, int]]:
    return [(j, s) for k in mults for j in range(2, k + 1)]


def sieving_product(W: CoxType, m: int, c: ParabolicClass) -> tuple[QProduct, str]:
    """The printed product form of mu for (W, m, c), with a provenance tag."""
    f = W.family
    mults = list(c.mults.values())
    l = c.l
    if f == "A":
        n = W.n
        num = [(m * n + i, 1) for i in range(2, l + 1)]
        return QProduct(tuple(num), tuple(_factorials(mults))), "type A q-multinomial, parts k -> mk"
    if f == "B":
        M = m * W.n
        num = [(M + i, 2) for i in range(1, l + 1)]
        return QProduct(tuple(num), tuple(_factorials(mults, 2))), "type B q^2-multinomial on B_mn"
    if f == "D":
        case = c.d_case
        if case == 0:
            raise UnsupportedClass(f"D{W.n} class {c} has no sieving polynomial")
        M = m * (W.n - 1)
        base = QProduct(tuple((M + i, 2) for i in range(1, l + 1)), tuple(_factorials(mults, 2)))
        if case in (1, 2):
            return base, f"type D case {case} q^2-multinomial"
        if case == 3:
            nk = next(k for p, k in c.mults.items() if p % 2)
            return base * QProduct.of([2 * nk], [nk]), "type D case 3 rearranged form"
        n1 = c.mults[1]
        tail = QProduct.of([2 * M + 2 * l - n1, 2 * n1], [2 * M + 2 * l, n1])
        return base * tail, "type D case 4 rearranged form"
    if f == "I2":
        k = W.n
        N = m * k + 2
        if c.tag == "full":
            return QProduct(), "dihedral table, full class"
        if c.tag == "rank1":
            return QProduct.of([N], [2] if k % 2 == 0 else [1]), "dihedral table, rank 1"
        return QProduct.of([N, (m + 1) * k], [2, k]), "dihedral table, trivial class"
    if m != 1:
        raise ValueError("exceptional tables are for m = 1 only")
    if c.tag == "full":
        return QProduct(), f"{f} full class"
    if c.tag == "trivial":
        h = coxeter_number(W)
        exps = exceptional_type_data(W)["exponents"]
        return QProduct.of([h + e + 1 for e in exps], [e + 1 for e in exps]), f"{f} Fuss-Catalan"
    row = exceptional_row(W, c.tag)
    return QProduct.of(row["numerator"], row["denominator"]), f"{f} table row"


def generic_product(W: CoxType, m: int, c: ParabolicClass) -> QProduct:
    """prod [e_i + 1 + mh] / prod [d_i] straight from the class data."""
    cd = class_data(W, c, m)
    h = coxeter_number(W)
    return QProduct(tuple((e + 1 + m * h, 1) for e in cd.restriction_exponents), cd.quotient_degrees)


@lru_cache(maxsize=None)
def mu(W: CoxType, m: int, c: ParabolicClass) -> SievingPolynomial:
    prod_, prov = sieving_product(W, m, c)
    return SievingPolynomial(prod_, expand(prod_), prov)


def _check_divisor(W: CoxType, m: int, d: int) -> None:
    N = m * coxeter_number(W) + 2
    if d < 1 or N % d:
        raise ValueError(f"{d} does not divide mh+2 = {N}")


def mu_eval_result(W: CoxType, m: int, c: ParabolicClass, d: int) -> RootEvalResult:
    """Residue evaluation, shadowed by the product-rule evaluation."""
    sp = mu(W, m, c)
    main = eval_at_primitive_root(sp.expanded, d)
    shadow = eval_product_at_root(sp.product, d)
    if main != shadow:
        raise EvaluationMismatch(f"{W} m={m} {c} d={d}: residue {main} vs product rule {shadow}")
    return main


def mu_eval(W: CoxType, m: int, c: ParabolicClass, d: int) -> int:
    _check_divisor(W, m, d)
    r = mu_eval_result(W, m, c, d)
    if not r.is_integer:
        raise NonIntegerEvaluation(d, r.residue)
    return r.value


# ------------------------------------------------------------- closed forms

def multinomial(top: int, parts) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts) or sum(parts) != top:
        return 0
    out, rest = 1, top
    for p in parts:
        out *= comb(rest, p)
        rest -= p
    return out


def _divides(d: int, x: int) -> bool:
    return x % d == 0


def _b_count(M: int, mults: list[int], d: int) -> int:
    """Even d: stable faces of type lambda in B_M (parts already scaled)."""
    l = sum(mults)
    half = d // 2
    if not all(_divides(half, k) for k in mults) or not _divides(half, l):
        return 0
    L = 2 * l // d
    return multinomial(L, [2 * k // d for k in mults]) * comb((2 * M + 2) // d + L - 1, L)


def closed_form_fixed(W: CoxType, m: int, c: ParabolicClass, d: int) -> int | None:
    """Explicit count of d-fold-rotation-stable faces, when a formula exists."""
    _check_divisor(W, m, d)
    f = W.family
    mults = list(c.mults.values())
    l = c.l
    if f == "A" or not W.is_classical:
        return None
    if f == "B":
        M = m * W.n
        if d == 1:
            return multinomial(M + l, mults + [M])
        if d % 2:
            d *= 2
        if not _divides(d, 2 * m * c.j + 2):
            return 0
        return _b_count(M, mults, d)
    if f == "I2":
        return _dihedral_count(W.n, m, c.tag, d)
    return _d_count(W, m, c, d)


def _dihedral_count(k: int, m: int, tag: str, d: int) -> int:
    N = m * k + 2
    if tag == "full":
        return 1
    if d == 1:
        if tag == "rank1":
            return N // 2 if k % 2 == 0 else N
        return (m + 1) * N // 2
    if d > 2:
        return 0
    if tag == "rank1":
        return N // 2 if k % 2 == 0 else 0
    return (m + 1) * N // 2 if k % 2 == 0 else N // 2


def _d_count(W: CoxType, m: int, c: ParabolicClass, d: int) -> int:
    n = W.n
    M = m * (n - 1)
    case = c.d_case
    if case == 0:
        raise UnsupportedClass(f"D{n} class {c} has no closed form")
    mults = list(c.mults.values())
    l = c.l
    if d == 1:
        return int(mu(W, m, c).product.at_one())
    if case == 1:
        if d % 2:
            d *= 2
        if not all(_divides(d, 2 * k) for k in mults):
            return 0
        return _b_count(M, mults, d)
    if case in (2, 3):
        factor = 1 if case == 2 else 2
        if d % 2 == 0:
            if not all(_divides(d, 2 * k) for k in mults):
                return 0
            if case == 3:
                # case 3 at even d also needs d | n_k
                nk = next(k for p, k in c.mults.items() if p % 2)
                if not _divides(d, nk):
                    return 0
            return factor * _b_count(M, mults, d)
        if not all(_divides(d, k) for k in mults) or not _divides(d, M + 1):
            return 0
        L = l // d
        return factor * multinomial(L, [k // d for k in mults]) * comb((M + 1) // d + L - 1, L)
    # case 4
    n1 = c.mults[1]
    others = [k for p, k in c.mults.items() if p != 1]
    if d == 2:
        if n % 2:
            return multinomial(M + l - 1, [n1 - 1] + others + [M])
        return int(mu(W, m, c).product.at_one())
    if d % 2:
        if not all(_divides(d, k) for k in mults) or not _divides(d, M + 1):
            return 0
        top = (M + 1) // d + l // d - 1
        return 2 * multinomial(top, [k // d for k in mults] + [(M + 1) // d - 1])
    if not all(_divides(d // 2, k) for k in mults) or not _divides(d, n1):
        return 0
    top = (2 * M + 2) // d + 2 * l // d - 1
    return 2 * multinomial(top, [2 * k // d for k in mults] + [(2 * M + 2) // d - 1])
