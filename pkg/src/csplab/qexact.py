"""
Exact integer polynomials in q, q-analogues, and evaluation at primitive roots of unity.

A polynomial is stored as a dense tuple of Python integers, constant term first, so that
1 + q^2 + q^4 is ``QPoly((1, 0, 1, 0, 1))``. Coefficients are never reduced modulo anything.

Two independent evaluation routes are provided for a product of q-integers at a primitive
d-th root of unity:

- ``eval_at_primitive_root(expand(prod), d)`` expands everything and reduces modulo the
  cyclotomic polynomial;
- ``eval_product_at_root(prod, d)`` never expands: it cancels vanishing factors with the limit
  rule and only multiplies what survives inside Z[q]/Phi_d.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class DivisionRemainderError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class NotPolynomial(ArithmeticError):
    """A formal quotient of q-integers does not expand to a polynomial."""

    def __init__(self, factor: tuple[int, int], message: str | None = None):
        self.factor = factor
        n, s = factor
        super().__init__(message or f"division by [{n}]_(q^{s}) leaves a remainder")


class MultiplicityNegative(ArithmeticError):
    """More denominator factors than numerator factors vanish at the root of unity."""


class QPoly:
    """
    Dense polynomial in q with arbitrary-precision integer coefficients.

    >>> QPoly((1, 0, 1)) * QPoly((1, 1))
    QPoly('1 + q + q^2 + q^3')
    >>> QPoly(()).degree
    -1
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def constant(cls, c: int) -> QPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> QPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def at_one(self) -> int:
        return sum(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly.constant(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: QPoly | int) -> QPoly:
        o = _coerce(other)
        return QPoly(a + b for a, b in itertools.zip_longest(self.coeffs, o.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other: QPoly | int) -> QPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: QPoly | int) -> QPoly:
        return _coerce(other) - self

    def __mul__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            return QPoly(c * other for c in self.coeffs)
        o = _coerce(other)
        if not self.coeffs or not o.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QPoly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: QPoly) -> tuple[QPoly, QPoly]:
        """Euclidean division by a divisor whose leading coefficient is +1 or -1."""
        o = _coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = o.leading()
        if lead not in (1, -1):
            raise ValueError("divisor must have a unit leading coefficient")
        rem = list(self.coeffs)
        dq = o.degree
        if len(rem) - 1 < dq:
            return QPoly(), self
        quot = [0] * (len(rem) - dq)
        oc = o.coeffs
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c * lead  # lead is its own inverse
            quot[i - dq] = f
            base = i - dq
            for j, b in enumerate(oc):
                if b:
                    rem[base + j] -= f * b
        return QPoly(quot), QPoly(rem)

    def __floordiv__(self, other: QPoly) -> QPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: QPoly) -> QPoly:
        return divmod(self, other)[1]

    def exact_div(self, other: QPoly) -> QPoly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DivisionRemainderError(f"{self} is not divisible by {other}")
        return q

    def __str__(self) -> str:
        """Canonical ascending-degree text form, e.g. ``1 + q^2 + q^4``."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else "q" if i == 1 else f"q^{i}"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QPoly('{self}')"


def _coerce(x: QPoly | int) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


ONE = QPoly((1,))
ZERO = QPoly()


# -- q-analogues ------------------------------------------------------------------------------

def q_integer(n: int, s: int = 1) -> QPoly:
    """[n]_{q^s} = 1 + q^s + ... + q^{s(n-1)}; the zero polynomial when n = 0."""
    if n < 0 or s < 1:
        raise ValueError(f"q_integer needs n >= 0 and s >= 1, got n={n}, s={s}")
    if n == 0:
        return ZERO
    coeffs = [0] * (s * (n - 1) + 1)
    for i in range(n):
        coeffs[s * i] = 1
    return QPoly(coeffs)


def q_factorial(n: int, s: int = 1) -> QPoly:
    out = ONE
    for i in range(1, n + 1):
        out = out * q_integer(i, s)
    return out


def q_double_factorial(n: int, s: int = 1) -> QPoly:
    """[2]_{q^s}[4]_{q^s}...[2n]_{q^s}; the empty product for n = 0."""
    out = ONE
    for i in range(1, n + 1):
        out = out * q_integer(2 * i, s)
    return out


def q_binomial(n: int, k: int, s: int = 1) -> QPoly:
    if n < 0:
        raise ValueError(f"q_binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return QPoly(())
    k = min(k, n - k)
    num = ONE
    for i in range(n - k + 1, n + 1):
        num = num * q_integer(i, s)
    for i in range(1, k + 1):
        num = num.exact_div(q_integer(i, s))
    return num


def q_multinomial(n: int, parts: Sequence[int], s: int = 1) -> QPoly:
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise ValueError(f"parts {list(parts)} do not sum to {n}")
    out = ONE
    remaining = n
    for p in parts:
        out = out * q_binomial(remaining, p, s)
        remaining -= p
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> QPoly:
    """
    The d-th cyclotomic polynomial, by exact division of q^d - 1 by the smaller ones.

    >>> cyclotomic(6)
    QPoly('1 - q + q^2')
    """
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = QPoly.monomial(d) - 1
    for e in divisors(d):
        if e != d:
            p = p.exact_div(cyclotomic(e))
    return p


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


# -- root-of-unity evaluation ----------------------------------------------------------------

@dataclass(frozen=True)
class RootEvalResult:
    """
    Value of a polynomial at a primitive d-th root of unity.

    ``value`` is set when the residue modulo Phi_d is a constant; otherwise ``residue``
    carries the non-constant remainder.
    """

    value: int | None = None
    residue: QPoly | None = None

    @classmethod
    def integer(cls, v: int) -> RootEvalResult:
        return cls(value=v)

    @classmethod
    def non_constant(cls, r: QPoly) -> RootEvalResult:
        return cls(residue=r)

    @property
    def is_integer(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return str(self.value) if self.is_integer else f"<non-constant: {self.residue}>"


def _reduced(r: QPoly) -> RootEvalResult:
    if r.is_constant():
        return RootEvalResult.integer(r.constant_term())
    return RootEvalResult.non_constant(r)


def eval_at_primitive_root(p: QPoly, d: int) -> RootEvalResult:
    """Reduce p modulo Phi_d; a constant residue is p(zeta) for every primitive d-th root zeta."""
    if d < 1:
        raise ValueError("root order must be positive")
    return _reduced(p % cyclotomic(d))


# -- formal products of q-integers -------------------------------------------------------------

Factor = tuple[int, int]  # (n, s) stands for [n]_{q^s}


@dataclass(frozen=True)
class QProduct:
    """Formal quotient prod [n]_{q^s} / prod [n']_{q^s'}; factors are (n, s) pairs."""

    numerator: tuple[Factor, ...] = ()
    denominator: tuple[Factor, ...] = ()

    def __post_init__(self):
        num = tuple(sorted((int(n), int(s)) for n, s in self.numerator))
        den = tuple(sorted((int(n), int(s)) for n, s in self.denominator))
        for n, s in num + den:
            if n < 1 or s < 1:
                raise ValueError(f"invalid factor [{n}]_(q^{s})")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def of(cls, num: Iterable[int | Factor] = (), den: Iterable[int | Factor] = ()) -> QProduct:
        """Build from bare integers (meaning s = 1) or (n, s) pairs."""
        def norm(fs):
            return tuple(f if isinstance(f, tuple) else (f, 1) for f in fs)
        return cls(norm(num), norm(den))

    def __mul__(self, other: QProduct) -> QProduct:
        return QProduct(self.numerator + other.numerator, self.denominator + other.denominator)

    def at_one(self) -> Fraction:
        return Fraction(math.prod(n for n, _ in self.numerator),
                        math.prod(n for n, _ in self.denominator))

    def __str__(self) -> str:
        def fmt(fs):
            if not fs:
                return "1"
            return "".join(f"[{n}]" if s == 1 else f"[{n}]_{{q^{s}}}" for n, s in fs)
        return f"{fmt(self.numerator)} / {fmt(self.denominator)}"


def expand(prod: QProduct) -> QPoly:
    """
    Multiply out the numerator and divide by each denominator factor, checking exactness.

    Denominator factors are divided largest first, which keeps intermediate degrees low.

    >>> expand(QProduct.of([6], [2]))
    QPoly('1 + q^2 + q^4')
    """
    out = ONE
    for n, s in prod.numerator:
        out = out * q_integer(n, s)
    for n, s in sorted(prod.denominator, reverse=True):
        quo, rem = divmod(out, q_integer(n, s))
        if not rem.is_zero():
            raise NotPolynomial((n, s))
        out = quo
    return out


def _effective_order(d: int, s: int) -> int:
    # zeta_d^s is a primitive (d / gcd(d, s))-th root of unity
    return d // math.gcd(d, s)


def eval_product_at_root(prod: QProduct, d: int) -> RootEvalResult:
    """
    Evaluate a product of q-integers at a primitive d-th root without expanding it.

    Each factor is written as (1 - q^{sn}) / (1 - q^s). An atom 1 - q^a vanishes at zeta_d
    exactly when d | a, always to first order with the same leading coefficient, so a net
    count of zero vanishing atoms leaves the limit prod a_num / prod a_den (the limit rule
    [n]/[k] -> n/k). Non-vanishing atoms only depend on a mod d; equal residues in numerator
    and denominator cancel, and anything left over is multiplied out in Q[q]/Phi_d.
    """
    if d < 1:
        raise ValueError("root order must be positive")
    vanish_balance = 0
    scale = Fraction(1)
    residues: dict[int, int] = {}

    def atom(a: int, sign: int) -> None:
        nonlocal vanish_balance, scale
        if a % d == 0:
            vanish_balance += sign
            scale = scale * a if sign > 0 else scale / a
        else:
            r = a % d
            residues[r] = residues.get(r, 0) + sign

    for n, s in prod.numerator:
        atom(s * n, +1)
        atom(s, -1)
    for n, s in prod.denominator:
        atom(s * n, -1)
        atom(s, +1)

    if vanish_balance < 0:
        raise MultiplicityNegative(
            f"{-vanish_balance} more vanishing factors in the denominator at order {d}")
    if vanish_balance > 0:
        return RootEvalResult.integer(0)

    leftover = {r: e for r, e in residues.items() if e}
    if not leftover:
        if scale.denominator != 1:
            raise MultiplicityNegative(f"limit {scale} is not an integer at order {d}")
        return RootEvalResult.integer(int(scale))

    phi = cyclotomic(d)
    value = _FieldElt.constant(scale, phi)
    for r, e in sorted(leftover.items()):
        term = _FieldElt.from_poly(ONE - QPoly.monomial(r), phi)
        if e < 0:
            term = term.inverse()
        for _ in range(abs(e)):
            value = value * term
    coeffs = value.coeffs
    if any(c.denominator != 1 for c in coeffs):
        raise MultiplicityNegative(f"non-integral residue at order {d}: {coeffs}")
    return _reduced(QPoly(int(c) for c in coeffs))


class _FieldElt:
    """Element of Q[q]/Phi_d with Fraction coefficients; just enough for products and inverses."""

    __slots__ = ("coeffs", "phi")

    def __init__(self, coeffs: Sequence[Fraction], phi: QPoly):
        self.phi = phi
        self.coeffs = _frac_mod(list(coeffs), phi)

    @classmethod
    def constant(cls, c: Fraction, phi: QPoly) -> _FieldElt:
        return cls([Fraction(c)], phi)

    @classmethod
    def from_poly(cls, p: QPoly, phi: QPoly) -> _FieldElt:
        return cls([Fraction(c) for c in p.coeffs], phi)

    def __mul__(self, other: _FieldElt) -> _FieldElt:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _FieldElt([], self.phi)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _FieldElt(out, self.phi)

    def inverse(self) -> _FieldElt:
        # extended Euclid over Q: find u with u * self = 1 mod phi
        r0, r1 = [Fraction(c) for c in self.phi.coeffs], list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _trim(r1):
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
        r0 = _trim(r0)
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
        c = r0[0]
        return _FieldElt([x / c for x in s0], self.phi)


def _trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(list(a)), _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i] / lead
        if c:
            q[i - len(b) + 1] = c
            for j, y in enumerate(b):
                a[i - len(b) + 1 + j] -= c * y
    return q, _trim(a[: len(b) - 1])


def _frac_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _frac_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    return _trim([x - y for x, y in itertools.zip_longest(a, b, fillvalue=Fraction(0))])


def _frac_mod(a: list[Fraction], phi: QPoly) -> list[Fraction]:
    return _frac_divmod(a, [Fraction(c) for c in phi.coeffs])[1]


def q_binomial_at_root(n: int, k: int, d: int) -> RootEvalResult:
    """
    q-Lucas: with n = a d + b, k = r d + c (0 <= b, c < d), the q-binomial at a primitive
    d-th root equals C(a, r) times the small q-binomial [b choose c] at that root.
    """
    if k < 0 or k > n:
        return RootEvalResult.integer(0)
    a, b = divmod(n, d)
    r, c = divmod(k, d)
    outer = math.comb(a, r)
    if c > b:
        return RootEvalResult.integer(0)
    inner = q_binomial(b, c) % cyclotomic(d)
    return _reduced(inner * outer)
