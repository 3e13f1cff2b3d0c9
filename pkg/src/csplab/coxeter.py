"""Coxeter types, parabolic classes and the exponent/degree data behind mu.

Conventions
-----------
``CoxType("A", n)`` is the symmetric group S_n, i.e. the Coxeter group of
rank ``n - 1``; its Coxeter number is ``n``.  The other families use their
usual index: ``B(n)``, ``D(n)``, ``I2(k)``.  Exceptional types carry no
index and only table data.

Parabolic classes are decorated partitions:

* A: ``parts`` is a partition of ``n``.
* B: ``parts`` is a partition of ``t <= n``; the B-part is ``j = n - t``.
* D: ``parts`` is a partition of ``t <= n - 2`` (case 1) or of ``n``
  (cases 2-4, plus the unsupported classes with several odd part sizes).
  Case 2 classes carry ``sign`` in ``{"+", "-"}``.
* I2: ``tag`` is ``"full"``, ``"rank1"`` or ``"trivial"``; for even ``k`` the
  two rank-1 classes are told apart by ``class_id`` in ``{0, 1}``.
* Exceptional: ``tag`` is a table label, ``"trivial"`` or ``"full"``.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import factorial, prod
from typing import Iterator

CLASSICAL = ("A", "B", "D", "I2")
EXCEPTIONAL = ("H3", "H4", "F4", "E6", "E7", "E8")

_EXC_RANK = {"H3": 3, "H4": 4, "F4": 4, "E6": 6, "E7": 7, "E8": 8}
_EXC_H = {"H3": 10, "H4": 30, "F4": 12, "E6": 12, "E7": 18, "E8": 30}


class UnsupportedClass(ValueError):
    """The class has no q-analogue: its normalizer quotient is not a reflection group."""


class ClassParseError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CoxType:
    family: str
    n: int = 0

    def __post_init__(self):
        f, n = self.family, self.n
        if f == "A" and n < 1:
            raise ValueError("A(n) needs n >= 1")
        if f == "B" and n < 2:
            raise ValueError("B(n) needs n >= 2")
        if f == "D" and n < 4:
            raise ValueError("D(n) needs n >= 4")
        if f == "I2" and n < 3:
            raise ValueError("I2(k) needs k >= 3")
        if f in EXCEPTIONAL and n != 0:
            object.__setattr__(self, "n", 0)
        if f not in CLASSICAL and f not in EXCEPTIONAL:
            raise ValueError(f"unknown Coxeter family {f!r}")

    @property
    def is_classical(self) -> bool:
        return self.family in CLASSICAL

    @property
    def rank(self) -> int:
        return rank(self)

    @property
    def h(self) -> int:
        return coxeter_number(self)

    def __str__(self) -> str:
        f, n = self.family, self.n
        if f == "A":
            return f"A{n - 1}"
        if f == "I2":
            return f"I2({n})"
        if f in EXCEPTIONAL:
            return f
        return f"{f}{n}"

    @classmethod
    def parse(cls, text: str) -> CoxType:
        """Parse "A3", "B4", "D5", "I2(7)" or "H3".  "A3" means S_4.

        >>> CoxType.parse("A3")
        CoxType(family='A', n=4)
        """
        t = text.strip().replace("_", "")
        if t in EXCEPTIONAL:
            return cls(t)
        mo = re.fullmatch(r"I2\((\d+)\)", t)
        if mo:
            return cls("I2", int(mo.group(1)))
        mo = re.fullmatch(r"([ABD])(\d+)", t)
        if not mo:
            raise ValueError(f"cannot parse Coxeter type {text!r}")
        fam, k = mo.group(1), int(mo.group(2))
        return cls(fam, k + 1 if fam == "A" else k)


def coxeter_number(W: CoxType) -> int:
    f, n = W.family, W.n
    if f == "A":
        return n
    if f == "B":
        return 2 * n
    if f == "D":
        return 2 * n - 2
    if f == "I2":
        return n
    return _EXC_H[f]


def rank(W: CoxType) -> int:
    f, n = W.family, W.n
    if f == "A":
        return n - 1
    if f in ("B", "D"):
        return n
    if f == "I2":
        return 2
    return _EXC_RANK[f]


# ---------------------------------------------------------------- partitions

def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing partitions of n, largest first part first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def multiplicities(parts: tuple[int, ...]) -> dict[int, int]:
    return dict(sorted(Counter(parts).items()))


def _fmt_parts(parts: tuple[int, ...]) -> str:
    return ",".join(map(str, parts)) if parts else "empty"


# ---------------------------------------------------------- parabolic classes

@dataclass(frozen=True)
class ParabolicClass:
    cox: CoxType
    parts: tuple[int, ...] = ()
    sign: str | None = None
    tag: str | None = None
    class_id: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))
        if any(p < 1 for p in self.parts):
            raise ValueError("partition parts must be positive")

    # shared derived data
    @property
    def mults(self) -> dict[int, int]:
        return multiplicities(self.parts)

    @property
    def l(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def j(self) -> int:
        """B-part of a type-B class (n - |lambda|)."""
        return self.cox.n - self.size

    @property
    def d_case(self) -> int:
        """Type-D case 1..4, or 0 for classes without the reflection property."""
        return _d_case(self.cox.n, self.parts)

    @property
    def rank(self) -> int:
        W = self.cox
        f = W.family
        if f in ("A", "B", "D"):
            return W.n - self.l
        if f == "I2":
            return {"full": 2, "rank1": 1, "trivial": 0}[self.tag]
        if self.tag == "trivial":
            return 0
        if self.tag == "full":
            return rank(W)
        return label_rank(self.tag)

    @property
    def dim(self) -> int:
        return rank(self.cox) - self.rank

    def sort_key(self) -> tuple:
        f = self.cox.family
        if f in ("A", "B", "D"):
            return (self.size, self.parts, self.sign or "")
        if f == "I2":
            return ({"trivial": 0, "rank1": 1, "full": 2}[self.tag], self.class_id or 0)
        tags = exceptional_labels(self.cox)
        return (tags.index(self.tag),)

    def __str__(self) -> str:
        return class_string(self)


def _d_case(n: int, parts: tuple[int, ...]) -> int:
    t = sum(parts)
    if t <= n - 2:
        return 1
    if t != n:
        raise ValueError(f"no D{n} class with |lambda| = {t}")
    odd = sorted({p for p in parts if p % 2})
    if not odd:
        return 2
    if len(odd) == 1:
        return 4 if odd[0] == 1 else 3
    return 0


def class_string(c: ParabolicClass) -> str:
    """Canonical text form, accepted back by :func:`parse_class`."""
    f = c.cox.family
    if f == "A":
        return _fmt_parts(c.parts)
    if f == "B":
        return f"{_fmt_parts(c.parts)}|j={c.j}"
    if f == "D":
        s = _fmt_parts(c.parts)
        return f"{s}:{c.sign}" if c.sign else s
    if f == "I2":
        if c.tag == "rank1" and c.class_id is not None:
            return f"rank1:{c.class_id}"
        return c.tag
    return c.tag


def parse_class(W: CoxType, text: str) -> ParabolicClass:
    """Parse a class string for W; raises ClassParseError with a reason.

    Accepted forms: "2,2" (A), "1|j=1" or "1|j1" or "1" (B, j inferred),
    "2,2:+" (D case 2), "rank1", "rank1:0", "trivial", "full" (I2),
    table labels for exceptional types ("x" may stand for the product sign).
    """
    t = text.strip()
    if t.startswith(W.family + ":"):
        t = t[len(W.family) + 1:]
    f = W.family
    try:
        if f in EXCEPTIONAL:
            label = normalize_label(t)
            if label not in exceptional_labels(W):
                raise ClassParseError(f"{W}: no table row labelled {text!r}")
            return ParabolicClass(W, tag=label)
        if f == "I2":
            mo = re.fullmatch(r"(full|trivial|rank1)(?::(\d))?", t)
            if not mo:
                raise ClassParseError(f"I2 classes are full, rank1[:id] or trivial, got {text!r}")
            tag, cid = mo.group(1), mo.group(2)
            if tag == "rank1":
                if W.n % 2 == 0:
                    if cid is None or int(cid) not in (0, 1):
                        raise ClassParseError("even k needs rank1:0 or rank1:1")
                    return ParabolicClass(W, tag=tag, class_id=int(cid))
                if cid not in (None, "0"):
                    raise ClassParseError("odd k has a single rank-1 class")
                return ParabolicClass(W, tag=tag)
            if cid is not None:
                raise ClassParseError(f"{tag} takes no class id")
            return ParabolicClass(W, tag=tag)
        sign = None
        j = None
        if f == "D":
            mo = re.fullmatch(r"(.*?)(?::([+-]))?", t)
            t, sign = mo.group(1), mo.group(2)
        if f == "B":
            mo = re.fullmatch(r"(.*?)(?:\|?j=?(\d+))?", t)
            t, j = mo.group(1), mo.group(2)
        parts = _parse_parts(t)
        c = ParabolicClass(W, parts, sign=sign)
    except ClassParseError:
        raise
    except ValueError as exc:
        raise ClassParseError(f"bad class {text!r}: {exc}") from None
    if c not in enumerate_classes(W, include_full=True):
        raise ClassParseError(f"{text!r} is not a parabolic class of {W}")
    if j is not None and int(j) != c.j:
        raise ClassParseError(f"B-part j={j} inconsistent with |lambda|={c.size} in {W}")
    return c


def _parse_parts(t: str) -> tuple[int, ...]:
    t = t.strip()
    if t in ("", "empty", "∅", "()", "[]"):
        return ()
    t = t.strip("[]()")
    try:
        return tuple(int(x) for x in t.split(","))
    except ValueError:
        raise ClassParseError(f"cannot read partition {t!r}") from None


def enumerate_classes(W: CoxType, include_full: bool = True) -> list[ParabolicClass]:
    return list(_classes(W, include_full))


@lru_cache(maxsize=None)
def _classes(W: CoxType, include_full: bool) -> tuple[ParabolicClass, ...]:
    f, n = W.family, W.n
    out: list[ParabolicClass] = []
    if f == "A":
        out = [ParabolicClass(W, p) for p in partitions(n)]
        if not include_full:
            out = [c for c in out if c.parts != (n,)]
    elif f == "B":
        for t in range(n + 1):
            out += [ParabolicClass(W, p) for p in partitions(t)]
        if not include_full:
            out = [c for c in out if c.parts != ()]
    elif f == "D":
        for t in range(n - 1):
            out += [ParabolicClass(W, p) for p in partitions(t)]
        for p in partitions(n):
            if all(x % 2 == 0 for x in p):
                out += [ParabolicClass(W, p, sign="+"), ParabolicClass(W, p, sign="-")]
            else:
                out.append(ParabolicClass(W, p))
        if not include_full:
            out = [c for c in out if c.parts != ()]
    elif f == "I2":
        out.append(ParabolicClass(W, tag="trivial"))
        if n % 2 == 0:
            out += [ParabolicClass(W, tag="rank1", class_id=0), ParabolicClass(W, tag="rank1", class_id=1)]
        else:
            out.append(ParabolicClass(W, tag="rank1"))
        if include_full:
            out.append(ParabolicClass(W, tag="full"))
    else:
        out = [ParabolicClass(W, tag=t) for t in exceptional_labels(W)]
        if not include_full:
            out = [c for c in out if c.tag != "full"]
    return tuple(sorted(out, key=ParabolicClass.sort_key))


# ---------------------------------------------------------------- class data

@dataclass(frozen=True)
class ClassData:
    restriction_exponents: tuple[int, ...]
    quotient_degrees: tuple[tuple[int, int], ...] | None
    reflection_property: bool = True


def _type_b_degrees(k: int) -> list[int]:
    return [2 * i for i in range(1, k + 1)]


def _type_d_degrees(k: int) -> list[int]:
    # D_1 is trivial, D_2 = A_1 x A_1 has degrees 2, 2
    if k <= 1:
        return []
    return [2 * i for i in range(1, k)] + [k]


def reflection_property(c: ParabolicClass) -> bool:
    if c.cox.family == "D":
        return c.d_case != 0
    return True


def class_data(W: CoxType, c: ParabolicClass, m: int = 1) -> ClassData:
    """Restriction exponents and normalizer-quotient degrees of a class.

    Degrees equal to 1 are dropped: they contribute unit factors only.
    """
    if c.cox != W:
        raise ValueError(f"class {c} does not belong to {W}")
    if m < 1:
        raise ValueError("m must be positive")
    f = W.family
    degs: list[int]
    if f == "A":
        exps = list(range(1, c.l))
        degs = [d for k in c.mults.values() for d in range(2, k + 1)]
    elif f == "B":
        exps = [2 * i - 1 for i in range(1, c.l + 1)]
        degs = [d for k in c.mults.values() for d in _type_b_degrees(k)]
    elif f == "D":
        case = c.d_case
        if case == 0:
            raise UnsupportedClass(
                f"D{W.n} class {c}: several odd part sizes, the quotient is not a reflection group")
        mults = c.mults
        if case == 4:
            i = c.l - mults[1]
            exps = [2 * a - 1 for a in range(1, c.l)] + [c.l + i - 1]
            special = 1
        else:
            exps = [2 * a - 1 for a in range(1, c.l + 1)]
            special = next(p for p in mults if p % 2) if case == 3 else None
        degs = []
        for p, k in mults.items():
            degs += _type_d_degrees(k) if p == special else _type_b_degrees(k)
    elif f == "I2":
        k = W.n
        if c.tag == "full":
            exps, degs = [], []
        elif c.tag == "rank1":
            exps, degs = [1], ([2] if k % 2 == 0 else [])
        else:
            exps, degs = [1, k - 1], [2, k]
    else:
        if m != 1:
            raise ValueError("exceptional tables are for m = 1 only")
        h = coxeter_number(W)
        if c.tag == "full":
            exps, degs = [], []
        elif c.tag == "trivial":
            exps = list(exceptional_type_data(W)["exponents"])
            degs = [e + 1 for e in exps]
        else:
            row = exceptional_row(W, c.tag)
            exps = [x - 1 - h for x in row["numerator"]]
            degs = list(row["denominator"])
    degs = sorted(d for d in degs if d > 1)
    return ClassData(tuple(exps), tuple((d, 1) for d in degs), True)


def quotient_order(c: ParabolicClass) -> int:
    """|N(W_X)/W_X| predicted by the block structure (classical types)."""
    W = c.cox
    f = W.family
    mults = c.mults
    if f == "A":
        return prod(factorial(k) for k in mults.values())
    if f == "B":
        return prod(2 ** k * factorial(k) for k in mults.values())
    if f == "D":
        case = c.d_case
        full = prod(2 ** k * factorial(k) for k in mults.values())
        if case in (1, 2):
            return full
        # cases 3, 4 and unsupported classes: one factor drops to type D
        return full // 2 if any(p % 2 for p in mults) else full
    if f == "I2":
        return {"full": 1, "rank1": 2 if W.n % 2 == 0 else 1, "trivial": 2 * W.n}[c.tag]
    raise ValueError("quotient orders are tabulated for classical types only")


# ---------------------------------------------------------- exceptional data

@lru_cache(maxsize=1)
def _tables() -> dict:
    text = resources.files("csplab.data").joinpath("exceptional_tables.json").read_text("utf-8")
    return json.loads(text)


def exceptional_type_data(W: CoxType) -> dict:
    return _tables()["types"][W.family]


def exceptional_rows(W: CoxType) -> list[dict]:
    return exceptional_type_data(W)["rows"]


def exceptional_labels(W: CoxType) -> list[str]:
    labels = ["trivial"]
    for row in exceptional_rows(W):
        labels += row["labels"]
    return labels + ["full"]


def exceptional_row(W: CoxType, label: str) -> dict:
    for row in exceptional_rows(W):
        if label in row["labels"]:
            return row
    raise KeyError(label)


def normalize_label(text: str) -> str:
    t = re.sub(r"\s*(?:×|\\times|\bx\b|\*)\s*", " × ", text.strip())
    return re.sub(r"\s+", " ", t)


_COMPONENT = re.compile(r"\(?([A-Z])_(\d+)(?:\((\d+)\))?(?:\^(\d+))?\)?'*")


def label_rank(label: str) -> int:
    """Rank of a parabolic label such as "A_2^2 × A_1" or "(A_1^3)''".

    >>> label_rank("D_4 × A_1")
    5
    >>> label_rank("I_2(5)")
    2
    """
    total = 0
    for comp in label.split("×"):
        comp = comp.strip()
        mo = _COMPONENT.fullmatch(comp)
        if not mo:
            raise ValueError(f"cannot read label component {comp!r}")
        r = int(mo.group(2))
        total += r * int(mo.group(4) or 1)
    return total


def starred(W: CoxType, label: str) -> bool:
    return label in exceptional_row(W, label).get("starred", [])


def suspect(W: CoxType, label: str) -> bool:
    return label in exceptional_row(W, label).get("suspect_labels", [])
