"""Dissection models for types A, B and D."""

from __future__ import annotations

from collections import Counter

from ..coxeter import CoxType, ParabolicClass
from .base import Budget, ModelAssertion, PolygonModel, TypingAmbiguity
from .elements import (
    DASHED, SOLID, Diagonal, Diameter, ModelElement, SymPair, chord, crosses,
    make_sympair, shift, split_regions,
)


def _noncrossing(x: ModelElement, y: ModelElement) -> bool:
    return not any(crosses(c1, c2) for c1 in x.chords() for c2 in y.chords())


def _halve(parts: list[int], what: str) -> tuple[int, ...]:
    """Halve multiplicities of a centrally symmetric part multiset."""
    out: list[int] = []
    for p, k in Counter(parts).items():
        if k % 2:
            raise TypingAmbiguity(f"{what}: part {p} occurs an odd number of times")
        out += [p] * (k // 2)
    return tuple(sorted(out, reverse=True))


class TypeAModel(PolygonModel):
    """m-divisible dissections of the (mn+2)-gon; CoxType("A", n)."""

    def _build_vertices(self):
        N, m = self.N, self.m
        return [Diagonal(a, b) for a in range(1, N + 1) for b in range(a + 2, N + 1)
                if not (a == 1 and b == N) and (b - a) % m == 1 % m]

    def _compatible(self, x, y):
        return x != y and _noncrossing(x, y)

    def rotate(self, x):
        return Diagonal(*chord(x.a - 1, x.b - 1, self.N))

    def region_sizes(self, elements) -> list[int]:
        chords = [c for x in elements for c in x.chords()]
        return [len(r) for r in split_regions(range(1, self.N + 1), chords)]

    def type_face(self, elements):
        parts = []
        for s in self.region_sizes(elements):
            if (s - 2) % self.m:
                raise TypingAmbiguity(f"region of size {s} is not m-divisible")
            parts.append((s - 2) // self.m)
        return ParabolicClass(self.W, tuple(parts))


class _SymmetricModel(PolygonModel):
    """Shared code for the centrally symmetric models of types B and D."""

    @property
    def H(self) -> int:
        return self.N // 2

    def _pairs(self) -> list[SymPair]:
        N, H, m = self.N, self.H, self.m
        out = set()
        for a in range(1, N + 1):
            for L in range(2, H):
                if L % m != 1 % m:
                    continue
                out.add(make_sympair(chord(a, a + L, N), chord(a + H, a + H + L, N)))
        return sorted(out)

    def rotate_pair(self, x: SymPair) -> SymPair:
        N = self.N
        return make_sympair(*(chord(a - 1, b - 1, N) for a, b in x.chords()))

    def _regions(self, chords, extra_parts=()):
        return split_regions(range(1, self.N + 1), chords)

    def _is_central(self, region) -> bool:
        vs = set(region)
        return {shift(v, self.H, self.N) for v in vs} == vs

    def _plain_part(self, size: int) -> int:
        if (size - 2) % self.m:
            raise TypingAmbiguity(f"region of size {size} is not m-divisible")
        return (size - 2) // self.m


class TypeBModel(_SymmetricModel):
    """Centrally symmetric m-divisible dissections of the (2mn+2)-gon."""

    def _build_vertices(self):
        return self._pairs() + [Diameter(a, self.H) for a in range(1, self.H + 1)]

    def _compatible(self, x, y):
        return x != y and _noncrossing(x, y)

    def rotate(self, x):
        if isinstance(x, Diameter):
            return Diameter(shift(x.a, 1, self.H), self.H)
        return self.rotate_pair(x)

    def type_face(self, elements):
        chords = [c for x in elements for c in x.chords()]
        parts, j = [], 0
        for reg in self._regions(chords):
            if self._is_central(reg):
                if (len(reg) - 2) % (2 * self.m):
                    raise TypingAmbiguity("central region of wrong size")
                j = (len(reg) - 2) // (2 * self.m)
            else:
                parts.append(self._plain_part(len(reg)))
        lam = _halve(parts, "B typing")
        c = ParabolicClass(self.W, lam)
        if c.j != j:
            raise ModelAssertion(f"B-part mismatch: central region gives {j}, partition gives {c.j}")
        return c


class TypeDModel(_SymmetricModel):
    """Centrally symmetric dissections of the (2m(n-1)+2)-gon with colored diameters.

    Positions 1..H (H = m(n-1)+1) carry the labels 1..H and positions
    H+1..N the barred labels.  The color-switching edges are (mj+1, mj+2)
    for 0 <= j <= n-1 together with their antipodal copies; edge p joins
    positions p and p+1.  At m = 1 every edge switches, so every rotation
    step flips the color of every diameter.

    ``reading`` selects the interpretation of the first typing rule:
    "any" (a region next to a unicolored diameter never gets the plain part)
    or "exactly_one" (only a region next to exactly one diameter is exempt).
    """

    def __init__(self, W: CoxType, m: int, budget: Budget | None = None, reading: str = "any"):
        if reading not in ("any", "exactly_one"):
            raise ValueError(f"unknown typing reading {reading!r}")
        self.reading = reading
        N = m * (2 * W.n - 2) + 2
        H = N // 2
        self.switching = frozenset(
            p for j in range(W.n) for p in (m * j + 1, (m * j + H) % N + 1)
        )
        super().__init__(W, m, budget)
        self._check_rule3()
        self.plus_orbit = self._orbit(Diameter(1, self.H, SOLID))

    def _build_vertices(self):
        diams = [Diameter(a, self.H, c) for a in range(1, self.H + 1) for c in (SOLID, DASHED)]
        return self._pairs() + diams

    def _rotate_diameter(self, x: Diameter) -> Diameter:
        edge = (x.a - 2) % self.N + 1  # edge crossed by the endpoint at position a
        color = x.color ^ 1 if edge in self.switching else x.color
        return Diameter(shift(x.a, 1, self.H), self.H, color)

    def rotate(self, x):
        if isinstance(x, Diameter):
            return self._rotate_diameter(x)
        return self.rotate_pair(x)

    def _rotate_until_first(self, x: Diameter, y: Diameter) -> tuple[Diameter, Diameter]:
        while x.a != 1:
            x, y = self._rotate_diameter(x), self._rotate_diameter(y)
        return x, y

    def _diam_compatible(self, x: Diameter, y: Diameter) -> bool:
        if x.a == y.a:
            return x.color != y.color
        x1, y1 = self._rotate_until_first(x, y)
        return x1.color == y1.color

    def _check_rule3(self) -> None:
        diams = [v for v in self.vertices if isinstance(v, Diameter)]
        for x in diams:
            for y in diams:
                if x.a != y.a:
                    a = self._rotate_until_first(x, y)
                    b = self._rotate_until_first(y, x)
                    if (a[0].color == a[1].color) != (b[0].color == b[1].color):
                        raise ModelAssertion("rule 3 depends on which diameter is rotated to 1")

    def _compatible(self, x, y):
        if x == y:
            return False
        if isinstance(x, Diameter) and isinstance(y, Diameter):
            return self._diam_compatible(x, y)
        return _noncrossing(x, y)

    def _orbit(self, x: Diameter) -> frozenset:
        seen = {x}
        y = self._rotate_diameter(x)
        while y not in seen:
            seen.add(y)
            y = self._rotate_diameter(y)
        return frozenset(seen)

    def sign_of(self, x: Diameter) -> str:
        return "+" if x in self.plus_orbit else "-"

    def type_face(self, elements):
        N, H, m, n = self.N, self.H, self.m, self.W.n
        pairs = [x for x in elements if isinstance(x, SymPair)]
        diams = [x for x in elements if isinstance(x, Diameter)]
        pair_chords = [c for x in pairs for c in x.chords()]
        positions = sorted({x.a for x in diams})
        parts: list[int] = []
        if not positions:
            j = None
            for reg in self._regions(pair_chords):
                if self._is_central(reg):
                    j = (len(reg) - 2) // (2 * m)
                else:
                    parts.append(self._plain_part(len(reg)))
            lam = _halve(parts, "D typing")
            if j is None or sum(lam) > n - 2:
                raise TypingAmbiguity("diameter-free face without a proper central region")
            return ParabolicClass(self.W, lam)
        if len(positions) == 1:
            a = positions[0]
            regs = self._regions(pair_chords + [(a, a + H)])
            bicolored = len(diams) == 2
            for reg in regs:
                adjacent = a in reg and a + H in reg
                if adjacent and not bicolored:
                    parts.append(self._plain_part(len(reg)) + 1)
                else:
                    parts.append(self._plain_part(len(reg)))
            if bicolored:
                parts += [1, 1]
        else:
            ends = sorted(positions + [p + H for p in positions])
            centre = 0
            for i, e in enumerate(ends):
                f = ends[(i + 1) % len(ends)]
                arc = list(range(e, f + 1)) if f > e else list(range(e, N + 1)) + list(range(1, f + 1))
                inside = [c for c in pair_chords if c[0] in arc and c[1] in arc]
                for reg in split_regions(arc + [centre], inside):
                    if centre in reg:
                        v = len(reg) - 1
                        if self.reading == "any":
                            parts.append((v - 2) // m + 1)
                        else:
                            parts.append(self._plain_part(v))
                    else:
                        parts.append(self._plain_part(len(reg)))
        lam = _halve(parts, "D typing")
        if sum(lam) != n:
            raise TypingAmbiguity(f"face with diameters typed as {lam}, not a partition of {n}")
        sign = None
        if all(p % 2 == 0 for p in lam):
            signs = {self.sign_of(x) for x in diams}
            if len(signs) != 1:
                raise TypingAmbiguity("diameters of one face lie in different rotation orbits")
            sign = signs.pop()
        return ParabolicClass(self.W, lam, sign=sign)
