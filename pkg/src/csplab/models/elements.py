"""Model elements and polygon geometry.

Polygon positions are labelled 1..N counterclockwise.  A chord is a sorted
pair ``(a, b)`` with ``a < b``.  Every model rotates by ``p -> p - 1``
(position 1 goes to N).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence, Union

SOLID, DASHED = 0, 1
COLOR_NAMES = {SOLID: "s", DASHED: "d"}

Chord = tuple[int, int]


def chord(a: int, b: int, N: int) -> Chord:
    """Normalize endpoints into 1..N and sort them."""
    a = (a - 1) % N + 1
    b = (b - 1) % N + 1
    if a == b:
        raise ValueError("degenerate chord")
    return (a, b) if a < b else (b, a)


def shift(p: int, t: int, N: int) -> int:
    """Position p after t rotation steps (p -> p - 1 per step)."""
    return (p - 1 - t) % N + 1


def crosses(c1: Chord, c2: Chord) -> bool:
    """Strict interior crossing of two chords; shared endpoints never cross."""
    a, b = c1
    c, d = c2
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True, order=True)
class Diagonal:
    a: int
    b: int

    def chords(self) -> tuple[Chord, ...]:
        return ((self.a, self.b),)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True, order=True)
class SymPair:
    """Centrally symmetric pair of diagonals, smaller chord first."""
    first: Chord
    second: Chord

    def chords(self) -> tuple[Chord, ...]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"({self.first[0]},{self.first[1]})+({self.second[0]},{self.second[1]})"


@dataclass(frozen=True, order=True)
class Diameter:
    """Diameter through positions a and a + N/2 (1 <= a <= N/2).

    ``color`` is None in type B and SOLID/DASHED in type D.
    """
    a: int
    half: int
    color: int | None = None

    def chords(self) -> tuple[Chord, ...]:
        return ((self.a, self.a + self.half),)

    def __str__(self) -> str:
        base = f"|{self.a},{self.a + self.half}|"
        return base if self.color is None else base + COLOR_NAMES[self.color]


@dataclass(frozen=True, order=True)
class ParallelFamily:
    """Family of pairwise parallel diagonals (dihedral model)."""
    members: tuple[Chord, ...]

    def chords(self) -> tuple[Chord, ...]:
        return self.members

    def __str__(self) -> str:
        return "[" + " ".join(f"({a},{b})" for a, b in self.members) + "]"


ModelElement = Union[Diagonal, SymPair, Diameter, ParallelFamily]
_KIND = {Diagonal: 0, SymPair: 1, Diameter: 2, ParallelFamily: 3}


def element_key(x: ModelElement) -> tuple:
    if isinstance(x, Diameter):
        return (2, x.a, -1 if x.color is None else x.color)
    if isinstance(x, ParallelFamily):
        return (3, x.members)
    if isinstance(x, SymPair):
        return (1, x.first, x.second)
    return (0, x.a, x.b)


def make_sympair(c1: Chord, c2: Chord) -> SymPair:
    a, b = sorted((c1, c2))
    return SymPair(a, b)


def split_regions(cycle: Sequence[Hashable], chords: Sequence[tuple]) -> list[list]:
    """Cut the polygon ``cycle`` along pairwise noncrossing chords.

    Returns the regions as vertex lists in cyclic order.  Vertex labels are
    arbitrary hashables, so wedge regions may carry a centre marker.
    """
    regions: list[list] = [list(cycle)]
    for a, b in chords:
        for idx, reg in enumerate(regions):
            if a in reg and b in reg:
                i, j = sorted((reg.index(a), reg.index(b)))
                if j - i == 1 or (i == 0 and j == len(reg) - 1):
                    continue
                regions[idx:idx + 1] = [reg[i:j + 1], reg[j:] + reg[:i + 1]]
                break
        else:
            raise ValueError(f"chord {(a, b)} does not split any region")
    return regions
