"""Generic machinery shared by the polygon models.

A model holds an immutable snapshot: the vertex list, the compatibility
graph as bitsets, the rotation permutation of vertices, and (lazily) the
full face list with the parabolic type of every face.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from ..coxeter import CoxType, ParabolicClass, coxeter_number
from .elements import ModelElement, element_key


class BudgetExceeded(RuntimeError):
    pass


class TypingAmbiguity(RuntimeError):
    pass


class ModelAssertion(AssertionError):
    pass


@dataclass(frozen=True)
class Budget:
    """Caps on the polygon size N and on the number of complex vertices."""
    polygon: int = 30
    vertices: int = 200

    @classmethod
    def from_env(cls, default: Budget | None = None) -> Budget:
        """Read ``CSPLAB_BUDGET`` ("polygon=40,vertices=300" or a bare vertex cap)."""
        base = default or cls()
        raw = os.environ.get("CSPLAB_BUDGET", "").strip()
        if not raw:
            return base
        return cls.parse(raw, base)

    @classmethod
    def parse(cls, raw: str, base: Budget | None = None) -> Budget:
        base = base or cls()
        if raw.isdigit():
            return cls(base.polygon, int(raw))
        vals = {"polygon": base.polygon, "vertices": base.vertices}
        for item in raw.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in vals or not val.strip().isdigit():
                raise ValueError(f"bad budget item {item!r}")
            vals[key] = int(val)
        return cls(**vals)

    def check_polygon(self, N: int) -> None:
        if N > self.polygon:
            raise BudgetExceeded(f"polygon size {N} exceeds budget {self.polygon}")

    def check_vertices(self, count: int) -> None:
        if count > self.vertices:
            raise BudgetExceeded(f"{count} complex vertices exceed budget {self.vertices}")


def model_size(W: CoxType, m: int) -> int:
    if not W.is_classical:
        raise ValueError(f"no polygon model for {W}")
    return m * coxeter_number(W) + 2


@dataclass(frozen=True)
class Face:
    elements: tuple[ModelElement, ...]
    cox: CoxType
    m: int

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + " ".join(str(x) for x in self.elements) + "}"


class PolygonModel:
    """Base class; subclasses fill in vertices, compatibility, rotation, typing."""

    def __init__(self, W: CoxType, m: int, budget: Budget | None = None):
        if m < 1:
            raise ValueError("m must be positive")
        self.W = W
        self.m = m
        self.N = model_size(W, m)
        self.budget = budget or Budget.from_env()
        self.budget.check_polygon(self.N)
        verts = sorted(self._build_vertices(), key=element_key)
        self.budget.check_vertices(len(verts))
        self.vertices: tuple[ModelElement, ...] = tuple(verts)
        self.index = {x: i for i, x in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ModelAssertion("duplicate vertices")
        nv = len(self.vertices)
        self.adj: list[int] = [0] * nv
        for i in range(nv):
            for j in range(i + 1, nv):
                cij = self._compatible(self.vertices[i], self.vertices[j])
                if cij != self._compatible(self.vertices[j], self.vertices[i]):
                    raise ModelAssertion("compatibility is not symmetric")
                if cij:
                    self.adj[i] |= 1 << j
                    self.adj[j] |= 1 << i
        try:
            self.rot: tuple[int, ...] = tuple(self.index[self.rotate(x)] for x in self.vertices)
        except KeyError as exc:
            raise ModelAssertion(f"rotation leaves the vertex set: {exc}") from None
        if sorted(self.rot) != list(range(nv)):
            raise ModelAssertion("rotation is not a bijection on vertices")
        for i in range(nv):
            img = 0
            for j in _bits(self.adj[i]):
                img |= 1 << self.rot[j]
            if img != self.adj[self.rot[i]]:
                raise ModelAssertion("rotation is not a graph automorphism")

    # ---- to be provided by subclasses
    def _build_vertices(self) -> list[ModelElement]:
        raise NotImplementedError

    def _compatible(self, x: ModelElement, y: ModelElement) -> bool:
        raise NotImplementedError

    def rotate(self, x: ModelElement) -> ModelElement:
        raise NotImplementedError

    def type_face(self, elements: tuple[ModelElement, ...]) -> ParabolicClass:
        raise NotImplementedError

    # ---- shared API
    def compatible(self, x: ModelElement, y: ModelElement) -> bool:
        i, j = self.index[x], self.index[y]
        return bool(self.adj[i] >> j & 1)

    def rotation_power(self, t: int) -> tuple[int, ...]:
        t %= self.N
        perm = list(range(len(self.vertices)))
        for _ in range(t):
            perm = [self.rot[p] for p in perm]
        return tuple(perm)

    @cached_property
    def face_indices(self) -> tuple[tuple[int, ...], ...]:
        """All cliques of the compatibility graph (empty face included)."""
        out: list[tuple[int, ...]] = [()]
        stack: list[tuple[tuple[int, ...], int]] = []
        nv = len(self.vertices)
        for v in range(nv):
            stack.append(((v,), self.adj[v] >> (v + 1) << (v + 1)))
        while stack:
            face, cand = stack.pop()
            out.append(face)
            for w in _bits(cand):
                stack.append((face + (w,), cand & self.adj[w] & ~((1 << (w + 1)) - 1)))
        out.sort(key=lambda f: (len(f), f))
        return tuple(out)

    def face(self, idx: tuple[int, ...]) -> Face:
        return Face(tuple(self.vertices[i] for i in idx), self.W, self.m)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(self.face(f) for f in self.face_indices)

    @cached_property
    def face_types(self) -> dict[tuple[int, ...], ParabolicClass]:
        return {f: self.type_face(tuple(self.vertices[i] for i in f)) for f in self.face_indices}

    @cached_property
    def census(self) -> dict[ParabolicClass, list[tuple[int, ...]]]:
        groups: dict[ParabolicClass, list[tuple[int, ...]]] = defaultdict(list)
        for f, c in self.face_types.items():
            groups[c].append(f)
        return dict(groups)

    def rotate_indices(self, f: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted(perm[i] for i in f))

    def rotate_face(self, face: Face) -> Face:
        return Face(tuple(sorted((self.rotate(x) for x in face.elements), key=element_key)),
                    face.cox, face.m)

    def fixed_count(self, c: ParabolicClass, d: int) -> int:
        if self.N % d:
            raise ValueError(f"{d} does not divide N = {self.N}")
        perm = self.rotation_power(self.N // d)
        return sum(1 for f in self.census.get(c, ()) if self.rotate_indices(f, perm) == f)

    def fixed_faces(self, c: ParabolicClass, d: int) -> list[Face]:
        perm = self.rotation_power(self.N // d)
        return [self.face(f) for f in self.census.get(c, ()) if self.rotate_indices(f, perm) == f]

    def serialize_faces(self) -> str:
        return "".join(str(f) + "\n" for f in self.faces)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
