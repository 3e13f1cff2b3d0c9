"""Polygon models of the generalized cluster complexes of types A, B, D, I2."""

from __future__ import annotations

from functools import lru_cache

from ..coxeter import CoxType, ParabolicClass
from .base import Budget, BudgetExceeded, Face, ModelAssertion, PolygonModel, TypingAmbiguity, model_size
from .classical import TypeAModel, TypeBModel, TypeDModel
from .dihedral import DihedralModel
from .elements import (
    DASHED, SOLID, Diagonal, Diameter, ModelElement, ParallelFamily, SymPair, element_key,
)

__all__ = [
    "Budget", "BudgetExceeded", "DASHED", "Diagonal", "Diameter", "DihedralModel", "Face",
    "ModelAssertion", "ModelElement", "ParallelFamily", "PolygonModel", "SOLID", "SymPair",
    "TypeAModel", "TypeBModel", "TypeDModel", "TypingAmbiguity", "build_model", "compatible",
    "element_key", "enumerate_faces", "fixed_face_count", "get_model", "model_size",
    "parabolic_type", "rotate", "rotate_face", "vertices",
]


def build_model(W: CoxType, m: int, budget: Budget | None = None, *,
                reading: str = "any", experimental: bool = False) -> PolygonModel:
    """Construct a fresh model; type D with m >= 2 needs ``experimental``."""
    f = W.family
    if f == "A":
        return TypeAModel(W, m, budget)
    if f == "B":
        return TypeBModel(W, m, budget)
    if f == "D":
        if m > 1 and not experimental:
            raise ValueError("type D models with m >= 2 are experimental; pass experimental=True")
        return TypeDModel(W, m, budget, reading=reading)
    if f == "I2":
        return DihedralModel(W, m, budget)
    raise ValueError(f"no polygon model for {W}")


@lru_cache(maxsize=64)
def _cached(W, m, budget, reading, experimental):
    return build_model(W, m, budget, reading=reading, experimental=experimental)


def get_model(W: CoxType, m: int, budget: Budget | None = None, *,
              reading: str = "any", experimental: bool = False) -> PolygonModel:
    """Memoized :func:`build_model`; models are immutable once their faces are listed."""
    return _cached(W, m, budget or Budget.from_env(), reading, experimental)


def vertices(W: CoxType, m: int, budget: Budget | None = None) -> list[ModelElement]:
    return list(get_model(W, m, budget).vertices)


def compatible(W: CoxType, m: int, x: ModelElement, y: ModelElement) -> bool:
    return get_model(W, m).compatible(x, y)


def enumerate_faces(W: CoxType, m: int, budget: Budget | None = None) -> list[Face]:
    return list(get_model(W, m, budget).faces)


def rotate(W: CoxType, m: int, x: ModelElement) -> ModelElement:
    return get_model(W, m).rotate(x)


def rotate_face(face: Face) -> Face:
    return get_model(face.cox, face.m).rotate_face(face)


def parabolic_type(face: Face) -> ParabolicClass:
    return get_model(face.cox, face.m).type_face(face.elements)


def fixed_face_count(W: CoxType, m: int, c: ParabolicClass, d: int,
                     budget: Budget | None = None) -> int:
    return get_model(W, m, budget).fixed_count(c, d)
