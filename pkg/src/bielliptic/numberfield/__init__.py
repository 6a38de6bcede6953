"""Exact arithmetic in number fields K = Q[x]/(f), power basis."""

from .field import (
    FieldElement,
    NumberField,
    PrimeSite,
    degree_one_sites,
    fe_eval,
    fe_reduce,
    nf_create,
)
from .poly import UniPoly, discriminant, resultant
from .sqrt import SquareStatus, SquareTest, canonical_sign, fe_is_square, fe_sqrt


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inv()


def fe_norm(a: FieldElement):
    return a.norm()


def fe_trace(a: FieldElement):
    return a.trace()


def fe_minpoly(a: FieldElement) -> UniPoly:
    return a.minpoly()


def fe_height(a: FieldElement) -> int:
    return a.height()


def fe_embeddings(a: FieldElement, precision: int = 53) -> list:
    return a.embeddings(precision)


__all__ = [
    "FieldElement", "NumberField", "PrimeSite", "SquareStatus", "SquareTest", "UniPoly",
    "canonical_sign", "degree_one_sites", "discriminant", "fe_add", "fe_embeddings",
    "fe_eval", "fe_height", "fe_inv", "fe_is_square", "fe_minpoly", "fe_mul", "fe_norm",
    "fe_reduce", "fe_sqrt", "fe_sub", "fe_trace", "nf_create", "resultant",
]
