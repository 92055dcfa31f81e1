"""Exact representation theory of the algebras H(C,D,Omega) and Pi(C,D) for symmetrizable Cartan matrices."""

from .algebra import AlgebraSpec, build_algebra
from .cartan import CartanMatrix, dynkin_type, minimal_symmetrizer, validate_cartan
from .linalg import GF, QQ, ExactMatrix, FieldDescriptor
from .rep import Representation

__all__ = [
    "AlgebraSpec",
    "CartanMatrix",
    "ExactMatrix",
    "FieldDescriptor",
    "GF",
    "QQ",
    "Representation",
    "build_algebra",
    "dynkin_type",
    "minimal_symmetrizer",
    "validate_cartan",
]
