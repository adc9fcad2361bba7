"""Computations with finite completely simple semigroups in Rees matrix form:
homogeneity deciders, morphism enumeration, induced coloured graphs, and
bounded amalgamation."""

from .groups import FiniteGroup, GroupMorphism
from .rees import ReesMatrixSemigroup, RmsElement, SandwichMatrix
from .semigroups import FiniteSemigroup

__all__ = [
    "FiniteGroup",
    "GroupMorphism",
    "FiniteSemigroup",
    "ReesMatrixSemigroup",
    "RmsElement",
    "SandwichMatrix",
]
