"""Executable chains of adjunctions C -| M0 -| F -| M1 -| D for finite sets
and finite groups, with exhaustive verification at small sizes."""

from exactness.finset import (
    EquivRel,
    FiniteFunction,
    FiniteSet,
    MorphismClass,
    classify,
    compose,
    direct_image,
    enumerate_functions,
    equiv_bottom,
    equiv_leq,
    equiv_top,
    generated_equiv,
    inverse_image,
    kernel_relation,
)
from exactness.famcat import FamMorphism, FamObject, fam_compose, fam_equal, fam_identity, fam_of, fam_of_morphism
from exactness.adjverify import VerificationReport

__all__ = [
    "EquivRel",
    "FamMorphism",
    "FamObject",
    "FiniteFunction",
    "FiniteSet",
    "MorphismClass",
    "VerificationReport",
    "classify",
    "compose",
    "direct_image",
    "enumerate_functions",
    "equiv_bottom",
    "equiv_leq",
    "equiv_top",
    "fam_compose",
    "fam_equal",
    "fam_identity",
    "fam_of",
    "fam_of_morphism",
    "generated_equiv",
    "inverse_image",
    "kernel_relation",
]
