"""Deciding isomorphism of semisimple mod-ell Galois representations from
finitely many Frobenius traces, plus the modular-form machinery behind it."""
from .arith import CycloElement, Embedding, FieldDescriptor, FieldElement, embedding_make, ext_field_make
from .bounds import BoundReport, kappa, kohnen_bound, onedim_bounds, sturm_bound
from .characters import DirichletCharacter, char_make
from .distinguisher import (Congruent, DistinguishedAt, Indeterminate, Isomorphic, MismatchAt,
                            compare_1dim, compare_2dim, least_distinguishing_prime, sturm_compare)
from .eisenstein import EisensteinSpec, delta_qexp, eisenstein_qexp, eisenstein_qexp_t
from .qexp import QExpansion
from .representations import Eigenform, Reducible

__all__ = [
    "BoundReport", "Congruent", "CycloElement", "DirichletCharacter", "DistinguishedAt", "Eigenform",
    "EisensteinSpec", "Embedding", "FieldDescriptor", "FieldElement", "Indeterminate", "Isomorphic",
    "MismatchAt", "QExpansion", "Reducible", "char_make", "compare_1dim", "compare_2dim", "delta_qexp",
    "eisenstein_qexp", "eisenstein_qexp_t", "embedding_make", "ext_field_make", "kappa", "kohnen_bound",
    "least_distinguishing_prime", "onedim_bounds", "sturm_bound", "sturm_compare",
]
