"""Finite-field algebra for GL-mappings, PGL-mappings and semilinear embeddings."""

from glmaps.gf_core import Field, FieldElement, FieldHom, apply_hom, enumerate_homs, make_field

__version__ = "0.1.0"

__all__ = [
    "Field",
    "FieldElement",
    "FieldHom",
    "apply_hom",
    "enumerate_homs",
    "make_field",
]
