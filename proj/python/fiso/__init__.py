"""Tolerant isomorphism testing for Boolean functions on finite Abelian groups."""

from ._fiso import (
    FisoError,
    Group,
    dft,
    exact_automorphism_distance,
    sparsity,
    spectral_norm,
    test_isomorphism,
)

__all__ = [
    "FisoError",
    "Group",
    "dft",
    "exact_automorphism_distance",
    "sparsity",
    "spectral_norm",
    "test_isomorphism",
]
