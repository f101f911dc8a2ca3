"""Exact computations with finite-dimensional algebras and their modules."""

__version__ = "0.1.0"

from .linalg import QQ, GF, Field, Matrix
from .algebra import Algebra, check_algebra, symmetrizing_form, trivial_extension
from .module import Module, ModuleMap, hom_space, isomorphism_test, regular_module
from .families import liu_schulz, module_Mc, quantum_exterior_2, quantum_complete_intersection

__all__ = [
    "QQ", "GF", "Field", "Matrix", "Algebra", "check_algebra", "symmetrizing_form",
    "trivial_extension", "Module", "ModuleMap", "hom_space", "isomorphism_test",
    "regular_module", "liu_schulz", "module_Mc", "quantum_exterior_2",
    "quantum_complete_intersection",
]
