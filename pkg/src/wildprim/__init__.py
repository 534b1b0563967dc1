"""Exact enumeration of primitive p-power-degree extensions of local fields.

The pipeline: build the tame splitting tower over the base field, realize
the Kummer module (mixed characteristic) or the Artin-Schreier module
(equal characteristic) of its top as a filtered F_p-space with an explicit
Galois action, enumerate the Galois-stable simple subspaces of a given
degree, and read each extension's level, differental exponent, discriminant
exponent and Galois-closure group off the parameter subspace.
"""

__version__ = "0.1.0"

from .tower import BaseField, TameTower, build_tower  # noqa: E402
from .enumerator import (ExtensionRecord, enumerate_primitive,  # noqa: E402
                         list_representations)
from .verify import (mass_check, quadratic_different_oracle,  # noqa: E402
                     structure_checks, cross_checks)

__all__ = [
    "BaseField", "TameTower", "build_tower",
    "ExtensionRecord", "enumerate_primitive", "list_representations",
    "mass_check", "quadratic_different_oracle", "structure_checks",
    "cross_checks", "__version__",
]
