"""Hall algebras of cyclic quivers acting on the q-deformed Fock space."""
from .ring import LaurentPoly, RatFrac, V, bar, gauss_binomial, quantum_factorial, quantum_integer
from .quiver import Cyclic, DimVector, InfiniteLine, Multisegment

__all__ = [
    "LaurentPoly", "RatFrac", "V", "bar", "gauss_binomial", "quantum_factorial", "quantum_integer",
    "Cyclic", "DimVector", "InfiniteLine", "Multisegment",
]
