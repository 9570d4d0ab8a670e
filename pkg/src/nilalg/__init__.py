"""Exact symbolic toolkit for nilpotent bicommutative algebras."""

from .algebra import Algebra, derivations, fingerprint
from .catalog import Catalog, load
from .cohomology import central_extension, h2
from .forms import BilinearForm, VectorCocycle
from .scalars import GaussRational, I, RadicalScalar, RationalFunction, var

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "BilinearForm",
    "Catalog",
    "GaussRational",
    "I",
    "RadicalScalar",
    "RationalFunction",
    "VectorCocycle",
    "central_extension",
    "derivations",
    "fingerprint",
    "h2",
    "load",
    "var",
]
