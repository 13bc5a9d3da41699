"""Exact computation with axial algebras: eigenspace decompositions, fusion
laws, Martindale-like conditions, and additivity checks for multiplicative
maps."""

from .core import GF, QQ, Algebra, FieldSpec, LazyAlgebra, SparseVector
from .fusion import FusionLaw, builtin_law, decompose, verify_axial, verify_fusion
from .io import emit_algebra, parse_algebra
from .martindale import check_conditions, lemma_statements
from .zoo import build as zoo_build

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Algebra", "FieldSpec", "LazyAlgebra", "SparseVector",
    "FusionLaw", "builtin_law", "decompose", "verify_axial", "verify_fusion",
    "emit_algebra", "parse_algebra", "check_conditions", "lemma_statements", "zoo_build",
    "__version__",
]
