from .field import GF, QQ, FieldError, FieldSpec, Mod, Scalar, is_prime
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    combination,
    contains,
    eigenspace,
    inverse,
    is_direct_sum,
    is_zero,
    kernel,
    rank,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
    vadd,
    vneg,
    vscale,
    vsub,
)
from .algebra import (
    Algebra,
    AlgebraError,
    LazyAlgebra,
    SparseEchelon,
    SparseVector,
    format_combination,
    is_idempotent,
    left_mul_matrix,
    product,
    sparse_sum,
    subalgebra_generated,
)
from .finite import IndexedAlgebra

__all__ = [
    "GF", "QQ", "FieldError", "FieldSpec", "Mod", "Scalar", "is_prime",
    "DimensionError", "Matrix", "Subspace", "combination", "contains", "eigenspace",
    "inverse", "is_direct_sum", "is_zero", "kernel", "rank", "rref", "solve",
    "subspace_intersect", "subspace_sum", "vadd", "vneg", "vscale", "vsub",
    "Algebra", "AlgebraError", "LazyAlgebra", "SparseEchelon", "SparseVector", "format_combination",
    "is_idempotent", "left_mul_matrix", "product", "sparse_sum", "subalgebra_generated",
    "IndexedAlgebra",
]
