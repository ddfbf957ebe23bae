"""Jordan structure of Jacobi operators of algebraic curvature tensors in signature (p, q)."""

__version__ = "0.1.0"

from .indefinite import SignatureSpace, Subspace, inner, sample_unit_spacelike  # noqa: E402
from .curvature import (  # noqa: E402
    AlgebraicCurvatureTensor,
    constant_curvature_tensor,
    from_symmetric_form,
    jacobi_operator,
    reduced_jacobi,
)
from .spectral import Eigenvalue, JordanStructure, full_decomposition, jordan_structure  # noqa: E402
from .osserman import (  # noqa: E402
    spacelike_jordan_osserman_test,
    spacelike_osserman_test,
    verify_main_theorem,
)
from .char_class import TruncatedZ2Poly, factorization_obstruction  # noqa: E402
