"""Dual *-operator frames on Hilbert C*-modules over matrix algebras M_n(C)."""

from .algebra import (
    AlgebraElement,
    alg_adjoint,
    alg_arithmetic,
    alg_inverse,
    is_positive,
    is_strictly_nonzero,
    operator_norm,
    spectrum_hermitian,
)
from .config import Tolerances, get_tolerances, set_tolerances, tolerances
from .duals import (
    DualPair,
    canonical_dual,
    dual_frame_operator_identity,
    dual_from_bessel,
    dual_from_right_inverse,
    right_inverse_from_psi,
    theta_eta_identity,
    vector_dual,
    verify_dual,
)
from .errors import *  # noqa: F401,F403
from .frames import (
    GramMatrix,
    OperatorFrame,
    StarBounds,
    StarBoundsReport,
    analysis,
    condition_number,
    frame_operator,
    is_bessel,
    is_frame,
    optimal_scalar_bounds,
    random_frame,
    vector_frame,
    vector_frame_operator,
    verify_star_bounds,
)
from .module import (
    FrameContext,
    ModuleOperator,
    ModuleVector,
    SequenceOperator,
    SequenceVector,
    coordinate_projection,
    inner_product,
    module_action,
    op_adjoint,
    op_apply,
    op_compose,
    random_vector,
    sequence_adjoint_apply,
    sequence_apply,
    sequence_inner_product,
)
from .tensor import (
    TensorContext,
    nfold_tensor,
    tensor_frame,
    tensor_operator,
    tensor_vector,
    verify_tensor_dual,
)

__version__ = "0.1.0"
