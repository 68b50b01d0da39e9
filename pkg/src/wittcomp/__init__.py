"""Exact operator calculus on Verma modules and Lie-composite verification."""
from .arith import PoleError, Poly, Rat, RatFun, parse_rat, rat_normalize, ratfun_arith, ratfun_eval
from .burnside import burnside_certificate, burnside_irreducible
from .composite import (
    LieComposite, MatrixRep, check_representation, composite_check, octahedron,
    octahedron_model, tensor_rep, truncated_witt_composite, verify_octahedron_proposition,
    witt_window_rep,
)
from .operators import (
    GradedOp, VermaVec, WellFormednessError, apply, basic_op, commutator, op_combine,
    op_equal, truncate_to_matrix,
)
from .overlay import Decomposition, build_LC, is_overlay_rep, theorem_1C_window
from .witt import (
    WeightParam, current, qr_symmetry, sl2_triple, verify_theorem_1A, verify_theorem_1B,
    witt_assignment,
)

__version__ = "0.1.0"
