"""Exact engine for universal unitary/orthogonal quantum-group algebra
presentations, their Kac quotients via trace-positivity certificates, and
numeric representation witnesses."""

from .algebra import (
    AlgElement,
    AlgMatrix,
    GeneratorId,
    Rational,
    ScalarMatrix,
    ShapeError,
    rat,
    rat_str,
    word_adjoint,
    word_key,
)
from .hopf import (
    HopfReport,
    MorphismSpec,
    TensorElement,
    antipode,
    central_morphism_check,
    coproduct,
    counit,
    hopf_axiom_check,
    hopf_kernel_membership,
)
from .numeric import NumAssignment, ResidualReport, classical_point, eval_residual, rep_search
from .presentations import (
    Block,
    BlockDecomposition,
    BlockSpec,
    Presentation,
    block_decompose,
    build_presentation,
    build_universal_orthogonal,
    build_universal_unitary,
    eigenvalue_profile,
    free_product,
    reality_substitution,
    standard_form_matrix,
    symplectic_matrix,
)
from .quotient import (
    MatchVerdict,
    canonicalize,
    expected_kac_target,
    ideal_membership_bounded,
    match_presentations,
    quotient_by_zero,
)
from .trace import (
    Certificate,
    CertificateError,
    KacReport,
    TraceEquationSet,
    TraceExpr,
    TraceSymbol,
    Undetermined,
    cyclic_canonical,
    derive_trace_equations,
    forced_zero,
    generator_symbol,
    kac_fixpoint,
    trace_of,
    verify_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
