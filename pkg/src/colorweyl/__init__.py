"""colorweyl: exact engine for graded Weyl algebras with commutation factors."""

from .coefficients import (
    PhaseScalar,
    OrderLimitError,
    phase_add,
    phase_mul,
    phase_conj,
    phase_to_complex,
    format_phase,
    parse_phase,
)
from .statistics import (
    FactorError,
    GradeVector,
    CommutationFactor,
    FactorPreset,
    make_factor,
    eval_factor,
    factorize,
    quotient_grade,
    reduce_group,
    factor_from_descriptor,
    factor_to_descriptor,
)
from .weyl import (
    WeylMonomial,
    WeylElement,
    GradeError,
    normal_form,
    multiply,
    star,
    grade_of,
    bracket,
    check_jacobi,
    exhaustive_normal_form,
)
from .fock import (
    FockVector,
    CompositeStateInfo,
    StateRow,
    basis_monomials,
    create,
    evaluate,
    act,
    enumerate_states,
    represent_column,
    effective_field,
)
from .gram import (
    GramMatrix,
    PositivityCertificate,
    inner,
    permutation_sum,
    gram_matrix,
    check_positive,
)
from .superize import (
    superize_factor,
    TwistedGroupElement,
    twisted_multiply,
    CrossedElement,
    crossed_embed,
    crossed_word,
    clifford_check,
    comultiplication_check,
)
from .oracle import (
    DenseOperator,
    build_matrices,
    word_matrix,
    element_matrix,
    verify_relations,
    compare_symbolic,
)

__version__ = "0.1.0"
