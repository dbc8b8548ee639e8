"""Jordan canonical form and Jordan-Chevalley decompositions for quaternion matrices."""

__version__ = "0.1.0"

from .errors import (
    DuplicateModulus,
    GenerationFailed,
    NoConvergence,
    NonRealCoefficients,
    NotAnEigenvalue,
    NotJCommuting,
    NotNilpotent,
    ParseError,
    QuatLinAlgError,
    ShapeError,
    Singular,
    StructureViolation,
    VerificationFailed,
)
from .expmap import ExpJcdReport, exp_jcd_relation, hexp, hlog
from .gen import GenResult, gen, random_spec
from .hmat import (
    HMatrix,
    complex_adjoint,
    from_complex_adjoint,
    hinverse,
    hkernel,
    hrank,
    jmap,
)
from .jcd import (
    AdditiveJCD,
    MultiplicativeJCD,
    additive_jcd,
    is_semisimple,
    multiplicative_jcd,
)
from .jordan import (
    JordanBlock,
    JordanResult,
    PairedChain,
    complex_chains_for,
    jordan_form,
    jordan_matrix,
    make_spec,
    paired_nilpotent_jordan,
    spec_equivalent,
)
from .poly import (
    CongruenceSystem,
    Spectrum,
    crt_solve,
    eval_at_hmatrix,
    realify,
    roots_with_multiplicity,
)
from .quat import Quaternion, canonical_rep, is_similar, similarity_witness
from .spectral import (
    GeneralizedEigenspace,
    char_poly,
    determinant,
    generalized_eigenspace,
    spectrum,
    trace,
    verify_cayley_hamilton,
)
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "DEFAULT",
    "AdditiveJCD",
    "CongruenceSystem",
    "DuplicateModulus",
    "ExpJcdReport",
    "GenResult",
    "GeneralizedEigenspace",
    "GenerationFailed",
    "HMatrix",
    "JordanBlock",
    "JordanResult",
    "MultiplicativeJCD",
    "NoConvergence",
    "NonRealCoefficients",
    "NotAnEigenvalue",
    "NotJCommuting",
    "NotNilpotent",
    "PairedChain",
    "ParseError",
    "QuatLinAlgError",
    "Quaternion",
    "ShapeError",
    "Singular",
    "Spectrum",
    "StructureViolation",
    "Tolerances",
    "VerificationFailed",
    "__version__",
    "additive_jcd",
    "canonical_rep",
    "char_poly",
    "complex_adjoint",
    "complex_chains_for",
    "crt_solve",
    "determinant",
    "eval_at_hmatrix",
    "exp_jcd_relation",
    "from_complex_adjoint",
    "gen",
    "generalized_eigenspace",
    "hexp",
    "hinverse",
    "hkernel",
    "hlog",
    "hrank",
    "is_semisimple",
    "is_similar",
    "jmap",
    "jordan_form",
    "jordan_matrix",
    "make_spec",
    "multiplicative_jcd",
    "paired_nilpotent_jordan",
    "random_spec",
    "realify",
    "roots_with_multiplicity",
    "similarity_witness",
    "spec_equivalent",
    "spectrum",
    "trace",
    "verify_cayley_hamilton",
]
