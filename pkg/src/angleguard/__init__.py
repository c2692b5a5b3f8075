"""Angles, orthogonality and modulus calculus in real inner product spaces and
matrix Hilbert C*-modules, with randomized verification suites."""

from .classifier import (
    ClassificationReport,
    GammaFit,
    classify,
    gamma_fit,
    verify_cor411,
    verify_remark45,
    verify_thm410,
    verify_thm43,
    verify_thm44,
)
from .cstar import (
    AlgebraKind,
    AlgebraSpec,
    ModuleElement,
    ModuleShape,
    is_A_linear,
    is_local,
    lemma41_status,
    mod_abs,
    mod_inner,
    mod_norm,
    moduli_equal,
    moduli_leq,
    polarize,
    remark42_conditions,
)
from .errors import (
    AngleguardError,
    DegenerateError,
    ExcludedAngleError,
    InputError,
    NotPositiveError,
    PreconditionError,
    ZeroMapError,
)
from .generators import generate
from .linalg import (
    DEFAULT_TOL,
    EigenDecomposition,
    ToleranceConfig,
    herm_eigendecomp,
    is_positive,
    loewner_leq,
    psd_sqrt,
)
from .maps import COUNTEREXAMPLE_TAGS, MapUnderTest, counterexample, general_linear, left_mult
from .real_angle import (
    GramPair,
    SimilarityVerdict,
    angle,
    compare_inner_products,
    is_orthogonal,
    is_parallel,
    lambda_equal_norm,
    mu_witness,
    similarity_gamma,
    theta_preserving_check,
    thm35_conditions,
)
from .suites import SUITES, SuiteConfig, SuiteReport, remark42_search, run_suite

__version__ = "0.1.0"
