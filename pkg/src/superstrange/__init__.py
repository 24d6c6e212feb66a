"""Exact computations with quadratic Lie superalgebras of basic type."""

__version__ = "0.1.0"

from .errors import (
    AlgebraSpecError,
    DecomposableAlgebra,
    DegenerateForm,
    IsotropicSeedInvalid,
    NotCompletelyReducible,
    NotDiagonalizable,
    NotWeightBasis,
    SingularCartanSystem,
    SpectrumNotRational,
    SuperstrangeError,
)
from .exact import QMatrix, char_poly, kernel, rational_spectrum_split
from .superalgebra import (
    DualBasis,
    LieSuperalgebra,
    ValidationReport,
    direct_sum,
    dual_basis,
    fixed_point_subalgebra,
    killing_form,
    validate,
)
from .families import (
    build_glmn,
    build_odd_symplectic,
    build_ospm2n,
    build_slmn,
    catalog_specs,
    parse_algebra,
)
from .structure import (
    CasimirData,
    RootDatum,
    casimir,
    casimir_symmetry_check,
    choose_positive,
    root_decomposition,
    weyl_vector,
)
from .decomposition import (
    IsotypicDecomposition,
    TriangularData,
    derived_towers,
    isotropy_certificate,
    isotypic_g1,
    triangular,
)
from .gradings import (
    Grading,
    SigmaWeylData,
    TorusElement,
    grading_from_torus,
    indecomposability_screen,
    sigma_weyl_data,
)
from .formulas import (
    VerificationReport,
    scale_invariance_check,
    verify_cg_orthogonality,
    verify_even_vsf,
    verify_strange,
    verify_sumsixixi,
    verify_very_strange,
)

__all__ = [
    "AlgebraSpecError",
    "CasimirData",
    "DecomposableAlgebra",
    "DegenerateForm",
    "DualBasis",
    "Grading",
    "IsotropicSeedInvalid",
    "IsotypicDecomposition",
    "LieSuperalgebra",
    "NotCompletelyReducible",
    "NotDiagonalizable",
    "NotWeightBasis",
    "QMatrix",
    "RootDatum",
    "SigmaWeylData",
    "SingularCartanSystem",
    "SpectrumNotRational",
    "SuperstrangeError",
    "TorusElement",
    "TriangularData",
    "ValidationReport",
    "VerificationReport",
    "build_glmn",
    "build_odd_symplectic",
    "build_ospm2n",
    "build_slmn",
    "casimir",
    "casimir_symmetry_check",
    "catalog_specs",
    "char_poly",
    "choose_positive",
    "derived_towers",
    "direct_sum",
    "dual_basis",
    "fixed_point_subalgebra",
    "grading_from_torus",
    "indecomposability_screen",
    "isotropy_certificate",
    "isotypic_g1",
    "kernel",
    "killing_form",
    "parse_algebra",
    "rational_spectrum_split",
    "root_decomposition",
    "scale_invariance_check",
    "sigma_weyl_data",
    "triangular",
    "validate",
    "verify_cg_orthogonality",
    "verify_even_vsf",
    "verify_strange",
    "verify_sumsixixi",
    "verify_very_strange",
    "weyl_vector",
]
